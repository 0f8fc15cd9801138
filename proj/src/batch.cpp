#include "edgelat/batch.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace edgelat {

RangeVerification verify_chvatal_range(long n_lo, long n_hi, bool parallel) {
  if (n_lo < 2 || n_hi < n_lo)
    throw std::invalid_argument("verify_chvatal_range: need 2 <= n_lo <= n_hi");
  RangeVerification out;
  out.reports.resize(n_hi - n_lo + 1);

#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long n = n_lo; n <= n_hi; ++n)
    out.reports[n - n_lo] = chvatal_summary(chvatal_q_scan(n));

  out.all_match = true;
  out.all_unimodal = true;
  for (const auto& r : out.reports) {
    if (!r.matches_conjecture || !r.unimodal) {
      out.all_match = out.all_match && r.matches_conjecture;
      out.all_unimodal = out.all_unimodal && r.unimodal;
      if (out.first_failure_n < 0) out.first_failure_n = r.n;
    }
  }
  return out;
}

PoissonMonotonicityReport poisson_chain(long m_max, int precision_bits, bool parallel) {
  if (!parallel) return verify_poisson_monotonicity(m_max, precision_bits);
  if (m_max < 1) throw std::invalid_argument("poisson_chain: m_max must be >= 1");

  // Parallel value computation, serial comparisons: identical report.
  std::vector<std::pair<HighPrecisionReal, HighPrecisionReal>> vals(m_max);
#pragma omp parallel for schedule(dynamic)
  for (long m = 1; m <= m_max; ++m) {
    auto v = poisson_cdf_batch(BigRational(m), m - 1, m, precision_bits);
    vals[m - 1] = {std::move(v[0]), std::move(v[1])};
  }

  PoissonMonotonicityReport rep;
  rep.m_max = m_max;
  rep.precision_bits = precision_bits;
  rep.all_hold = true;
  rep.all_certified = true;
  const BigRational half(1, 2);

  auto check_half = [&](const std::pair<HighPrecisionReal, HighPrecisionReal>& v,
                        PoissonPairCheck& c) {
    auto lt_half = certified_compare(v.first, half);
    auto le_half = certified_compare(v.second, half);
    c.strict_below_half = lt_half == CertifiedOrder::less;
    c.nonstrict_above_half = le_half == CertifiedOrder::greater;
    if (lt_half == CertifiedOrder::uncertified || le_half == CertifiedOrder::uncertified)
      c.certified = false;
  };

  {
    PoissonPairCheck c0;
    c0.m = 1;
    c0.certified = true;
    c0.strict_increasing = c0.nonstrict_decreasing = true;
    check_half(vals[0], c0);
    if (!c0.certified || !c0.strict_below_half || !c0.nonstrict_above_half) {
      rep.all_hold = rep.all_hold && c0.strict_below_half && c0.nonstrict_above_half;
      rep.all_certified = rep.all_certified && c0.certified;
      rep.problems.push_back(c0);
    }
  }
  for (long m = 1; m < m_max; ++m) {
    PoissonPairCheck c;
    c.m = m;
    c.certified = true;
    auto inc = certified_compare(vals[m - 1].first, vals[m].first);
    auto dec = certified_compare(vals[m - 1].second, vals[m].second);
    c.strict_increasing = inc == CertifiedOrder::less;
    c.nonstrict_decreasing = dec == CertifiedOrder::greater;
    if (inc == CertifiedOrder::uncertified || dec == CertifiedOrder::uncertified)
      c.certified = false;
    check_half(vals[m], c);
    ++rep.pairs_checked;
    bool holds = c.strict_increasing && c.nonstrict_decreasing && c.strict_below_half &&
                 c.nonstrict_above_half;
    if (!holds || !c.certified) {
      rep.all_hold = rep.all_hold && holds;
      rep.all_certified = rep.all_certified && c.certified;
      rep.problems.push_back(c);
    }
  }
  return rep;
}

double fitted_slope(std::span<const std::pair<double, double>> xy) {
  if (xy.size() < 2) throw std::invalid_argument("fitted_slope: need >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : xy) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = static_cast<double>(xy.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ExactCdf make_bernoulli_oracle(long n, const BigRational& p) {
  // Exact CDF table over k = 0..n, converted once.
  const BigInt a = p.get_num();
  const BigInt b = p.get_den();
  const BigInt bma = b - a;
  BigInt den, term;
  mpz_pow_ui(den.get_mpz_t(), b.get_mpz_t(), n);
  mpz_pow_ui(term.get_mpz_t(), bma.get_mpz_t(), n);
  auto cdf = std::make_shared<std::vector<double>>(n + 1);
  BigInt acc(0);
  for (long k = 0; k <= n; ++k) {
    acc += term;
    BigRational q(acc, den);
    q.canonicalize();
    (*cdf)[k] = rational_to_double(q);
    if (k < n) {
      mpz_mul_ui(term.get_mpz_t(), term.get_mpz_t(), n - k);
      mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), k + 1);
      term *= a;
      mpz_divexact(term.get_mpz_t(), term.get_mpz_t(), bma.get_mpz_t());
    }
  }
  return [cdf, n](long long t, bool strict) -> double {
    long long T = strict ? t - 1 : t;
    if (T < 0) return 0.0;
    if (T >= n) return 1.0;
    return (*cdf)[T];
  };
}

ExactCdf make_poisson_oracle(long n, int precision_bits) {
  // Lazy per-threshold cache; S_n of i.i.d. Po(1) is Po(n).
  struct State {
    std::mutex mu;
    std::map<long long, double> cache;
  };
  auto state = std::make_shared<State>();
  BigRational rate(n);
  return [state, rate, precision_bits](long long t, bool strict) -> double {
    long long T = strict ? t - 1 : t;
    if (T < 0) return 0.0;
    {
      std::lock_guard<std::mutex> lock(state->mu);
      auto it = state->cache.find(T);
      if (it != state->cache.end()) return it->second;
    }
    double v = poisson_cdf(rate, T, false, precision_bits).to_double();
    std::lock_guard<std::mutex> lock(state->mu);
    state->cache[T] = v;
    return v;
  };
}

ResidualStudy residual_study(const StudyDistribution& dist, int k, std::span<const long> ns,
                             const GridSpec& grid, int precision_bits, bool parallel) {
  if (k < 1 || k > 8) throw std::invalid_argument("residual_study: k must be in [1,8]");
  LatticeDistribution d = dist.family == StudyDistribution::Family::bernoulli
                              ? bernoulli_distribution(dist.p, k + 3)
                              : poisson1_analytic(k + 3);
  EdgeworthModel model = build_model(d, k);

  ResidualStudy out;
  out.k = k;
  out.rows.resize(ns.size());

  if (dist.family == StudyDistribution::Family::bernoulli)
    for (long n : ns) {
      BigRational np = BigRational(n) * dist.p;
      if (np.get_den() != 1)
        throw std::invalid_argument("residual_study: n*p must be an integer");
    }

#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long long i = 0; i < static_cast<long long>(ns.size()); ++i) {
    long n = ns[i];
    ExactCdf oracle = dist.family == StudyDistribution::Family::bernoulli
                          ? make_bernoulli_oracle(n, dist.p)
                          : make_poisson_oracle(n, precision_bits);
    ResidualScan scan = residual_scan(model, n, grid, oracle);
    out.rows[i] = {n, scan.sup_residual, scan.in_guarantee};
  }

  std::vector<std::pair<double, double>> pts;
  for (const auto& r : out.rows)
    if (r.in_guarantee && r.sup_residual > 0)
      pts.emplace_back(std::log(static_cast<double>(r.n)), std::log(r.sup_residual));
  out.qualified = static_cast<int>(pts.size());
  if (out.qualified >= 3) out.slope = fitted_slope(pts);
  return out;
}

}  // namespace edgelat
