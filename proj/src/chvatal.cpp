#include "edgelat/chvatal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "edgelat/edgeworth.hpp"
#include "edgelat/series.hpp"

namespace edgelat {

namespace {
constexpr double kSqrt2Pi = 2.5066282746310005024;
constexpr long kCriticalHalfWidth = 10;
}  // namespace

long nearest_to_two_thirds(long n) {
  // frac(2n/3) is 0, 1/3 or 2/3, never 1/2, so rounding has no tie.
  return (4 * n + 3) / 6;
}

ChvatalSummary chvatal_summary(const BinomialQScan& scan) {
  const long n = scan.n;
  ChvatalSummary s;
  s.n = n;
  s.target_m = nearest_to_two_thirds(n);

  // Sign pattern from the shared-denominator numerators.
  std::vector<int> sign(n, 0);
  for (long m = 0; m < n; ++m) sign[m] = cmp(scan.a_le[m + 1], scan.a_le[m]);

  long argmin = 0;
  bool tied = false;
  for (long m = 1; m <= n; ++m) {
    int c = cmp(scan.a_le[m], scan.a_le[argmin]);
    if (c < 0) {
      argmin = m;
      tied = false;
    } else if (c == 0) {
      tied = true;
    }
  }
  s.argmin_m = argmin;
  s.argmin_tied = tied;

  // Unimodal: a (possibly empty) block of -1 then a block of +1, no zeros.
  bool unimodal = true;
  bool seen_up = false;
  for (long m = 0; m < n; ++m) {
    if (sign[m] == 0) unimodal = false;
    if (sign[m] > 0) seen_up = true;
    if (sign[m] < 0 && seen_up) unimodal = false;
  }
  s.unimodal = unimodal;

  int prev = 0;
  for (long m = 0; m < n; ++m) {
    if (sign[m] != 0 && prev != 0 && sign[m] != prev) s.sign_changes.push_back(m);
    if (sign[m] != 0) prev = sign[m];
  }

  s.decreasing_below_half = true;
  for (long m = 1; 2 * m <= n; ++m)
    if (sign[m - 1] >= 0) s.decreasing_below_half = false;

  s.sign_pattern_holds = true;
  for (long m = 0; m < n; ++m) {
    int expected = (6 * m + 3 - 4 * n) > 0 ? 1 : -1;  // sign(m + 1/2 - 2n/3), never 0
    if (sign[m] != expected) {
      s.sign_pattern_holds = false;
      s.sign_exceptions.push_back(m);
    }
  }

  s.matches_conjecture = !tied && argmin == s.target_m;
  return s;
}

ChvatalReport verify_chvatal(long n) {
  if (n < 2) throw std::invalid_argument("verify_chvatal: n must be >= 2");
  // Single-n entry point: parallelize the m-scan itself. (Inside the batch
  // range driver the outer loop owns the threads and this one stays inert.)
  BinomialQScan scan = chvatal_q_scan(n, true, true);
  ChvatalReport r;
  r.summary = chvatal_summary(scan);
  r.q_values.reserve(n + 1);
  for (long m = 0; m <= n; ++m) r.q_values.push_back(scan.q(m));
  r.sign_pattern.resize(n, 0);
  for (long m = 0; m < n; ++m) r.sign_pattern[m] = cmp(scan.a_le[m + 1], scan.a_le[m]);
  return r;
}

bool rigollet_tong_check(long n) {
  if (n < 2) throw std::invalid_argument("rigollet_tong_check: n must be >= 2");
  BinomialQScan scan = chvatal_q_scan(n);
  for (long m = 1; 2 * m <= n; ++m)
    if (cmp(scan.a_le[m - 1], scan.a_le[m]) <= 0) return false;
  return true;
}

namespace {

double as_double(const BigRational& p) { return rational_to_double(p); }

void check_open_unit(const BigRational& p, const char* who) {
  if (p <= 0 || p >= 1)
    throw std::invalid_argument(std::string(who) + ": p must lie in (0,1)");
}

}  // namespace

double h1_closed(const BigRational& p) {
  check_open_unit(p, "h1_closed");
  double pd = as_double(p);
  return (2.0 - pd) / (3.0 * kSqrt2Pi * std::sqrt(pd * (1.0 - pd)));
}

double h3_closed(const BigRational& p) {
  check_open_unit(p, "h3_closed");
  double pd = as_double(p);
  double pq = pd * (1.0 - pd);
  return (2.0 - pd) * (pd * pd + 23.0 * pd - 23.0) / (540.0 * kSqrt2Pi * std::pow(pq, 1.5));
}

double h1_prime(const BigRational& p) {
  check_open_unit(p, "h1_prime");
  double pd = as_double(p);
  double pq = pd * (1.0 - pd);
  return (3.0 * pd - 2.0) / (6.0 * kSqrt2Pi * std::pow(pq, 1.5));
}

namespace {

// Richardson-extrapolated central differences. The abscissas are exact
// rationals (the steps are dyadic), so only the function values round.
template <typename F>
double richardson_derivative(F f, const BigRational& x, const BigRational& h0,
                             bool second) {
  auto stencil = [&](const BigRational& h) {
    double hd = rational_to_double(h);
    if (second) return (f(x + h) - 2.0 * f(x) + f(x - h)) / (hd * hd);
    return (f(x + h) - f(x - h)) / (2.0 * hd);
  };
  // Three levels of step halving; both stencils have even error expansions.
  double d[3];
  BigRational h = h0;
  for (int i = 0; i < 3; ++i, h /= 2) d[i] = stencil(h);
  double r1 = (4.0 * d[1] - d[0]) / 3.0;
  double r2 = (4.0 * d[2] - d[1]) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

}  // namespace

CriticalConstants critical_constants() {
  const BigRational two_thirds(2, 3);
  const BigRational h0(1, 64);
  CriticalConstants c;
  c.h1_pp_23 = richardson_derivative(h1_closed, two_thirds, h0, true);
  c.h3_p_23 = richardson_derivative(h3_closed, two_thirds, h0, false);
  c.ratio = c.h3_p_23 / c.h1_pp_23;
  return c;
}

namespace {

// Strict and non-strict three-term integer-mean expansions for the unit
// Poisson family, used by the extreme regimes of the predictor.
struct PoissonExpansionCoeffs {
  double c1_lt, c3_lt, c1_le, c3_le;
};

const PoissonExpansionCoeffs& poisson_expansion_coeffs() {
  static const PoissonExpansionCoeffs coeffs = [] {
    EdgeworthModel m = build_model(poisson1_analytic(8), 4);
    IntegerMeanExpansion lt = assemble_integer_mean(m, true);
    IntegerMeanExpansion le = assemble_integer_mean(m, false);
    return PoissonExpansionCoeffs{lt.coefficient(1, 1.0), lt.coefficient(3, 1.0),
                                  le.coefficient(1, 1.0), le.coefficient(3, 1.0)};
  }();
  return coeffs;
}

double poisson_value(long t, bool strict) {
  // Direct pmf summation, adequate for the tiny-argument fallback.
  double acc = 0.0, term = std::exp(-static_cast<double>(t));
  long upper = strict ? t - 1 : t;
  for (long i = 0; i <= upper; ++i) {
    acc += term;
    term *= static_cast<double>(t) / (i + 1);
  }
  return acc;
}

double poisson_median_approx(long t, bool strict) {
  if (t <= 4) return poisson_value(t, strict);
  const auto& c = poisson_expansion_coeffs();
  double s = std::sqrt(static_cast<double>(t));
  if (strict) return 0.5 + c.c1_lt / s + c.c3_lt / (s * s * s);
  return 0.5 + c.c1_le / s + c.c3_le / (s * s * s);
}

}  // namespace

QDifferencePrediction predict_q_difference(long n, long m) {
  if (n < 2 || m < 0 || m >= n)
    throw std::invalid_argument("predict_q_difference: need 0 <= m < n");
  const double nd = static_cast<double>(n);
  const double logsq = 2.0 * std::log(nd) * std::log(nd);
  QDifferencePrediction out;

  if (m < logsq) {
    out.regime = DifferenceRegime::poisson_low;
    // q_m tracks P(Po(m) <= m); difference of consecutive Poisson medians.
    out.predicted = poisson_median_approx(m + 1, false) - poisson_median_approx(m, false);
    return out;
  }
  if (m > nd - logsq) {
    out.regime = DifferenceRegime::poisson_high;
    // Reflection: q_{m+1} - q_m = q'_{n-m} - q'_{n-m-1} with small n-m.
    long j = n - m;
    double hi = poisson_median_approx(j, true);
    double lo = (j - 1 >= 1) ? poisson_median_approx(j - 1, true) : 0.0;
    out.predicted = hi - lo;
    return out;
  }

  double dist_to_23 = m + 0.5 - 2.0 * nd / 3.0;
  if (std::abs(m - 2.0 * nd / 3.0) <= kCriticalHalfWidth) {
    out.regime = DifferenceRegime::critical_window;
    CriticalConstants c = critical_constants();
    out.predicted = (c.h1_pp_23 * dist_to_23 + c.h3_p_23) * std::pow(nd, -2.5);
    return out;
  }
  if (m <= nd / 2.0)
    out.regime = DifferenceRegime::bulk_low;
  else if (m < 2.0 * nd / 3.0)
    out.regime = DifferenceRegime::bulk_mid;
  else
    out.regime = DifferenceRegime::bulk_high;

  // Mean-value form of the first-order difference.
  double ph = (m + 0.5) / nd;
  out.predicted = (3.0 * ph - 2.0) / (6.0 * kSqrt2Pi) * std::pow(nd * ph * (1.0 - ph), -1.5);
  return out;
}

std::vector<ScanRow> scan_fixed_n(long n, int grid_points) {
  if (n < 2) throw std::invalid_argument("scan_fixed_n: n must be >= 2");
  if (grid_points < 2) throw std::invalid_argument("scan_fixed_n: need >= 2 grid points");

  BinomialQScan scan = chvatal_q_scan(n);

  auto rp = [&](double p, double frac_np) {
    return 0.5 + (4.0 - 2.0 * p - 6.0 * frac_np) /
                     (6.0 * std::sqrt(2.0 * M_PI * n * p * (1.0 - p)));
  };

  std::vector<ScanRow> rows;
  rows.reserve(grid_points + 2 * n);

  auto push_plain = [&](const BigRational& p) {
    BigRational np = BigRational(n) * p;
    BigInt floor_np;
    mpz_fdiv_q(floor_np.get_mpz_t(), np.get_num().get_mpz_t(), np.get_den().get_mpz_t());
    long t = floor_np.get_si();
    ScanRow r;
    r.p = p;
    r.cdf_le = binomial_cdf_exact_p(n, p, t, false);
    r.cdf_lt = np.get_den() == 1 ? binomial_cdf_exact_p(n, p, t, true) : r.cdf_le;
    double pd = rational_to_double(p);
    double frac_np = rational_to_double(np - BigRational(floor_np));
    r.rp_approx = rp(pd, frac_np);
    r.rp_residual = rational_to_double(r.cdf_le) - r.rp_approx;
    return r;
  };

  for (int i = 1; i <= grid_points; ++i) {
    BigRational p(i, grid_points + 1);
    p.canonicalize();
    // Lattice abscissas get dedicated one-sided rows below.
    BigRational np = BigRational(n) * p;
    if (np.get_den() == 1) continue;
    rows.push_back(push_plain(p));
  }

  for (long m = 1; m <= n - 1; ++m) {
    BigRational p(m, n);
    p.canonicalize();
    double pd = rational_to_double(p);
    ScanRow left;
    left.p = p;
    left.lattice = true;
    left.left_limit = true;
    left.cdf_le = scan.q_strict(m);  // lim_{p' -> p-} P(Bi(n,p') <= floor(np'))
    left.cdf_lt = scan.q_strict(m);
    left.rp_approx = rp(pd, 1.0);  // {np} -> 1 from below
    left.rp_residual = rational_to_double(left.cdf_le) - left.rp_approx;
    rows.push_back(left);

    ScanRow right;
    right.p = p;
    right.lattice = true;
    right.cdf_le = scan.q(m);
    right.cdf_lt = scan.q_strict(m);
    right.rp_approx = rp(pd, 0.0);
    right.rp_residual = rational_to_double(right.cdf_le) - right.rp_approx;
    rows.push_back(right);
  }

  std::sort(rows.begin(), rows.end(), [](const ScanRow& a, const ScanRow& b) {
    int c = cmp(a.p, b.p);
    if (c != 0) return c < 0;
    return a.left_limit && !b.left_limit;
  });
  return rows;
}

}  // namespace edgelat
