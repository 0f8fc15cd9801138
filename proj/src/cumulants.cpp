#include "edgelat/cumulants.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

#include "edgelat/series.hpp"

namespace edgelat {

double LatticeDistribution::sigma() const { return std::sqrt(rational_to_double(variance)); }

double LatticeDistribution::lambda(int j) const {
  if (j < 0 || j >= static_cast<int>(cumulants.size()))
    throw std::invalid_argument("lambda: order out of range");
  return rational_to_double(cumulants[j]) / std::pow(sigma(), j);
}

double LatticeDistribution::big_lambda(int j) const {
  // beta_2 = sigma^2 always, so Lambda_2 = 1 even for the analytic family,
  // whose higher absolute moments are not materialized.
  if (kind == Kind::poisson_unit) {
    if (j == 2) return 1.0;
    throw std::invalid_argument("big_lambda: only order 2 for the analytic family");
  }
  if (j < 0 || j >= static_cast<int>(abs_central_moments.size()))
    throw std::invalid_argument("big_lambda: order out of range");
  return rational_to_double(abs_central_moments[j]) / std::pow(sigma(), j);
}

std::optional<BigRational> LatticeDistribution::prob_at(long x) const {
  if (kind != Kind::finite_pmf) return std::nullopt;
  for (const auto& [v, p] : pmf)
    if (v == x) return p;
  return BigRational(0);
}

double LatticeDistribution::lattice_margin() const {
  if (kind == Kind::poisson_unit) return std::exp(-1.0);  // P(0) = P(1) = 1/e, sigma^2 = 1
  double p0 = rational_to_double(*prob_at(0));
  double p1 = rational_to_double(*prob_at(1));
  return std::min(p0, p1) / rational_to_double(variance);
}

std::vector<BigRational> moments_to_cumulants(std::span<const BigRational> raw) {
  if (raw.size() < 3) throw std::invalid_argument("moments_to_cumulants: need order >= 2");
  const int J = static_cast<int>(raw.size()) - 1;
  std::vector<BigRational> g(J + 1, BigRational(0));
  for (int n = 1; n <= J; ++n) {
    BigRational acc = raw[n];
    for (int k = 1; k < n; ++k)
      acc -= BigRational(binomial_coefficient(n - 1, k - 1)) * g[k] * raw[n - k];
    g[n] = acc;
  }
  return g;
}

LatticeDistribution lattice_stats(std::vector<std::pair<long, BigRational>> pmf, int J) {
  if (J < 2) throw std::invalid_argument("lattice_stats: J must be >= 2");
  std::erase_if(pmf, [](const auto& e) { return e.second == 0; });
  std::sort(pmf.begin(), pmf.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 0; i + 1 < pmf.size(); ++i)
    if (pmf[i].first == pmf[i + 1].first)
      throw std::invalid_argument("lattice_stats: duplicate support point");
  BigRational total(0);
  for (const auto& [v, p] : pmf) {
    if (p < 0) throw std::invalid_argument("lattice_stats: negative probability");
    total += p;
  }
  if (total != 1) throw std::invalid_argument("lattice_stats: probabilities must sum to 1");
  if (pmf.size() < 2)
    throw std::invalid_argument("lattice_stats: need at least two support points");

  LatticeDistribution d;
  d.kind = LatticeDistribution::Kind::finite_pmf;
  d.pmf = std::move(pmf);
  d.max_order = J;

  d.raw_moments.assign(J + 1, BigRational(0));
  d.raw_moments[0] = 1;
  for (const auto& [v, p] : d.pmf) {
    BigRational xpow(1);
    for (int j = 1; j <= J; ++j) {
      xpow *= v;
      d.raw_moments[j] += p * xpow;
    }
  }
  d.cumulants = moments_to_cumulants(d.raw_moments);
  d.mean = d.cumulants[1];
  d.variance = d.cumulants[2];

  d.abs_central_moments.assign(J + 1, BigRational(0));
  d.abs_central_moments[0] = 1;
  for (const auto& [v, p] : d.pmf) {
    BigRational dev = BigRational(v) - d.mean;
    if (dev < 0) dev = -dev;
    BigRational dpow(1);
    for (int j = 1; j <= J; ++j) {
      dpow *= dev;
      d.abs_central_moments[j] += p * dpow;
    }
  }

  long g = 0;
  for (const auto& [v, p] : d.pmf) g = std::gcd(g, std::abs(v - d.pmf.front().first));
  d.span = g;

  if (d.variance == 0)
    throw std::invalid_argument("lattice_stats: degenerate distribution (sigma = 0)");
  return d;
}

LatticeDistribution bernoulli_distribution(const BigRational& p, int J) {
  if (p <= 0 || p >= 1)
    throw std::invalid_argument("bernoulli_distribution: p must lie in (0,1)");
  return lattice_stats({{0, 1 - p}, {1, p}}, J);
}

LatticeDistribution poisson1_analytic(int J) {
  if (J < 2) throw std::invalid_argument("poisson1_analytic: J must be >= 2");
  LatticeDistribution d;
  d.kind = LatticeDistribution::Kind::poisson_unit;
  d.max_order = J;
  d.cumulants.assign(J + 1, BigRational(1));
  d.cumulants[0] = 0;
  d.mean = 1;
  d.variance = 1;
  d.span = 1;
  // Raw moments follow from the cumulants (these are the Bell numbers).
  d.raw_moments.assign(J + 1, BigRational(0));
  d.raw_moments[0] = 1;
  for (int n = 1; n <= J; ++n) {
    BigRational acc(0);
    for (int k = 1; k <= n; ++k)
      acc += BigRational(binomial_coefficient(n - 1, k - 1)) * d.raw_moments[n - k];
    d.raw_moments[n] = acc;
  }
  return d;
}

CharBoundReport char_function_bound_check(const LatticeDistribution& dist, double a,
                                          std::span<const double> t_grid) {
  const double pi = 3.14159265358979323846;
  auto p0 = dist.kind == LatticeDistribution::Kind::poisson_unit
                ? std::exp(-1.0)
                : rational_to_double(*dist.prob_at(0));
  auto p1 = dist.kind == LatticeDistribution::Kind::poisson_unit
                ? std::exp(-1.0)
                : rational_to_double(*dist.prob_at(1));
  if (p0 < a || p1 < a)
    throw std::invalid_argument("char_function_bound_check: need P(0) >= a and P(1) >= a");

  CharBoundReport rep;
  bool first = true;
  for (double t : t_grid) {
    if (std::abs(t) > pi + 1e-12) continue;
    double modulus;
    if (dist.kind == LatticeDistribution::Kind::poisson_unit) {
      modulus = std::exp(std::cos(t) - 1.0);  // |exp(e^{it} - 1)|
    } else {
      std::complex<double> f(0.0, 0.0);
      for (const auto& [v, p] : dist.pmf)
        f += rational_to_double(p) * std::exp(std::complex<double>(0.0, t * v));
      modulus = std::abs(f);
    }
    double bound = 1.0 - (a / (pi * pi)) * t * t;
    double margin = bound - modulus;
    if (first || margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_t = t;
      first = false;
    }
  }
  rep.holds = !first && rep.worst_margin >= -1e-12;
  return rep;
}

}  // namespace edgelat
