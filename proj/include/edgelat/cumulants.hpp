#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "edgelat/rational.hpp"

namespace edgelat {

// Integer-valued distribution descriptor: either a finite pmf with exact
// probabilities, or the unit-Poisson analytic family (infinite support,
// closed-form cumulants). Everything the expansion engine consumes -- mean,
// variance, cumulants up to max_order -- is exact rational.
struct LatticeDistribution {
  enum class Kind { finite_pmf, poisson_unit };

  Kind kind = Kind::finite_pmf;
  std::vector<std::pair<long, BigRational>> pmf;  // sorted by value, positive mass only
  int max_order = 2;                              // J
  BigRational mean;                               // mu = gamma_1
  BigRational variance;                           // sigma^2 = gamma_2 = beta_2
  std::vector<BigRational> raw_moments;           // [j] = E X^j, j = 0..J
  std::vector<BigRational> cumulants;             // [j] = gamma_j, j = 0..J ([0] unused)
  std::vector<BigRational> abs_central_moments;   // [j] = E|X-mu|^j; exact for finite pmfs
  long span = 1;

  double sigma() const;
  // lambda_j = gamma_j / sigma^j.
  double lambda(int j) const;
  // Lambda_j = beta_j / sigma^j. Requires a finite pmf.
  double big_lambda(int j) const;
  // Exact point mass; nullopt for the analytic family.
  std::optional<BigRational> prob_at(long x) const;
  // min(P(X=0), P(X=1)) / sigma^2, the lattice non-degeneracy margin.
  double lattice_margin() const;
};

// gamma_n = m_n - sum_{k=1}^{n-1} C(n-1, k-1) gamma_k m_{n-k}, from raw
// moments (raw[0] = 1, raw[j] = E X^j). Returned vector is order-indexed
// with [0] = 0.
std::vector<BigRational> moments_to_cumulants(std::span<const BigRational> raw);

// Builds the full descriptor from a finite pmf. Throws std::invalid_argument
// if the pmf is invalid, has fewer than two support points, or J < 2.
LatticeDistribution lattice_stats(std::vector<std::pair<long, BigRational>> pmf, int J);

// Be(p) on {0,1}; throws on endpoint p.
LatticeDistribution bernoulli_distribution(const BigRational& p, int J);

// Po(1): sigma = mu = 1 and every cumulant equals 1.
LatticeDistribution poisson1_analytic(int J);

struct CharBoundReport {
  double worst_margin = 0.0;  // min over the grid of bound - |E e^{itX}|
  double worst_t = 0.0;
  bool holds = false;
};

// Checks |E e^{itX}| <= 1 - (a/pi^2) t^2 on the given grid of |t| <= pi.
// Requires P(X=0) >= a and P(X=1) >= a.
CharBoundReport char_function_bound_check(const LatticeDistribution& dist, double a,
                                          std::span<const double> t_grid);

}  // namespace edgelat
