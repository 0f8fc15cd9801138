#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "edgelat/chvatal.hpp"
#include "edgelat/edgeworth.hpp"
#include "edgelat/exactprob.hpp"

namespace edgelat {

// Batch drivers. Each kernel has an OpenMP-parallel form and a serial
// reference form producing identical output; the bench target times the two
// against each other and the tests assert equality.

struct RangeVerification {
  std::vector<ChvatalSummary> reports;  // ordered by n
  bool all_match = false;
  bool all_unimodal = false;
  long first_failure_n = -1;
};

RangeVerification verify_chvatal_range(long n_lo, long n_hi, bool parallel);
inline RangeVerification verify_chvatal_range_serial(long n_lo, long n_hi) {
  return verify_chvatal_range(n_lo, n_hi, false);
}

// Poisson median monotonicity over m = 1..m_max. The parallel form computes
// the per-m CDF pairs concurrently and compares serially, so the report is
// identical to the serial one.
PoissonMonotonicityReport poisson_chain(long m_max, int precision_bits, bool parallel);
inline PoissonMonotonicityReport poisson_chain_serial(long m_max, int precision_bits) {
  return poisson_chain(m_max, precision_bits, false);
}

// Least-squares slope of y against x (used on log-log residual data).
double fitted_slope(std::span<const std::pair<double, double>> xy);

struct ResidualStudyRow {
  long n = 0;
  double sup_residual = 0.0;
  bool in_guarantee = false;
};

struct ResidualStudy {
  int k = 0;
  std::vector<ResidualStudyRow> rows;
  std::optional<double> slope;  // over qualified rows only; absent if < 3
  int qualified = 0;
};

// Which source distribution a residual study runs against.
struct StudyDistribution {
  enum class Family { bernoulli, poisson_unit };
  Family family = Family::bernoulli;
  BigRational p;  // bernoulli only

  static StudyDistribution bernoulli(const BigRational& p) {
    return {Family::bernoulli, p};
  }
  static StudyDistribution poisson1() {
    return {Family::poisson_unit, BigRational(0)};
  }
};

// Sup-norm residuals of the lattice-corrected expansion against the exact
// oracle, for each n in ns, plus the log-log slope over the n that satisfy
// sigma sqrt(n) >= log n. For Bernoulli the oracle is the exact rational
// binomial CDF; for the unit Poisson it is the certified Poisson CDF.
ResidualStudy residual_study(const StudyDistribution& dist, int k, std::span<const long> ns,
                             const GridSpec& grid, int precision_bits, bool parallel);

// Exact-oracle adapters.
ExactCdf make_bernoulli_oracle(long n, const BigRational& p);
ExactCdf make_poisson_oracle(long n, int precision_bits);

}  // namespace edgelat
