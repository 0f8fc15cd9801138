#pragma once

#include <vector>

#include "edgelat/highprec.hpp"
#include "edgelat/rational.hpp"

namespace edgelat {

// One tail-probability request against Bi(n, m/n): P(S < t) or P(S <= t).
struct TailQuery {
  long n = 1;
  long m = 0;  // success probability is m/n
  long threshold = 0;
  bool strict = false;
};

// P(Bi(n, m/n) <= t) (or < t) as an exact rational.
BigRational binomial_cdf_exact(long n, long m, long t, bool strict);
BigRational binomial_tail(const TailQuery& q);

// Same CDF for an arbitrary rational p in (0,1).
BigRational binomial_cdf_exact_p(long n, const BigRational& p, long t, bool strict);

struct ChvatalQ {
  BigRational le;  // q_m   = P(Bi(n, m/n) <= m)
  BigRational lt;  // q'_m  = P(Bi(n, m/n) <  m)
};
ChvatalQ chvatal_q(long n, long m);

// All numerators of q_m and q'_m over the shared denominator n^n, for
// m = 0..n. With use_symmetry the upper half is derived from the exact
// reflection identity 1 - q_m = q'_{n-m}; with parallel the per-m scans run
// under OpenMP (results are identical either way).
struct BinomialQScan {
  long n = 0;
  BigInt denominator;        // n^n
  std::vector<BigInt> a_le;  // q_m numerators
  std::vector<BigInt> a_lt;  // q'_m numerators

  BigRational q(long m) const;
  BigRational q_strict(long m) const;
};
BinomialQScan chvatal_q_scan(long n, bool use_symmetry = true, bool parallel = false);

// P(Po(rate) <= t) (or < t) with a certified error bound. The pmf is summed
// exactly over a window around the mean wide enough for the requested
// precision; mass outside the window (and beyond the cutoff
// rate + 20 sqrt(rate) + 50 for oversized thresholds) is bounded by Chernoff
// estimates folded into error_bound.
HighPrecisionReal poisson_cdf(const BigRational& rate, long t, bool strict,
                              int precision_bits);

// CDF values P(Po(rate) <= t) for every t in [t_lo, t_hi], sharing one scan.
std::vector<HighPrecisionReal> poisson_cdf_batch(const BigRational& rate, long t_lo,
                                                 long t_hi, int precision_bits);

// (1/2) sum_k |P(Bi(n,p)=k) - P(Po(np)=k)|, certified. The Poisson mass
// beyond k = n enters through an exact 1 - CDF enclosure.
HighPrecisionReal total_variation_binomial_poisson(long n, const BigRational& p,
                                                   int precision_bits);

struct PoissonPairCheck {
  long m = 0;
  bool strict_increasing = false;   // P(Po(m)<m) < P(Po(m+1)<m+1)
  bool nonstrict_decreasing = false;  // P(Po(m)<=m) > P(Po(m+1)<=m+1)
  bool strict_below_half = false;
  bool nonstrict_above_half = false;
  bool certified = false;  // all four margins exceeded the combined error bounds
};

struct PoissonMonotonicityReport {
  long m_max = 0;
  int precision_bits = 0;
  bool all_hold = false;
  bool all_certified = false;
  std::vector<PoissonPairCheck> problems;  // only uncertified or violated entries
  long pairs_checked = 0;
};

// Certifies, for every 1 <= m < m_max,
//   P(Po(m)<m) < P(Po(m+1)<m+1) < 1/2  and  P(Po(m)<=m) > P(Po(m+1)<=m+1) > 1/2,
// each with margin exceeding the combined error bounds. Never silently
// passes: comparisons too tight for the precision are reported.
PoissonMonotonicityReport verify_poisson_monotonicity(long m_max, int precision_bits);

}  // namespace edgelat
