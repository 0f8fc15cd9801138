#pragma once

#include <vector>

#include "edgelat/exactprob.hpp"
#include "edgelat/rational.hpp"

namespace edgelat {

// Verdict for one n: all comparisons of q_m = P(Bi(n, m/n) <= m) are exact.
struct ChvatalSummary {
  long n = 0;
  long argmin_m = -1;
  long target_m = -1;  // integer nearest to 2n/3 (never a tie)
  bool argmin_tied = false;
  bool unimodal = false;           // strict decrease then strict increase
  bool matches_conjecture = false;
  std::vector<long> sign_changes;  // m where sign(q_{m+1}-q_m) flips
  // q_{m-1} > q_m for all 1 <= m <= n/2 (strict decrease below half).
  bool decreasing_below_half = false;
  // sign(q_{m+1}-q_m) == sign(m + 1/2 - 2n/3) for every m; exceptions listed.
  bool sign_pattern_holds = false;
  std::vector<long> sign_exceptions;
};

struct ChvatalReport {
  ChvatalSummary summary;
  std::vector<BigRational> q_values;  // q_m for m = 0..n
  std::vector<int> sign_pattern;      // sign(q_{m+1}-q_m), m = 0..n-1
};

long nearest_to_two_thirds(long n);

ChvatalSummary chvatal_summary(const BinomialQScan& scan);
ChvatalReport verify_chvatal(long n);

// q_{m-1} > q_m for all 1 <= m <= n/2, exactly.
bool rigollet_tong_check(long n);

// Closed-form coefficients of the integer-mean binomial expansion.
double h1_closed(const BigRational& p);
double h3_closed(const BigRational& p);
double h1_prime(const BigRational& p);

struct CriticalConstants {
  double h1_pp_23 = 0.0;  // h1''(2/3)
  double h3_p_23 = 0.0;   // h3'(2/3)
  double ratio = 0.0;     // h3'(2/3) / h1''(2/3)
};
// Richardson-extrapolated central differences of the closed forms at 2/3.
CriticalConstants critical_constants();

enum class DifferenceRegime {
  poisson_low,      // m < 2 log^2 n
  bulk_low,         // 2 log^2 n <= m <= n/2
  bulk_mid,         // n/2 < m < 2n/3 - C
  critical_window,  // |m - 2n/3| <= C
  bulk_high,        // 2n/3 + C < m <= n - 2 log^2 n
  poisson_high,     // m > n - 2 log^2 n
};

struct QDifferencePrediction {
  double predicted = 0.0;
  DifferenceRegime regime = DifferenceRegime::bulk_low;
};

// Leading-order prediction of q_{m+1} - q_m. Diagnostic only; the window
// half-width C = 10 and the 2 log^2 n cutoffs are conventions, not tuned.
QDifferencePrediction predict_q_difference(long n, long m);

// One row of the fixed-n scan over p: exact values of P(Bi(n,p) <= floor(np))
// and P(Bi(n,p) < np), the two-term sawtooth approximation and its residual.
struct ScanRow {
  BigRational p;
  BigRational cdf_le;
  BigRational cdf_lt;
  double rp_approx = 0.0;
  double rp_residual = 0.0;
  bool lattice = false;     // p = m/n
  bool left_limit = false;  // values as p approaches m/n from below
};

std::vector<ScanRow> scan_fixed_n(long n, int grid_points);

}  // namespace edgelat
