#pragma once

#include <functional>
#include <map>
#include <vector>

#include "edgelat/cumulants.hpp"
#include "edgelat/series.hpp"

namespace edgelat {

// Exact Laurent combination sum_s c_s sigma^s (integer s, possibly
// negative). Expansion coefficients are assembled in this form so that all
// kernel arithmetic stays rational; sigma is substituted only at evaluation.
class SigmaSeries {
 public:
  SigmaSeries() = default;
  SigmaSeries(int v) {
    if (v != 0) t_[0] = v;
  }
  SigmaSeries(const BigRational& c, int power = 0) {
    if (c != 0) t_[power] = c;
  }

  SigmaSeries& operator+=(const SigmaSeries& o);
  SigmaSeries& operator-=(const SigmaSeries& o);
  friend SigmaSeries operator+(SigmaSeries a, const SigmaSeries& b) { return a += b; }
  friend SigmaSeries operator-(SigmaSeries a, const SigmaSeries& b) { return a -= b; }
  friend SigmaSeries operator*(const SigmaSeries& a, const SigmaSeries& b);
  SigmaSeries operator-() const;

  bool is_zero() const { return t_.empty(); }
  bool operator==(const SigmaSeries& o) const { return t_ == o.t_; }
  BigRational coefficient(int power) const;
  const std::map<int, BigRational>& terms() const { return t_; }
  double eval(double sigma) const;
  // Exact value when sigma = 1 (all powers collapse).
  BigRational at_sigma_one() const;

 private:
  std::map<int, BigRational> t_;
  void prune();
};

// a * Phi(x) + phi(x) * P(x). The family is closed under differentiation:
// (a Phi + phi P)' = phi (a + P' - x P), so derivatives stay symbolic.
template <typename T>
struct GaussCombo {
  T phi_coefficient{};       // a
  Polynomial<T> density_poly;  // P

  GaussCombo derivative() const {
    Polynomial<T> p = Polynomial<T>::constant(phi_coefficient) + density_poly.derivative() -
                      density_poly.times_x();
    return {T(0), std::move(p)};
  }
  GaussCombo derivative(int times) const {
    GaussCombo g = *this;
    for (int i = 0; i < times; ++i) g = g.derivative();
    return g;
  }
  GaussCombo& operator+=(const GaussCombo& o) {
    phi_coefficient += o.phi_coefficient;
    density_poly += o.density_poly;
    return *this;
  }
  GaussCombo scaled(const T& s) const {
    GaussCombo g;
    g.phi_coefficient = phi_coefficient * s;
    g.density_poly = density_poly.scaled(s);
    return g;
  }
};

double eval(const GaussCombo<double>& g, double x);
GaussCombo<double> to_numeric(const GaussCombo<SigmaSeries>& g, double sigma);

// pi_{jr} tables of the expansion polynomials P_j. Internally the series is
// run in v = sigma * u so the coefficients rho_{jr} are plain rationals and
// pi_{jr} = rho_{jr} sigma^{-r}.
struct PiTable {
  int order = 0;
  std::vector<Polynomial<BigRational>> p_of_v;  // j = 0..order

  BigRational rho(int j, int r) const { return p_of_v.at(j).at(r); }
  SigmaSeries pi(int j, int r) const { return SigmaSeries(rho(j, r), -r); }
};

// Builds the pi table from the distribution's cumulants (needed up to
// order k + 2).
PiTable edgeworth_polynomials(const LatticeDistribution& dist, int k);

struct EdgeworthModel {
  LatticeDistribution dist;
  int order = 0;  // k
  PiTable pi;
  std::vector<GaussCombo<SigmaSeries>> q_exact;  // Q_j, exact kernel
  std::vector<GaussCombo<double>> q_num;         // Q_j at this sigma
  double mu = 0.0;
  double sigma = 1.0;

  // sigma sqrt(n) >= log n, the regime where the remainder bound applies.
  bool guarantee_regime(long n) const;
};

EdgeworthModel build_model(const LatticeDistribution& dist, int k);

// Q_j as numeric combos (Q_0 = Phi).
const std::vector<GaussCombo<double>>& q_functions(const EdgeworthModel& model);

// H_{n,kk}(x) = Phi(x) + sum_{j=1..kk} n^{-j/2} Q_j(x).
GaussCombo<double> h_function(const EdgeworthModel& model, long n, int kk);
inline GaussCombo<double> h_function(const EdgeworthModel& model, long n) {
  return h_function(model, n, model.order);
}

enum class CorrectionVariant {
  full,        // psi_l terms against H_{n,k}^{(l)}
  simplified,  // psi_l terms against H_{n,k-l}^{(l)} (redundant orders dropped)
};

// Precomputed evaluator of the lattice-corrected CDF approximation for one
// (model, n). Evaluations are pure and cheap.
class ExpansionEvaluator {
 public:
  ExpansionEvaluator(const EdgeworthModel& model, long n, CorrectionVariant variant);

  // x is the standardized coordinate; the CDF argument is n mu + x sigma sqrt(n).
  double evaluate(double x, bool strict) const;
  // Evaluation exactly at the lattice point t (integer CDF argument), from
  // the right (CDF value) or as the left limit.
  double evaluate_at_lattice(long long t, bool left_limit) const;

  double x_of_lattice(long long t) const;
  long n() const { return n_; }

 private:
  double evaluate_inner(double x, double psi1_value) const;

  long n_ = 0;
  int k_ = 0;
  double mu_ = 0.0, sigma_ = 1.0, sqrt_n_ = 1.0;
  GaussCombo<double> h_top_;                    // H_{n,k}
  std::vector<GaussCombo<double>> h_deriv_;     // index l = 1..k
  std::vector<double> scale_;                   // (-1)^{l-1} n^{-l/2} sigma^{-l}
};

// One-shot evaluation of the corrected approximation.
double lattice_cdf_approx(const EdgeworthModel& model, long n, double x,
                          CorrectionVariant variant, bool strict);

// Integer-mean expansion P(S_n <= n mu) ~ 1/2 + sum_m n^{-m/2} c_m, with the
// coefficients kept exact: c_m = phi(0) * coeff[m](sigma). The strict
// variant flips the sign of every l = 1 term.
struct IntegerMeanExpansion {
  int order = 0;
  bool strict = false;
  std::vector<SigmaSeries> coeff;  // index m = 1..order ([0] unused)

  double evaluate(double n, double sigma) const;
  // The numeric coefficient of n^{-m/2}.
  double coefficient(int m, double sigma) const;
};

IntegerMeanExpansion assemble_integer_mean(const EdgeworthModel& model, bool strict);

// Requires n mu integer and span 1.
double integer_mean_expansion(const LatticeDistribution& dist, long n, int k, bool strict);

// Exact CDF oracle: t -> P(S_n <= t) (strict: P(S_n < t)).
using ExactCdf = std::function<double(long long t, bool strict)>;

struct ExpansionEvaluation {
  double x = 0.0;
  double approx = 0.0;
  double exact = 0.0;
  bool lattice = false;
  bool left_limit = false;
  double residual() const { return approx - exact; }
};

struct GridSpec {
  double x_lo = -5.0;
  double x_hi = 5.0;
  int points = 401;
  bool lattice_sides = true;  // add both one-sided limits at lattice points
};

struct ResidualScan {
  long n = 0;
  int k = 0;
  double sup_residual = 0.0;
  bool in_guarantee = false;
  std::vector<ExpansionEvaluation> points;
};

// Sup |approx - exact| over the grid; with lattice_sides the scan visits
// both one-sided limits at every lattice point in range (where psi_1 jumps).
ResidualScan residual_scan(const EdgeworthModel& model, long n, const GridSpec& grid,
                           const ExactCdf& oracle,
                           CorrectionVariant variant = CorrectionVariant::simplified,
                           bool parallel = false);

}  // namespace edgelat
