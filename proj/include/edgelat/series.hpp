#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "edgelat/rational.hpp"

namespace edgelat {

// Dense polynomial, index = degree. Trailing zeros are normalized away and
// the zero polynomial has degree -1.
template <typename T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(T v) { return Polynomial(std::vector<T>{std::move(v)}); }
  // Single term c * x^r.
  static Polynomial term(T c, int r) {
    std::vector<T> v(r + 1, T(0));
    v[r] = std::move(c);
    return Polynomial(std::move(v));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  T at(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : T(0);
  }
  const std::vector<T>& coefficients() const { return c_; }

  Polynomial& operator+=(const Polynomial& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), T(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), T(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<T> out(a.c_.size() + b.c_.size() - 1, T(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(out));
  }

  Polynomial scaled(const T& s) const {
    std::vector<T> out(c_);
    for (auto& v : out) v = v * s;
    return Polynomial(std::move(out));
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<T> out(c_.size() - 1, T(0));
    for (size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * T(static_cast<int>(i));
    return Polynomial(std::move(out));
  }

  // x * P(x).
  Polynomial times_x() const {
    if (is_zero()) return Polynomial();
    std::vector<T> out(c_.size() + 1, T(0));
    for (size_t i = 0; i < c_.size(); ++i) out[i + 1] = c_[i];
    return Polynomial(std::move(out));
  }

  bool operator==(const Polynomial& o) const { return c_ == o.c_; }

 private:
  std::vector<T> c_;
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }
};

BigRational eval(const Polynomial<BigRational>& p, const BigRational& x);
double eval(const Polynomial<BigRational>& p, double x);
double eval(const Polynomial<double>& p, double x);
Polynomial<double> to_double_poly(const Polynomial<BigRational>& p);

// Probabilists' Hermite polynomial He_r, via
// He_{r+1}(x) = x He_r(x) - r He_{r-1}(x), He_0 = 1, He_1 = x.
Polynomial<BigRational> hermite_polynomial(int r);

// B_0..B_rmax with B_1 = -1/2, from sum_{j<=r} C(r+1,j) B_j = 0.
std::vector<BigRational> bernoulli_numbers(int r_max);

// B_r(x) = sum_k C(r,k) B_k x^{r-k}.
Polynomial<BigRational> bernoulli_polynomial(int r);

// Fractional part in [0,1), with frac(integer) = 0.
double fractional_part(double x);

// psi_1(x) = 1/2 - {x} (right-continuous at integers);
// psi_r(x) = -B_r({x}) / r! for r >= 2. Period 1.
double psi(int r, double x);

// Left-continuous variant of psi_1: equals psi_1 off the integers and -1/2
// at them. This is the one-sided value that drives strict CDF variants.
double psi1_left(double x);

double normal_pdf(double x);
double normal_cdf(double x);

// Formal power series in z, truncated at order K, whose z-coefficients are
// polynomials in an auxiliary variable.
struct TruncatedUSeries {
  int order = 0;
  std::vector<Polynomial<BigRational>> z;  // size order + 1

  explicit TruncatedUSeries(int K = 0) : order(K), z(K + 1) {}

  TruncatedUSeries add(const TruncatedUSeries& o) const;
  TruncatedUSeries mul(const TruncatedUSeries& o) const;
  TruncatedUSeries negated() const;
  bool operator==(const TruncatedUSeries& o) const;
  static TruncatedUSeries one(int K);
};

// exp(S) truncated at S.order, computed from E' = S'E on z-coefficients:
// E_j = (1/j) sum_{i=1..j} i S_i E_{j-i}. Requires S_0 = 0.
TruncatedUSeries series_exp(const TruncatedUSeries& s);

}  // namespace edgelat
