#include "edgelat/series.hpp"

#include <array>

namespace edgelat {

BigRational eval(const Polynomial<BigRational>& p, const BigRational& x) {
  BigRational acc(0);
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + p.at(i);
  return acc;
}

double eval(const Polynomial<BigRational>& p, double x) {
  double acc = 0.0;
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + rational_to_double(p.at(i));
  return acc;
}

double eval(const Polynomial<double>& p, double x) {
  double acc = 0.0;
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + p.at(i);
  return acc;
}

Polynomial<double> to_double_poly(const Polynomial<BigRational>& p) {
  std::vector<double> c(p.degree() + 1, 0.0);
  for (int i = 0; i <= p.degree(); ++i) c[i] = rational_to_double(p.at(i));
  return Polynomial<double>(std::move(c));
}

Polynomial<BigRational> hermite_polynomial(int r) {
  if (r < 0) throw std::invalid_argument("hermite_polynomial: r must be >= 0");
  Polynomial<BigRational> prev = Polynomial<BigRational>::constant(BigRational(1));
  if (r == 0) return prev;
  Polynomial<BigRational> cur = Polynomial<BigRational>::term(BigRational(1), 1);
  for (int i = 1; i < r; ++i) {
    Polynomial<BigRational> next = cur.times_x() - prev.scaled(BigRational(i));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::vector<BigRational> bernoulli_numbers(int r_max) {
  if (r_max < 0) throw std::invalid_argument("bernoulli_numbers: r_max must be >= 0");
  std::vector<BigRational> b(r_max + 1);
  b[0] = 1;
  for (int r = 1; r <= r_max; ++r) {
    BigRational acc(0);
    for (int j = 0; j < r; ++j)
      acc += BigRational(binomial_coefficient(r + 1, j)) * b[j];
    b[r] = -acc / BigRational(r + 1);
  }
  return b;
}

Polynomial<BigRational> bernoulli_polynomial(int r) {
  if (r < 0) throw std::invalid_argument("bernoulli_polynomial: r must be >= 0");
  auto b = bernoulli_numbers(r);
  std::vector<BigRational> c(r + 1, BigRational(0));
  for (int k = 0; k <= r; ++k)
    c[r - k] = BigRational(binomial_coefficient(r, k)) * b[k];
  return Polynomial<BigRational>(std::move(c));
}

double fractional_part(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f = 0.0;  // guards the x just below an integer rounding up
  return f;
}

namespace {
constexpr int kPsiCacheMax = 24;

const std::vector<Polynomial<double>>& psi_poly_cache() {
  static const std::vector<Polynomial<double>> cache = [] {
    std::vector<Polynomial<double>> polys;
    polys.reserve(kPsiCacheMax + 1);
    BigRational fact(1);
    for (int r = 0; r <= kPsiCacheMax; ++r) {
      if (r > 0) fact *= r;
      polys.push_back(to_double_poly(bernoulli_polynomial(r).scaled(-1 / fact)));
    }
    return polys;
  }();
  return cache;
}
}  // namespace

double psi(int r, double x) {
  if (r < 1) throw std::invalid_argument("psi: r must be >= 1");
  double f = fractional_part(x);
  if (r == 1) return 0.5 - f;
  if (r <= kPsiCacheMax) return eval(psi_poly_cache()[r], f);
  BigRational fact = factorial(r);
  return eval(bernoulli_polynomial(r).scaled(-1 / fact), f);
}

double psi1_left(double x) {
  double f = fractional_part(x);
  if (f == 0.0) return -0.5;
  return 0.5 - f;
}

double normal_pdf(double x) {
  static const double inv_sqrt_2pi = 0.3989422804014326779;
  return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

TruncatedUSeries TruncatedUSeries::add(const TruncatedUSeries& o) const {
  if (order != o.order) throw std::invalid_argument("series order mismatch");
  TruncatedUSeries r(order);
  for (int j = 0; j <= order; ++j) r.z[j] = z[j] + o.z[j];
  return r;
}

TruncatedUSeries TruncatedUSeries::mul(const TruncatedUSeries& o) const {
  if (order != o.order) throw std::invalid_argument("series order mismatch");
  TruncatedUSeries r(order);
  for (int i = 0; i <= order; ++i) {
    if (z[i].is_zero()) continue;
    for (int j = 0; i + j <= order; ++j) {
      if (o.z[j].is_zero()) continue;
      r.z[i + j] += z[i] * o.z[j];
    }
  }
  return r;
}

TruncatedUSeries TruncatedUSeries::negated() const {
  TruncatedUSeries r(order);
  for (int j = 0; j <= order; ++j) r.z[j] = Polynomial<BigRational>() - z[j];
  return r;
}

bool TruncatedUSeries::operator==(const TruncatedUSeries& o) const {
  return order == o.order && z == o.z;
}

TruncatedUSeries TruncatedUSeries::one(int K) {
  TruncatedUSeries r(K);
  r.z[0] = Polynomial<BigRational>::constant(BigRational(1));
  return r;
}

TruncatedUSeries series_exp(const TruncatedUSeries& s) {
  if (!s.z[0].is_zero())
    throw std::invalid_argument("series_exp: constant term must be zero");
  const int K = s.order;
  TruncatedUSeries e = TruncatedUSeries::one(K);
  for (int j = 1; j <= K; ++j) {
    Polynomial<BigRational> acc;
    for (int i = 1; i <= j; ++i)
      acc += s.z[i].scaled(BigRational(i)) * e.z[j - i];
    e.z[j] = acc.scaled(BigRational(1, j));
  }
  return e;
}

}  // namespace edgelat
