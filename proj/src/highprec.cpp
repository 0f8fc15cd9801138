#include "edgelat/highprec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace edgelat {

std::string Real::str(int digits) const {
  char buf[512];
  mpfr_snprintf(buf, sizeof(buf), "%.*Rg", digits, v_);
  return buf;
}

double add_up(double a, double b) {
  double s = a + b;
  return std::nextafter(s, std::numeric_limits<double>::infinity());
}

Interval Interval::from_rational(const BigRational& q, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_integer(const BigInt& z, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_z(r.lo_.get(), z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_.get(), z.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_ulong(unsigned long v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_ui(r.lo_.get(), v, MPFR_RNDD);
  mpfr_set_ui(r.hi_.get(), v, MPFR_RNDU);
  return r;
}

Interval Interval::exp_neg(const BigRational& x, mpfr_prec_t prec) {
  Interval r(prec);
  Real t(prec + 16);
  // exp is increasing, so directed endpoints of -x map to directed results.
  mpfr_set_q(t.get(), x.get_mpq_t(), MPFR_RNDU);
  mpfr_neg(t.get(), t.get(), MPFR_RNDD);
  mpfr_exp(r.lo_.get(), t.get(), MPFR_RNDD);
  mpfr_set_q(t.get(), x.get_mpq_t(), MPFR_RNDD);
  mpfr_neg(t.get(), t.get(), MPFR_RNDU);
  mpfr_exp(r.hi_.get(), t.get(), MPFR_RNDU);
  return r;
}

Interval Interval::factorial(unsigned long n, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_fac_ui(r.lo_.get(), n, MPFR_RNDD);
  mpfr_fac_ui(r.hi_.get(), n, MPFR_RNDU);
  return r;
}

Interval Interval::from_center_radius(const Real& center, double radius, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_sub_d(r.lo_.get(), center.get(), radius, MPFR_RNDD);
  mpfr_add_d(r.hi_.get(), center.get(), radius, MPFR_RNDU);
  return r;
}

Interval Interval::add(const Interval& o) const {
  Interval r(precision());
  mpfr_add(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::sub(const Interval& o) const {
  Interval r(precision());
  mpfr_sub(r.lo_.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
  mpfr_sub(r.hi_.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::mul(const Interval& o) const {
  // General sign handling: outward-rounded min/max over endpoint products.
  Interval r(precision());
  Real t(precision());
  bool first = true;
  mpfr_srcptr a[2] = {lo_.get(), hi_.get()};
  mpfr_srcptr b[2] = {o.lo_.get(), o.hi_.get()};
  for (auto x : a)
    for (auto y : b) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t.get(), r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t.get(), r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  return r;
}

Interval Interval::div(const Interval& o) const {
  if (o.contains_zero()) throw std::invalid_argument("interval division by zero");
  Interval r(precision());
  Real t(precision());
  bool first = true;
  mpfr_srcptr a[2] = {lo_.get(), hi_.get()};
  mpfr_srcptr b[2] = {o.lo_.get(), o.hi_.get()};
  for (auto x : a)
    for (auto y : b) {
      mpfr_div(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t.get(), r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t.get(), r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  return r;
}

Interval Interval::abs() const {
  Interval r(precision());
  if (mpfr_sgn(lo_.get()) >= 0) return *this;
  if (mpfr_sgn(hi_.get()) <= 0) {
    mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
    return r;
  }
  mpfr_set_zero(r.lo_.get(), 1);
  Real t(precision());
  mpfr_neg(t.get(), lo_.get(), MPFR_RNDU);
  if (mpfr_cmp(t.get(), hi_.get()) > 0)
    mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
  else
    mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::pow_ui(unsigned long e) const {
  if (mpfr_sgn(lo_.get()) < 0) throw std::invalid_argument("pow_ui needs nonnegative base");
  Interval r(precision());
  mpfr_pow_ui(r.lo_.get(), lo_.get(), e, MPFR_RNDD);
  mpfr_pow_ui(r.hi_.get(), hi_.get(), e, MPFR_RNDU);
  return r;
}

bool Interval::contains_zero() const {
  return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

double Interval::width_upper() const {
  Real w(precision());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w.to_double(MPFR_RNDU);
}

HighPrecisionReal HighPrecisionReal::from_interval(const Interval& iv, mpfr_prec_t prec) {
  HighPrecisionReal r{Real(prec), 0.0};
  Real mid(prec + 8);
  mpfr_add(mid.get(), iv.lo().get(), iv.hi().get(), MPFR_RNDN);
  mpfr_div_ui(mid.get(), mid.get(), 2, MPFR_RNDN);
  mpfr_set(r.value.get(), mid.get(), MPFR_RNDN);
  // Error: distance from the rounded midpoint to either endpoint.
  Real d(prec + 8);
  mpfr_sub(d.get(), iv.hi().get(), r.value.get(), MPFR_RNDU);
  double e1 = d.to_double(MPFR_RNDU);
  mpfr_sub(d.get(), r.value.get(), iv.lo().get(), MPFR_RNDU);
  double e2 = d.to_double(MPFR_RNDU);
  r.error_bound = std::max(e1, e2);
  if (r.error_bound < 0) r.error_bound = 0;
  return r;
}

HighPrecisionReal HighPrecisionReal::exact_rational(const BigRational& q, mpfr_prec_t prec) {
  return from_interval(Interval::from_rational(q, prec), prec);
}

Interval HighPrecisionReal::enclosure(mpfr_prec_t prec) const {
  return Interval::from_center_radius(value, error_bound, prec);
}

CertifiedOrder certified_compare(const HighPrecisionReal& a, const HighPrecisionReal& b) {
  mpfr_prec_t prec = std::max(a.value.precision(), b.value.precision()) + 32;
  double combined = add_up(a.error_bound, b.error_bound);
  Real d(prec);
  mpfr_sub(d.get(), b.value.get(), a.value.get(), MPFR_RNDD);
  if (mpfr_cmp_d(d.get(), combined) > 0) return CertifiedOrder::less;
  mpfr_sub(d.get(), a.value.get(), b.value.get(), MPFR_RNDD);
  if (mpfr_cmp_d(d.get(), combined) > 0) return CertifiedOrder::greater;
  return CertifiedOrder::uncertified;
}

CertifiedOrder certified_compare(const HighPrecisionReal& a, const BigRational& b) {
  mpfr_prec_t prec = a.value.precision() + 32;
  Real bb(prec);
  Real d(prec);
  mpfr_set_q(bb.get(), b.get_mpq_t(), MPFR_RNDN);
  // bb is within half an ulp of b; absorb that into the slack.
  double slack = add_up(a.error_bound, std::ldexp(std::abs(rational_to_double(b)) + 1.0, -(int)prec + 4));
  mpfr_sub(d.get(), bb.get(), a.value.get(), MPFR_RNDD);
  if (mpfr_cmp_d(d.get(), slack) > 0) return CertifiedOrder::less;
  mpfr_sub(d.get(), a.value.get(), bb.get(), MPFR_RNDD);
  if (mpfr_cmp_d(d.get(), slack) > 0) return CertifiedOrder::greater;
  return CertifiedOrder::uncertified;
}

}  // namespace edgelat
