#pragma once

#include <mpfr.h>

#include <string>

#include "edgelat/rational.hpp"

namespace edgelat {

// RAII value type over a single mpfr number at a fixed precision.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 192) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, 8);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  double to_double(mpfr_rnd_t r = MPFR_RNDN) const { return mpfr_get_d(v_, r); }
  std::string str(int digits = 25) const;

 private:
  mpfr_t v_;
};

// Closed enclosure [lo, hi] of a real number, maintained with outward
// directed rounding so that the true value is never lost.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 192) : lo_(prec), hi_(prec) {}

  static Interval from_rational(const BigRational& q, mpfr_prec_t prec);
  static Interval from_integer(const BigInt& z, mpfr_prec_t prec);
  static Interval from_ulong(unsigned long v, mpfr_prec_t prec);
  static Interval from_center_radius(const Real& center, double radius, mpfr_prec_t prec);
  static Interval one(mpfr_prec_t prec) { return from_ulong(1, prec); }
  // Enclosure of exp(-x) for rational x.
  static Interval exp_neg(const BigRational& x, mpfr_prec_t prec);
  static Interval factorial(unsigned long n, mpfr_prec_t prec);

  Interval add(const Interval& o) const;
  Interval sub(const Interval& o) const;
  Interval mul(const Interval& o) const;
  // Divisor interval must not contain zero.
  Interval div(const Interval& o) const;
  Interval abs() const;
  // Requires a nonnegative lower endpoint.
  Interval pow_ui(unsigned long e) const;

  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }
  mpfr_prec_t precision() const { return lo_.precision(); }
  bool contains_zero() const;
  // Upper bound on hi - lo as a double (rounded up, never underflows to 0
  // unless the interval is a point).
  double width_upper() const;

 private:
  Real lo_, hi_;
};

// A certified scalar: the true value lies within error_bound of `value`.
struct HighPrecisionReal {
  Real value;
  double error_bound = 0.0;

  double to_double() const { return value.to_double(); }
  Interval enclosure(mpfr_prec_t prec) const;
  static HighPrecisionReal from_interval(const Interval& iv, mpfr_prec_t prec);
  static HighPrecisionReal exact_rational(const BigRational& q, mpfr_prec_t prec);
};

enum class CertifiedOrder { less, greater, uncertified };

// Decides a < b or a > b only when the separation exceeds the combined
// error bounds; anything tighter is reported as uncertified.
CertifiedOrder certified_compare(const HighPrecisionReal& a, const HighPrecisionReal& b);
CertifiedOrder certified_compare(const HighPrecisionReal& a, const BigRational& b);

// Conservative double arithmetic used when accumulating error bounds.
double add_up(double a, double b);

}  // namespace edgelat
