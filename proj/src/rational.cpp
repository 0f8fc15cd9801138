#include "edgelat/rational.hpp"

#include <mpfr.h>

#include <stdexcept>

namespace edgelat {

BigRational rational_from_string(const std::string& text) {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0)
    throw std::invalid_argument("not a rational: '" + text + "'");
  if (q.get_den() == 0)
    throw std::invalid_argument("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

std::string rational_to_string(const BigRational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double rational_to_double(const BigRational& q) {
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDN);
  double d = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return d;
}

BigInt binomial_coefficient(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace edgelat
