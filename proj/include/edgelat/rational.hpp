#pragma once

#include <gmpxx.h>

#include <string>

namespace edgelat {

using BigInt = mpz_class;

// Exact rational numbers, kept canonical: lowest terms, denominator > 0.
using BigRational = mpq_class;

// Parses "num/den" or a plain integer string.
// Throws std::invalid_argument on malformed input or zero denominator.
BigRational rational_from_string(const std::string& text);

// Formats as "num/den"; the denominator is kept even when it is 1 so that
// CSV cells have a uniform shape.
std::string rational_to_string(const BigRational& q);

// Correctly rounded (to nearest) conversion, safe for huge numerators.
double rational_to_double(const BigRational& q);

BigInt binomial_coefficient(unsigned long n, unsigned long k);
BigInt factorial(unsigned long n);

inline BigRational rational(long num, long den = 1) {
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace edgelat
