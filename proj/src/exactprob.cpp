#include "edgelat/exactprob.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace edgelat {

namespace {

void check_binomial_args(long n, long m) {
  if (n < 1) throw std::invalid_argument("binomial: n must be positive");
  if (m < 0 || m > n) throw std::invalid_argument("binomial: m must lie in [0, n]");
}

// Multiplies v by (num_a * num_b) and divides exactly by (den_a * den_b),
// with the word-sized factors kept apart so the products cannot overflow.
void step_term(mpz_class& v, unsigned long num_a, unsigned long num_b,
               unsigned long den_a, unsigned long den_b) {
  mpz_mul_ui(v.get_mpz_t(), v.get_mpz_t(), num_a);
  mpz_mul_ui(v.get_mpz_t(), v.get_mpz_t(), num_b);
  mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), den_a);
  mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), den_b);
}

}  // namespace

BigRational binomial_cdf_exact(long n, long m, long t, bool strict) {
  check_binomial_args(n, m);
  long T = strict ? t - 1 : t;
  if (m == 0) return BigRational(T >= 0 ? 1 : 0);
  if (m == n) return BigRational(T >= n ? 1 : 0);
  if (T < 0) return BigRational(0);
  if (T >= n) return BigRational(1);

  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), n, n);
  BigInt term;
  mpz_ui_pow_ui(term.get_mpz_t(), n - m, n);  // k = 0: (n-m)^n
  BigInt acc = term;
  for (long k = 0; k < T; ++k) {
    step_term(term, n - k, m, k + 1, n - m);
    acc += term;
  }
  BigRational q(acc, den);
  q.canonicalize();
  return q;
}

BigRational binomial_tail(const TailQuery& q) {
  return binomial_cdf_exact(q.n, q.m, q.threshold, q.strict);
}

BigRational binomial_cdf_exact_p(long n, const BigRational& p, long t, bool strict) {
  if (n < 1) throw std::invalid_argument("binomial: n must be positive");
  if (p < 0 || p > 1) throw std::invalid_argument("binomial: p must lie in [0, 1]");
  const BigInt a = p.get_num();
  const BigInt b = p.get_den();
  long T = strict ? t - 1 : t;
  if (a == 0) return BigRational(T >= 0 ? 1 : 0);
  if (a == b) return BigRational(T >= n ? 1 : 0);
  if (T < 0) return BigRational(0);
  if (T >= n) return BigRational(1);

  BigInt bma = b - a;
  BigInt den, term;
  mpz_pow_ui(den.get_mpz_t(), b.get_mpz_t(), n);
  mpz_pow_ui(term.get_mpz_t(), bma.get_mpz_t(), n);
  BigInt acc = term;
  for (long k = 0; k < T; ++k) {
    // C(n,k+1) a^{k+1} (b-a)^{n-k-1} from the k-th term.
    mpz_mul_ui(term.get_mpz_t(), term.get_mpz_t(), n - k);
    mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), k + 1);
    term *= a;
    mpz_divexact(term.get_mpz_t(), term.get_mpz_t(), bma.get_mpz_t());
    acc += term;
  }
  BigRational q(acc, den);
  q.canonicalize();
  return q;
}

ChvatalQ chvatal_q(long n, long m) {
  check_binomial_args(n, m);
  return {binomial_cdf_exact(n, m, m, false), binomial_cdf_exact(n, m, m, true)};
}

BigRational BinomialQScan::q(long m) const {
  BigRational r(a_le.at(m), denominator);
  r.canonicalize();
  return r;
}

BigRational BinomialQScan::q_strict(long m) const {
  BigRational r(a_lt.at(m), denominator);
  r.canonicalize();
  return r;
}

namespace {

// pow[a] = a^n for a = 0..n, built multiplicatively: big*big products for
// composite bases are much cheaper than n fresh exponentiations.
std::vector<BigInt> base_powers(long n) {
  std::vector<BigInt> pw(n + 1);
  pw[0] = (n == 0) ? 1 : 0;
  if (n >= 1) pw[1] = 1;
  for (long x = 2; x <= n; ++x) {
    if (x % 2 == 0) {
      mpz_mul_2exp(pw[x].get_mpz_t(), pw[x / 2].get_mpz_t(), n);
      continue;
    }
    long d = 0;
    for (long f = 3; f * f <= x; f += 2)
      if (x % f == 0) {
        d = f;
        break;
      }
    if (d != 0)
      pw[x] = pw[d] * pw[x / d];
    else
      mpz_ui_pow_ui(pw[x].get_mpz_t(), x, n);
  }
  return pw;
}

}  // namespace

BinomialQScan chvatal_q_scan(long n, bool use_symmetry, bool parallel) {
  if (n < 1) throw std::invalid_argument("chvatal_q_scan: n must be positive");
  BinomialQScan s;
  s.n = n;
  mpz_ui_pow_ui(s.denominator.get_mpz_t(), n, n);
  s.a_le.assign(n + 1, BigInt(0));
  s.a_lt.assign(n + 1, BigInt(0));
  s.a_le[0] = s.denominator;
  s.a_lt[0] = 0;
  s.a_le[n] = s.denominator;
  s.a_lt[n] = 0;
  if (n == 1) return s;

  const long m_hi = use_symmetry ? n / 2 : n - 1;
  const auto pw = base_powers(n);

#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long m = 1; m <= m_hi; ++m) {
    BigInt term = pw[n - m];  // k = 0
    BigInt below(0);          // sum over k < m
    for (long k = 0; k < m; ++k) {
      below += term;
      step_term(term, n - k, m, k + 1, n - m);
    }
    s.a_lt[m] = below;
    s.a_le[m] = below + term;
  }

  if (use_symmetry) {
    // 1 - q_m = q'_{n-m} exactly, and 1 - q'_m = q_{n-m}.
    for (long m = m_hi + 1; m <= n - 1; ++m) {
      s.a_le[m] = s.denominator - s.a_lt[n - m];
      s.a_lt[m] = s.denominator - s.a_le[n - m];
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Poisson CDFs with certified error bounds.

namespace {

// Upper bound on exp(k - lambda + k ln(lambda/k)), the Chernoff estimate for
// P(Po(lambda) <= k) when k < lambda and for P(Po(lambda) >= k) when
// k > lambda. Everything is rounded upward.
double poisson_chernoff_upper(const BigRational& lambda, unsigned long k,
                              mpfr_prec_t prec) {
  if (k == 0) {
    // exp(-lambda) exactly bounds both tails at k = 0.
    Real t(prec);
    mpfr_set_q(t.get(), lambda.get_mpq_t(), MPFR_RNDD);
    mpfr_neg(t.get(), t.get(), MPFR_RNDU);
    mpfr_exp(t.get(), t.get(), MPFR_RNDU);
    return t.to_double(MPFR_RNDU);
  }
  Real lam_up(prec), r(prec), acc(prec);
  mpfr_set_q(lam_up.get(), lambda.get_mpq_t(), MPFR_RNDU);
  mpfr_div_ui(r.get(), lam_up.get(), k, MPFR_RNDU);
  mpfr_log(r.get(), r.get(), MPFR_RNDU);
  mpfr_mul_ui(r.get(), r.get(), k, MPFR_RNDU);
  // acc = k - lambda, rounded up.
  mpfr_set_q(acc.get(), lambda.get_mpq_t(), MPFR_RNDD);
  mpfr_ui_sub(acc.get(), k, acc.get(), MPFR_RNDU);
  mpfr_add(acc.get(), acc.get(), r.get(), MPFR_RNDU);
  mpfr_exp(acc.get(), acc.get(), MPFR_RNDU);
  double v = acc.to_double(MPFR_RNDU);
  return std::min(v, 1.0);
}

struct PoissonScan {
  long window_lo = 0;   // first index summed exactly
  long window_hi = 0;   // last index summed exactly
  double lower_tail = 0.0;
  double upper_tail = 0.0;  // only when a threshold exceeds the cutoff
};

}  // namespace

std::vector<HighPrecisionReal> poisson_cdf_batch(const BigRational& rate, long t_lo,
                                                 long t_hi, int precision_bits) {
  if (rate <= 0) throw std::invalid_argument("poisson: rate must be positive");
  if (t_lo > t_hi || t_lo < 0) throw std::invalid_argument("poisson: bad threshold range");
  if (precision_bits < 16) throw std::invalid_argument("poisson: precision too small");
  const mpfr_prec_t prec = precision_bits + 64;
  const double lam_d = rational_to_double(rate);

  PoissonScan sc;
  // Lower window edge: below it the pmf mass is under 2^-(bits+16).
  const double zcut = std::sqrt(2.0 * std::log(2.0) * (precision_bits + 16.0));
  sc.window_lo = std::max(0L, (long)std::floor(lam_d - zcut * std::sqrt(lam_d)) - 32);
  const long cutoff = (long)std::floor(lam_d + 20.0 * std::sqrt(lam_d)) + 50;
  sc.window_hi = std::min(std::max(t_hi, sc.window_lo), cutoff);
  if (sc.window_lo > 0)
    sc.lower_tail = poisson_chernoff_upper(rate, sc.window_lo, prec);
  if (t_hi > cutoff) sc.upper_tail = poisson_chernoff_upper(rate, cutoff + 1, prec);

  const BigInt a = rate.get_num();
  const BigInt b = rate.get_den();
  const long A = sc.window_lo;
  const long U = sc.window_hi;

  // w_i = a^{i-A} b^{U-i} U!/i!; then lambda^i/i! = (lambda^A/A!) w_i / w_A.
  BigInt w(1);
  for (long j = A + 1; j <= U; ++j) {
    mpz_mul_ui(w.get_mpz_t(), w.get_mpz_t(), j);
    w *= b;
  }
  const BigInt w_first = w;

  std::vector<BigInt> partial(t_hi - t_lo + 1);  // snapshot sums at thresholds
  BigInt acc(0);
  for (long i = A; i <= U; ++i) {
    acc += w;
    if (i >= t_lo && i <= t_hi) partial[i - t_lo] = acc;
    if (i < U) {
      w *= a;
      if (b == 1) {
        mpz_divexact_ui(w.get_mpz_t(), w.get_mpz_t(), i + 1);
      } else {
        mpz_divexact_ui(w.get_mpz_t(), w.get_mpz_t(), i + 1);
        mpz_divexact(w.get_mpz_t(), w.get_mpz_t(), b.get_mpz_t());
      }
    }
  }
  // Thresholds past the window keep the full window sum.
  for (long t = std::max(U + 1, t_lo); t <= t_hi; ++t) partial[t - t_lo] = acc;

  Interval scale = Interval::from_rational(rate, prec)
                       .pow_ui(A)
                       .mul(Interval::exp_neg(rate, prec))
                       .div(Interval::factorial(A, prec).mul(Interval::from_integer(w_first, prec)));

  std::vector<HighPrecisionReal> out;
  out.reserve(t_hi - t_lo + 1);
  for (long t = t_lo; t <= t_hi; ++t) {
    HighPrecisionReal r;
    if (t < A) {
      // Entirely inside the truncated lower tail.
      r = HighPrecisionReal::exact_rational(BigRational(0), precision_bits);
      r.error_bound = sc.lower_tail;
    } else {
      Interval iv = Interval::from_integer(partial[t - t_lo], prec).mul(scale);
      r = HighPrecisionReal::from_interval(iv, precision_bits);
      r.error_bound = add_up(r.error_bound, sc.lower_tail);
      if (t > cutoff) r.error_bound = add_up(r.error_bound, sc.upper_tail);
    }
    out.push_back(std::move(r));
  }
  return out;
}

HighPrecisionReal poisson_cdf(const BigRational& rate, long t, bool strict,
                              int precision_bits) {
  if (rate <= 0) throw std::invalid_argument("poisson: rate must be positive");
  if (t < 0) throw std::invalid_argument("poisson: threshold must be >= 0");
  long T = strict ? t - 1 : t;
  if (T < 0) return HighPrecisionReal::exact_rational(BigRational(0), precision_bits);
  return poisson_cdf_batch(rate, T, T, precision_bits).front();
}

HighPrecisionReal total_variation_binomial_poisson(long n, const BigRational& p,
                                                   int precision_bits) {
  if (n < 1) throw std::invalid_argument("total variation: n must be positive");
  if (p <= 0 || p >= 1)
    throw std::invalid_argument("total variation: p must lie in (0,1)");
  const mpfr_prec_t prec = precision_bits + 64;
  const BigRational lambda = BigRational(n) * p;

  const BigInt a = p.get_num();
  const BigInt b = p.get_den();
  const BigInt bma = b - a;
  BigInt bin_den, bin_num;
  mpz_pow_ui(bin_den.get_mpz_t(), b.get_mpz_t(), n);
  mpz_pow_ui(bin_num.get_mpz_t(), bma.get_mpz_t(), n);

  Interval e_neg = Interval::exp_neg(lambda, prec);
  BigRational pois_term(1);  // lambda^k / k!
  Interval acc(prec);

  for (long k = 0; k <= n; ++k) {
    BigRational bk(bin_num, bin_den);
    bk.canonicalize();
    Interval diff = Interval::from_rational(bk, prec)
                        .sub(Interval::from_rational(pois_term, prec).mul(e_neg));
    acc = acc.add(diff.abs());
    if (k < n) {
      mpz_mul_ui(bin_num.get_mpz_t(), bin_num.get_mpz_t(), n - k);
      mpz_divexact_ui(bin_num.get_mpz_t(), bin_num.get_mpz_t(), k + 1);
      bin_num *= a;
      mpz_divexact(bin_num.get_mpz_t(), bin_num.get_mpz_t(), bma.get_mpz_t());
      pois_term *= lambda;
      pois_term /= (k + 1);
    }
  }

  // Poisson mass above n: exact 1 - CDF enclosure, not just a tail estimate.
  HighPrecisionReal cdf_n = poisson_cdf(lambda, n, false, precision_bits + 32);
  Interval tail = Interval::one(prec).sub(cdf_n.enclosure(prec)).abs();
  acc = acc.add(tail);
  acc = acc.mul(Interval::from_rational(BigRational(1, 2), prec));
  return HighPrecisionReal::from_interval(acc, precision_bits);
}

PoissonMonotonicityReport verify_poisson_monotonicity(long m_max, int precision_bits) {
  if (m_max < 1) throw std::invalid_argument("poisson monotonicity: m_max must be >= 1");
  PoissonMonotonicityReport rep;
  rep.m_max = m_max;
  rep.precision_bits = precision_bits;
  rep.all_hold = true;
  rep.all_certified = true;

  const BigRational half(1, 2);
  auto values = [&](long m) {
    auto v = poisson_cdf_batch(BigRational(m), m - 1, m, precision_bits);
    return std::pair{v[0], v[1]};  // P(Po(m) < m), P(Po(m) <= m)
  };

  auto prev = values(1);
  auto check_half = [&](const std::pair<HighPrecisionReal, HighPrecisionReal>& v,
                        PoissonPairCheck& c) {
    auto lt_half = certified_compare(v.first, half);
    auto le_half = certified_compare(v.second, half);
    c.strict_below_half = lt_half == CertifiedOrder::less;
    c.nonstrict_above_half = le_half == CertifiedOrder::greater;
    if (lt_half == CertifiedOrder::uncertified || le_half == CertifiedOrder::uncertified)
      c.certified = false;
  };

  {
    PoissonPairCheck c0;
    c0.m = 1;
    c0.certified = true;
    c0.strict_increasing = c0.nonstrict_decreasing = true;  // no predecessor
    check_half(prev, c0);
    if (!c0.certified || !c0.strict_below_half || !c0.nonstrict_above_half) {
      rep.all_hold = rep.all_hold && c0.strict_below_half && c0.nonstrict_above_half;
      rep.all_certified = rep.all_certified && c0.certified;
      rep.problems.push_back(c0);
    }
  }

  for (long m = 1; m < m_max; ++m) {
    auto next = values(m + 1);
    PoissonPairCheck c;
    c.m = m;
    c.certified = true;
    auto inc = certified_compare(prev.first, next.first);
    auto dec = certified_compare(prev.second, next.second);
    c.strict_increasing = inc == CertifiedOrder::less;
    c.nonstrict_decreasing = dec == CertifiedOrder::greater;
    if (inc == CertifiedOrder::uncertified || dec == CertifiedOrder::uncertified)
      c.certified = false;
    check_half(next, c);
    ++rep.pairs_checked;
    bool holds = c.strict_increasing && c.nonstrict_decreasing && c.strict_below_half &&
                 c.nonstrict_above_half;
    if (!holds || !c.certified) {
      rep.all_hold = rep.all_hold && holds;
      rep.all_certified = rep.all_certified && c.certified;
      rep.problems.push_back(c);
    }
    prev = std::move(next);
  }
  return rep;
}

}  // namespace edgelat
