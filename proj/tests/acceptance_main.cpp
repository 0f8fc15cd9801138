// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Every tolerance is pinned here, in code.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include <sstream>

#include "edgelat/batch.hpp"
#include "edgelat/chvatal.hpp"
#include "edgelat/cli.hpp"
#include "edgelat/edgeworth.hpp"
#include "edgelat/exactprob.hpp"
#include "edgelat/series.hpp"
#include "test_util.hpp"

using namespace edgelat;

namespace {

constexpr double kPhi0 = 0.3989422804014326779;
constexpr double kSqrtPi = 1.7724538509055160273;

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s  criterion %2d  %-34s %s\n", ok ? "PASS" : "FAIL", id, name,
              detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

// Criteria 1, 9, 10 share one exact scan of every n in [2, 1000].
struct RangeResults {
  bool conjecture_ok = true;
  bool unimodal_ok = true;
  long first_bad_n = -1;
  bool rigollet_tong_ok = true;
  long first_rt_bad_n = -1;
  bool sign_ok_100_up = true;
  long first_sign_bad_n = -1;
  std::vector<long> small_n_sign_exceptions;
};

RangeResults scan_full_range() {
  RangeResults rr;
  auto range = verify_chvatal_range(2, 1000, true);
  for (const auto& s : range.reports) {
    if (!s.matches_conjecture || !s.unimodal) {
      rr.conjecture_ok = rr.conjecture_ok && s.matches_conjecture;
      rr.unimodal_ok = rr.unimodal_ok && s.unimodal;
      if (rr.first_bad_n < 0) rr.first_bad_n = s.n;
    }
    if (!s.decreasing_below_half) {
      rr.rigollet_tong_ok = false;
      if (rr.first_rt_bad_n < 0) rr.first_rt_bad_n = s.n;
    }
    if (!s.sign_pattern_holds) {
      if (s.n >= 100) {
        rr.sign_ok_100_up = false;
        if (rr.first_sign_bad_n < 0) rr.first_sign_bad_n = s.n;
      } else {
        rr.small_n_sign_exceptions.push_back(s.n);
      }
    }
  }
  return rr;
}

void criterion_2() {
  auto scan = chvatal_q_scan(30);
  auto s = chvatal_summary(scan);
  long argmax_lt = 0;
  for (long m = 1; m <= 30; ++m)
    if (cmp(scan.a_lt[m], scan.a_lt[argmax_lt]) > 0) argmax_lt = m;
  bool ok = s.argmin_m == 20 && argmax_lt == 10;
  report(2, "n=30 extrema (min 20, max 10)", ok,
         fmt("argmin q_m = %ld, argmax q'_m = %ld", s.argmin_m, argmax_lt));
}

void criterion_3() {
  bool ok = true;
  double worst = 0.0;
  for (auto [num, den] : {std::pair<long, long>{3, 10}, {1, 2}, {2, 3}, {9, 10}}) {
    BigRational p = rational(num, den);
    auto model = build_model(bernoulli_distribution(p, 8), 4);
    auto e = assemble_integer_mean(model, false);
    double r1 = std::abs(e.coefficient(1, model.sigma) / h1_closed(p) - 1.0);
    double r3 = std::abs(e.coefficient(3, model.sigma) / h3_closed(p) - 1.0);
    worst = std::max({worst, r1, r3});
    ok = ok && r1 <= 1e-9 && r3 <= 1e-9;
  }
  report(3, "engine matches h1/h3 (1e-9)", ok, fmt("worst relative error %.3g", worst));
}

void criterion_4() {
  auto c = critical_constants();
  double r1 = std::abs(c.h1_pp_23 / (27.0 / (8.0 * kSqrtPi)) - 1.0);
  double r2 = std::abs(c.h3_p_23 / (9.0 / (40.0 * kSqrtPi)) - 1.0);
  double r3 = std::abs(c.ratio * 15.0 - 1.0);
  bool ok = r1 <= 1e-6 && r2 <= 1e-6 && r3 <= 1e-5;
  report(4, "critical constants at p=2/3", ok,
         fmt("h1'' rel %.3g, h3' rel %.3g, ratio*15-1 = %.3g", r1, r2, r3));
}

void criterion_5() {
  std::vector<long> ns = {64, 128, 256, 512, 1024, 2048, 4096};
  bool ok = true;
  std::string detail;
  for (int k : {1, 2, 4}) {
    auto study = residual_study(StudyDistribution::bernoulli(rational(1, 2)), k, ns,
                                GridSpec{}, 192, true);
    double bound = -0.5 * (k + 1) + 0.1;
    bool this_ok = study.slope.has_value() && *study.slope <= bound;
    ok = ok && this_ok;
    detail += fmt("k=%d slope %.3f (need <= %.2f)  ", k,
                  study.slope.value_or(0.0), bound);
  }
  report(5, "Be(1/2) residual decay slopes", ok, detail);
}

void criterion_6() {
  auto model = build_model(poisson1_analytic(8), 4);
  auto strict = assemble_integer_mean(model, true);

  double c1 = strict.coefficient(1, 1.0);
  double c3 = strict.coefficient(3, 1.0);
  double want_c1 = -kPhi0 / 3.0;
  double want_c3 = -23.0 * kPhi0 / 270.0;
  double r1 = std::abs(c1 / want_c1 - 1.0);
  double r3 = std::abs(c3 / want_c3 - 1.0);
  bool coeff_ok = r1 <= 1e-9 && r3 <= 1e-9;

  // Remainder of the engine's own strict three-term form.
  std::vector<std::pair<double, double>> pts;
  for (long m : {100L, 1000L, 10000L}) {
    double exact = poisson_cdf(BigRational(m), m, true, 256).to_double();
    double approx = strict.evaluate(static_cast<double>(m), 1.0);
    pts.emplace_back(std::log((double)m), std::log(std::abs(approx - exact)));
  }
  double slope = fitted_slope(pts);
  bool slope_ok = std::abs(slope + 2.5) <= 0.2;

  report(6, "Po(1) strict expansion vs quoted", coeff_ok && slope_ok,
         fmt("c1 rel %.2g; c3 = %.10g vs quoted %.10g (rel %.3g; the exact strict "
             "value is -phi(0)/540 = %.10g, -23/270 is the non-strict coefficient); "
             "remainder slope %.3f",
             r1, c3, want_c3, r3, -kPhi0 / 540.0, slope));
}

void criterion_7() {
  auto rep = poisson_chain(10000, 192, true);
  bool ok = rep.all_hold && rep.all_certified && rep.problems.empty();
  report(7, "Poisson chains certified to 1e4", ok,
         fmt("pairs %ld, problems %zu", rep.pairs_checked, rep.problems.size()));
}

void criterion_8() {
  testutil::Lcg rng(20260808);
  bool ok = true;
  long worst_n = -1;
  for (int trial = 0; trial < 50; ++trial) {
    long n = rng.range(2, 500);
    long m = rng.range(1, n - 1);
    BigRational p = rational(m, n);
    auto tv = total_variation_binomial_poisson(n, p, 192);
    // Exact comparison: the certified upper end of the TV enclosure vs p.
    BigRational upper(add_up(tv.to_double(), tv.error_bound));
    if (!(upper < p)) {
      ok = false;
      worst_n = n;
    }
  }
  report(8, "d_TV(Bi, Po) + err < p, 50 pairs", ok,
         ok ? std::string("all below p") : fmt("violation at n=%ld", worst_n));
}

void criterion_11() {
  bool ok = true;
  std::string what;

  // Strong median at integer means.
  for (long n = 2; n <= 50 && ok; ++n) {
    auto scan = chvatal_q_scan(n);
    for (long m = 1; m < n; ++m)
      if (!(2 * scan.a_lt[m] < scan.denominator && 2 * scan.a_le[m] > scan.denominator)) {
        ok = false;
        what = fmt("strong median fails at n=%ld m=%ld", n, m);
      }
  }

  // psi / Bernoulli identities.
  if (ok) {
    auto b = bernoulli_numbers(8);
    ok = b[1] == rational(-1, 2) && b[2] == rational(1, 6) && b[3] == 0 &&
         psi(1, 0.0) == 0.5 && std::abs(psi(2, 0.25) - psi(2, 1.25)) < 1e-15;
    if (!ok) what = "psi/Bernoulli identity failure";
  }

  // pi-table parity and sparsity.
  if (ok) {
    auto d = lattice_stats({{0, rational(1, 2)}, {1, rational(1, 3)}, {3, rational(1, 6)}}, 10);
    auto t = edgeworth_polynomials(d, 5);
    for (int j = 1; j <= 5 && ok; ++j) {
      if (t.p_of_v[j].degree() != 3 * j) ok = false;
      for (int r = 0; r <= t.p_of_v[j].degree(); ++r) {
        if (r < j + 2 && t.rho(j, r) != 0) ok = false;
        if ((r - j) % 2 != 0 && t.rho(j, r) != 0) ok = false;
      }
    }
    if (!ok) what = "pi-table parity/sparsity failure";
  }

  // GaussCombo derivative vs central finite differences.
  if (ok) {
    auto model = build_model(bernoulli_distribution(rational(1, 3), 8), 3);
    GaussCombo<double> g = h_function(model, 81, 3);
    testutil::Lcg rng(99);
    for (int order = 1; order <= 6 && ok; ++order) {
      GaussCombo<double> dg = g.derivative();
      for (int i = 0; i < 20; ++i) {
        double x = rng.uniform(-3.0, 3.0);
        double num = (eval(g, x + 1e-5) - eval(g, x - 1e-5)) / 2e-5;
        double scale = std::max(1.0, std::abs(eval(dg, x)));
        if (std::abs(eval(dg, x) - num) > 1e-6 * scale) ok = false;
      }
      g = dg;
    }
    if (!ok && what.empty()) what = "GaussCombo derivative mismatch";
  }

  // series_exp inverse property.
  if (ok) {
    testutil::Lcg rng(7);
    for (int trial = 0; trial < 10 && ok; ++trial) {
      int K = static_cast<int>(rng.range(1, 4));
      TruncatedUSeries s(K);
      for (int i = 1; i <= K; ++i) {
        std::vector<BigRational> c(static_cast<size_t>(rng.range(1, 4)));
        for (auto& v : c) v = rng.rational(-5, 5, 4);
        s.z[i] = Polynomial<BigRational>(std::move(c));
      }
      if (!(series_exp(s).mul(series_exp(s.negated())) == TruncatedUSeries::one(K)))
        ok = false;
    }
    if (!ok && what.empty()) what = "series_exp inverse failure";
  }

  report(11, "invariant suites", ok, ok ? "all green" : what);
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");

  // Criterion 1 exercises the real CLI surface end to end; the library-side
  // scan below (criteria 9 and 10) rechecks the same range exactly.
  {
    std::ostringstream out, err;
    int code = run_cli({"verify", "--n-max", "1000"}, out, err);
    const std::string text = out.str();
    size_t lines = static_cast<size_t>(std::count(text.begin(), text.end(), '\n'));
    bool ok = code == kExitOk && lines == 1000;  // header + one row per n
    report(1, "verify --n-max 1000 (CLI, exact)", ok,
           fmt("exit %d, %zu report rows", code, lines > 0 ? lines - 1 : 0));
  }

  RangeResults rr = scan_full_range();
  if (!(rr.conjecture_ok && rr.unimodal_ok)) {
    report(1, "conjecture + unimodality recheck", false,
           fmt("first failure at n=%ld", rr.first_bad_n));
  }
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  report(9, "q decreasing below n/2, n<=1000", rr.rigollet_tong_ok,
         rr.first_rt_bad_n < 0 ? "exact for every n"
                               : fmt("first failure at n=%ld", rr.first_rt_bad_n));
  {
    std::string detail = rr.small_n_sign_exceptions.empty()
                             ? std::string("no exceptions anywhere")
                             : fmt("%zu small-n exceptions (reported, not failed)",
                                   rr.small_n_sign_exceptions.size());
    report(10, "sign pattern 100<=n<=1000", rr.sign_ok_100_up,
           rr.sign_ok_100_up ? detail : fmt("violation at n=%ld", rr.first_sign_bad_n));
  }
  criterion_11();

  std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
