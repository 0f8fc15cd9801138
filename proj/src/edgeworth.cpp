#include "edgelat/edgeworth.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace edgelat {

namespace {
constexpr double kPhi0 = 0.3989422804014326779;  // 1/sqrt(2 pi)
}

void SigmaSeries::prune() {
  for (auto it = t_.begin(); it != t_.end();) {
    if (it->second == 0)
      it = t_.erase(it);
    else
      ++it;
  }
}

SigmaSeries& SigmaSeries::operator+=(const SigmaSeries& o) {
  for (const auto& [p, c] : o.t_) t_[p] += c;
  prune();
  return *this;
}

SigmaSeries& SigmaSeries::operator-=(const SigmaSeries& o) {
  for (const auto& [p, c] : o.t_) t_[p] -= c;
  prune();
  return *this;
}

SigmaSeries operator*(const SigmaSeries& a, const SigmaSeries& b) {
  SigmaSeries r;
  for (const auto& [pa, ca] : a.t_)
    for (const auto& [pb, cb] : b.t_) r.t_[pa + pb] += ca * cb;
  r.prune();
  return r;
}

SigmaSeries SigmaSeries::operator-() const {
  SigmaSeries r;
  for (const auto& [p, c] : t_) r.t_[p] = -c;
  return r;
}

BigRational SigmaSeries::coefficient(int power) const {
  auto it = t_.find(power);
  return it == t_.end() ? BigRational(0) : it->second;
}

double SigmaSeries::eval(double sigma) const {
  double acc = 0.0;
  for (const auto& [p, c] : t_) acc += rational_to_double(c) * std::pow(sigma, p);
  return acc;
}

BigRational SigmaSeries::at_sigma_one() const {
  BigRational acc(0);
  for (const auto& [p, c] : t_) acc += c;
  return acc;
}

double eval(const GaussCombo<double>& g, double x) {
  return g.phi_coefficient * normal_cdf(x) + normal_pdf(x) * eval(g.density_poly, x);
}

GaussCombo<double> to_numeric(const GaussCombo<SigmaSeries>& g, double sigma) {
  GaussCombo<double> r;
  r.phi_coefficient = g.phi_coefficient.eval(sigma);
  std::vector<double> c(g.density_poly.degree() + 1, 0.0);
  for (int i = 0; i <= g.density_poly.degree(); ++i)
    c[i] = g.density_poly.at(i).eval(sigma);
  r.density_poly = Polynomial<double>(std::move(c));
  return r;
}

PiTable edgeworth_polynomials(const LatticeDistribution& dist, int k) {
  if (k < 1) throw std::invalid_argument("edgeworth_polynomials: k must be >= 1");
  if (dist.max_order < k + 2 || static_cast<int>(dist.cumulants.size()) <= k + 2)
    throw std::invalid_argument("edgeworth_polynomials: cumulants up to k+2 required");

  // S = sum_{i=1..k} gamma_{i+2} v^{i+2} z^i / (i+2)!
  TruncatedUSeries s(k);
  for (int i = 1; i <= k; ++i) {
    BigRational c = dist.cumulants[i + 2] / BigRational(factorial(i + 2));
    s.z[i] = Polynomial<BigRational>::term(c, i + 2);
  }
  TruncatedUSeries e = series_exp(s);

  PiTable t;
  t.order = k;
  t.p_of_v = std::move(e.z);
  return t;
}

EdgeworthModel build_model(const LatticeDistribution& dist, int k) {
  EdgeworthModel m;
  m.dist = dist;
  m.order = k;
  m.pi = edgeworth_polynomials(dist, k);
  m.mu = rational_to_double(dist.mean);
  m.sigma = dist.sigma();

  m.q_exact.resize(k + 1);
  m.q_exact[0].phi_coefficient = SigmaSeries(1);  // Q_0 = Phi
  for (int j = 1; j <= k; ++j) {
    // Q_j = -phi(x) sum_r pi_{jr} H_{r-1}(x)
    Polynomial<SigmaSeries> acc;
    for (int r = j + 2; r <= 3 * j; ++r) {
      BigRational rho = m.pi.rho(j, r);
      if (rho == 0) continue;
      auto he = hermite_polynomial(r - 1);
      std::vector<SigmaSeries> c(he.degree() + 1, SigmaSeries());
      for (int i = 0; i <= he.degree(); ++i)
        if (he.at(i) != 0) c[i] = SigmaSeries(-rho * he.at(i), -r);
      acc += Polynomial<SigmaSeries>(std::move(c));
    }
    m.q_exact[j].phi_coefficient = SigmaSeries();
    m.q_exact[j].density_poly = std::move(acc);
  }

  m.q_num.resize(k + 1);
  for (int j = 0; j <= k; ++j) m.q_num[j] = to_numeric(m.q_exact[j], m.sigma);
  return m;
}

bool EdgeworthModel::guarantee_regime(long n) const {
  return sigma * std::sqrt(static_cast<double>(n)) >= std::log(static_cast<double>(n));
}

const std::vector<GaussCombo<double>>& q_functions(const EdgeworthModel& model) {
  return model.q_num;
}

GaussCombo<double> h_function(const EdgeworthModel& model, long n, int kk) {
  if (kk < 0 || kk > model.order)
    throw std::invalid_argument("h_function: order out of range");
  if (n < 1) throw std::invalid_argument("h_function: n must be positive");
  GaussCombo<double> h = model.q_num[0];  // Phi
  for (int j = 1; j <= kk; ++j)
    h += model.q_num[j].scaled(std::pow(static_cast<double>(n), -0.5 * j));
  return h;
}

ExpansionEvaluator::ExpansionEvaluator(const EdgeworthModel& model, long n,
                                       CorrectionVariant variant)
    : n_(n), k_(model.order), mu_(model.mu), sigma_(model.sigma) {
  if (model.dist.span != 1)
    throw std::invalid_argument("lattice expansion requires span 1");
  sqrt_n_ = std::sqrt(static_cast<double>(n));
  h_top_ = h_function(model, n, k_);
  h_deriv_.resize(k_ + 1);
  scale_.resize(k_ + 1, 0.0);
  for (int l = 1; l <= k_; ++l) {
    GaussCombo<double> base =
        variant == CorrectionVariant::full ? h_top_ : h_function(model, n, k_ - l);
    h_deriv_[l] = base.derivative(l);
    double sgn = (l % 2 == 1) ? 1.0 : -1.0;  // (-1)^{l-1}
    scale_[l] = sgn * std::pow(static_cast<double>(n), -0.5 * l) * std::pow(sigma_, -l);
  }
}

double ExpansionEvaluator::evaluate_inner(double x, double psi1_value) const {
  double z = mu_ * n_ + x * sigma_ * sqrt_n_;
  double v = eval(h_top_, x);
  for (int l = 1; l <= k_; ++l) {
    double pl = (l == 1) ? psi1_value : psi(l, z);
    v += scale_[l] * pl * eval(h_deriv_[l], x);
  }
  return v;
}

double ExpansionEvaluator::evaluate(double x, bool strict) const {
  double z = mu_ * n_ + x * sigma_ * sqrt_n_;
  double p1 = strict ? psi1_left(z) : psi(1, z);
  return evaluate_inner(x, p1);
}

double ExpansionEvaluator::x_of_lattice(long long t) const {
  return (static_cast<double>(t) - mu_ * n_) / (sigma_ * sqrt_n_);
}

double ExpansionEvaluator::evaluate_at_lattice(long long t, bool left_limit) const {
  double x = x_of_lattice(t);
  // psi_l for l >= 2 is continuous; only psi_1 needs the one-sided value.
  return evaluate_inner(x, left_limit ? -0.5 : 0.5);
}

double lattice_cdf_approx(const EdgeworthModel& model, long n, double x,
                          CorrectionVariant variant, bool strict) {
  return ExpansionEvaluator(model, n, variant).evaluate(x, strict);
}

double IntegerMeanExpansion::evaluate(double n, double sigma) const {
  double v = 0.5;
  for (int m = 1; m <= order; ++m)
    v += std::pow(n, -0.5 * m) * coefficient(m, sigma);
  return v;
}

double IntegerMeanExpansion::coefficient(int m, double sigma) const {
  return kPhi0 * coeff.at(m).eval(sigma);
}

IntegerMeanExpansion assemble_integer_mean(const EdgeworthModel& model, bool strict) {
  const int k = model.order;
  IntegerMeanExpansion e;
  e.order = k;
  e.strict = strict;
  e.coeff.assign(k + 1, SigmaSeries());

  auto bern = bernoulli_numbers(k);
  // Derivatives of the exact Q_j combos; the phi(0)-free value at zero of
  // the l-th derivative of Q_j is its density polynomial at 0 (the Phi part
  // vanishes for l >= 1, and for (j,l) = (0,0) the 1/2 is handled apart).
  std::vector<std::vector<SigmaSeries>> dq0(k + 1);
  for (int j = 0; j <= k; ++j) {
    GaussCombo<SigmaSeries> g = model.q_exact[j];
    dq0[j].resize(k + 1);
    for (int l = 0; l <= k - j; ++l) {
      dq0[j][l] = g.density_poly.at(0);
      g = g.derivative();
    }
  }

  BigRational lfact(1);
  for (int m = 1; m <= k; ++m) {
    SigmaSeries acc;
    lfact = 1;
    for (int l = 0; l <= m; ++l) {
      if (l > 0) lfact *= l;
      int j = m - l;
      BigRational b = bern[l];
      if (b == 0 && l != 0) continue;
      BigRational f = b / lfact;
      if (l % 2 == 1) f = -f;        // (-1)^l B_l / l!
      if (strict && l == 1) f = -f;  // left-continuous psi_1 flips l = 1 terms
      if (f == 0) continue;
      acc += SigmaSeries(f, -l) * dq0[j][l];
    }
    e.coeff[m] = acc;
  }
  return e;
}

double integer_mean_expansion(const LatticeDistribution& dist, long n, int k, bool strict) {
  if (dist.span != 1) throw std::invalid_argument("integer_mean_expansion: span must be 1");
  BigRational nmu = BigRational(n) * dist.mean;
  if (nmu.get_den() != 1)
    throw std::invalid_argument("integer_mean_expansion: n*mu must be an integer");
  EdgeworthModel model = build_model(dist, k);
  IntegerMeanExpansion e = assemble_integer_mean(model, strict);
  return e.evaluate(static_cast<double>(n), model.sigma);
}

ResidualScan residual_scan(const EdgeworthModel& model, long n, const GridSpec& grid,
                           const ExactCdf& oracle, CorrectionVariant variant,
                           bool parallel) {
  if (grid.points < 2) throw std::invalid_argument("residual_scan: need >= 2 grid points");
  ExpansionEvaluator ev(model, n, variant);

  struct Task {
    double x;
    long long t;
    bool lattice;
    bool left;
  };
  std::vector<Task> tasks;
  tasks.reserve(grid.points + 64);
  for (int i = 0; i < grid.points; ++i) {
    double x = grid.x_lo + (grid.x_hi - grid.x_lo) * i / (grid.points - 1);
    tasks.push_back({x, 0, false, false});
  }
  if (grid.lattice_sides) {
    double z_lo = model.mu * n + grid.x_lo * model.sigma * std::sqrt((double)n);
    double z_hi = model.mu * n + grid.x_hi * model.sigma * std::sqrt((double)n);
    for (long long t = (long long)std::ceil(z_lo); t <= (long long)std::floor(z_hi); ++t) {
      tasks.push_back({ev.x_of_lattice(t), t, true, false});
      tasks.push_back({ev.x_of_lattice(t), t, true, true});
    }
  }

  ResidualScan out;
  out.n = n;
  out.k = model.order;
  out.in_guarantee = model.guarantee_regime(n);
  out.points.resize(tasks.size());

#pragma omp parallel for schedule(static) if (parallel)
  for (long long i = 0; i < static_cast<long long>(tasks.size()); ++i) {
    const Task& tk = tasks[i];
    ExpansionEvaluation pt;
    pt.x = tk.x;
    pt.lattice = tk.lattice;
    pt.left_limit = tk.left;
    if (tk.lattice) {
      pt.approx = ev.evaluate_at_lattice(tk.t, tk.left);
      // Left limit of the CDF at an integer is the strict tail there.
      pt.exact = oracle(tk.t, tk.left);
    } else {
      double z = model.mu * n + tk.x * model.sigma * std::sqrt((double)n);
      pt.approx = ev.evaluate(tk.x, false);
      pt.exact = oracle((long long)std::floor(z), false);
    }
    out.points[i] = pt;
  }

  double sup = 0.0;
  for (const auto& pt : out.points) sup = std::max(sup, std::abs(pt.residual()));
  out.sup_residual = sup;
  return out;
}

}  // namespace edgelat
