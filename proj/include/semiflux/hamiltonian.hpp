#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "semiflux/piecewise.hpp"
#include "semiflux/stieltjes.hpp"

namespace semiflux {

struct HamiltonianConfig {
  double a = 1.0;
  double alpha = 0.0;
  Orientation orientation = Orientation::Left;
  int grid_n = 64;
  double circumference = 2.0 * std::numbers::pi;
  /// Coupling enters as a^2 - potential_factor * alpha * sgn_o(x).
  double potential_factor = 0.25;
  /// Permits a coefficient that is not strictly positive.
  bool krein_override = false;

  void validate() const {
    if (!(a > 0.0)) throw std::invalid_argument("hamiltonian: a must be positive");
    if (grid_n < 8 || grid_n % 2 != 0) throw std::invalid_argument("hamiltonian: grid_n must be even and >= 8");
    if (!(circumference > 0.0)) throw std::invalid_argument("hamiltonian: circumference must be positive");
    if (orientation == Orientation::Standard)
      throw std::invalid_argument("hamiltonian: orientation must be left or right (sgn at 0 must be explicit)");
    if (!std::isfinite(alpha)) throw std::invalid_argument("hamiltonian: alpha must be finite");
    if (!krein_override && !(std::abs(potential_factor * alpha) < a * a))
      throw std::invalid_argument("hamiltonian: elliptic regime requires |alpha| * factor < a^2 (use the Krein override)");
  }
};

/// sgn with the orientation's value at 0: -1 for Left, +1 for Right.
inline double oriented_sign(double x, Orientation o) {
  if (x > 0.0) return 1.0;
  if (x < 0.0) return -1.0;
  require_one_sided(o, "oriented_sign");
  return o == Orientation::Left ? -1.0 : 1.0;
}

/// Periodic grid x_j = (j - n/2) h with h = L/n, so node n/2 sits on 0.
struct Grid {
  int n = 0;
  double circumference = 0.0;
  double spacing = 0.0;
  Eigen::VectorXd x;

  Grid() = default;
  Grid(int n_, double L) : n(n_), circumference(L), spacing(L / n_), x(n_) {
    for (int j = 0; j < n; ++j) x[j] = (j - n / 2) * spacing;
  }
  int origin() const { return n / 2; }
  double l2_norm(const Eigen::VectorXd& v) const { return std::sqrt(spacing * v.squaredNorm()); }
};

/// Periodic second difference times -1: symmetric, positive semidefinite,
/// zero row sums.
inline Eigen::MatrixXd periodic_laplacian(const Grid& g) {
  const double w = 1.0 / (g.spacing * g.spacing);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(g.n, g.n);
  for (int j = 0; j < g.n; ++j) {
    d(j, j) = 2.0 * w;
    d(j, (j + 1) % g.n) -= w;
    d(j, (j + g.n - 1) % g.n) -= w;
  }
  return d;
}

class HamiltonianOperator {
 public:
  HamiltonianOperator(HamiltonianConfig cfg, Eigen::VectorXd coefficient)
      : cfg_(cfg), grid_(cfg.grid_n, cfg.circumference), c_(std::move(coefficient)) {
    d2_ = periodic_laplacian(grid_);
    m_ = c_.asDiagonal() * d2_;
  }

  const HamiltonianConfig& config() const { return cfg_; }
  const Grid& grid() const { return grid_; }
  const Eigen::VectorXd& coefficient() const { return c_; }
  const Eigen::MatrixXd& laplacian() const { return d2_; }
  const Eigen::MatrixXd& matrix() const { return m_; }
  bool elliptic() const { return c_.minCoeff() > 0.0; }

 private:
  HamiltonianConfig cfg_;
  Grid grid_;
  Eigen::VectorXd c_;
  Eigen::MatrixXd d2_;
  Eigen::MatrixXd m_;
};

inline HamiltonianOperator build(const HamiltonianConfig& cfg) {
  cfg.validate();
  Grid g(cfg.grid_n, cfg.circumference);
  Eigen::VectorXd c(g.n);
  for (int j = 0; j < g.n; ++j) c[j] = cfg.a * cfg.a - cfg.potential_factor * cfg.alpha * oriented_sign(g.x[j], cfg.orientation);
  return HamiltonianOperator(cfg, std::move(c));
}

/// The indefinite model A = sgn_o(x) D2 (that is -sgn(x) d^2/dx^2).
inline HamiltonianOperator krein_model(int n, double circumference, Orientation o) {
  HamiltonianConfig cfg;
  cfg.grid_n = n;
  cfg.circumference = circumference;
  cfg.orientation = o;
  cfg.krein_override = true;
  cfg.validate();
  Grid g(n, circumference);
  Eigen::VectorXd c(n);
  for (int j = 0; j < n; ++j) c[j] = oriented_sign(g.x[j], o);
  return HamiltonianOperator(cfg, std::move(c));
}

inline void sort_spectrum(std::vector<std::complex<double>>& ev) {
  std::sort(ev.begin(), ev.end(), [](const auto& x, const auto& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
}

/// Eigenvalues sorted by real part, then imaginary part. A positive
/// coefficient goes through the symmetric similarity C^{1/2} D2 C^{1/2};
/// otherwise a general complex-capable solver is used.
inline std::vector<std::complex<double>> spectrum(const HamiltonianOperator& h) {
  std::vector<std::complex<double>> out;
  if (h.elliptic()) {
    Eigen::VectorXd s = h.coefficient().cwiseSqrt();
    Eigen::MatrixXd sym = s.asDiagonal() * h.laplacian() * s.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("spectrum: symmetric eigensolver did not converge");
    for (int i = 0; i < es.eigenvalues().size(); ++i) out.emplace_back(es.eigenvalues()[i], 0.0);
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> es(h.matrix(), false);
    if (es.info() != Eigen::Success) throw std::runtime_error("spectrum: eigensolver did not converge");
    for (int i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()[i]);
  }
  sort_spectrum(out);
  return out;
}

/// Exact eigenvalues of the free grid operator a^2 D2: a^2 (4/h^2) sin^2(pi k/n),
/// k = 0, +-1, +-2, ..., sorted.
inline std::vector<double> free_grid_spectrum(double a, int n, double circumference) {
  double h = circumference / n;
  std::vector<double> ev;
  for (int k = 0; k < n; ++k) {
    double s = std::sin(std::numbers::pi * k / n);
    ev.push_back(a * a * 4.0 / (h * h) * s * s);
  }
  std::sort(ev.begin(), ev.end());
  return ev;
}

struct KreinForm {
  Eigen::VectorXd j;

  static KreinForm from_orientation(const Grid& g, Orientation o) {
    KreinForm k;
    k.j.resize(g.n);
    for (int i = 0; i < g.n; ++i) k.j[i] = oriented_sign(g.x[i], o);
    return k;
  }
  static KreinForm identity(int n) { return {Eigen::VectorXd::Ones(n)}; }
  int n_plus() const { return int((j.array() > 0.0).count()); }
  int n_minus() const { return int((j.array() < 0.0).count()); }
};

struct KreinReport {
  double j_symmetry_residual = 0.0;
  int pos_subspace_dim = 0;
  int neg_subspace_dim = 0;
  int null_subspace_dim = 0;
};

/// J-symmetry residual max|JM - (JM)^T| and the inertia of the form <J.,.>
/// restricted to each eigenspace of M.
inline KreinReport krein_check(const HamiltonianOperator& h, const KreinForm& k) {
  const Eigen::MatrixXd& m = h.matrix();
  if (k.j.size() != m.rows()) throw std::invalid_argument("krein_check: form and operator sizes differ");
  KreinReport rep;
  Eigen::MatrixXd jm = k.j.asDiagonal() * m;
  rep.j_symmetry_residual = (jm - jm.transpose()).cwiseAbs().maxCoeff();

  Eigen::EigenSolver<Eigen::MatrixXd> es(m, true);
  if (es.info() != Eigen::Success) throw std::runtime_error("krein_check: eigensolver did not converge");
  const auto& lam = es.eigenvalues();
  const Eigen::MatrixXcd vecs = es.eigenvectors();
  const int n = int(lam.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return lam[x].real() != lam[y].real() ? lam[x].real() < lam[y].real() : lam[x].imag() < lam[y].imag();
  });
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t e = i + 1;
    while (e < order.size() && std::abs(lam[order[e]] - lam[order[i]]) <= 1e-8 * scale) ++e;
    Eigen::MatrixXcd v(n, int(e - i));
    for (std::size_t c = i; c < e; ++c) v.col(int(c - i)) = vecs.col(order[c]).normalized();
    Eigen::MatrixXcd gram = v.adjoint() * k.j.cast<std::complex<double>>().asDiagonal() * v;
    gram = 0.5 * (gram + gram.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> gs(gram, Eigen::EigenvaluesOnly);
    const double tol = 1e-10 * std::max(1.0, gs.eigenvalues().cwiseAbs().maxCoeff());
    for (int r = 0; r < gs.eigenvalues().size(); ++r) {
      double g = gs.eigenvalues()[r];
      if (g > tol) ++rep.pos_subspace_dim;
      else if (g < -tol) ++rep.neg_subspace_dim;
      else ++rep.null_subspace_dim;
    }
    i = e;
  }
  return rep;
}

/// a^2 - factor * alpha * sgn_o(x) as a piecewise function.
inline PiecewiseFn coefficient_function(const HamiltonianConfig& cfg, Orientation o) {
  return add(PiecewiseFn::constant(cfg.a * cfg.a).with_hint(o), scale(-cfg.potential_factor * cfg.alpha, sgn(o)));
}

struct NormRatioReport {
  double ratio = 0.0;           // (|a^2 phi''|_1 + |V phi''|_1) / ((1 + |a_p|) |phi''|_1), kinetic part folded to unit weight
  double direct_ratio = 0.0;    // |H phi|_1 / ((1 + |a_p|) |phi''|_1)
  double potential_factor = 0.0;  // |a_p| = factor |alpha| / a^2
  double kinetic_l1 = 0.0;
  double potential_l1 = 0.0;
  double second_derivative_l1 = 0.0;
};

/// Per-function norm ratio. phi'' is normalized to unit L1 norm; the kinetic
/// and potential parts are measured separately (triangle-inequality bound)
/// and directly.
inline NormRatioReport operator_norm_ratio(const HamiltonianOperator& h, const SmoothFn& phi) {
  const auto& cfg = h.config();
  const IntervalSet line{Interval::real_line()};
  SmoothFn phi2 = phi.derivative(2);
  double raw = lp_norm(PiecewiseFn::smooth(phi2), line, 1.0);
  if (!(raw > 0.0)) throw std::invalid_argument("operator_norm_ratio: phi'' vanishes, zero denominator");
  PiecewiseFn unit = PiecewiseFn::smooth((1.0 / raw) * phi2);
  NormRatioReport rep;
  const double a2 = cfg.a * cfg.a;
  rep.second_derivative_l1 = lp_norm(unit, line, 1.0);
  rep.potential_factor = std::abs(cfg.potential_factor * cfg.alpha) / a2;
  rep.kinetic_l1 = lp_norm(scale(a2, unit), line, 1.0);
  rep.potential_l1 = lp_norm(mul(scale(cfg.potential_factor * cfg.alpha, sgn(cfg.orientation)), unit), line, 1.0);
  const double denom = (1.0 + rep.potential_factor) * rep.second_derivative_l1;
  rep.ratio = (rep.kinetic_l1 + rep.potential_l1) / a2 / denom;
  rep.direct_ratio = lp_norm(mul(coefficient_function(cfg, cfg.orientation), unit), line, 1.0) / a2 / denom;
  return rep;
}

struct DecompositionReport {
  double ll = 0.0, lr = 0.0, rl = 0.0, rr = 0.0;  // <psi_A | H_B psi_B> for A, B in {L, R}
  double cross_max() const { return std::max(std::abs(lr), std::abs(rl)); }
};

namespace detail {

/// <psi_A | H_B psi_B>: the regular part of c_B (-psi_B'') integrated
/// against psi_A, plus the singular part of psi_B'' paired through the bra's
/// measure. Jumps count only when psi_B is semicontinuous from the bra's side;
/// kinks (continuous points with a slope jump) count for both orientations.
inline double hamiltonian_block(const PiecewiseFn& bra, Orientation bra_o, const PiecewiseFn& ket, Orientation ket_o,
                                 const HamiltonianConfig& cfg) {
  const IntervalSet line{Interval::real_line()};
  PiecewiseFn c = coefficient_function(cfg, ket_o);
  PiecewiseFn weight = mul(bra, c);
  PiecewiseFn regular = scale(-1.0, ket.derivative().derivative());
  double total = 0.0;
  bool regular_zero = std::all_of(regular.pieces().begin(), regular.pieces().end(), [](const SmoothFn& p) { return p.is_zero(); });
  if (!regular_zero) total += integrate(mul(weight, regular), Measure::lebesgue(), line);
  MeasureKind kind = measure_kind_of(bra_o);
  total -= integrate(weight, jump_measure(ket, kind), line);
  PiecewiseFn slope = ket.derivative();
  std::vector<Atom> kinks;
  for (double b : ket.breakpoints()) {
    if (!nearly_equal(ket.left_limit(b), ket.right_limit(b))) continue;
    double k = slope.right_limit(b) - slope.left_limit(b);
    if (k != 0.0) kinks.push_back({b, k});
  }
  if (!kinks.empty()) total -= integrate(weight, Measure::from_distribution(PiecewiseFn::constant(0.0), kind, kinks), line);
  return total;
}

}  // namespace detail

inline DecompositionReport decomposition_check(const PiecewiseFn& psi_l, const PiecewiseFn& psi_r, const HamiltonianConfig& cfg) {
  DecompositionReport rep;
  rep.ll = detail::hamiltonian_block(psi_l, Orientation::Left, psi_l, Orientation::Left, cfg);
  rep.lr = detail::hamiltonian_block(psi_l, Orientation::Left, psi_r, Orientation::Right, cfg);
  rep.rl = detail::hamiltonian_block(psi_r, Orientation::Right, psi_l, Orientation::Left, cfg);
  rep.rr = detail::hamiltonian_block(psi_r, Orientation::Right, psi_r, Orientation::Right, cfg);
  return rep;
}

/// sqrt of the BV norm of psi * H psi over a bounded set, with H psi taken
/// as the regular part c (-psi'').
inline double hilbert_form_norm(const PiecewiseFn& psi, const HamiltonianConfig& cfg, const IntervalSet& s) {
  PiecewiseFn hpsi = mul(coefficient_function(cfg, cfg.orientation), scale(-1.0, psi.derivative().derivative()));
  return std::sqrt(bv_norm(mul(psi, hpsi), s));
}

enum class PropagationMethod { Exponential, Trotter };

struct Propagation {
  PropagationMethod method = PropagationMethod::Exponential;
  int slices = 1;
  static Propagation exponential() { return {}; }
  static Propagation trotter(int n) { return {PropagationMethod::Trotter, n}; }
};

namespace detail {

inline void require_unit(const Grid& g, const Eigen::VectorXd& psi0) {
  if (psi0.size() != g.n) throw std::invalid_argument("propagate: state size differs from the grid");
  if (std::abs(g.l2_norm(psi0) - 1.0) > 1e-10) throw std::invalid_argument("propagate: initial state must have unit L2 norm");
}

}  // namespace detail

/// Imaginary-time evolution e^{-tau M} psi0. Exponential uses the symmetric
/// similarity C^{1/2} e^{-tau S} C^{-1/2}; Trotter applies n slices whose row j
/// is the exact lattice Gaussian kernel of e^{-delta c_j D2}, delta = tau/n,
/// obtained by integrating out the discrete momentum.
inline Eigen::VectorXd propagate(const HamiltonianOperator& h, const Eigen::VectorXd& psi0, double tau, Propagation method) {
  if (!h.elliptic()) throw std::invalid_argument("propagate: imaginary-time kernels need a positive coefficient");
  if (!(tau > 0.0)) throw std::invalid_argument("propagate: tau must be positive");
  const Grid& g = h.grid();
  detail::require_unit(g, psi0);
  const int n = g.n;
  if (method.method == PropagationMethod::Exponential) {
    Eigen::VectorXd s = h.coefficient().cwiseSqrt();
    Eigen::MatrixXd sym = s.asDiagonal() * h.laplacian() * s.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    if (es.info() != Eigen::Success) throw std::runtime_error("propagate: eigensolver did not converge");
    Eigen::VectorXd damp = (-tau * es.eigenvalues().array()).exp();
    Eigen::VectorXd y = psi0.cwiseQuotient(s);
    y = es.eigenvectors() * damp.asDiagonal() * (es.eigenvectors().transpose() * y);
    return y.cwiseProduct(s);
  }
  if (method.slices < 1) throw std::invalid_argument("propagate: Trotter needs at least one slice");
  const double delta = tau / method.slices;
  Eigen::VectorXd lam(n);
  for (int m = 0; m < n; ++m) {
    double sn = std::sin(std::numbers::pi * m / n);
    lam[m] = 4.0 / (g.spacing * g.spacing) * sn * sn;
  }
  Eigen::MatrixXd kernel(n, n);
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd row(n);
    for (int d = 0; d < n; ++d) {
      double acc = 0.0;
      for (int m = 0; m < n; ++m) acc += std::exp(-delta * h.coefficient()[j] * lam[m]) * std::cos(2.0 * std::numbers::pi * m * d / n);
      row[d] = acc / n;
    }
    for (int k = 0; k < n; ++k) kernel(j, k) = row[((j - k) % n + n) % n];
  }
  Eigen::VectorXd psi = psi0;
  for (int t = 0; t < method.slices; ++t) psi = kernel * psi;
  return psi;
}

/// Grid samples of a smooth function rescaled to unit grid L2 norm.
inline Eigen::VectorXd normalized_state(const Grid& g, const SmoothFn& f) {
  Eigen::VectorXd v(g.n);
  for (int j = 0; j < g.n; ++j) v[j] = f(g.x[j]);
  double nrm = g.l2_norm(v);
  if (!(nrm > 0.0)) throw std::invalid_argument("normalized_state: zero state");
  return v / nrm;
}

}  // namespace semiflux
