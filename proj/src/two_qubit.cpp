/**
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "brb/two_qubit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "brb/error.hpp"
#include "brb/lmi.hpp"
#include "brb/spectral_bounds.hpp"

namespace brb {

namespace {

using Eigen::Index;

constexpr double kEntangledTolerance = 1e-8;
const std::vector<std::size_t> kQubits{2, 2};

std::atomic<std::uint64_t> g_reports{0};
std::atomic<std::uint64_t> g_violations{0};

Eigen::Matrix2cd coefficient_matrix(const ComplexVector& v) {
  Eigen::Matrix2cd m;
  m << v(0), v(1), v(2), v(3);
  return m;
}

ComplexVector from_coefficients(const Eigen::Matrix2cd& m) {
  ComplexVector v(4);
  v << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
  return v;
}

/// Largest deviation of either reduced state from 1/2.
double entanglement_defect(const ComplexVector& v) {
  const Eigen::Matrix2cd m = coefficient_matrix(v);
  const Eigen::Matrix2cd half = 0.5 * Eigen::Matrix2cd::Identity();
  return std::max((m * m.adjoint() - half).cwiseAbs().maxCoeff(),
                  (m.adjoint() * m - half).cwiseAbs().maxCoeff());
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return tensor(ComplexMatrix(a), ComplexMatrix(b)).eigen();
}

Eigen::Matrix2cd qubit_unitary(double theta, double phi) {
  const complex e(std::cos(phi), std::sin(phi));
  Eigen::Matrix2cd u;
  u << std::cos(theta), -std::conj(e) * std::sin(theta), e * std::sin(theta),
      std::cos(theta);
  return u;
}

/// Rotates an orthonormal pair inside its span looking for two maximally
/// entangled vectors.
bool rotate_degenerate_pair(ComplexVector& a, ComplexVector& b) {
  auto rotated = [&](double theta, double phi) {
    const complex e(std::cos(phi), std::sin(phi));
    ComplexVector x = std::cos(theta) * a + e * std::sin(theta) * b;
    ComplexVector y = -std::conj(e) * std::sin(theta) * a + std::cos(theta) * b;
    return std::pair{x, y};
  };
  auto defect = [&](std::span<const double> p) {
    const auto [x, y] = rotated(p[0], p[1]);
    return entanglement_defect(x) + entanglement_defect(y);
  };

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> start{0.0, 0.0};
  constexpr int kGrid = 24;
  for (int i = 0; i < kGrid; ++i)
    for (int j = 0; j < kGrid; ++j) {
      const std::vector<double> p{std::numbers::pi * i / kGrid,
                                  2.0 * std::numbers::pi * j / kGrid};
      const double f = defect(p);
      if (f < best) {
        best = f;
        start = p;
      }
    }
  NelderMeadConfig cfg;
  cfg.restarts = 2;
  cfg.tolerance = 1e-13;
  cfg.initial_step = std::numbers::pi / kGrid;
  const NelderMeadResult res = nelder_mead_max(
      [&](std::span<const double> p) { return -defect(p); }, start, cfg);
  const auto [x, y] = rotated(res.x[0], res.x[1]);
  if (std::max(entanglement_defect(x), entanglement_defect(y)) > kEntangledTolerance) {
    return false;
  }
  a = x;
  b = y;
  return true;
}

ProductBasis basis_from_qubits(std::string label, const Eigen::Matrix2cd& ua,
                               const Eigen::Matrix2cd& ub) {
  return {std::move(label), kron(ua, ub)};
}

/// Index of the canonical Bell vector equal to v up to phase, or 4.
std::size_t canonical_bell_index(const ComplexVector& v) {
  const auto bells = bell_basis();
  for (std::size_t k = 0; k < 4; ++k) {
    if (std::abs(bells[k].dot(v)) >= 1.0 - 1e-9) return k;
  }
  return 4;
}

/// Product basis in which (|a><a| + |b><b|)/2 is diagonal, for orthogonal
/// maximally entangled a, b.
ProductBasis coherence_basis_for(const ComplexVector& a, const ComplexVector& b) {
  const std::size_t ka = canonical_bell_index(a);
  const std::size_t kb = canonical_bell_index(b);
  if (ka < 4 && kb < 4) {
    const std::size_t lo = std::min(ka, kb);
    const std::size_t hi = std::max(ka, kb);
    if ((lo == 0 && hi == 1) || (lo == 2 && hi == 3)) return computational_basis();
    if ((lo == 0 && hi == 2) || (lo == 1 && hi == 3)) return sigma_x_basis();
    return sigma_y_basis();
  }

  // a = (U (x) 1)|Phi+>, and (U^dag (x) 1) b = (e^{i phi} n.sigma (x) 1)|Phi+>.
  // R with R (n.sigma) R^dag = sigma_z maps the pair to (Phi+, Phi-) via
  // (R U^dag) (x) R*.
  const Eigen::Matrix2cd u = std::numbers::sqrt2 * coefficient_matrix(a);
  const Eigen::Matrix2cd v = std::numbers::sqrt2 * u.adjoint() * coefficient_matrix(b);
  const ComplexMatrix paulis[3] = {pauli::x(), pauli::y(), pauli::z()};
  complex w[3];
  std::size_t largest = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    w[k] = 0.5 * (v * paulis[k].eigen()).trace();
    if (std::abs(w[k]) > std::abs(w[largest])) largest = k;
  }
  const complex phase = w[largest] / std::abs(w[largest]);
  double n[3];
  double norm = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    n[k] = (w[k] / phase).real();
    norm += n[k] * n[k];
  }
  norm = std::sqrt(norm);
  ComplexMatrix n_sigma = complex(n[0] / norm) * paulis[0] +
                          complex(n[1] / norm) * paulis[1] +
                          complex(n[2] / norm) * paulis[2];
  const Spectrum sp = eig_hermitian(n_sigma);
  const Eigen::Matrix2cd r = sp.vectors.adjoint();  // rows <+n|, <-n|
  return basis_from_qubits("custom", u * r.adjoint(), r.transpose());
}

ResourceReport audited(ResourceReport report) {
  ++g_reports;
  if (!report.satisfies_hierarchy()) ++g_violations;
  return report;
}

void require_qubit_pair(std::size_t dim, const char* what) {
  if (dim != 4) {
    throw Error(ErrorCode::DimMismatch, std::string(what) + " must be two-qubit (4x4)");
  }
}

/// Full-rank state with Tr(rho I) = target, used to start the joint programs.
DensityState interior_state(const ComplexMatrix& op, double target) {
  const std::vector<double> mu = eig_hermitian(op).values;
  double mean = 0.0;
  for (double m : mu) mean += m / double(mu.size());
  if (target >= mean) return min_relent_purity_for_value(op, target, kQubits).state;
  return min_relent_purity_for_value(complex(-1.0) * op, -target, kQubits).state;
}

void add_state_equalities(LmiProblem& p, const ComplexMatrix& op, double target,
                          const std::vector<Eigen::MatrixXcd>& basis) {
  p.a_eq = Eigen::MatrixXd::Zero(2, Index(p.n));
  p.b_eq = Eigen::Vector2d(1.0, target);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    p.a_eq(0, Index(k)) = basis[k].trace().real();
    p.a_eq(1, Index(k)) = (basis[k] * op.eigen()).trace().real();
  }
}

double lambda_max(const Eigen::MatrixXcd& m) {
  return eig_hermitian(ComplexMatrix(Eigen::MatrixXcd(0.5 * (m + m.adjoint()))))
      .values.front();
}

Eigen::MatrixXcd pt(const Eigen::MatrixXcd& m) {
  return partial_transpose(ComplexMatrix(m), kQubits, 1).eigen();
}

DensityState normalized_state(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  // Clip barrier-scale negative eigenvalues before validation.
  const Spectrum sp = eig_hermitian(ComplexMatrix(h));
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(h.rows(), h.cols());
  double total = 0.0;
  for (std::size_t i = 0; i < sp.values.size(); ++i) {
    const double l = std::max(0.0, sp.values[i]);
    out += l * sp.vector(i) * sp.vector(i).adjoint();
    total += l;
  }
  return DensityState(ComplexMatrix(Eigen::MatrixXcd(out / total)), kQubits);
}

template <class Inner>
auto search_product_bases(const BasisSearchConfig& cfg, Inner&& inner) {
  CounterRng rng(cfg.seed, 0xC0);
  NelderMeadConfig nm;
  nm.restarts = 0;
  nm.tolerance = cfg.tolerance;
  nm.initial_step = 0.3;
  auto objective = [&](std::span<const double> p) {
    return -inner(product_basis(p[0], p[1], p[2], p[3]));
  };
  NelderMeadResult best{{0.0, 0.0, 0.0, 0.0}, -std::numeric_limits<double>::infinity(), 0};
  for (std::size_t k = 0; k < std::max<std::size_t>(cfg.restarts, 1); ++k) {
    std::vector<double> start(4, 0.0);
    if (k > 0) {
      start = {std::numbers::pi * rng.uniform(), 2 * std::numbers::pi * rng.uniform(),
               std::numbers::pi * rng.uniform(), 2 * std::numbers::pi * rng.uniform()};
    }
    NelderMeadResult res = nelder_mead_max(objective, start, nm);
    if (res.value > best.value) best = std::move(res);
  }
  return best;
}

}  // namespace

std::array<ComplexVector, 4> bell_basis() {
  const double s = 1.0 / std::numbers::sqrt2;
  std::array<ComplexVector, 4> out;
  for (auto& v : out) v = ComplexVector::Zero(4);
  out[0](0) = s;
  out[0](3) = s;
  out[1](0) = s;
  out[1](3) = -s;
  out[2](1) = s;
  out[2](2) = s;
  out[3](1) = s;
  out[3](2) = -s;
  return out;
}

BellDiagonalCheck is_bell_diagonal(const ComplexMatrix& op) {
  require_qubit_pair(op.dim(), "operator");
  BellDiagonalCheck out{false, eig_hermitian(op)};
  Spectrum& sp = out.spectrum;
  const double tol = 1e-9 * (1.0 + op.max_abs());

  // Clusters of (numerically) equal eigenvalues.
  std::vector<std::pair<std::size_t, std::size_t>> clusters;
  for (std::size_t i = 0; i < 4;) {
    std::size_t j = i + 1;
    while (j < 4 && sp.values[j - 1] - sp.values[j] <= tol) ++j;
    clusters.emplace_back(i, j);
    i = j;
  }

  auto column_ok = [&](std::size_t i) {
    return entanglement_defect(sp.vectors.col(Index(i))) <= kEntangledTolerance;
  };

  for (const auto& [begin, end] : clusters) {
    const std::size_t size = end - begin;
    bool ok = true;
    for (std::size_t i = begin; i < end; ++i) ok = ok && column_ok(i);
    if (ok) continue;
    if (size == 1) return out;
    if (size == 2) {
      ComplexVector a = sp.vectors.col(Index(begin));
      ComplexVector b = sp.vectors.col(Index(begin + 1));
      if (!rotate_degenerate_pair(a, b)) return out;
      sp.vectors.col(Index(begin)) = a;
      sp.vectors.col(Index(begin + 1)) = b;
      continue;
    }
    // A three- or four-dimensional eigenspace contains a full maximally
    // entangled basis iff its complement does.
    Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
    if (size == 3) {
      const std::size_t other = begin == 0 ? 3 : 0;
      if (!column_ok(other)) return out;
      u = std::numbers::sqrt2 * coefficient_matrix(sp.vectors.col(Index(other)));
    }
    const auto bells = bell_basis();
    std::size_t next = size == 3 ? 1 : 0;
    for (std::size_t i = begin; i < end; ++i, ++next) {
      sp.vectors.col(Index(i)) = from_coefficients(u * coefficient_matrix(bells[next]));
    }
  }
  out.bell_diagonal = true;
  return out;
}

DensityState BdsState::state() const {
  const auto bells = bell_basis();
  double total = 0.0;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    if (lambdas[i] < 0.0) {
      throw Error(ErrorCode::InvalidState, "negative Bell-diagonal weight");
    }
    const ComplexVector& b = bells.at(basis_perm[i]);
    rho += lambdas[i] * b * b.adjoint();
    total += lambdas[i];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidState, "Bell-diagonal weights do not sum to 1");
  }
  return DensityState(ComplexMatrix(rho), kQubits);
}

ProductBasis computational_basis() {
  return {"computational", Eigen::MatrixXcd::Identity(4, 4)};
}

ProductBasis sigma_x_basis() {
  const double s = 1.0 / std::numbers::sqrt2;
  Eigen::Matrix2cd h;
  h << s, s, s, -s;
  return basis_from_qubits("sigma_x", h, h);
}

ProductBasis sigma_y_basis() {
  const double s = 1.0 / std::numbers::sqrt2;
  Eigen::Matrix2cd y;
  y << s, s, complex(0.0, s), complex(0.0, -s);
  return basis_from_qubits("sigma_y", y, y);
}

ProductBasis product_basis(double theta_a, double phi_a, double theta_b,
                           double phi_b) {
  return basis_from_qubits("custom", qubit_unitary(theta_a, phi_a),
                           qubit_unitary(theta_b, phi_b));
}

bool ResourceReport::satisfies_hierarchy(double tol) const {
  return p_r >= c_r - tol && c_r >= d_r - tol && d_r >= e_r - tol;
}

HierarchyAudit hierarchy_audit() { return {g_reports.load(), g_violations.load()}; }

ResourceReport min_resources_for_value(const ComplexMatrix& op, double local,
                                       double v) {
  require_qubit_pair(op.dim(), "Bell operator");
  if (!(v > 0.0)) {
    throw Error(ErrorCode::OutOfRange, "violation v must be positive");
  }
  const BellDiagonalCheck check = is_bell_diagonal(op);
  if (!check.bell_diagonal) {
    throw Error(ErrorCode::NotBellDiagonal,
                "operator has no maximally entangled eigenbasis");
  }
  const RankSolution sol = min_lambda1_for_value(check.spectrum.values, local + v);
  if (sol.rank > 2) {
    throw Error(ErrorCode::Infeasible,
                "target value is reached without entanglement");
  }
  const double lambda1 = sol.lambda1();
  const ComplexVector psi1 = check.spectrum.vector(0);
  const ComplexVector psi2 = check.spectrum.vector(1);
  const Eigen::MatrixXcd xi =
      0.5 * (psi1 * psi1.adjoint() + psi2 * psi2.adjoint());
  const double e_r = 2.0 * lambda1 - 1.0;

  return audited(ResourceReport{
      4.0 * lambda1 - 1.0, e_r, e_r, e_r, lambda1,
      construct_optimal_state(sol, check.spectrum, kQubits),
      DensityState(ComplexMatrix(xi), kQubits), coherence_basis_for(psi1, psi2)});
}

std::array<double, 4> chsh_eigenvalues(double c) {
  if (!(c >= -1e-12 && c <= 4.0 + 1e-12)) {
    throw Error(ErrorCode::OutOfRange, "C must lie in [0, 4]");
  }
  c = std::clamp(c, 0.0, 4.0);
  const double hi = std::sqrt(4.0 + c);
  const double lo = std::sqrt(4.0 - c);
  return {hi, lo, -lo, -hi};
}

double chsh_max_value(double lambda1, double c) {
  if (!(lambda1 >= 0.5 - 1e-12 && lambda1 <= 1.0 + 1e-12)) {
    throw Error(ErrorCode::OutOfRange, "lambda1 must lie in [1/2, 1]");
  }
  const auto mu = chsh_eigenvalues(c);
  return mu[0] * lambda1 + mu[1] * (1.0 - lambda1);
}

double c_max(double lambda1) {
  if (!(lambda1 >= 0.5 - 1e-12 && lambda1 <= 1.0 + 1e-12)) {
    throw Error(ErrorCode::OutOfRange, "lambda1 must lie in [1/2, 1]");
  }
  return 4.0 * (2.0 * lambda1 - 1.0) /
         (2.0 * lambda1 * lambda1 - 2.0 * lambda1 + 1.0);
}

std::array<double, 4> steering_eigenvalues(double c_a) {
  if (!(c_a >= -1e-12 && c_a <= 2.0 + 1e-12)) {
    throw Error(ErrorCode::OutOfRange, "C_A must lie in [0, 2]");
  }
  c_a = std::clamp(c_a, 0.0, 2.0);
  const double hi = std::sqrt(2.0 + c_a);
  const double lo = std::sqrt(2.0 - c_a);
  return {hi, lo, -lo, -hi};
}

CurvePoint curve_point(const std::array<double, 4>& mu, double local, double v,
                       double c, double c_b) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  CurvePoint p{c, c_b, nan, nan, nan, false};
  const double target = local + v;
  if (target > mu[0] + 1e-12) return p;
  const RankSolution sol = min_lambda1_for_value(mu, target);
  p.lambda1 = sol.lambda1();
  p.e_r = std::max(0.0, 2.0 * p.lambda1 - 1.0);
  p.p_r = 4.0 * p.lambda1 - 1.0;
  p.feasible = true;
  return p;
}

std::vector<CurvePoint> min_er_vs_c_curve(double v, const std::vector<double>& c_grid) {
  std::vector<CurvePoint> out;
  out.reserve(c_grid.size());
  for (double c : c_grid) out.push_back(curve_point(chsh_eigenvalues(c), 2.0, v, c));
  return out;
}

std::vector<CurvePoint> min_er_vs_ca_curve(double v, const std::vector<double>& ca_grid) {
  std::vector<CurvePoint> out;
  out.reserve(ca_grid.size());
  for (double c : ca_grid) {
    out.push_back(curve_point(steering_eigenvalues(c), std::numbers::sqrt2, v, c));
  }
  return out;
}

std::vector<std::vector<CurvePoint>> lambda1_heatmap(double v,
                                                     const std::vector<double>& ca_grid,
                                                     const std::vector<double>& cb_grid) {
  std::vector<std::vector<CurvePoint>> out;
  for (double ca : ca_grid) {
    if (!(ca >= -1e-12 && ca <= 2.0 + 1e-12)) {
      throw Error(ErrorCode::OutOfRange, "C_A must lie in [0, 2]");
    }
    std::vector<CurvePoint> row;
    for (double cb : cb_grid) {
      if (!(cb >= -1e-12 && cb <= 2.0 + 1e-12)) {
        throw Error(ErrorCode::OutOfRange, "C_B must lie in [0, 2]");
      }
      const double tilde = ca + cb;
      const double shift = (tilde * tilde - ca * ca - cb * cb) / 2.0;
      const double hi = std::sqrt(4.0 + shift);
      const double lo = std::sqrt(std::max(0.0, 4.0 - shift));
      row.push_back(curve_point({hi, lo, -lo, -hi}, 2.0, v, ca, cb));
    }
    out.push_back(std::move(row));
  }
  return out;
}

double er_ppt_solver(const DensityState& rho) {
  require_qubit_pair(rho.dim(), "state");
  const std::vector<Eigen::MatrixXcd> basis = hermitian_basis(4);
  LmiProblem p;
  p.n = basis.size();
  p.c = Eigen::VectorXd::Zero(Index(p.n));
  for (std::size_t k = 0; k < 4; ++k) p.c(Index(k)) = 1.0;

  LmiBlock sigma{Eigen::MatrixXcd::Zero(4, 4), basis};
  LmiBlock ppt{pt(rho.matrix().eigen()), {}};
  for (const auto& b : basis) ppt.f.push_back(pt(b));
  p.blocks = {sigma, ppt};

  const double shift =
      std::max(0.0, -eig_hermitian(ComplexMatrix(ppt.f0)).values.back()) + 1.0;
  const Eigen::VectorXd x0 =
      hermitian_coordinates(shift * Eigen::MatrixXcd::Identity(4, 4));
  const LmiResult r = solve_lmi(p, x0);
  return std::max(0.0, r.objective);
}

double cr_fixed_basis(const DensityState& rho, const ProductBasis& basis) {
  const Index d = Index(rho.dim());
  const Eigen::MatrixXcd& v = basis.vectors;
  if (v.rows() != d || v.cols() != d) {
    throw Error(ErrorCode::DimMismatch, "basis does not match the state dimension");
  }
  if ((v.adjoint() * v - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error(ErrorCode::InvalidInput, "basis is not orthonormal");
  }
  const Eigen::MatrixXcd local = v.adjoint() * rho.matrix().eigen() * v;
  LmiProblem p;
  p.n = std::size_t(d);
  p.c = Eigen::VectorXd::Ones(d);
  LmiBlock block{-local, {}};
  for (Index i = 0; i < d; ++i) {
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(d, d);
    e(i, i) = 1.0;
    block.f.push_back(e);
  }
  p.blocks = {block};
  const Eigen::VectorXd x0 = Eigen::VectorXd::Constant(d, lambda_max(local) + 1.0);
  const LmiResult r = solve_lmi(p, x0);
  return std::max(0.0, r.objective - 1.0);
}

BasisSearchResult cr_min_over_product_bases(const DensityState& rho,
                                            const BasisSearchConfig& cfg) {
  require_qubit_pair(rho.dim(), "state");
  const NelderMeadResult best = search_product_bases(
      cfg, [&](const ProductBasis& b) { return cr_fixed_basis(rho, b); });
  const std::vector<double>& x = best.x;
  return {-best.value, product_basis(x[0], x[1], x[2], x[3])};
}

JointMinimum min_er_for_value(const ComplexMatrix& op, double target) {
  require_qubit_pair(op.dim(), "Bell operator");
  const DensityState start = interior_state(op, target);
  const std::vector<Eigen::MatrixXcd> basis = hermitian_basis(4);
  const std::size_t nb = basis.size();

  // x = (rho, sigma).
  LmiProblem p;
  p.n = 2 * nb;
  p.c = Eigen::VectorXd::Zero(Index(p.n));
  for (std::size_t k = 0; k < 4; ++k) p.c(Index(nb + k)) = 1.0;
  const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(4, 4);
  LmiBlock rho_block{zero, {}}, sigma_block{zero, {}}, ppt_block{zero, {}};
  for (std::size_t k = 0; k < 2 * nb; ++k) {
    const bool is_rho = k < nb;
    const Eigen::MatrixXcd& b = basis[k % nb];
    rho_block.f.push_back(is_rho ? b : Eigen::MatrixXcd());
    sigma_block.f.push_back(is_rho ? Eigen::MatrixXcd() : b);
    ppt_block.f.push_back(pt(b));
  }
  p.blocks = {rho_block, sigma_block, ppt_block};
  std::vector<Eigen::MatrixXcd> rho_basis = basis;
  rho_basis.resize(2 * nb, zero);
  add_state_equalities(p, op, target, rho_basis);

  const Eigen::MatrixXcd rho0 = start.matrix().eigen();
  const double shift =
      std::max(0.0, -eig_hermitian(ComplexMatrix(pt(rho0))).values.back()) + 1.0;
  Eigen::VectorXd x0(Index(p.n));
  x0 << hermitian_coordinates(rho0),
      hermitian_coordinates(shift * Eigen::MatrixXcd::Identity(4, 4));
  const LmiResult r = solve_lmi(p, x0);
  return {std::max(0.0, r.objective), normalized_state(hermitian_from(r.x, 0, 4))};
}

JointMinimum min_cr_for_value(const ComplexMatrix& op, double target,
                              const ProductBasis& basis) {
  require_qubit_pair(op.dim(), "Bell operator");
  const DensityState start = interior_state(op, target);
  const std::vector<Eigen::MatrixXcd> herm = hermitian_basis(4);
  const std::size_t nb = herm.size();
  const Eigen::MatrixXcd& v = basis.vectors;

  // x = (rho, diagonal of D in the basis).
  LmiProblem p;
  p.n = nb + 4;
  p.c = Eigen::VectorXd::Zero(Index(p.n));
  const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(4, 4);
  LmiBlock rho_block{zero, {}}, dominance{zero, {}};
  for (std::size_t k = 0; k < nb; ++k) {
    rho_block.f.push_back(herm[k]);
    dominance.f.push_back(-herm[k]);
  }
  for (Index i = 0; i < 4; ++i) {
    p.c(Index(nb) + i) = 1.0;
    rho_block.f.push_back(Eigen::MatrixXcd());
    dominance.f.push_back(v.col(i) * v.col(i).adjoint());
  }
  p.blocks = {rho_block, dominance};
  std::vector<Eigen::MatrixXcd> rho_basis = herm;
  rho_basis.resize(p.n, zero);
  add_state_equalities(p, op, target, rho_basis);

  const Eigen::MatrixXcd rho0 = start.matrix().eigen();
  Eigen::VectorXd x0(Index(p.n));
  x0 << hermitian_coordinates(rho0), Eigen::VectorXd::Constant(4, lambda_max(rho0) + 1.0);
  const LmiResult r = solve_lmi(p, x0);
  return {std::max(0.0, r.objective - 1.0), normalized_state(hermitian_from(r.x, 0, 4))};
}

JointCoherenceMinimum min_cr_for_value(const ComplexMatrix& op, double target,
                                       const BasisSearchConfig& cfg) {
  const NelderMeadResult best = search_product_bases(
      cfg, [&](const ProductBasis& b) { return min_cr_for_value(op, target, b).value; });
  const std::vector<double>& x = best.x;
  ProductBasis basis = product_basis(x[0], x[1], x[2], x[3]);
  JointMinimum at_best = min_cr_for_value(op, target, basis);
  return {at_best.value, std::move(at_best.state), std::move(basis)};
}

}  // namespace brb
