/**
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "brb/hermitian.hpp"
#include "brb/oracle.hpp"

namespace brb {

/// Canonical Bell vectors in the order Phi+, Phi-, Psi+, Psi-.
std::array<ComplexVector, 4> bell_basis();

struct BellDiagonalCheck {
  bool bell_diagonal;
  /// Spectrum of the operator; within degenerate eigenspaces the vectors
  /// are rotated to maximally entangled ones when possible.
  Spectrum spectrum;
};

/// True iff the 4x4 operator has a maximally entangled eigenbasis.
BellDiagonalCheck is_bell_diagonal(const ComplexMatrix& op);

/// Bell-diagonal state sum lambda_i |B_perm[i]><B_perm[i]|.
struct BdsState {
  std::array<double, 4> lambdas;             // descending
  std::array<std::size_t, 4> basis_perm{0, 1, 2, 3};

  DensityState state() const;
  bool entangled() const { return lambdas[0] > 0.5; }
};

/// Orthonormal two-qubit product basis (columns) with a label for the
/// standard cases: "computational", "sigma_x", "sigma_y" or "custom".
struct ProductBasis {
  std::string label;
  Eigen::MatrixXcd vectors;
};

ProductBasis computational_basis();
ProductBasis sigma_x_basis();
ProductBasis sigma_y_basis();

/// Product basis U_A|i> (x) U_B|j> with U(theta, phi) taking |0> to
/// cos(theta)|0> + e^{i phi} sin(theta)|1>.
ProductBasis product_basis(double theta_a, double phi_a, double theta_b,
                           double phi_b);

struct ResourceReport {
  double p_r;
  double c_r;
  double d_r;
  double e_r;
  double lambda1;
  DensityState witness_state;
  DensityState void_state;
  ProductBasis coherence_basis;

  bool satisfies_hierarchy(double tol = 1e-9) const;
};

/// Process-wide tally of every ResourceReport built by this library.
struct HierarchyAudit {
  std::uint64_t reports;
  std::uint64_t violations;
};
HierarchyAudit hierarchy_audit();

/// Simultaneous minimum of the purity, coherence, discord and entanglement
/// robustnesses over states with Tr(rho I) = L + v, for Bell-diagonal I.
/// Throws NotBellDiagonal, Infeasible.
ResourceReport min_resources_for_value(const ComplexMatrix& op, double local,
                                       double v);

/// (sqrt(4+C), sqrt(4-C), -sqrt(4-C), -sqrt(4+C)). Throws OutOfRange.
std::array<double, 4> chsh_eigenvalues(double c);
/// sqrt(4+C) lambda1 + sqrt(4-C) (1 - lambda1).
double chsh_max_value(double lambda1, double c);
/// Incompatibility maximizing chsh_max_value at fixed lambda1.
double c_max(double lambda1);
/// (sqrt(2+C_A), sqrt(2-C_A), -sqrt(2-C_A), -sqrt(2+C_A)).
std::array<double, 4> steering_eigenvalues(double c_a);

struct CurvePoint {
  double c;    // C, C_A, or C_A for heatmap cells
  double c_b;  // heatmap only, otherwise 0
  double lambda1;
  double e_r;
  double p_r;
  bool feasible;
};

CurvePoint curve_point(const std::array<double, 4>& mu, double local, double v,
                       double c, double c_b = 0.0);
std::vector<CurvePoint> min_er_vs_c_curve(double v, const std::vector<double>& c_grid);
std::vector<CurvePoint> min_er_vs_ca_curve(double v, const std::vector<double>& ca_grid);
/// Row-major over ca_grid (rows) and cb_grid (columns).
std::vector<std::vector<CurvePoint>> lambda1_heatmap(double v,
                                                     const std::vector<double>& ca_grid,
                                                     const std::vector<double>& cb_grid);

/// Generalized robustness of entanglement through the PPT criterion:
/// min Tr(sigma), sigma >= 0, (rho + sigma)^{T_B} >= 0.
double er_ppt_solver(const DensityState& rho);

/// Generalized robustness of coherence in a fixed orthonormal basis:
/// min Tr(D) - 1 over D >= rho diagonal in the basis.
double cr_fixed_basis(const DensityState& rho, const ProductBasis& basis);

struct BasisSearchConfig {
  std::size_t restarts = 32;
  double tolerance = 1e-7;
  std::uint64_t seed = kDefaultSeed;
};

struct BasisSearchResult {
  double value;
  ProductBasis basis;
};

/// Local-unitary search of cr_fixed_basis over product bases (best found).
BasisSearchResult cr_min_over_product_bases(const DensityState& rho,
                                            const BasisSearchConfig& cfg = {});

struct JointMinimum {
  double value;
  DensityState state;
};

/// min E_R(rho) over two-qubit states with Tr(rho I) = target.
JointMinimum min_er_for_value(const ComplexMatrix& op, double target);

/// min C_R(rho) over states with Tr(rho I) = target, in a fixed basis.
JointMinimum min_cr_for_value(const ComplexMatrix& op, double target,
                              const ProductBasis& basis);

struct JointCoherenceMinimum {
  double value;
  DensityState state;
  ProductBasis basis;
};

/// As above, also minimized over product bases by local-unitary search.
JointCoherenceMinimum min_cr_for_value(const ComplexMatrix& op, double target,
                                       const BasisSearchConfig& cfg = {});

}  // namespace brb
