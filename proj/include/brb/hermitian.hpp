/**
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace brb {

using complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;

/// Largest matrix dimension accepted anywhere in the library.
inline constexpr std::size_t kMaxDim = 256;

/// Dense square complex matrix of dimension at most kMaxDim. Holds Bell
/// operators, density matrices, observables and POVM elements alike.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  explicit ComplexMatrix(Eigen::MatrixXcd entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }
  static ComplexMatrix projector(const ComplexVector& v);

  std::size_t dim() const noexcept {
    return static_cast<std::size_t>(m_.rows());
  }
  complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  complex& operator()(std::size_t i, std::size_t j) {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXcd& eigen() const noexcept { return m_; }

  ComplexMatrix adjoint() const;
  complex trace() const { return m_.trace(); }
  double max_abs() const;
  double frobenius_norm() const { return m_.norm(); }

  /// max_ij |A_ij - conj(A_ji)| <= 1e-12 * max_ij |A_ij|
  bool is_hermitian() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    return a += b;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    return a -= b;
  }
  friend ComplexMatrix operator*(ComplexMatrix a, complex s) { return a *= s; }
  friend ComplexMatrix operator*(complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a,
                                 const ComplexMatrix& b);

 private:
  Eigen::MatrixXcd m_;
};

/// Eigen-decomposition: values descending, vectors as orthonormal columns
/// in matching order. Each vector is phase-normalized (first entry of
/// magnitude > 1e-8 is real positive).
struct Spectrum {
  std::vector<double> values;
  Eigen::MatrixXcd vectors;

  std::size_t dim() const noexcept { return values.size(); }
  ComplexVector vector(std::size_t i) const {
    return vectors.col(static_cast<Eigen::Index>(i));
  }
  ComplexMatrix reconstruct() const;
};

/// A validated quantum state: Hermitian, unit trace, positive semidefinite
/// (each within 1e-10), with its tensor-factor dimensions.
class DensityState {
 public:
  explicit DensityState(ComplexMatrix matrix);
  DensityState(ComplexMatrix matrix, std::vector<std::size_t> dims);

  static DensityState maximally_mixed(std::vector<std::size_t> dims);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return matrix_.dim(); }

 private:
  ComplexMatrix matrix_;
  std::vector<std::size_t> dims_;
};

struct StateFunctionals {
  double linear_purity;  // Tr rho^2
  double renyi2_purity;  // log2(d Tr rho^2)
  double entropy;        // von Neumann, nats
  double lambda1;        // largest eigenvalue
};

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

/// Cyclic complex Jacobi. Throws NotHermitian.
Spectrum eig_hermitian(const ComplexMatrix& a);

/// Kronecker product; the first factor is the most significant index.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||XY - YX|| in operator norm.
double commutator_norm(const ComplexMatrix& x, const ComplexMatrix& y);

ComplexMatrix partial_transpose(const ComplexMatrix& m,
                                const std::vector<std::size_t>& dims,
                                std::size_t subsystem);
ComplexMatrix partial_transpose(const DensityState& rho,
                                std::size_t subsystem);

/// Trace out every factor except `keep` (bipartite only).
ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<std::size_t>& dims,
                            std::size_t keep);

/// exp(beta * A) for Hermitian A.
ComplexMatrix herm_exp(const ComplexMatrix& a, double beta);

StateFunctionals state_functionals(const DensityState& rho);

/// Re Tr(rho * op).
double expectation(const ComplexMatrix& op, const ComplexMatrix& rho);

}  // namespace brb
