/**
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "brb/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "brb/error.hpp"

namespace brb {

namespace {

using Index = Eigen::Index;

constexpr int kMaxSweeps = 64;
constexpr double kOffDiagonalThreshold = 1e-13;
constexpr double kStateTolerance = 1e-10;

void check_dim(std::size_t dim) {
  if (dim > kMaxDim) {
    throw Error(ErrorCode::DimensionOverflow,
                "dimension " + std::to_string(dim) + " exceeds " +
                    std::to_string(kMaxDim));
  }
}

std::size_t product(const std::vector<std::size_t>& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

void require_bipartite(const std::vector<std::size_t>& dims, std::size_t dim,
                       std::size_t subsystem) {
  if (dims.size() != 2 || subsystem > 1) {
    throw Error(ErrorCode::BadSubsystem,
                "expected two tensor factors and subsystem 0 or 1");
  }
  if (dims[0] * dims[1] != dim) {
    throw Error(ErrorCode::DimMismatch, "factor dimensions do not match");
  }
}

// Lexicographic order on phase-normalized vectors, larger entries first.
// Returns true if a should precede b.
bool lexicographically_before(const ComplexVector& a, const ComplexVector& b) {
  constexpr double tol = 1e-12;
  for (Index k = 0; k < a.size(); ++k) {
    if (std::abs(a[k].real() - b[k].real()) > tol) {
      return a[k].real() > b[k].real();
    }
    if (std::abs(a[k].imag() - b[k].imag()) > tol) {
      return a[k].imag() > b[k].imag();
    }
  }
  return false;
}

void normalize_phase(Eigen::Ref<Eigen::VectorXcd> v) {
  for (Index k = 0; k < v.size(); ++k) {
    const double mag = std::abs(v[k]);
    if (mag > 1e-8) {
      v *= std::conj(v[k]) / mag;
      v[k] = complex(v[k].real(), 0.0);
      return;
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t dim) {
  check_dim(dim);
  m_ = Eigen::MatrixXcd::Zero(static_cast<Index>(dim), static_cast<Index>(dim));
}

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) {
    throw Error(ErrorCode::DimMismatch, "matrix is not square");
  }
  check_dim(static_cast<std::size_t>(m_.rows()));
}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<complex>> rows) {
  const auto n = rows.size();
  check_dim(n);
  m_.resize(static_cast<Index>(n), static_cast<Index>(n));
  Index i = 0;
  for (const auto& row : rows) {
    if (row.size() != n) {
      throw Error(ErrorCode::DimMismatch, "ragged matrix initializer");
    }
    Index j = 0;
    for (const auto& value : row) m_(i, j++) = value;
    ++i;
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  check_dim(dim);
  return ComplexMatrix(Eigen::MatrixXcd::Identity(static_cast<Index>(dim),
                                                  static_cast<Index>(dim)));
}

ComplexMatrix ComplexMatrix::projector(const ComplexVector& v) {
  return ComplexMatrix(Eigen::MatrixXcd(v * v.adjoint()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  return ComplexMatrix(Eigen::MatrixXcd(m_.adjoint()));
}

double ComplexMatrix::max_abs() const {
  return m_.size() == 0 ? 0.0 : m_.cwiseAbs().maxCoeff();
}

bool ComplexMatrix::is_hermitian() const {
  const double scale = max_abs();
  const double asym =
      m_.size() == 0 ? 0.0 : (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  return asym <= 1e-12 * scale;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (dim() != rhs.dim()) {
    throw Error(ErrorCode::DimMismatch, "matrix sum dimension mismatch");
  }
  m_ += rhs.m_;
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (dim() != rhs.dim()) {
    throw Error(ErrorCode::DimMismatch, "matrix difference dimension mismatch");
  }
  m_ -= rhs.m_;
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(complex s) {
  m_ *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimMismatch, "matrix product dimension mismatch");
  }
  return ComplexMatrix(Eigen::MatrixXcd(a.m_ * b.m_));
}

ComplexMatrix Spectrum::reconstruct() const {
  const Eigen::VectorXd diag =
      Eigen::Map<const Eigen::VectorXd>(values.data(),
                                        static_cast<Index>(values.size()));
  return ComplexMatrix(Eigen::MatrixXcd(
      vectors * diag.cast<complex>().asDiagonal() * vectors.adjoint()));
}

// ---------------------------------------------------------------------------
// DensityState

DensityState::DensityState(ComplexMatrix matrix)
    : DensityState(matrix, {matrix.dim()}) {}

DensityState::DensityState(ComplexMatrix matrix, std::vector<std::size_t> dims)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  if (product(dims_) != matrix_.dim()) {
    throw Error(ErrorCode::DimMismatch,
                "subsystem dimensions do not multiply to the matrix size");
  }
  if (!matrix_.is_hermitian()) {
    throw Error(ErrorCode::InvalidState, "density matrix is not Hermitian");
  }
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > kStateTolerance) {
    throw Error(ErrorCode::InvalidState,
                "trace " + std::to_string(tr) + " differs from 1");
  }
  const Spectrum s = eig_hermitian(matrix_);
  if (s.values.back() < -kStateTolerance) {
    throw Error(ErrorCode::InvalidState,
                "negative eigenvalue " + std::to_string(s.values.back()));
  }
}

DensityState DensityState::maximally_mixed(std::vector<std::size_t> dims) {
  const std::size_t d = product(dims);
  return DensityState(ComplexMatrix::identity(d) * complex(1.0 / double(d)),
                      std::move(dims));
}

// ---------------------------------------------------------------------------

namespace pauli {
ComplexMatrix x() { return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix y() {
  return ComplexMatrix{{0.0, complex(0, -1)}, {complex(0, 1), 0.0}};
}
ComplexMatrix z() { return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

Spectrum eig_hermitian(const ComplexMatrix& input) {
  if (!input.is_hermitian()) {
    throw Error(ErrorCode::NotHermitian,
                "eigendecomposition requires a Hermitian matrix");
  }
  const Index n = static_cast<Index>(input.dim());
  Eigen::MatrixXcd a = 0.5 * (input.eigen() + input.eigen().adjoint());
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(n, n);

  const double threshold = kOffDiagonalThreshold * a.norm();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (Index p = 0; p < n; ++p)
      for (Index q = p + 1; q < n; ++q) off += 2.0 * std::norm(a(p, q));
    if (std::sqrt(off) <= threshold) break;

    for (Index p = 0; p < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0 || mag < 1e-300) continue;
        const complex phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // J = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
        const complex jpp = c;
        const complex jpq = s;
        const complex jqp = -s * std::conj(phase);
        const complex jqq = c * std::conj(phase);

        for (Index k = 0; k < n; ++k) {
          const complex akp = a(k, p);
          const complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (Index k = 0; k < n; ++k) {
          const complex apk = a(p, k);
          const complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        for (Index k = 0; k < n; ++k) {
          const complex vkp = v(k, p);
          const complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) {
    return a(i, i).real() > a(j, j).real();
  });

  Spectrum out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.values[static_cast<std::size_t>(k)] = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
    normalize_phase(out.vectors.col(k));
  }

  // Order vectors inside numerically degenerate clusters.
  const double cluster_tol = 1e-12 * (1.0 + input.max_abs());
  std::size_t begin = 0;
  while (begin < out.values.size()) {
    std::size_t end = begin + 1;
    while (end < out.values.size() &&
           out.values[end - 1] - out.values[end] <= cluster_tol) {
      ++end;
    }
    if (end - begin > 1) {
      std::vector<Index> idx;
      for (std::size_t k = begin; k < end; ++k) idx.push_back(Index(k));
      const Eigen::MatrixXcd cols = out.vectors;
      std::stable_sort(idx.begin(), idx.end(), [&](Index i, Index j) {
        return lexicographically_before(cols.col(i), cols.col(j));
      });
      for (std::size_t k = begin; k < end; ++k) {
        out.vectors.col(Index(k)) = cols.col(idx[k - begin]);
      }
    }
    begin = end;
  }
  return out;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  if (da * db > kMaxDim) {
    throw Error(ErrorCode::DimensionOverflow,
                "tensor product dimension " + std::to_string(da * db) +
                    " exceeds " + std::to_string(kMaxDim));
  }
  ComplexMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const complex aij = a(i, j);
      if (aij == complex(0.0)) continue;
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l)
          out(i * db + k, j * db + l) = aij * b(k, l);
    }
  return out;
}

double commutator_norm(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.dim() != y.dim()) {
    throw Error(ErrorCode::DimMismatch, "commutator of different dimensions");
  }
  // i[X, Y] is Hermitian; its largest |eigenvalue| is the operator norm.
  const ComplexMatrix comm = complex(0.0, 1.0) * (x * y - y * x);
  const ComplexMatrix herm(
      Eigen::MatrixXcd(0.5 * (comm.eigen() + comm.eigen().adjoint())));
  const Spectrum s = eig_hermitian(herm);
  return std::max(std::abs(s.values.front()), std::abs(s.values.back()));
}

ComplexMatrix partial_transpose(const ComplexMatrix& m,
                                const std::vector<std::size_t>& dims,
                                std::size_t subsystem) {
  require_bipartite(dims, m.dim(), subsystem);
  const std::size_t da = dims[0];
  const std::size_t db = dims[1];
  ComplexMatrix out(m.dim());
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t b = 0; b < db; ++b)
      for (std::size_t a2 = 0; a2 < da; ++a2)
        for (std::size_t b2 = 0; b2 < db; ++b2) {
          const std::size_t row = a * db + b;
          const std::size_t col = a2 * db + b2;
          out(row, col) = subsystem == 1 ? m(a * db + b2, a2 * db + b)
                                         : m(a2 * db + b, a * db + b2);
        }
  return out;
}

ComplexMatrix partial_transpose(const DensityState& rho,
                                std::size_t subsystem) {
  return partial_transpose(rho.matrix(), rho.dims(), subsystem);
}

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<std::size_t>& dims,
                            std::size_t keep) {
  require_bipartite(dims, m.dim(), keep);
  const std::size_t da = dims[0];
  const std::size_t db = dims[1];
  if (keep == 0) {
    ComplexMatrix out(da);
    for (std::size_t a = 0; a < da; ++a)
      for (std::size_t a2 = 0; a2 < da; ++a2)
        for (std::size_t b = 0; b < db; ++b)
          out(a, a2) += m(a * db + b, a2 * db + b);
    return out;
  }
  ComplexMatrix out(db);
  for (std::size_t b = 0; b < db; ++b)
    for (std::size_t b2 = 0; b2 < db; ++b2)
      for (std::size_t a = 0; a < da; ++a)
        out(b, b2) += m(a * db + b, a * db + b2);
  return out;
}

ComplexMatrix herm_exp(const ComplexMatrix& a, double beta) {
  const Spectrum s = eig_hermitian(a);
  Eigen::VectorXcd w(static_cast<Index>(s.dim()));
  for (std::size_t i = 0; i < s.dim(); ++i) {
    w[Index(i)] = std::exp(beta * s.values[i]);
  }
  return ComplexMatrix(
      Eigen::MatrixXcd(s.vectors * w.asDiagonal() * s.vectors.adjoint()));
}

StateFunctionals state_functionals(const DensityState& rho) {
  const Spectrum s = eig_hermitian(rho.matrix());
  const double d = static_cast<double>(rho.dim());
  const double purity = rho.matrix().eigen().squaredNorm();
  double entropy = 0.0;
  for (double lambda : s.values) {
    if (lambda > 0.0) entropy -= lambda * std::log(lambda);
  }
  return {purity, std::log2(d * purity), std::max(entropy, 0.0),
          s.values.front()};
}

double expectation(const ComplexMatrix& op, const ComplexMatrix& rho) {
  if (op.dim() != rho.dim()) {
    throw Error(ErrorCode::DimMismatch, "operator and state differ in size");
  }
  // Tr(rho op) = sum_ij rho_ij op_ji
  return (rho.eigen().transpose().cwiseProduct(op.eigen())).sum().real();
}

}  // namespace brb
