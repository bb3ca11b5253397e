/**
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "brb/lmi.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "brb/error.hpp"

namespace brb {

namespace {

using Eigen::Index;

// Orthonormal real coordinates of a Hermitian q x q matrix: diagonal
// entries, then sqrt(2) Re and sqrt(2) Im of each upper entry.
void to_coords(const Eigen::MatrixXcd& h, double* out) {
  const Index q = h.rows();
  Index k = 0;
  for (Index j = 0; j < q; ++j) out[k++] = h(j, j).real();
  for (Index j = 0; j < q; ++j)
    for (Index l = j + 1; l < q; ++l) {
      const std::complex<double> v = 0.5 * (h(j, l) + std::conj(h(l, j)));
      out[k++] = std::numbers::sqrt2 * v.real();
      out[k++] = std::numbers::sqrt2 * v.imag();
    }
}

void add_from_coords(const double* x, Eigen::MatrixXcd& h) {
  const Index q = h.rows();
  Index k = 0;
  for (Index j = 0; j < q; ++j) h(j, j) += x[k++];
  for (Index j = 0; j < q; ++j)
    for (Index l = j + 1; l < q; ++l) {
      const std::complex<double> v(x[k] / std::numbers::sqrt2, x[k + 1] / std::numbers::sqrt2);
      k += 2;
      h(j, l) += v;
      h(l, j) += std::conj(v);
    }
}

/// Matrix of X -> M X M^H in the orthonormal coordinates.
Eigen::MatrixXd congruence_map(const Eigen::MatrixXcd& m) {
  const Index q = m.rows();
  Eigen::MatrixXd out(q * q, q * q);
  Index col = 0;
  // Column from the image entries y(r, c), r <= c.
  auto put = [&](auto&& y) {
    double* o = out.col(col++).data();
    Index k = 0;
    for (Index r = 0; r < q; ++r) o[k++] = y(r, r).real();
    for (Index r = 0; r < q; ++r)
      for (Index c = r + 1; c < q; ++c) {
        const std::complex<double> v = y(r, c);
        o[k++] = std::numbers::sqrt2 * v.real();
        o[k++] = std::numbers::sqrt2 * v.imag();
      }
  };
  const double s = 1.0 / std::numbers::sqrt2;
  const std::complex<double> i(0.0, 1.0);
  for (Index j = 0; j < q; ++j) {
    put([&](Index r, Index c) { return m(r, j) * std::conj(m(c, j)); });
  }
  for (Index j = 0; j < q; ++j)
    for (Index l = j + 1; l < q; ++l) {
      auto jl = [&](Index r, Index c) { return m(r, j) * std::conj(m(c, l)); };
      put([&](Index r, Index c) { return s * (jl(r, c) + std::conj(jl(c, r))); });
      put([&](Index r, Index c) { return s * i * (jl(r, c) - std::conj(jl(c, r))); });
    }
  return out;
}

struct ReducedBlock {
  Index q;
  Eigen::MatrixXcd g0;
  Eigen::MatrixXd g;  // column l holds the coordinates of G_l
};

Eigen::MatrixXcd evaluate(const ReducedBlock& b, const Eigen::VectorXd& z) {
  Eigen::MatrixXcd m = b.g0;
  const Eigen::VectorXd x = b.g * z;
  add_from_coords(x.data(), m);
  return m;
}

/// -log det for a positive definite block, +inf otherwise.
double neg_log_det(const Eigen::MatrixXcd& m) {
  Eigen::LLT<Eigen::MatrixXcd> llt(m);
  if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (Index i = 0; i < m.rows(); ++i) {
    const double d = llt.matrixLLT()(i, i).real();
    if (!(d > 0.0)) return std::numeric_limits<double>::infinity();
    s -= 2.0 * std::log(d);
  }
  return s;
}

double min_eigenvalue(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace

LmiResult solve_lmi(const LmiProblem& p, const Eigen::VectorXd& x0,
                    const LmiOptions& opt) {
  const Index n = Index(p.n);
  if (p.c.size() != n || x0.size() != n) {
    throw Error(ErrorCode::DimMismatch, "LMI cost or start has the wrong size");
  }
  for (const auto& b : p.blocks) {
    if (b.f.size() != p.n) {
      throw Error(ErrorCode::DimMismatch, "LMI block has the wrong number of terms");
    }
  }

  // Null-space parametrization x = x0 + N z of the equality constraints.
  Eigen::MatrixXd null_basis = Eigen::MatrixXd::Identity(n, n);
  if (p.a_eq.rows() > 0) {
    const double residual = (p.a_eq * x0 - p.b_eq).cwiseAbs().maxCoeff();
    if (residual > 1e-9 * (1.0 + p.b_eq.cwiseAbs().maxCoeff())) {
      throw Error(ErrorCode::SolverFailure,
                  "starting point violates the equality constraints (residual " +
                      std::to_string(residual) + ")");
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(p.a_eq);
    const Eigen::MatrixXd kernel = lu.kernel();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(kernel);
    null_basis = qr.householderQ() * Eigen::MatrixXd::Identity(n, kernel.cols());
  }
  const Index m = null_basis.cols();
  const Eigen::VectorXd c = null_basis.transpose() * p.c;

  std::vector<ReducedBlock> blocks;
  double barrier_weight = 0.0;
  for (const auto& b : p.blocks) {
    ReducedBlock r;
    r.q = b.f0.rows();
    r.g0 = b.f0;
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(r.q * r.q, n);
    for (Index i = 0; i < n; ++i) {
      const Eigen::MatrixXcd& fi = b.f[std::size_t(i)];
      if (fi.size() == 0) continue;
      r.g0 += x0(i) * fi;
      to_coords(fi, f.col(i).data());
    }
    r.g0 = 0.5 * (r.g0 + r.g0.adjoint()).eval();
    r.g = f * null_basis;
    barrier_weight += double(r.q);
    blocks.push_back(std::move(r));
  }

  Eigen::VectorXd z = Eigen::VectorXd::Zero(m);
  for (const auto& b : blocks) {
    if (!std::isfinite(neg_log_det(evaluate(b, z)))) {
      throw Error(ErrorCode::SolverFailure, "starting point is not strictly feasible");
    }
  }

  auto barrier = [&](const Eigen::VectorXd& y, double t) {
    double v = t * c.dot(y);
    for (const auto& b : blocks) {
      const double nl = neg_log_det(evaluate(b, y));
      if (!std::isfinite(nl)) return std::numeric_limits<double>::infinity();
      v += nl;
    }
    return v;
  };

  std::size_t newton_steps = 0;
  double t = opt.t0;
  while (true) {
    for (std::size_t it = 0; it < opt.max_newton; ++it) {
      Eigen::VectorXd grad = t * c;
      Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(m, m);
      for (const auto& b : blocks) {
        // With S = L L^H and A_l = L^-1 G_l L^-H: grad_l = -tr A_l and
        // hess_lk = <A_l, A_k>, all in orthonormal coordinates.
        const Index q = b.q;
        const Eigen::LLT<Eigen::MatrixXcd> llt(evaluate(b, z));
        const Eigen::MatrixXcd linv = llt.matrixL().solve(Eigen::MatrixXcd::Identity(q, q));
        const Eigen::MatrixXd a = congruence_map(linv) * b.g;
        grad -= a.topRows(q).colwise().sum().transpose();
        hess.noalias() += a.transpose() * a;
      }
      Eigen::VectorXd step;
      const Eigen::LLT<Eigen::MatrixXd> llt_h(hess);
      if (llt_h.info() == Eigen::Success) {
        step = -llt_h.solve(grad);
      } else {
        step = -Eigen::LDLT<Eigen::MatrixXd>(hess).solve(grad);
      }
      if (!step.allFinite()) {
        throw Error(ErrorCode::SolverFailure, "singular barrier Hessian");
      }
      const double decrement = -grad.dot(step);
      ++newton_steps;
      if (decrement / 2.0 <= 1e-10) break;

      const double f0 = barrier(z, t);
      double s = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, s *= 0.5) {
        const Eigen::VectorXd trial = z + s * step;
        const double f1 = barrier(trial, t);
        if (std::isfinite(f1) && f1 <= f0 - 0.25 * s * decrement) {
          z = trial;
          moved = true;
          break;
        }
      }
      if (!moved) break;  // centred as far as double precision allows
    }
    if (barrier_weight / t <= opt.gap) break;
    t *= opt.growth;
  }

  LmiResult out;
  out.x = x0 + null_basis * z;
  out.objective = p.c.dot(out.x);
  out.gap = barrier_weight / t;
  out.min_eig = std::numeric_limits<double>::infinity();
  for (const auto& b : blocks) out.min_eig = std::min(out.min_eig, min_eigenvalue(evaluate(b, z)));
  out.newton_steps = newton_steps;
  if (!std::isfinite(out.objective) || out.min_eig < -1e-9) {
    throw Error(ErrorCode::SolverFailure,
                "barrier iterate left the feasible set (min eigenvalue " +
                    std::to_string(out.min_eig) + ")");
  }
  return out;
}

std::vector<Eigen::MatrixXcd> hermitian_basis(std::size_t n) {
  const Index d = Index(n);
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(n * n);
  for (Index j = 0; j < d; ++j) {
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(d, d);
    e(j, j) = 1.0;
    out.push_back(e);
  }
  for (Index j = 0; j < d; ++j)
    for (Index k = j + 1; k < d; ++k) {
      Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(d, d);
      s(j, k) = 1.0;
      s(k, j) = 1.0;
      out.push_back(s);
      Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
      a(j, k) = std::complex<double>(0.0, 1.0);
      a(k, j) = std::complex<double>(0.0, -1.0);
      out.push_back(a);
    }
  return out;
}

Eigen::VectorXd hermitian_coordinates(const Eigen::MatrixXcd& h) {
  const Index d = h.rows();
  Eigen::VectorXd x(d * d);
  Index k = 0;
  for (Index j = 0; j < d; ++j) x(k++) = h(j, j).real();
  for (Index j = 0; j < d; ++j)
    for (Index l = j + 1; l < d; ++l) {
      x(k++) = h(j, l).real();
      x(k++) = h(j, l).imag();
    }
  return x;
}

Eigen::MatrixXcd hermitian_from(const Eigen::VectorXd& x, std::size_t offset,
                                std::size_t n) {
  const Index d = Index(n);
  Eigen::MatrixXcd h(d, d);
  Index k = Index(offset);
  for (Index j = 0; j < d; ++j) h(j, j) = x(k++);
  for (Index j = 0; j < d; ++j)
    for (Index l = j + 1; l < d; ++l) {
      const std::complex<double> v(x(k), x(k + 1));
      k += 2;
      h(j, l) = v;
      h(l, j) = std::conj(v);
    }
  return h;
}

}  // namespace brb
