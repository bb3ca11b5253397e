/**
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace brb {

/// Hermitian block F(x) = f0 + sum_i x_i f[i]; unused terms may be left
/// as empty matrices.
struct LmiBlock {
  Eigen::MatrixXcd f0;
  std::vector<Eigen::MatrixXcd> f;
};

/// minimize c.x  s.t.  F_j(x) >= 0 for every block,  A x = b.
struct LmiProblem {
  std::size_t n = 0;
  Eigen::VectorXd c;
  std::vector<LmiBlock> blocks;
  Eigen::MatrixXd a_eq;  // may have zero rows
  Eigen::VectorXd b_eq;
};

struct LmiOptions {
  double t0 = 1.0;
  double growth = 5.0;     // t multiplier per centering stage
  double gap = 1e-8;       // stop once (sum of block sizes) / t <= gap
  std::size_t max_newton = 100;  // per stage
};

struct LmiResult {
  Eigen::VectorXd x;
  double objective;
  double gap;       // final barrier duality-gap bound
  double min_eig;   // smallest eigenvalue over all blocks at x
  std::size_t newton_steps;
};

/// Log-barrier Newton method. `x0` must satisfy the equalities and make
/// every block positive definite. Throws SolverFailure otherwise or when
/// Newton fails to make progress.
LmiResult solve_lmi(const LmiProblem& problem, const Eigen::VectorXd& x0,
                    const LmiOptions& options = {});

/// Real basis of n x n Hermitian matrices: n diagonal units, then for each
/// j < k the symmetric and antisymmetric (imaginary) pairs.
std::vector<Eigen::MatrixXcd> hermitian_basis(std::size_t n);

/// Coordinates of a Hermitian matrix in hermitian_basis(n).
Eigen::VectorXd hermitian_coordinates(const Eigen::MatrixXcd& h);

/// Inverse of hermitian_coordinates starting at `offset` inside x.
Eigen::MatrixXcd hermitian_from(const Eigen::VectorXd& x, std::size_t offset,
                                std::size_t n);

}  // namespace brb
