/**
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "brb/hermitian.hpp"

namespace brb {

/// Purity quantifiers handled by the closed-form solvers.
enum class ResourceKind {
  PurityRobustness,       // P_R = d * lambda_1 - 1
  Renyi2Purity,           // log2(d Tr rho^2)
  RelativeEntropyPurity,  // log d - S(rho), nats
};

/// Which side of Tr(I)/d the target Bell value lies on. `Upper` pairs the
/// state spectrum with the operator's eigenvalues in descending order,
/// `Lower` with the ascending order.
enum class Direction { Upper, Lower };

/// Optimal state spectrum diagonal in the operator eigenbasis.
///
/// `lambdas` holds the r non-zero eigenvalues in descending order; the i-th
/// entry belongs to the i-th operator eigenvector counted from the top
/// (Upper) or from the bottom (Lower).
struct RankSolution {
  std::size_t rank = 0;
  std::vector<double> lambdas;
  double value = 0.0;  // Tr(rho I)
  ResourceKind kind = ResourceKind::PurityRobustness;
  double resource = 0.0;
  Direction direction = Direction::Upper;

  double lambda1() const { return lambdas.front(); }
  double linear_purity() const;
};

struct GHQuantities {
  double g;  // sum of the r largest eigenvalues
  double h;  // sum of their squares
};

GHQuantities gh_quantities(std::span<const double> mu, std::size_t r);

/// Largest Bell value reachable by any state with robustness of purity p_r.
/// `mu` are the operator eigenvalues in descending order; d = mu.size().
/// Throws OutOfRange unless 0 <= p_r <= d - 1.
RankSolution max_value_given_probustness(std::span<const double> mu, double p_r);

/// Smallest largest-eigenvalue (equivalently robustness of purity) of a state
/// reaching `target`. Throws Infeasible beyond the extreme eigenvalue and
/// OutOfRange when the target lies on the other side of Tr(I)/d.
RankSolution min_lambda1_for_value(std::span<const double> mu, double target,
                                   Direction direction = Direction::Upper);

/// Largest Bell value reachable with Renyi-2 purity p2 (0 <= p2 <= log2 d).
RankSolution max_value_given_renyi2(std::span<const double> mu, double p2);

/// Smallest Renyi-2 purity of a state reaching `target`.
RankSolution min_renyi2_for_value(std::span<const double> mu, double target,
                                  Direction direction = Direction::Upper);

struct RelativeEntropySolution {
  double s_p;       // log d - S(rho), nats
  double beta;      // inverse temperature of the Gibbs form
  double residual;  // Tr(rho I) - target
  DensityState state;
};

/// Maximum-entropy state exp(beta I)/Z with Tr(rho I) = target, found by
/// bisection in beta >= 0. Throws Infeasible for target >= mu_1 and
/// OutOfRange for target < Tr(I)/d.
RelativeEntropySolution min_relent_purity_for_value(
    const ComplexMatrix& op, double target,
    std::optional<std::vector<std::size_t>> dims = std::nullopt);

/// rho = sum_i lambda_i |Psi_i><Psi_i| over the operator eigenvectors chosen
/// by the solution's direction.
DensityState construct_optimal_state(
    const RankSolution& sol, const Spectrum& basis,
    std::optional<std::vector<std::size_t>> dims = std::nullopt);

}  // namespace brb
