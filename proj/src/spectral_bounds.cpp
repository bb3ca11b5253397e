/**
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "brb/spectral_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "brb/error.hpp"

namespace brb {

namespace {

// Negative eigenvalues above this are treated as zero (Jacobi noise).
constexpr double kClampTolerance = 1e-12;

void require_descending(std::span<const double> mu) {
  if (mu.empty()) {
    throw Error(ErrorCode::InvalidInput, "empty operator spectrum");
  }
  for (std::size_t i = 0; i + 1 < mu.size(); ++i) {
    if (mu[i] < mu[i + 1]) {
      throw Error(ErrorCode::InvalidInput,
                  "operator eigenvalues must be in descending order");
    }
  }
}

double value_tolerance(std::span<const double> mu) {
  double scale = 0.0;
  for (double m : mu) scale = std::max(scale, std::abs(m));
  return 1e-12 * (1.0 + scale);
}

double mean(std::span<const double> mu) {
  return std::accumulate(mu.begin(), mu.end(), 0.0) / double(mu.size());
}

double dot(std::span<const double> mu, const std::vector<double>& lambdas) {
  double v = 0.0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) v += mu[i] * lambdas[i];
  return v;
}

std::vector<double> reflected(std::span<const double> mu) {
  std::vector<double> out(mu.rbegin(), mu.rend());
  for (double& m : out) m = -m;
  return out;
}

/// Maps a Lower problem onto the Upper solver via mu -> -reverse(mu).
template <class Solver>
RankSolution solve_directed(std::span<const double> mu, double target,
                            Direction direction, Solver&& solver) {
  if (direction == Direction::Upper) return solver(mu, target);
  const std::vector<double> flipped = reflected(mu);
  RankSolution sol = solver(std::span<const double>(flipped), -target);
  sol.value = -sol.value;
  sol.direction = Direction::Lower;
  return sol;
}

void check_upper_target(std::span<const double> mu, double target) {
  const double tol = value_tolerance(mu);
  if (target > mu.front() + tol) {
    throw Error(ErrorCode::Infeasible,
                "target " + std::to_string(target) +
                    " exceeds the largest operator eigenvalue " +
                    std::to_string(mu.front()));
  }
  if (target < mean(mu) - tol) {
    throw Error(ErrorCode::OutOfRange,
                "target lies below Tr(I)/d; use Direction::Lower");
  }
}

RankSolution min_lambda1_upper(std::span<const double> mu, double target) {
  check_upper_target(mu, target);
  const std::size_t d = mu.size();
  const double tol = value_tolerance(mu);
  target = std::min(target, mu.front());

  std::size_t best_rank = 0;
  double best_lambda1 = 2.0;
  double prefix = 0.0;  // sum of mu_1 .. mu_{r-1}
  for (std::size_t r = 1; r <= d; ++r) {
    const double mu_r = mu[r - 1];
    const double denom = prefix - double(r - 1) * mu_r;
    double lambda1 = -1.0;
    if (r == 1 || denom <= tol) {
      // Top r eigenvalues coincide: the value is flat across the window.
      if (std::abs(target - mu_r) <= tol) lambda1 = 1.0 / double(r);
    } else {
      lambda1 = (target - mu_r) / denom;
      const double lower = 1.0 / double(r);
      const double upper = 1.0 / double(r - 1);
      if (lambda1 < lower - kClampTolerance || lambda1 > upper + kClampTolerance) {
        lambda1 = -1.0;
      } else {
        lambda1 = std::clamp(lambda1, lower, upper);
      }
    }
    if (lambda1 > 0.0 && lambda1 < best_lambda1 - kClampTolerance) {
      best_lambda1 = lambda1;
      best_rank = r;
    }
    prefix += mu_r;
  }
  if (best_rank == 0) {
    throw Error(ErrorCode::Infeasible, "no rank window contains the target");
  }

  RankSolution sol;
  sol.rank = best_rank;
  sol.lambdas.assign(best_rank, best_lambda1);
  sol.lambdas.back() =
      std::max(0.0, 1.0 - double(best_rank - 1) * best_lambda1);
  sol.value = dot(mu, sol.lambdas);
  sol.kind = ResourceKind::PurityRobustness;
  sol.resource = double(d) * best_lambda1 - 1.0;
  return sol;
}

RankSolution min_renyi2_upper(std::span<const double> mu, double target) {
  check_upper_target(mu, target);
  const std::size_t d = mu.size();
  const double tol = value_tolerance(mu);
  target = std::min(target, mu.front());

  for (std::size_t r = d; r >= 1; --r) {
    const GHQuantities gh = gh_quantities(mu, r);
    const double denom = gh.h * double(r) - gh.g * gh.g;
    std::vector<double> lambdas(r);
    if (denom <= 1e-12 * (1.0 + gh.h * double(r))) {
      // All r eigenvalues equal mu_1: only the extreme value is reachable
      // and the flattest spectrum on that subspace is optimal.
      if (std::abs(target - mu.front()) > tol) continue;
      std::fill(lambdas.begin(), lambdas.end(), 1.0 / double(r));
    } else {
      bool feasible = true;
      for (std::size_t i = 0; i < r; ++i) {
        lambdas[i] = ((double(r) * target - gh.g) * mu[i] + gh.h -
                      gh.g * target) /
                     denom;
        if (lambdas[i] < -kClampTolerance) {
          feasible = false;
          break;
        }
        lambdas[i] = std::max(lambdas[i], 0.0);
      }
      if (!feasible) continue;
    }
    RankSolution sol;
    sol.rank = r;
    sol.lambdas = std::move(lambdas);
    sol.value = dot(mu, sol.lambdas);
    sol.kind = ResourceKind::Renyi2Purity;
    sol.resource = std::log2(double(d) * sol.linear_purity());
    return sol;
  }
  throw Error(ErrorCode::Infeasible, "no feasible rank for the target value");
}

}  // namespace

double RankSolution::linear_purity() const {
  double p = 0.0;
  for (double l : lambdas) p += l * l;
  return p;
}

GHQuantities gh_quantities(std::span<const double> mu, std::size_t r) {
  if (r == 0 || r > mu.size()) {
    throw Error(ErrorCode::OutOfRange, "rank outside 1..d");
  }
  GHQuantities out{0.0, 0.0};
  for (std::size_t i = 0; i < r; ++i) {
    out.g += mu[i];
    out.h += mu[i] * mu[i];
  }
  return out;
}

RankSolution max_value_given_probustness(std::span<const double> mu,
                                         double p_r) {
  require_descending(mu);
  const std::size_t d = mu.size();
  if (!(p_r >= -kClampTolerance && p_r <= double(d - 1) + kClampTolerance)) {
    throw Error(ErrorCode::OutOfRange,
                "robustness of purity must lie in [0, d-1]");
  }
  const double lambda1 =
      std::clamp((1.0 + p_r) / double(d), 1.0 / double(d), 1.0);

  // Smallest r with lambda1 >= 1/r; the boundary 1/r belongs to rank r.
  std::size_t r = 1;
  while (r < d && lambda1 < 1.0 / double(r) - kClampTolerance) ++r;

  RankSolution sol;
  sol.rank = r;
  sol.lambdas.assign(r, lambda1);
  sol.lambdas.back() = std::max(0.0, 1.0 - double(r - 1) * lambda1);
  sol.value = dot(mu, sol.lambdas);
  sol.kind = ResourceKind::PurityRobustness;
  sol.resource = double(d) * lambda1 - 1.0;
  return sol;
}

RankSolution min_lambda1_for_value(std::span<const double> mu, double target,
                                   Direction direction) {
  require_descending(mu);
  return solve_directed(mu, target, direction, min_lambda1_upper);
}

RankSolution max_value_given_renyi2(std::span<const double> mu, double p2) {
  require_descending(mu);
  const std::size_t d = mu.size();
  const double log_d = std::log2(double(d));
  if (!(p2 >= -kClampTolerance && p2 <= log_d + kClampTolerance)) {
    throw Error(ErrorCode::OutOfRange, "Renyi-2 purity must lie in [0, log2 d]");
  }
  const double purity =
      std::clamp(std::exp2(p2) / double(d), 1.0 / double(d), 1.0);

  for (std::size_t r = d; r >= 1; --r) {
    const GHQuantities gh = gh_quantities(mu, r);
    const double rd = double(r);
    const double denom = gh.h * rd - gh.g * gh.g;
    // A rank-r spectrum cannot be purer than 1 or less pure than 1/r.
    if (purity * rd < 1.0 - 1e-12) continue;

    std::vector<double> lambdas(r);
    double value = 0.0;
    if (denom <= 1e-12 * (1.0 + gh.h * rd)) {
      // Degenerate top eigenvalue: the maximum is mu_1 for any spectrum
      // supported on this subspace; pick one with the requested purity.
      value = mu.front();
      const double x =
          r == 1 ? 1.0
                 : std::sqrt(std::max(0.0, (rd * purity - 1.0) / (rd - 1.0)));
      std::fill(lambdas.begin(), lambdas.end(), (1.0 - x) / rd);
      lambdas.front() += x;
    } else {
      const double radicand =
          std::max(0.0, (1.0 - purity * rd) * (gh.g * gh.g - gh.h * rd));
      value = (gh.g + std::sqrt(radicand)) / rd;
      bool feasible = true;
      for (std::size_t i = 0; i < r; ++i) {
        lambdas[i] =
            ((rd * value - gh.g) * mu[i] + gh.h - gh.g * value) / denom;
        if (lambdas[i] < -kClampTolerance) {
          feasible = false;
          break;
        }
        lambdas[i] = std::max(lambdas[i], 0.0);
      }
      if (!feasible) continue;
    }
    RankSolution sol;
    sol.rank = r;
    sol.lambdas = std::move(lambdas);
    sol.value = value;
    sol.kind = ResourceKind::Renyi2Purity;
    sol.resource = p2;
    return sol;
  }
  throw Error(ErrorCode::Infeasible, "no feasible rank for the given purity");
}

RankSolution min_renyi2_for_value(std::span<const double> mu, double target,
                                  Direction direction) {
  require_descending(mu);
  return solve_directed(mu, target, direction, min_renyi2_upper);
}

RelativeEntropySolution min_relent_purity_for_value(
    const ComplexMatrix& op, double target,
    std::optional<std::vector<std::size_t>> dims) {
  const Spectrum spectrum = eig_hermitian(op);
  const std::vector<double>& mu = spectrum.values;
  const std::size_t d = mu.size();
  const double tol = value_tolerance(mu);
  const double average = mean(mu);

  if (target < average - tol) {
    throw Error(ErrorCode::OutOfRange, "target lies below Tr(I)/d");
  }

  // Gibbs weights shifted by mu_1 so that no exponent is positive.
  std::vector<double> weights(d);
  auto expectation_at = [&](double beta) {
    double z = 0.0;
    double num = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      weights[i] = std::exp(beta * (mu[i] - mu.front()));
      z += weights[i];
      num += weights[i] * mu[i];
    }
    for (double& w : weights) w /= z;
    return num / z;
  };

  double beta = 0.0;
  if (std::abs(target - average) > tol) {
    if (target >= mu.front() - tol) {
      throw Error(ErrorCode::Infeasible,
                  "the largest eigenvalue is only reached as beta -> infinity");
    }
    double lo = 0.0;
    double hi = 1.0;
    while (expectation_at(hi) < target) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e300) {
        throw Error(ErrorCode::SolverFailure, "could not bracket beta");
      }
    }
    for (int iter = 0; iter < 200; ++iter) {
      beta = 0.5 * (lo + hi);
      const double v = expectation_at(beta);
      if (std::abs(v - target) <= 1e-13 * (1.0 + std::abs(target))) break;
      (v < target ? lo : hi) = beta;
      if (hi - lo <= 1e-16 * hi) break;
    }
  }
  const double residual = expectation_at(beta) - target;
  if (std::abs(residual) > 1e-10) {
    throw Error(ErrorCode::SolverFailure,
                "Gibbs constraint residual " + std::to_string(residual));
  }

  double entropy = 0.0;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(Eigen::Index(d), Eigen::Index(d));
  for (std::size_t i = 0; i < d; ++i) {
    const double p = weights[i];
    if (p > 0.0) entropy -= p * std::log(p);
    const ComplexVector v = spectrum.vector(i);
    rho += p * v * v.adjoint();
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();

  RelativeEntropySolution out{
      std::max(0.0, std::log(double(d)) - entropy), beta, residual,
      DensityState(ComplexMatrix(rho),
                   dims.value_or(std::vector<std::size_t>{d}))};
  return out;
}

DensityState construct_optimal_state(
    const RankSolution& sol, const Spectrum& basis,
    std::optional<std::vector<std::size_t>> dims) {
  const std::size_t d = basis.dim();
  if (sol.lambdas.size() != sol.rank || sol.rank == 0 || sol.rank > d) {
    throw Error(ErrorCode::DimMismatch,
                "solution rank does not fit the operator basis");
  }
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(Eigen::Index(d), Eigen::Index(d));
  for (std::size_t i = 0; i < sol.rank; ++i) {
    const std::size_t column =
        sol.direction == Direction::Upper ? i : d - 1 - i;
    const ComplexVector v = basis.vector(column);
    rho += sol.lambdas[i] * v * v.adjoint();
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityState(ComplexMatrix(rho),
                      dims.value_or(std::vector<std::size_t>{d}));
}

}  // namespace brb
