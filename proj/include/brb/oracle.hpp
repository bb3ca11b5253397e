/**
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "brb/hermitian.hpp"
#include "brb/spectral_bounds.hpp"

namespace brb {

inline constexpr std::uint64_t kDefaultSeed = 0xB311;

/// Seed from the BRB_SEED environment variable (decimal or 0x-prefixed hex),
/// falling back to kDefaultSeed.
std::uint64_t default_seed();

/// Counter-based 64-bit generator: output n of stream s is a SplitMix64
/// finalizer of (key(seed, s) + n * golden). Streams are independent and
/// cheap to split. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed = kDefaultSeed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()();

  /// Uniform in [0, 1).
  double uniform();
  /// Standard normal (Box-Muller on two consecutive outputs).
  double normal();

  /// Child generator on an independent stream.
  CounterRng split(std::uint64_t child) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

enum class Constraint { None, FixedLambda1, FixedLinearPurity };

struct SamplerConfig {
  std::uint64_t seed = kDefaultSeed;
  std::size_t count = 0;
  Constraint constraint = Constraint::None;
  double value = 0.0;  // lambda1 or Tr(rho^2)
  /// Strength of the random unitary mixing of the reference basis; large
  /// values approach a Haar-random basis.
  double mixing = 1.0;
};

/// One sampled state kept in factored form.
struct StateSample {
  std::vector<double> spectrum;  // descending
  Eigen::MatrixXcd basis;        // columns are eigenvectors

  DensityState state() const;
  /// Tr(rho op) without forming rho.
  double expectation(const ComplexMatrix& op) const;
};

inline constexpr std::size_t kMaxRejections = 10'000'000;

/// Reproducible stream of states obeying the configured spectral constraint.
/// Throws InfeasibleConstraint for constraint values outside [1/d, 1] or when
/// rejection sampling exhausts kMaxRejections.
class StateSampler {
 public:
  StateSampler(const SamplerConfig& cfg, std::size_t d,
               std::optional<Eigen::MatrixXcd> reference = std::nullopt);

  bool done() const { return emitted_ >= cfg_.count; }
  StateSample next();
  std::size_t emitted() const { return emitted_; }

 private:
  std::vector<double> sample_spectrum();
  Eigen::MatrixXcd sample_basis();

  SamplerConfig cfg_;
  std::size_t d_;
  Eigen::MatrixXcd reference_;
  CounterRng rng_;
  std::size_t emitted_ = 0;
};

/// Convenience wrapper collecting the whole stream.
std::vector<StateSample> sample_constrained_states(
    const SamplerConfig& cfg, std::size_t d,
    std::optional<Eigen::MatrixXcd> reference = std::nullopt);

struct NelderMeadConfig {
  std::size_t restarts = 8;
  double tolerance = 1e-9;  // simplex diameter
  std::size_t max_iterations = 20000;
  double initial_step = 0.25;
  std::vector<double> lower;  // empty = unbounded
  std::vector<double> upper;
  std::uint64_t seed = kDefaultSeed;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value;
  std::size_t evaluations;
};

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free maximization with restarts. The first run starts at x0,
/// later ones restart from the incumbent and from random box points.
NelderMeadResult nelder_mead_max(const Objective& f, std::vector<double> x0,
                                 const NelderMeadConfig& cfg = {});

struct StationarityResult {
  double alpha;
  double beta;
  double residual;  // max |2 lambda_k - alpha - beta mu_k|
};

/// Least-squares Lagrange multipliers over the active eigenvalues.
StationarityResult stationarity_check(const RankSolution& sol,
                                      std::span<const double> mu);

/// Minimal Tr(rho^2) over spectra with sum(mu lambda) = target, by
/// Nelder-Mead over a squared parametrization of the simplex.
NelderMeadResult min_linear_purity_nm(std::span<const double> mu, double target,
                                      const NelderMeadConfig& cfg = {});

}  // namespace brb
