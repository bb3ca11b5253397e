/**
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "brb/hermitian.hpp"

namespace brb {

using BlochVector = std::array<double, 3>;

/// POVM elements of one setting, indexed by outcome.
using Measurement = std::vector<ComplexMatrix>;

/// One coefficient c_{ab|xy} of the Bell functional.
struct BellTerm {
  std::size_t a;
  std::size_t b;
  std::size_t x;
  std::size_t y;
  double c;
};

/// Bipartite Bell scenario in POVM form:
///   I = sum c_{ab|xy} M_{a|x} (x) M_{b|y}.
/// Settings may have different outcome counts. Single-party marginal terms
/// are written against a trivial setting with the lone outcome M = 1.
struct BellScenario {
  std::vector<Measurement> alice;  // alice[x][a]
  std::vector<Measurement> bob;    // bob[y][b]
  std::vector<BellTerm> terms;
  /// Slack allowed on POVM positivity (rounded published data needs more
  /// than the default).
  double psd_tolerance = 1e-10;

  std::size_t dim_a() const;
  std::size_t dim_b() const;

  /// Throws InvalidScenario if a POVM is not positive or complete, a term
  /// points outside the scenario or local dimensions are inconsistent.
  void validate() const;
};

/// Correlator form I = sum g_xy A_x (x) B_y with qubit observables
/// A_x = a_x . sigma, B_y = b_y . sigma.
struct CorrelationScenario {
  std::vector<std::vector<double>> g;  // g[x][y]
  std::vector<BlochVector> bloch_a;
  std::vector<BlochVector> bloch_b;

  void validate() const;
};

/// a . sigma. Throws NotUnit unless |a| = 1 within 1e-12.
ComplexMatrix observable_from_bloch(const BlochVector& a);

ComplexMatrix build_bell_operator(const BellScenario& s);
ComplexMatrix build_correlation_operator(const CorrelationScenario& s);

/// Rewrites a correlator scenario in POVM form with M_{a|x} = (1 -/+ A_x)/2,
/// outcome 0 carrying the -1 eigenvalue, so that A_x = M_{1|x} - M_{0|x}.
BellScenario to_bell_scenario(const CorrelationScenario& s);

/// Two-setting linear steering operator A1 (x) sigma_z + A2 (x) sigma_x.
/// Throws NotDichotomic unless both are qubit observables with A^2 = 1.
ComplexMatrix steering_operator_f2(const ComplexMatrix& a1,
                                   const ComplexMatrix& a2);

/// Number of deterministic strategies per party above which local_bound
/// refuses to enumerate.
inline constexpr std::size_t kMaxStrategies = 4096;

/// Exact local-hidden-variable bound by enumerating Alice's deterministic
/// strategies; Bob's best response is separable per setting.
/// Throws TooLargeToEnumerate.
double local_bound(const BellScenario& s);
double local_bound(const CorrelationScenario& s);

struct Incompatibility {
  double c_a;      // ||[A1, A2]||
  double c_b;      // ||[B1, B2]||
  double c;        // c_a * c_b
  double c_tilde;  // c_a + c_b
};

Incompatibility incompatibility(const ComplexMatrix& a1, const ComplexMatrix& a2,
                                const ComplexMatrix& b1, const ComplexMatrix& b2);

/// Built-in I3322 scenario with the published rounded qubit projectors
/// (stored as M_{0|x}; the second outcome is the completeness complement).
/// Setting index 3 on each side is the trivial marginal setting.
BellScenario i3322_fixture();

/// CHSH with A1 = z, A2 = x, B1 = (z+x)/sqrt2, B2 = (z-x)/sqrt2 (C = 4).
CorrelationScenario chsh_c4_fixture();

}  // namespace brb
