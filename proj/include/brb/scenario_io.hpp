/**
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "brb/bell.hpp"
#include "brb/hermitian.hpp"

namespace brb {

/// A Bell (or steering) operator ready for the bound computations.
struct LoadedScenario {
  std::string name;
  ComplexMatrix op;
  std::vector<std::size_t> dims;
  double local_bound;
  std::optional<BellScenario> bell;  // present unless given in correlator form
  std::optional<CorrelationScenario> correlation;
};

/// Parses a scenario document.
///
/// Accepted shapes:
///   {"dims": [dA, dB],
///    "coefficients": [{"a":0, "b":0, "x":0, "y":0, "c":1.0}, ...],
///    "measurements": {"alice": [[M_0|0, M_1|0], ...], "bob": [...]},
///    "psd_tolerance": 1e-10}                              (optional)
///   {"correlation": {"g": [[...]], "bloch_a": [[x,y,z], ...],
///                    "bloch_b": [[x,y,z], ...]}}
/// Matrices are arrays of rows of [re, im] pairs, or a flat row-major list
/// of d*d pairs. Errors are InvalidInput with "line N" in the message.
LoadedScenario parse_scenario(const std::string& text,
                              const std::string& origin = "<input>");

LoadedScenario load_scenario_file(const std::string& path);

/// "chsh-c4", "i3322" or "steering-f2". Throws InvalidInput otherwise.
LoadedScenario builtin_scenario(const std::string& name);

std::vector<std::string> builtin_names();

}  // namespace brb
