/**
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "brb/error.hpp"
#include "brb/scenario_io.hpp"
#include "brb/spectral_bounds.hpp"
#include "brb/two_qubit.hpp"

namespace brb {

/// "start:stop:steps" with `steps` intervals, both ends included.
struct Grid {
  double start;
  double stop;
  std::size_t steps;

  std::vector<double> points() const;
};

Grid parse_grid(const std::string& text);

/// 12 significant digits; "nan" and "inf" for non-finite values.
std::string format_number(double x);

/// Exit status for a library error: 1 input, 2 infeasible, 3 solver.
int exit_code_for(ErrorCode code);

enum class Measure { PurityRobustness, Renyi2, RelativeEntropy };

Measure parse_measure(const std::string& name);

struct BoundReport {
  double local_bound;
  double target;
  std::vector<double> spectrum;
  bool feasible;
  std::size_t rank;
  std::vector<double> lambdas;
  double resource_value;
  std::optional<double> beta;  // relative entropy only
  Direction direction;
};

/// Minimal resource for Tr(rho I) = target. Infeasible targets produce a
/// report with feasible = false.
BoundReport compute_bound(const LoadedScenario& s, double target, Measure measure);

std::string bound_report_json(const BoundReport& r, Measure measure);

std::vector<CurvePoint> chsh_curve(double v, const Grid& c_grid);
std::vector<CurvePoint> steering_curve(double v, const Grid& ca_grid);
std::string curve_csv(const std::vector<CurvePoint>& pts, const char* column);
std::string heatmap_csv(double v, const Grid& ca_grid, const Grid& cb_grid);

struct MinResourcesRow {
  double v;
  bool feasible;
  double lambda1, p_r, c_r, d_r, e_r;
};
/// Resource reports for the CHSH C = 4 operator over violations.
std::vector<MinResourcesRow> min_resources_rows(const Grid& v_grid);
std::string min_resources_csv(const std::vector<MinResourcesRow>& rows);

struct RelentRow {
  double c;
  std::string status;     // "ok", "edge" (last finite row) or "infeasible"
  double log_robustness;  // log2(1 + P_R)
  double renyi2;          // log2(d Tr rho^2)
  double s_p;             // nats
};
std::vector<RelentRow> relent_compare_rows(double v, const Grid& c_grid);
std::string relent_compare_csv(const std::vector<RelentRow>& rows);

struct ReferenceCheck {
  std::string name;
  double value;
  double reference;
  double tolerance;
  bool pass() const;
};

struct I3322Report {
  std::vector<ReferenceCheck> checks;
  bool hierarchy;  // P_R > C_R > E_R on the computed values
  std::uint64_t seed;
  bool all_pass() const;
};

I3322Report i3322_check(bool skip_cr, std::uint64_t seed, std::size_t restarts = 32);
std::string i3322_report_json(const I3322Report& r);

}  // namespace brb
