/**
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "brb/commands.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "brb/error.hpp"

namespace brb {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double x = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(x)) throw std::invalid_argument(text);
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidInput, what + ": \"" + text + "\" is not a number");
  }
}

std::string csv_bool(bool b) { return b ? "1" : "0"; }

ComplexMatrix diagonal_operator(std::span<const double> mu) {
  ComplexMatrix out(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) out(i, i) = mu[i];
  return out;
}

nlohmann::json number_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

}  // namespace

std::vector<double> Grid::points() const {
  std::vector<double> out;
  if (steps == 0) return {start};
  out.reserve(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    out.push_back(i == steps ? stop
                             : start + (stop - start) * double(i) / double(steps));
  }
  return out;
}

Grid parse_grid(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? first : text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
    throw Error(ErrorCode::InvalidInput,
                "grid \"" + text + "\" must have the form start:stop:steps");
  }
  Grid g{parse_double(text.substr(0, first), "grid start"),
         parse_double(text.substr(first + 1, second - first - 1), "grid stop"), 0};
  const std::string steps = text.substr(second + 1);
  if (steps.empty() || steps.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorCode::InvalidInput, "grid steps \"" + steps + "\" must be an integer");
  }
  g.steps = std::stoul(steps);
  if (g.steps > 1'000'000) throw Error(ErrorCode::InvalidInput, "grid has too many steps");
  if (g.stop < g.start) throw Error(ErrorCode::InvalidInput, "grid stop precedes start");
  return g;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Infeasible:
    case ErrorCode::InfeasibleConstraint:
      return 2;
    case ErrorCode::SolverFailure:
      return 3;
    default:
      return 1;
  }
}

Measure parse_measure(const std::string& name) {
  if (name == "probustness") return Measure::PurityRobustness;
  if (name == "renyi2") return Measure::Renyi2;
  if (name == "relent") return Measure::RelativeEntropy;
  throw Error(ErrorCode::InvalidInput,
              "unknown measure \"" + name + "\" (probustness, renyi2, relent)");
}

BoundReport compute_bound(const LoadedScenario& s, double target, Measure measure) {
  const Spectrum sp = eig_hermitian(s.op);
  double mean = 0.0;
  double scale = 0.0;
  for (double m : sp.values) {
    mean += m / double(sp.values.size());
    scale = std::max(scale, std::abs(m));
  }
  BoundReport r{s.local_bound, target, sp.values, false, 0, {}, kNaN, std::nullopt,
                target >= mean - 1e-12 * (1.0 + scale) ? Direction::Upper : Direction::Lower};
  const bool lower = r.direction == Direction::Lower;

  try {
    if (measure == Measure::RelativeEntropy) {
      const ComplexMatrix op = lower ? complex(-1.0) * s.op : s.op;
      const RelativeEntropySolution sol =
          min_relent_purity_for_value(op, lower ? -target : target, s.dims);
      r.resource_value = sol.s_p;
      r.beta = lower ? -sol.beta : sol.beta;
      r.lambdas = eig_hermitian(sol.state.matrix()).values;
      r.rank = 0;
      for (double l : r.lambdas) r.rank += l > 1e-15 ? 1 : 0;
    } else {
      const RankSolution sol = measure == Measure::PurityRobustness
                                   ? min_lambda1_for_value(sp.values, target, r.direction)
                                   : min_renyi2_for_value(sp.values, target, r.direction);
      r.rank = sol.rank;
      r.lambdas = sol.lambdas;
      r.resource_value = sol.resource;
    }
    r.feasible = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Infeasible) throw;
  }
  return r;
}

std::string bound_report_json(const BoundReport& r, Measure measure) {
  static const char* names[] = {"probustness", "renyi2", "relent"};
  nlohmann::ordered_json j;
  j["measure"] = names[int(measure)];
  j["local_bound"] = number_or_null(r.local_bound);
  j["target"] = r.target;
  j["direction"] = r.direction == Direction::Upper ? "upper" : "lower";
  j["spectrum"] = r.spectrum;
  j["feasible"] = r.feasible;
  if (r.feasible) {
    j["rank"] = r.rank;
    j["lambdas"] = r.lambdas;
    j["resource_value"] = r.resource_value;
    if (r.beta) j["beta"] = *r.beta;
  } else {
    j["rank"] = nullptr;
    j["lambdas"] = nullptr;
    j["resource_value"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::vector<CurvePoint> chsh_curve(double v, const Grid& c_grid) {
  return min_er_vs_c_curve(v, c_grid.points());
}

std::vector<CurvePoint> steering_curve(double v, const Grid& ca_grid) {
  return min_er_vs_ca_curve(v, ca_grid.points());
}

std::string curve_csv(const std::vector<CurvePoint>& pts, const char* column) {
  std::ostringstream out;
  out << column << ",lambda1,E_R,P_R,feasible\n";
  for (const auto& p : pts) {
    out << format_number(p.c) << ',' << format_number(p.lambda1) << ','
        << format_number(p.e_r) << ',' << format_number(p.p_r) << ','
        << csv_bool(p.feasible) << '\n';
  }
  return out.str();
}

std::string heatmap_csv(double v, const Grid& ca_grid, const Grid& cb_grid) {
  const auto map = lambda1_heatmap(v, ca_grid.points(), cb_grid.points());
  std::ostringstream out;
  out << "C_A,C_B,lambda1,E_R,P_R,feasible\n";
  for (const auto& row : map)
    for (const auto& p : row) {
      out << format_number(p.c) << ',' << format_number(p.c_b) << ','
          << format_number(p.lambda1) << ',' << format_number(p.e_r) << ','
          << format_number(p.p_r) << ',' << csv_bool(p.feasible) << '\n';
    }
  return out.str();
}

std::vector<MinResourcesRow> min_resources_rows(const Grid& v_grid) {
  const LoadedScenario chsh = builtin_scenario("chsh-c4");
  std::vector<MinResourcesRow> rows;
  if (v_grid.start <= 0.0) {
    throw Error(ErrorCode::InvalidInput, "violation grid must start above 0");
  }
  for (double v : v_grid.points()) {
    MinResourcesRow row{v, false, kNaN, kNaN, kNaN, kNaN, kNaN};
    try {
      const ResourceReport r = min_resources_for_value(chsh.op, chsh.local_bound, v);
      row = {v, true, r.lambda1, r.p_r, r.c_r, r.d_r, r.e_r};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Infeasible) throw;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string min_resources_csv(const std::vector<MinResourcesRow>& rows) {
  std::ostringstream out;
  out << "v,lambda1,P_R,C_R,D_R,E_R,feasible\n";
  for (const auto& r : rows) {
    out << format_number(r.v) << ',' << format_number(r.lambda1) << ','
        << format_number(r.p_r) << ',' << format_number(r.c_r) << ','
        << format_number(r.d_r) << ',' << format_number(r.e_r) << ','
        << csv_bool(r.feasible) << '\n';
  }
  return out.str();
}

std::vector<RelentRow> relent_compare_rows(double v, const Grid& c_grid) {
  const double target = 2.0 + v;
  std::vector<RelentRow> rows;
  for (double c : c_grid.points()) {
    const auto mu = chsh_eigenvalues(c);
    RelentRow row{c, "infeasible", kNaN, kNaN, kNaN};
    if (target <= mu[0] + 1e-12) {
      row.status = "ok";
      row.log_robustness = std::log2(1.0 + min_lambda1_for_value(mu, target).resource);
      row.renyi2 = min_renyi2_for_value(mu, target).resource;
      try {
        row.s_p = min_relent_purity_for_value(diagonal_operator(mu), target).s_p;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Infeasible) throw;
        row.s_p = std::numeric_limits<double>::infinity();
        row.status = "edge";
      }
    }
    rows.push_back(row);
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].status != "ok") continue;
    const bool before = i > 0 && rows[i - 1].status == "infeasible";
    const bool after = i + 1 < rows.size() && rows[i + 1].status == "infeasible";
    if (before || after) rows[i].status = "edge";
  }
  return rows;
}

std::string relent_compare_csv(const std::vector<RelentRow>& rows) {
  std::ostringstream out;
  out << "C,log_robustness,renyi2,S_P,status\n";
  for (const auto& r : rows) {
    out << format_number(r.c) << ',' << format_number(r.log_robustness) << ','
        << format_number(r.renyi2) << ',' << format_number(r.s_p) << ',' << r.status
        << '\n';
  }
  return out.str();
}

bool ReferenceCheck::pass() const { return std::abs(value - reference) <= tolerance; }

bool I3322Report::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass()) return false;
  return hierarchy;
}

I3322Report i3322_check(bool skip_cr, std::uint64_t seed, std::size_t restarts) {
  constexpr double kTarget = 4.001;
  const LoadedScenario s = builtin_scenario("i3322");
  const Spectrum sp = eig_hermitian(s.op);
  I3322Report report{{}, true, seed};

  const double p_r = min_lambda1_for_value(sp.values, kTarget).resource;
  report.checks.push_back({"P_R", p_r, 2.6756, 5e-4});
  const double e_r = min_er_for_value(s.op, kTarget).value;
  report.checks.push_back({"E_R", e_r, 0.8291, 1e-3});
  report.hierarchy = p_r > e_r;
  if (!skip_cr) {
    BasisSearchConfig cfg;
    cfg.restarts = restarts;
    cfg.seed = seed;
    const double c_r = min_cr_for_value(s.op, kTarget, cfg).value;
    report.checks.push_back({"C_R", c_r, 0.8418, 1e-2});
    report.hierarchy = p_r > c_r && c_r > e_r;
  }
  return report;
}

std::string i3322_report_json(const I3322Report& r) {
  nlohmann::ordered_json j;
  j["target"] = 4.001;
  j["seed"] = r.seed;
  for (const auto& c : r.checks) {
    j["checks"][c.name] = {{"value", c.value},
                           {"reference", c.reference},
                           {"delta", c.value - c.reference},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass()}};
  }
  j["hierarchy"] = r.hierarchy;
  j["pass"] = r.all_pass();
  return j.dump(2) + "\n";
}

}  // namespace brb
