#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "warpform/gallery.hpp"

namespace warpform {

// Parses a scalar expression in the variables x0..x{dim-1} into a jet
// function. Grammar: + - * / ^, parentheses, numeric literals, `pi`, and the
// functions sin, cos, exp, sqrt, log, tanh.
JetFn parse_expression(const std::string& src, int dim);

struct Scenario {
  std::string label;
  std::string instance;                 // gallery name; empty for inline specs
  // Inline immersion spec (used when `instance` is empty).
  int p = 0, n = 0;
  double c = 0.0;
  std::string rho_expr;                 // function of x0..x{p-1}; empty = 1
  std::vector<std::string> map_exprs;   // components in x0..x{p+n-1}
  std::vector<std::pair<double, double>> bounds;

  std::vector<int> grid;                // per-axis counts; empty = default
  std::vector<std::string> suites;      // empty = all applicable
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 0;

  static Scenario from_json(const nlohmann::json& j);
  static Scenario load(const std::string& path);
};

struct SuiteSummary {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::string note;
};

struct PointRecord {
  Eigen::VectorXd params;
  TypeTag tag = TypeTag::Indeterminate;
  int dim_alpha_hv = 0;
  double margin = 0.0;
  bool has_b = false;
  double beta = 0.0, lambda = 0.0, gamma = 0.0, delta_t0 = 0.0;
  double isometry = 0.0, gauss = 0.0;
};

struct Report {
  nlohmann::ordered_json scenario_echo;
  std::vector<PointRecord> points;
  std::vector<SuiteSummary> suites;
  std::map<std::string, int> type_counts;
  std::string version = "warpform 0.1.0";

  bool pass() const;
  nlohmann::ordered_json to_json() const;
  std::string to_csv() const;
};

double default_tolerance(const std::string& suite);
const std::vector<std::string>& all_suites();

// Runs every enabled suite over the scenario grid. Deterministic for a fixed
// scenario and seed, independent of the worker count.
Report run_scenario(const Scenario& sc, int jobs = 1);

}  // namespace warpform
