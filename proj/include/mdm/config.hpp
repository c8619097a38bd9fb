#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdm/engine.hpp"

namespace mdm {

/// Everything a run needs, parsed from a single JSON document. Unknown keys
/// are rejected so a typo cannot silently fall back to a default.
struct RunConfig {
  std::string problem = "quadratic";

  // coefficient sequence of the quadratic problem
  std::string lambda_form = "power";  // power | geometric | explicit
  double lambda_parameter = 4.0;
  std::vector<double> lambda_values;

  // pod-synthetic parameters
  std::string pod_domain = "symmetric-unit";
  double pod_b1 = 0.0;
  double pod_b2 = 2.0;
  double pod_mu = 1.0;
  double pod_kappa = 1.0;

  std::optional<double> epsilon;
  std::vector<double> epsilon_list;  // sweep demands, strictly descending
  std::optional<double> alpha;
  std::string backend = "smolyak-anchored-unit";
  std::optional<std::string> path;
  std::optional<double> q;
  std::uint64_t seed = 1;
  int threads = 0;
  int shifts = kLatticeShiftCount;
  double max_model_cost = 4e9;
  std::uint64_t max_subsets = 2'000'000;
  std::uint64_t node_budget = kDefaultNodeBudget;
  double oracle_tolerance = 1e-6;

  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& file_path);

/// Canonical JSON for the config; parse_config(config_to_json(c)) == c.
std::string config_to_json(const RunConfig& config, int indent = 2);

ProblemSpec problem_from_config(const RunConfig& config);

/// Request for plan/integrate; needs exactly one epsilon (the scalar field
/// or a single-entry list). Sweeps pass the full list to run_sweep instead.
MdmRequest request_from_config(const RunConfig& config);

/// The sweep demands: epsilon_list, or the scalar epsilon as a single row.
std::vector<double> sweep_epsilons(const RunConfig& config);

}  // namespace mdm
