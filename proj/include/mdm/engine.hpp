#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdm/active_set.hpp"
#include "mdm/allocation.hpp"
#include "mdm/lattice.hpp"
#include "mdm/problems.hpp"
#include "mdm/smolyak.hpp"
#include "mdm/subset.hpp"

namespace mdm {

enum class BackendKind { SmolyakAnchoredUnit, SmolyakExpWeighted, Lattice };

/// How the per-subset sample budgets h_u are weighted inside the Lagrange
/// allocation. ErrorWeighted places the quadrature error factors G_{u,q}
/// into the optimization; UnitWeighted allocates with G set to one and
/// certifies the quadrature error afterwards through the X factor. The
/// sparse-grid backends require UnitWeighted (their G depends on the level,
/// which is only known after allocation); the lattice backend requires
/// ErrorWeighted.
enum class AllocationPath { UnitWeighted, ErrorWeighted };

std::string backend_name(BackendKind backend);
std::string path_name(AllocationPath path);
BackendKind backend_by_name(const std::string& name);
AllocationPath path_by_name(const std::string& name);

struct MdmRequest {
  ProblemSpec problem;
  double epsilon = 0.0;
  std::optional<double> alpha;         // default: bounds.default_alpha()
  BackendKind backend = BackendKind::SmolyakAnchoredUnit;
  std::optional<AllocationPath> path;  // default depends on the backend
  std::optional<double> q;             // default 1 (sparse grid), 0.9 (lattice)
  std::uint64_t seed = 1;
  int threads = 0;  // 0: one worker per hardware thread
  int shifts = kLatticeShiftCount;
  bool plan_only = false;  // stop after allocation, before any evaluation

  // Refusal thresholds. The planned model cost sum n_u pound(|u|) is checked
  // before any integrand evaluation.
  double max_model_cost = 4e9;
  std::uint64_t max_subsets = 2'000'000;
  std::uint64_t node_budget = kDefaultNodeBudget;
};

struct SubsetRow {
  Subset u;
  double b = 0.0;      // norm bound B_u
  double g = 0.0;      // error factor used by the allocation
  double cb = 0.0;     // C_u B_u
  double pound = 0.0;  // cost of one decomposition-term evaluation
  double h = 0.0;      // real-valued budget
  std::uint64_t n = 0;
  int kappa = 0;       // sparse-grid level; unused for lattice rules
  double term_estimate = 0.0;
  double term_bound = 0.0;  // proven bound on |I_u(f_u) - A_u(f_u)|
  double term_cost = 0.0;   // n * pound(|u|)
  std::uint64_t raw_calls = 0;
};

struct MdmReport {
  bool success = false;
  std::string failure;  // set when planning stopped before evaluation

  std::string problem_name;
  BackendKind backend = BackendKind::SmolyakAnchoredUnit;
  AllocationPath path = AllocationPath::UnitWeighted;
  double epsilon = 0.0;
  // Error demand handed to the planner; below epsilon when a truncation
  // certificate reserves part of the budget for discarded labels.
  double epsilon_effective = 0.0;
  double alpha = 0.0;
  double q = 0.0;
  std::optional<int> label_cap;
  double truncation_bound = 0.0;

  double estimate = 0.0;
  double tail_bound = 0.0;
  // ErrorWeighted path: sum of the proven per-term bounds. UnitWeighted
  // path: (epsilon_effective / 2) * x_factor, which may exceed epsilon / 2.
  double quadrature_bound = 0.0;
  // tail_bound + truncation_bound + quadrature_bound
  double total_guarantee = 0.0;
  double x_factor = 0.0;  // sparse-grid paths only, else 0
  double y_factor = 0.0;

  double budget_identity = 0.0;     // sum g b / h^q, equals epsilon_eff / 2
  double cardinality_bound = 0.0;   // proven cap on the active-set size
  double info_cost = 0.0;           // sum n_u pound(|u|), the model cost
  double cost_bound_specific = 0.0; // pre-quantization cost bound pair:
  double cost_bound_plain = 0.0;    // sum h pound <= specific <= plain
  std::uint64_t info_points = 0;    // sum n_u
  std::uint64_t raw_calls = 0;      // integrand invocations that ran
  std::uint64_t memo_saved = 0;     // sum n_u 2^{|u|} minus raw_calls
  std::uint64_t active_count = 0;

  std::vector<SubsetRow> rows;  // canonical order
};

/// Plans the active set and sample budgets for the demanded error, applies
/// the backend rule to every decomposition term, and reports the estimate
/// with its error certificate. A planned cost above max_model_cost or an
/// enumeration above max_subsets yields a partial report with the failure
/// field set; configuration mistakes and problems that the decomposition
/// assumptions reject throw instead.
MdmReport run_mdm(const MdmRequest& request);

/// max over the allocated subsets of the a-posteriori error factor
/// g_factor(family, |u|, kappa_u, q); zero rules enter with their
/// zero-rule constants.
double x_factor_of(const Allocation& a, Family family, double q);

/// max over the allocated subsets with n_u > 0 of the cost inflation factor
/// y_term(family, |u|, kappa_u); zero rules add no cost and are skipped.
double y_factor_of(const Allocation& a, Family family);

struct SweepRow {
  double epsilon = 0.0;
  MdmReport report;
  std::optional<double> reference;
  double reference_tolerance = 0.0;
  bool reference_certified = false;
  std::optional<double> achieved_error;
  double wall_seconds = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  // Fitted log-log slopes over the successful rows: model cost against 1/eps
  // and achieved error against eps. NaN with fewer than two usable rows.
  double cost_slope = 0.0;
  double error_slope = 0.0;
};

/// One run per epsilon (descending). Rows that fail keep their partial
/// report and the sweep continues. References come from the problem's
/// closed form when available, otherwise from the oracle at tolerance
/// epsilon / 10.
SweepResult run_sweep(const MdmRequest& base, const std::vector<double>& eps_list);

}  // namespace mdm
