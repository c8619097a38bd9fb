#pragma once

#include <iosfwd>
#include <string>

#include "mdm/engine.hpp"
#include "mdm/problems.hpp"

namespace mdm {

/// Full report as indented JSON. Timing never enters the report, so equal
/// requests with equal seeds serialize to identical bytes.
std::string report_to_json(const MdmReport& report, int indent = 2);

/// Per-subset rows: indices, card, h, n, kappa, term_estimate, term_bound,
/// term_cost. Labels are space-separated inside the indices field.
void write_subset_csv(const MdmReport& report, std::ostream& out);

/// One row per sweep epsilon: epsilon, estimate, reference, achieved_error,
/// tail_bound, quad_bound, x_factor, y_factor, info_cost, raw_calls,
/// wall_seconds. Failed rows leave estimate and achieved_error empty.
void write_sweep_csv(const SweepResult& sweep, std::ostream& out);

/// Oracle output: problem, demanded tolerance, value, certified bound.
std::string reference_to_json(const std::string& problem_name, double tol,
                              const ReferenceResult& ref, int indent = 2);

}  // namespace mdm
