#include "mdm/serialize.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace mdm {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string joined_labels(const Subset& u) {
  std::ostringstream out;
  for (std::size_t i = 0; i < u.labels().size(); ++i) {
    if (i > 0) out << ' ';
    out << u.labels()[i];
  }
  return out.str();
}

ordered_json row_json(const SubsetRow& row) {
  ordered_json j;
  j["u"] = row.u.labels();
  j["card"] = row.u.card();
  j["b"] = row.b;
  j["g"] = row.g;
  j["cb"] = row.cb;
  j["pound"] = row.pound;
  j["h"] = row.h;
  j["n"] = row.n;
  j["kappa"] = row.kappa;
  j["term_estimate"] = row.term_estimate;
  j["term_bound"] = row.term_bound;
  j["term_cost"] = row.term_cost;
  j["raw_calls"] = row.raw_calls;
  return j;
}

}  // namespace

std::string report_to_json(const MdmReport& r, int indent) {
  ordered_json j;
  j["success"] = r.success;
  if (!r.failure.empty()) j["failure"] = r.failure;
  j["problem"] = r.problem_name;
  j["backend"] = backend_name(r.backend);
  j["path"] = path_name(r.path);
  j["epsilon"] = r.epsilon;
  j["epsilon_effective"] = r.epsilon_effective;
  j["alpha"] = r.alpha;
  j["q"] = r.q;
  if (r.label_cap)
    j["label_cap"] = *r.label_cap;
  else
    j["label_cap"] = nullptr;
  j["truncation_bound"] = r.truncation_bound;
  j["estimate"] = r.estimate;
  j["tail_bound"] = r.tail_bound;
  j["quadrature_bound"] = r.quadrature_bound;
  j["total_guarantee"] = r.total_guarantee;
  j["x_factor"] = r.x_factor;
  j["y_factor"] = r.y_factor;
  j["budget_identity"] = r.budget_identity;
  j["cardinality_bound"] = r.cardinality_bound;
  j["info_cost"] = r.info_cost;
  j["cost_bound_specific"] = r.cost_bound_specific;
  j["cost_bound_plain"] = r.cost_bound_plain;
  j["info_points"] = r.info_points;
  j["raw_calls"] = r.raw_calls;
  j["memo_saved"] = r.memo_saved;
  j["active_count"] = r.active_count;
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows) rows.push_back(row_json(row));
  j["subsets"] = std::move(rows);
  return j.dump(indent) + "\n";
}

void write_subset_csv(const MdmReport& r, std::ostream& out) {
  out << "indices,card,h,n,kappa,term_estimate,term_bound,term_cost\n";
  for (const auto& row : r.rows) {
    out << joined_labels(row.u) << ',' << row.u.card() << ','
        << fmt17(row.h) << ',' << row.n << ',' << row.kappa << ','
        << fmt17(row.term_estimate) << ',' << fmt17(row.term_bound) << ','
        << fmt17(row.term_cost) << '\n';
  }
}

void write_sweep_csv(const SweepResult& sweep, std::ostream& out) {
  out << "epsilon,estimate,reference,achieved_error,tail_bound,quad_bound,"
         "x_factor,y_factor,info_cost,raw_calls,wall_seconds\n";
  for (const auto& row : sweep.rows) {
    const MdmReport& r = row.report;
    out << fmt17(row.epsilon) << ',';
    if (r.success) out << fmt17(r.estimate);
    out << ',';
    if (row.reference) out << fmt17(*row.reference);
    out << ',';
    if (row.achieved_error) out << fmt17(*row.achieved_error);
    out << ',' << fmt17(r.tail_bound) << ',' << fmt17(r.quadrature_bound)
        << ',' << fmt17(r.x_factor) << ',' << fmt17(r.y_factor) << ','
        << fmt17(r.info_cost) << ',' << r.raw_calls << ','
        << fmt17(row.wall_seconds) << '\n';
  }
}

std::string reference_to_json(const std::string& problem_name, double tol,
                              const ReferenceResult& ref, int indent) {
  ordered_json j;
  j["problem"] = problem_name;
  j["tolerance_demanded"] = tol;
  j["value"] = ref.value;
  j["tolerance"] = ref.tolerance;
  j["certified"] = ref.certified;
  j["detail"] = ref.detail;
  return j.dump(indent) + "\n";
}

}  // namespace mdm
