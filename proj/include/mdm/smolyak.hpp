#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

namespace mdm {

enum class Family { AnchoredUnit, ExpWeighted };

const char* family_name(Family f);

// One evaluation node of a rule: coordinates and accumulated weight.
struct RuleNode {
  std::vector<double> x;
  double w = 0.0;
};

// A d-variate quadrature rule. Nodes never carry an anchored (zero)
// coordinate: those evaluations are known to vanish and are dropped from
// the evaluation list, matching the backend's point counting.
struct QuadratureRule {
  Family family = Family::AnchoredUnit;
  int dimension = 0;
  int level = 0;
  std::vector<RuleNode> nodes;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 1u << 24;

// Composite trapezoid at level i (i = 0 is the zero rule):
//  - AnchoredUnit: 2^i + 1 uniform nodes on [-1/2, 1/2], midpoint 0 dropped;
//  - ExpWeighted: nodes -2 ln(1 - k/(2^i+1)) on [0, inf) with the weighted
//    trapezoid weights, node 0 dropped.
QuadratureRule univariate_rule(Family family, int i);

// Sparse-grid combination rule at level kappa in d dimensions; the zero
// rule when kappa < d. Duplicate nodes merge through exact rational keys.
QuadratureRule smolyak_rule(Family family, int d, int kappa,
                            std::uint64_t node_budget = kDefaultNodeBudget);

// Shared cache over (family, d, kappa); concurrent readers safe.
std::shared_ptr<const QuadratureRule> smolyak_rule_cached(
    Family family, int d, int kappa,
    std::uint64_t node_budget = kDefaultNodeBudget);

// Charged evaluation count n(d, kappa). AnchoredUnit: the exact number of
// distinct non-anchored nodes (nested grids). ExpWeighted: the closed-form
// count 2^{kappa-d+1} C(kappa-1, d-1) used by the cost analysis.
std::uint64_t point_count(Family family, int d, int kappa);

// Worst-case error over the unit ball; the norm of integration itself
// (12^{-d/2} resp. 1) when kappa < d and the rule is zero.
double error_bound(Family family, int d, int kappa);

// Per-rule factor the engine aggregates into its a-posteriori quadrature
// overshoot bound. Dominates error_bound * n^q for every weighted rule and
// for anchored rules with d >= 2; the zero rule yields the bare norm of
// integration.
double g_factor(Family family, int d, int kappa, double q);

// Per-subset factor in the cost inflation bound n <= y_term * h.
double y_term(Family family, int d, int kappa);

// One node per line: coordinates then weight.
void export_rule(const QuadratureRule& rule, std::ostream& out);

}  // namespace mdm
