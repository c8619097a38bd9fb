#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mdm/subset.hpp"

namespace mdm {

struct AllocationEntry {
  Subset u;
  double b = 0.0;      // norm bound B_u
  double g = 0.0;      // quadrature error factor G_{u,q}; 0 for the empty set
  double cb = 0.0;     // C_u B_u, the zero-rule error bound
  double pound = 0.0;  // cost of one decomposition-term evaluation
  double h = 0.0;      // real-valued budget
  std::uint64_t n = 0;
  int kappa = 0;       // sparse-grid level (smolyak rule only)
  double predicted_error = 0.0;
};

// Lagrange-optimal sample budgets: h_u minimises sum h_u pound_u subject to
// sum G_u B_u / h_u^q = epsilon/2. Entries with g = 0 take one exact
// evaluation and contribute no error.
struct Allocation {
  double epsilon = 0.0;
  double q = 0.0;
  std::vector<AllocationEntry> entries;

  double budget_identity() const;       // sum g b / h^q over h > 0
  double quantized_budget() const;      // sum of predicted_error
  double real_cost() const;             // sum h_u pound_u
  std::uint64_t info_cost_points() const;  // sum n_u (point totals only)

  // Theorem-style cost bounds: sum h pound is at most the first value,
  // which is at most the second.
  std::pair<double, double> cost_bounds() const;
};

// entries need u, b, g, cb, pound filled; epsilon and q must be positive
Allocation allocate(std::vector<AllocationEntry> entries, double epsilon,
                    double q);

// n_u = floor(h_u); predicted error g b / (n_u + 1)^q keeps the epsilon/2
// budget because n_u + 1 > h_u.
void quantize_floor(Allocation& a);

// n_u = largest prime in [3, h_u], else 0 (zero rule, error bound C_u B_u).
// Predicted errors use the n-point form g b / (2n)^q, which stays within the
// epsilon/2 budget because the largest prime at most h exceeds h / 2.
void quantize_prime(Allocation& a);

// kappa_u = |u| + floor(log2 h_u); the backend supplies point counts and
// unit-ball error bounds per (cardinality, level).
void quantize_smolyak(
    Allocation& a,
    const std::function<std::uint64_t(int card, int kappa)>& point_count,
    const std::function<double(int card, int kappa)>& unit_error);

}  // namespace mdm
