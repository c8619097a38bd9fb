#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mdm/bounds.hpp"
#include "mdm/subset.hpp"

namespace mdm {

struct ActiveSetConfig {
  double epsilon = 0.0;
  std::optional<double> alpha;  // default: bounds.default_alpha()
  std::optional<int> ell_max;   // label cap for the decay-sum certificate
  std::uint64_t max_subsets = 2'000'000;
};

struct ActiveEntry {
  Subset u;
  double cb = 0.0;  // C_u B_u
};

// The set of decomposition terms kept for an error demand epsilon: u is
// kept when (C_u B_u)^{1 - 1/alpha} exceeds threshold = (epsilon/2) / S_alpha.
struct ActivePlan {
  double epsilon = 0.0;
  double alpha = 0.0;
  double s_alpha = 0.0;    // upper bound on the decay sum actually used
  double threshold = 0.0;  // (epsilon/2) / s_alpha
  std::optional<int> ell_max;
  std::vector<ActiveEntry> entries;  // canonical order

  // Discarded mass: sum over u outside the plan of C_u B_u. The threshold
  // certificate gives threshold * s_alpha = epsilon/2; within a label cap
  // the exact remainder is available and usually far smaller.
  std::optional<double> exact_tail_within_cap;
  double tail_bound() const;

  double cardinality_bound() const;  // proven cap on the number of entries
  int truncation_dimension() const;
  bool contains(const Subset& u) const;
};

// Upper bound on S_alpha = sum_v (c0^{|v|} B_v)^{1/alpha}; exact within a
// label cap for pod/product bounds.
double decay_sum_upper(const BoundsModel& bounds, double alpha, double c0,
                       std::optional<int> ell_max = std::nullopt);

// Enumerates every subset over the threshold. Requires bounds in pod or
// product shape; the search prunes through suprema over all completions of
// a partial subset, so no qualifying term can be missed.
ActivePlan build_active_set(const BoundsModel& bounds, double c0,
                            const ActiveSetConfig& config);

}  // namespace mdm
