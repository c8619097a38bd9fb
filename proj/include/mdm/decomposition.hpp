#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mdm/subset.hpp"

namespace mdm {

// (label, value) pair; labels strictly increasing within a point
using Coord = std::pair<std::int32_t, double>;

// Function of infinitely many variables, evaluated at points that differ
// from the anchor 0 in finitely many coordinates only.
class Integrand {
 public:
  virtual ~Integrand() = default;

  // coords lists the non-anchored coordinates with strictly increasing
  // labels; every other coordinate sits at 0.
  virtual double eval_sparse(const std::vector<Coord>& coords) const = 0;
};

// Evaluation counters, merged across workers by the engine.
struct CostTally {
  std::uint64_t raw_calls = 0;               // integrand invocations that ran
  std::vector<std::uint64_t> calls_by_card;  // indexed by #active coordinates

  void record(int card);
  void merge(const CostTally& other);
};

inline constexpr int kMaxDecompositionCard = 30;

// f evaluated at (x_u; 0): coordinates of u carry x_u, the rest the anchor.
double evaluate_anchored(const Integrand& f, const Subset& u,
                         const std::vector<double>& x_u);

// Anchored decomposition term
//   f_u(x_u) = sum_{v subseteq u} (-1)^{|u|-|v|} f(x_v; 0),
// 2^{|u|} evaluations. Vanishes without evaluating when any coordinate
// equals the anchor. Cardinalities above max_card are refused.
double decomposition_term(const Integrand& f, const Subset& u,
                          const std::vector<double>& x_u,
                          CostTally* tally = nullptr,
                          int max_card = kMaxDecompositionCard);

// sum_{u subseteq {1..d}} f_u(x_u), which must reproduce f(x_{1:d}; 0)
double reconstruct_from_terms(const Integrand& f, int d,
                              const std::vector<double>& x,
                              CostTally* tally = nullptr);

}  // namespace mdm
