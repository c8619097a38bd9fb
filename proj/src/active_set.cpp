#include "mdm/active_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mdm/errors.hpp"
#include "mdm/math_util.hpp"

namespace mdm {

namespace {

struct Search {
  const BoundsModel::ProductView& view;
  double c0 = 0.0;
  double threshold = 0.0;
  double power = 0.0;  // 1 - 1/alpha
  std::int32_t label_cap = 0;
  std::uint64_t max_subsets = 0;
  std::uint64_t visited = 0;
  std::vector<ActiveEntry>* out = nullptr;
  std::vector<std::int32_t> stack;

  // sup of C_v B_v over v extending the current subset (cardinality ell,
  // largest label last) with labels beyond last. The per-label growth
  // factors (ell+i)^{b1} c0 w(last+i) are unimodal in i, so the running
  // product can only shrink once they decline below 1.
  double completion_sup(double cb, int ell, std::int32_t last) const {
    double best = cb, prod = cb;
    double prev = std::numeric_limits<double>::infinity();
    for (std::int64_t i = 1;; ++i) {
      std::int64_t j = static_cast<std::int64_t>(last) + i;
      if (j > label_cap) break;
      double f = std::pow(static_cast<double>(ell) + static_cast<double>(i),
                          view.b1) *
                 c0 * view.coord_weight(static_cast<std::int32_t>(j));
      prod *= f;
      if (prod > best) best = prod;
      if (f < 1.0 && f <= prev) break;
      if (prod == 0.0) break;
      prev = f;
    }
    return best;
  }

  void dfs(double cb, int ell, std::int32_t last) {
    if (++visited > max_subsets)
      throw MdmError(ErrorKind::Resource,
                     "active set exceeds " + std::to_string(max_subsets) +
                         " subsets; increase epsilon or alpha");
    if (std::pow(cb, power) > threshold)
      out->push_back({Subset(stack), cb});
    for (std::int64_t j = static_cast<std::int64_t>(last) + 1; j <= label_cap;
         ++j) {
      double cb_child =
          cb * std::pow(static_cast<double>(ell + 1), view.b1) * c0 *
          view.coord_weight(static_cast<std::int32_t>(j));
      if (cb_child <= 0.0) break;
      if (std::pow(completion_sup(cb_child, ell + 1,
                                  static_cast<std::int32_t>(j)),
                   power) <= threshold)
        break;
      stack.push_back(static_cast<std::int32_t>(j));
      dfs(cb_child, ell + 1, static_cast<std::int32_t>(j));
      stack.pop_back();
    }
  }
};

}  // namespace

double ActivePlan::tail_bound() const {
  double certified = threshold * s_alpha;
  if (exact_tail_within_cap) return std::min(certified, *exact_tail_within_cap);
  return certified;
}

double ActivePlan::cardinality_bound() const {
  return std::pow(2.0 / epsilon, 1.0 / (alpha - 1.0)) *
         std::pow(s_alpha, alpha / (alpha - 1.0));
}

int ActivePlan::truncation_dimension() const {
  int d = 0;
  for (const auto& e : entries) d = std::max(d, static_cast<int>(e.u.max_label()));
  return d;
}

bool ActivePlan::contains(const Subset& u) const {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), u,
      [](const ActiveEntry& e, const Subset& v) { return canonical_less(e.u, v); });
  return it != entries.end() && it->u == u;
}

double decay_sum_upper(const BoundsModel& bounds, double alpha, double c0,
                       std::optional<int> ell_max) {
  return bounds.s_alpha_upper(alpha, c0, ell_max);
}

ActivePlan build_active_set(const BoundsModel& bounds, double c0,
                            const ActiveSetConfig& config) {
  if (!(config.epsilon > 0.0) || !std::isfinite(config.epsilon))
    throw MdmError(ErrorKind::Config, "epsilon must be positive and finite");
  if (!(c0 > 0.0))
    throw MdmError(ErrorKind::Config, "point-evaluation norm constant must be positive");

  auto view = bounds.product_view();
  if (!view)
    throw MdmError(ErrorKind::Config,
                   "active-set enumeration needs bounds in pod or product "
                   "shape; custom bounds are not enumerable");

  double alpha = config.alpha.value_or(bounds.default_alpha());
  if (!(alpha > 1.0))
    throw MdmError(ErrorKind::Config, "alpha must exceed 1");
  double a0 = bounds.alpha0();
  if (!config.ell_max && alpha >= a0)
    throw MdmError(ErrorKind::Config,
                   "alpha must stay below the decay exponent " +
                       std::to_string(a0) + " (or supply a label cap)");

  ActivePlan plan;
  plan.epsilon = config.epsilon;
  plan.alpha = alpha;
  plan.ell_max = config.ell_max;
  plan.s_alpha = bounds.s_alpha_upper(alpha, c0, config.ell_max);
  plan.threshold = (config.epsilon / 2.0) / plan.s_alpha;

  Search search{*view, c0, plan.threshold, 1.0 - 1.0 / alpha,
                config.ell_max ? std::min(*config.ell_max, view->max_label)
                               : view->max_label,
                config.max_subsets};
  search.out = &plan.entries;
  search.dfs(view->mu, 0, 0);

  std::sort(plan.entries.begin(), plan.entries.end(),
            [](const ActiveEntry& a, const ActiveEntry& b) {
              return canonical_less(a.u, b.u);
            });

  std::int32_t cap = search.label_cap;
  if (cap != INT32_MAX) {
    CompensatedSum kept;
    for (const auto& e : plan.entries) kept.add(e.cb);
    double total = bounds.capped_subset_mass(c0, cap);
    plan.exact_tail_within_cap = std::max(0.0, total - kept.value());
  }
  return plan;
}

}  // namespace mdm
