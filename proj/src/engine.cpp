#include "mdm/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <exception>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mdm/decomposition.hpp"
#include "mdm/errors.hpp"
#include "mdm/math_util.hpp"

namespace mdm {

namespace {

constexpr std::size_t kMemoCapacity = std::size_t{1} << 21;

bool is_smolyak(BackendKind b) { return b != BackendKind::Lattice; }

Family family_of(BackendKind b) {
  return b == BackendKind::SmolyakExpWeighted ? Family::ExpWeighted
                                              : Family::AnchoredUnit;
}

DomainKind required_domain(BackendKind b) {
  return b == BackendKind::SmolyakExpWeighted ? DomainKind::HalfLineExp
                                              : DomainKind::SymmetricUnit;
}

AllocationPath default_path(BackendKind b) {
  return b == BackendKind::Lattice ? AllocationPath::ErrorWeighted
                                   : AllocationPath::UnitWeighted;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct CoordsHash {
  std::size_t operator()(const std::vector<Coord>& coords) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 0x100000001b3ull;
    };
    for (const auto& [label, value] : coords) {
      mix(static_cast<std::uint32_t>(label));
      std::uint64_t bits;
      std::memcpy(&bits, &value, sizeof bits);
      mix(bits);
    }
    return static_cast<std::size_t>(h);
  }
};

// Caches anchored evaluations f(x_v; 0) keyed by the exact coordinate list,
// so projections shared between rule nodes are charged once. The capacity
// cap bounds memory; evaluations past it run uncached and stay correct.
class MemoizedIntegrand final : public Integrand {
 public:
  explicit MemoizedIntegrand(const Integrand& inner) : inner_(inner) {}

  double eval_sparse(const std::vector<Coord>& coords) const override {
    auto it = cache_.find(coords);
    if (it != cache_.end()) {
      ++hits_;
      return it->second;
    }
    double v = inner_.eval_sparse(coords);
    tally_.record(static_cast<int>(coords.size()));
    if (cache_.size() < kMemoCapacity) cache_.emplace(coords, v);
    return v;
  }

  const CostTally& tally() const { return tally_; }
  std::uint64_t hits() const { return hits_; }

 private:
  const Integrand& inner_;
  mutable std::unordered_map<std::vector<Coord>, double, CoordsHash> cache_;
  mutable CostTally tally_;
  mutable std::uint64_t hits_ = 0;
};

std::shared_ptr<const LatticeRule> lattice_rule_cached(std::uint64_t n,
                                                       int dimension) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, int>,
                  std::shared_ptr<const LatticeRule>>
      cache;
  const auto key = std::make_pair(n, dimension);
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const LatticeRule>(cbc_construct(n, dimension));
  std::lock_guard lock(mu);
  return cache.try_emplace(key, std::move(rule)).first->second;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

struct TermOut {
  double estimate = 0.0;
  CostTally tally;
  std::uint64_t hits = 0;
};

void run_subset_task(const MdmRequest& req, const AllocationEntry& e,
                     std::uint64_t task_seed, TermOut& out) {
  if (e.n == 0) return;  // zero rule: the term is dropped, bound C_u B_u
  const Integrand& f = *req.problem.integrand;
  MemoizedIntegrand memo(f);
  if (e.u.empty()) {
    out.estimate = decomposition_term(memo, e.u, {});
  } else if (is_smolyak(req.backend)) {
    auto rule = smolyak_rule_cached(family_of(req.backend), e.u.card(),
                                    e.kappa, req.node_budget);
    CompensatedSum acc;
    for (const auto& node : rule->nodes)
      acc.add(node.w * decomposition_term(memo, e.u, node.x));
    out.estimate = acc.value();
  } else {
    auto rule = lattice_rule_cached(e.n, e.u.card());
    auto g = [&](const std::vector<double>& x) {
      return decomposition_term(memo, e.u, x);
    };
    out.estimate = lattice_integrate(g, *rule, req.shifts, task_seed).mean;
  }
  out.tally = memo.tally();
  out.hits = memo.hits();
}

double fitted_slope(const std::vector<std::pair<double, double>>& xy) {
  if (xy.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : xy) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(xy.size());
  my /= static_cast<double>(xy.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [x, y] : xy) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  if (sxx == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / sxx;
}

}  // namespace

std::string backend_name(BackendKind backend) {
  switch (backend) {
    case BackendKind::SmolyakAnchoredUnit:
      return "smolyak-anchored-unit";
    case BackendKind::SmolyakExpWeighted:
      return "smolyak-exp-weighted";
    case BackendKind::Lattice:
      return "lattice";
  }
  throw MdmError(ErrorKind::Config, "unknown backend");
}

std::string path_name(AllocationPath path) {
  return path == AllocationPath::UnitWeighted ? "unit-weighted"
                                              : "error-weighted";
}

BackendKind backend_by_name(const std::string& name) {
  if (name == "smolyak-anchored-unit") return BackendKind::SmolyakAnchoredUnit;
  if (name == "smolyak-exp-weighted") return BackendKind::SmolyakExpWeighted;
  if (name == "lattice") return BackendKind::Lattice;
  throw MdmError(ErrorKind::Config,
                 "unknown backend '" + name +
                     "'; expected smolyak-anchored-unit, "
                     "smolyak-exp-weighted, or lattice");
}

AllocationPath path_by_name(const std::string& name) {
  if (name == "unit-weighted") return AllocationPath::UnitWeighted;
  if (name == "error-weighted") return AllocationPath::ErrorWeighted;
  throw MdmError(ErrorKind::Config,
                 "unknown allocation path '" + name +
                     "'; expected unit-weighted or error-weighted");
}

double x_factor_of(const Allocation& a, Family family, double q) {
  double best = 0.0;
  for (const auto& e : a.entries) {
    if (e.u.empty()) continue;
    best = std::max(best, g_factor(family, e.u.card(), e.kappa, q));
  }
  return best;
}

double y_factor_of(const Allocation& a, Family family) {
  double best = 0.0;
  for (const auto& e : a.entries) {
    if (e.u.empty() || e.n == 0) continue;
    best = std::max(best, y_term(family, e.u.card(), e.kappa));
  }
  return best;
}

MdmReport run_mdm(const MdmRequest& req) {
  const ProblemSpec& prob = req.problem;
  if (!prob.integrand)
    throw MdmError(ErrorKind::Config, "problem carries no integrand");
  if (!(req.epsilon > 0.0) || !std::isfinite(req.epsilon))
    throw MdmError(ErrorKind::Config, "epsilon must be positive and finite");
  if (prob.refuses_mdm)
    throw MdmError(
        ErrorKind::Refusal,
        "problem '" + prob.name +
            "' violates the decomposition assumptions: the term integrals "
            "sum to 1 at every truncation while the function itself "
            "integrates to 0, so the terms admit no dominated-convergence "
            "majorant and no error demand can be certified");

  const DomainKind need = required_domain(req.backend);
  if (prob.domain != need)
    throw MdmError(ErrorKind::Config,
                   "backend " + backend_name(req.backend) +
                       " integrates over the " + domain_name(need) +
                       " domain but problem '" + prob.name + "' lives on " +
                       domain_name(prob.domain));

  const AllocationPath path = req.path.value_or(default_path(req.backend));
  if (is_smolyak(req.backend) && path != AllocationPath::UnitWeighted)
    throw MdmError(ErrorKind::Config,
                   "sparse-grid backends allocate with unit weights; their "
                   "error factors depend on the level, which is unknown "
                   "before allocation");
  if (req.backend == BackendKind::Lattice &&
      path != AllocationPath::ErrorWeighted)
    throw MdmError(ErrorKind::Config,
                   "the lattice backend allocates with its error factors; "
                   "no a-posteriori certificate exists for the unit-weighted "
                   "path on lattice rules");

  const double q =
      req.q.value_or(is_smolyak(req.backend) ? 1.0 : kLatticeDefaultQ);
  if (is_smolyak(req.backend)) {
    if (!(q > 0.0) || q > 1.0)
      throw MdmError(ErrorKind::Config,
                     "q must lie in (0, 1] for sparse-grid backends");
  } else {
    if (q < 0.5 || q >= 1.0)
      throw MdmError(ErrorKind::Config,
                     "q must lie in [1/2, 1) for the lattice backend");
    if (req.shifts < 2 || req.shifts % 2 != 0)
      throw MdmError(ErrorKind::Config,
                     "shift count must be even and at least 2");
  }

  MdmReport rep;
  rep.problem_name = prob.name;
  rep.backend = req.backend;
  rep.path = path;
  rep.epsilon = req.epsilon;
  rep.q = q;

  // A truncation certificate reserves a third of the demand for the labels
  // beyond the cap and leaves two thirds for the planner, which splits its
  // demand evenly between the discarded terms and the quadrature errors.
  double eps_eff = req.epsilon;
  if (prob.truncation) {
    const int ell = prob.truncation->label_cap_for(req.epsilon / 3.0);
    rep.label_cap = ell;
    rep.truncation_bound = prob.truncation->tail_bound(ell);
    eps_eff = 2.0 * req.epsilon / 3.0;
  }
  rep.epsilon_effective = eps_eff;

  ActiveSetConfig acfg;
  acfg.epsilon = eps_eff;
  acfg.alpha = req.alpha;
  acfg.ell_max = rep.label_cap;
  acfg.max_subsets = req.max_subsets;

  ActivePlan plan;
  try {
    plan = build_active_set(prob.bounds, prob.norm.c0, acfg);
  } catch (const MdmError& e) {
    if (e.kind() != ErrorKind::Resource) throw;
    rep.alpha = req.alpha.value_or(prob.bounds.default_alpha());
    rep.failure = e.what();
    return rep;
  }
  rep.alpha = plan.alpha;
  rep.tail_bound = plan.tail_bound();
  rep.cardinality_bound = plan.cardinality_bound();
  rep.active_count = plan.entries.size();

  std::vector<AllocationEntry> entries(plan.entries.size());
  int max_card = 0;
  for (std::size_t i = 0; i < plan.entries.size(); ++i) {
    const ActiveEntry& ae = plan.entries[i];
    AllocationEntry& e = entries[i];
    e.u = ae.u;
    e.cb = ae.cb;
    e.b = prob.bounds.value(ae.u);
    e.pound = prob.cost.pound(ae.u.card());
    if (ae.u.empty())
      e.g = 0.0;
    else if (path == AllocationPath::UnitWeighted)
      e.g = 1.0;
    else
      e.g = lattice_g_factor(ae.u.card(), q);
    max_card = std::max(max_card, ae.u.card());
  }
  if (max_card > kMaxDecompositionCard) {
    rep.failure = "the plan contains a subset of cardinality " +
                  std::to_string(max_card) +
                  ", beyond the inclusion-exclusion cap of " +
                  std::to_string(kMaxDecompositionCard);
    return rep;
  }

  Allocation alloc = allocate(std::move(entries), eps_eff, q);
  if (is_smolyak(req.backend)) {
    const Family fam = family_of(req.backend);
    quantize_smolyak(
        alloc,
        [fam](int card, int kappa) { return point_count(fam, card, kappa); },
        [fam](int card, int kappa) { return error_bound(fam, card, kappa); });
    rep.x_factor = x_factor_of(alloc, fam, q);
    rep.y_factor = y_factor_of(alloc, fam);
  } else {
    quantize_prime(alloc);
  }

  rep.budget_identity = alloc.budget_identity();
  const auto [specific, plain] = alloc.cost_bounds();
  rep.cost_bound_specific = specific;
  rep.cost_bound_plain = plain;
  rep.info_points = alloc.info_cost_points();

  rep.rows.resize(alloc.entries.size());
  CompensatedSum planned;
  for (std::size_t i = 0; i < alloc.entries.size(); ++i) {
    const AllocationEntry& e = alloc.entries[i];
    SubsetRow& row = rep.rows[i];
    row.u = e.u;
    row.b = e.b;
    row.g = e.g;
    row.cb = e.cb;
    row.pound = e.pound;
    row.h = e.h;
    row.n = e.n;
    row.kappa = e.kappa;
    row.term_bound = e.predicted_error;
    row.term_cost = static_cast<double>(e.n) * e.pound;
    planned.add(row.term_cost);
  }
  rep.info_cost = planned.value();

  if (path == AllocationPath::UnitWeighted)
    rep.quadrature_bound = 0.5 * eps_eff * rep.x_factor;
  else
    rep.quadrature_bound = alloc.quantized_budget();
  rep.total_guarantee =
      rep.tail_bound + rep.truncation_bound + rep.quadrature_bound;

  if (rep.info_cost > req.max_model_cost) {
    rep.failure = "planned evaluation cost " + fmt(rep.info_cost) +
                  " exceeds the cost budget " + fmt(req.max_model_cost) +
                  " (" + std::to_string(rep.rows.size()) +
                  " active subsets, " + std::to_string(rep.info_points) +
                  " rule points)";
    return rep;
  }
  if (req.plan_only) {
    rep.success = true;
    return rep;
  }

  std::vector<TermOut> outs(alloc.entries.size());
  int threads = req.threads > 0
                    ? req.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, 64));
  const auto task_count =
      static_cast<int>(std::min<std::size_t>(alloc.entries.size(), 64));
  threads = std::min(threads, std::max(task_count, 1));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr first_error;
  std::mutex error_mu;
  auto worker = [&]() {
    for (;;) {
      if (stop.load(std::memory_order_relaxed)) return;
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= alloc.entries.size()) return;
      try {
        run_subset_task(req, alloc.entries[i], mix_seed(req.seed, i), outs[i]);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        stop.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) {
    try {
      std::rethrow_exception(first_error);
    } catch (const MdmError& e) {
      if (e.kind() != ErrorKind::Resource) throw;
      rep.failure = e.what();
      return rep;
    }
  }

  CompensatedSum total;
  std::uint64_t raw = 0;
  std::uint64_t hits = 0;
  for (std::size_t i = 0; i < outs.size(); ++i) {
    rep.rows[i].term_estimate = outs[i].estimate;
    rep.rows[i].raw_calls = outs[i].tally.raw_calls;
    total.add(outs[i].estimate);
    raw += outs[i].tally.raw_calls;
    hits += outs[i].hits;
  }
  rep.estimate = total.value();
  rep.raw_calls = raw;
  rep.memo_saved = hits;
  rep.success = true;
  return rep;
}

SweepResult run_sweep(const MdmRequest& base,
                      const std::vector<double>& eps_list) {
  if (eps_list.empty())
    throw MdmError(ErrorKind::Config, "sweep needs at least one epsilon");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0) || !std::isfinite(eps_list[i]))
      throw MdmError(ErrorKind::Config,
                     "sweep epsilons must be positive and finite");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
      throw MdmError(ErrorKind::Config,
                     "sweep epsilons must be strictly descending");
  }

  SweepResult out;
  out.rows.reserve(eps_list.size());
  for (const double eps : eps_list) {
    SweepRow row;
    row.epsilon = eps;
    MdmRequest req = base;
    req.epsilon = eps;
    const auto t0 = std::chrono::steady_clock::now();
    row.report = run_mdm(req);
    row.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (base.problem.closed_form_reference) {
      row.reference = *base.problem.closed_form_reference;
      row.reference_certified = true;
    } else {
      try {
        const ReferenceResult ref = reference_value(base.problem, eps / 10.0);
        row.reference = ref.value;
        row.reference_tolerance = ref.tolerance;
        row.reference_certified = ref.certified;
      } catch (const MdmError&) {
        // a row without a reference still reports its own certificate
      }
    }
    if (row.report.success && row.reference)
      row.achieved_error = std::abs(row.report.estimate - *row.reference);
    out.rows.push_back(std::move(row));
  }

  std::vector<std::pair<double, double>> cost_points;
  std::vector<std::pair<double, double>> error_points;
  for (const auto& row : out.rows) {
    if (!row.report.success) continue;
    if (row.report.info_cost > 0.0)
      cost_points.emplace_back(std::log(1.0 / row.epsilon),
                               std::log(row.report.info_cost));
    if (row.achieved_error && *row.achieved_error > 0.0)
      error_points.emplace_back(std::log(row.epsilon),
                                std::log(*row.achieved_error));
  }
  out.cost_slope = fitted_slope(cost_points);
  out.error_slope = fitted_slope(error_points);
  return out;
}

}  // namespace mdm
