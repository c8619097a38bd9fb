#include "mdm/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mdm/errors.hpp"
#include "mdm/math_util.hpp"

namespace mdm {

namespace {

constexpr double kMaxCountable = 9.0e18;  // point counts must stay in uint64

void require_quantizable(const AllocationEntry& e) {
  if (!e.u.empty() && !(e.g > 0.0))
    throw MdmError(ErrorKind::Config,
                   "allocation entry for " + e.u.to_string() +
                       " lacks a positive error factor");
  if (e.h > kMaxCountable)
    throw MdmError(ErrorKind::Resource,
                   "budget for " + e.u.to_string() +
                       " exceeds representable point counts");
}

}  // namespace

double Allocation::budget_identity() const {
  CompensatedSum acc;
  for (const auto& e : entries)
    if (e.h > 0.0) acc.add(e.g * e.b / std::pow(e.h, q));
  return acc.value();
}

double Allocation::quantized_budget() const {
  CompensatedSum acc;
  for (const auto& e : entries) acc.add(e.predicted_error);
  return acc.value();
}

double Allocation::real_cost() const {
  CompensatedSum acc;
  for (const auto& e : entries) acc.add(e.h * e.pound);
  return acc.value();
}

std::uint64_t Allocation::info_cost_points() const {
  std::uint64_t total = 0;
  for (const auto& e : entries) {
    if (total + e.n < total)
      throw MdmError(ErrorKind::Resource, "point total overflows");
    total += e.n;
  }
  return total;
}

std::pair<double, double> Allocation::cost_bounds() const {
  const double r = 1.0 / (q + 1.0);
  CompensatedSum with_pound, without_pound;
  double max_pound = 0.0;
  for (const auto& e : entries) {
    max_pound = std::max(max_pound, e.pound);
    double gb = e.g * e.b;
    if (gb <= 0.0) continue;
    with_pound.add(std::pow(e.pound, q * r) * std::pow(gb, r));
    without_pound.add(std::pow(gb, r));
  }
  const double lead = std::pow(2.0 / epsilon, 1.0 / q);
  const double expo = 1.0 + 1.0 / q;
  return {lead * std::pow(with_pound.value(), expo),
          lead * std::pow(without_pound.value(), expo) * max_pound};
}

Allocation allocate(std::vector<AllocationEntry> entries, double epsilon,
                    double q) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw MdmError(ErrorKind::Config, "epsilon must be positive and finite");
  if (!(q > 0.0) || !std::isfinite(q))
    throw MdmError(ErrorKind::Config, "error-decay rate q must be positive");

  std::vector<double> log_terms;
  log_terms.reserve(entries.size());
  const double r = 1.0 / (q + 1.0);
  for (const auto& e : entries) {
    double gb = e.g * e.b;
    if (gb < 0.0 || !std::isfinite(gb))
      throw MdmError(ErrorKind::Config,
                     "error factors must be finite and non-negative");
    if (gb == 0.0) continue;
    if (!(e.pound > 0.0))
      throw MdmError(ErrorKind::Config, "evaluation costs must be positive");
    log_terms.push_back(q * r * std::log(e.pound) + r * std::log(gb));
  }

  Allocation a;
  a.epsilon = epsilon;
  a.q = q;
  a.entries = std::move(entries);
  if (log_terms.empty()) return a;

  const double log_mult = std::log(2.0 / epsilon) + log_sum_exp(log_terms);
  for (auto& e : a.entries) {
    double gb = e.g * e.b;
    if (gb <= 0.0) {
      e.h = 0.0;
      continue;
    }
    e.h = std::exp(log_mult / q + r * (std::log(gb) - std::log(e.pound)));
    if (!std::isfinite(e.h))
      throw MdmError(ErrorKind::Resource,
                     "budget for " + e.u.to_string() + " overflows");
  }
  return a;
}

void quantize_floor(Allocation& a) {
  for (auto& e : a.entries) {
    if (e.u.empty() || e.g * e.b <= 0.0) {
      e.n = 1;
      e.kappa = 0;
      e.predicted_error = 0.0;
      continue;
    }
    require_quantizable(e);
    e.n = static_cast<std::uint64_t>(e.h);
    e.predicted_error =
        e.g * e.b / std::pow(static_cast<double>(e.n) + 1.0, a.q);
  }
}

void quantize_prime(Allocation& a) {
  for (auto& e : a.entries) {
    if (e.u.empty() || e.g * e.b <= 0.0) {
      e.n = 1;
      e.kappa = 0;
      e.predicted_error = 0.0;
      continue;
    }
    require_quantizable(e);
    e.n = e.h >= 3.0 ? largest_prime_at_most(e.h) : 0;
    // The error factor g carries a 2^q that lifts an n-point bound to the
    // (n+1)-point form; the tight n-point form g (2n)^-q is reported. The
    // largest prime at most h exceeds h/2, so (2n)^-q < h^-q and the sum of
    // predicted errors stays within the epsilon/2 budget.
    e.predicted_error =
        e.n > 0 ? e.g * e.b / std::pow(2.0 * static_cast<double>(e.n), a.q)
                : e.cb;
  }
}

void quantize_smolyak(
    Allocation& a,
    const std::function<std::uint64_t(int card, int kappa)>& point_count,
    const std::function<double(int card, int kappa)>& unit_error) {
  for (auto& e : a.entries) {
    if (e.u.empty() || e.g * e.b <= 0.0) {
      e.n = 1;
      e.kappa = 0;
      e.predicted_error = 0.0;
      continue;
    }
    require_quantizable(e);
    const int card = e.u.card();
    int level = card - 1;
    if (e.h >= 1.0)
      level = card + static_cast<int>(std::floor(std::log2(e.h)));
    e.kappa = level;
    e.n = point_count(card, level);
    e.predicted_error = unit_error(card, level) * e.b;
  }
}

}  // namespace mdm
