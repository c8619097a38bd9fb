#include "mdm/smolyak.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <string>
#include <tuple>
#include <utility>

#include "mdm/errors.hpp"
#include "mdm/math_util.hpp"

namespace mdm {

namespace {

constexpr double kExpErrorConstant = 1.00656;

// position of a node inside (0, 1], as a reduced fraction; shared positions
// across levels reduce to the same key
struct Frac {
  std::int64_t num = 0;
  std::int64_t den = 1;

  auto operator<=>(const Frac&) const = default;
};

Frac reduce(std::int64_t num, std::int64_t den) {
  std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

double anchored_coordinate(const Frac& f) {
  return -0.5 + static_cast<double>(f.num) / static_cast<double>(f.den);
}

double exp_coordinate(const Frac& f) {
  return -2.0 * std::log1p(-static_cast<double>(f.num) /
                           static_cast<double>(f.den));
}

double coordinate(Family family, const Frac& f) {
  return family == Family::AnchoredUnit ? anchored_coordinate(f)
                                        : exp_coordinate(f);
}

struct UniNode {
  Frac key;
  double w = 0.0;
};

void check_level(int i) {
  if (i < 0 || i > 40)
    throw MdmError(ErrorKind::Resource,
                   "univariate level " + std::to_string(i) +
                       " outside the supported range [0, 40]");
}

// level-i univariate nodes and weights, anchored node excluded
std::vector<UniNode> uni_nodes(Family family, int i) {
  check_level(i);
  std::vector<UniNode> nodes;
  if (i == 0) return nodes;
  const std::int64_t m = std::int64_t{1} << i;
  if (family == Family::AnchoredUnit) {
    nodes.reserve(static_cast<std::size_t>(m));
    const double interior = std::ldexp(1.0, -i);
    const double boundary = std::ldexp(1.0, -(i + 1));
    for (std::int64_t k = 0; k <= m; ++k) {
      if (2 * k == m) continue;  // the midpoint is the anchor
      nodes.push_back(
          {reduce(k, m), (k == 0 || k == m) ? boundary : interior});
    }
    return nodes;
  }
  const std::int64_t den = m + 1;
  auto node_x = [den](std::int64_t k) {
    Frac f = reduce(k, den);
    return exp_coordinate(f);
  };
  auto density = [den](std::int64_t k) {
    double r = 1.0 - static_cast<double>(k) / static_cast<double>(den);
    return r * r;  // e^{-x_{i,k}} exactly
  };
  nodes.reserve(static_cast<std::size_t>(m));
  for (std::int64_t k = 1; k <= m; ++k) {
    double w;
    if (k < m) {
      w = (density(k + 1) - density(k)) / (node_x(k + 1) - node_x(k)) -
          (density(k) - density(k - 1)) / (node_x(k) - node_x(k - 1));
    } else {
      w = -(density(m) - density(m - 1)) / (node_x(m) - node_x(m - 1));
    }
    nodes.push_back({reduce(k, den), w});
  }
  return nodes;
}

std::uint64_t checked_shift(int e) {
  if (e < 0 || e >= 64)
    throw MdmError(ErrorKind::Resource, "point count overflows 64 bits");
  return std::uint64_t{1} << e;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a + b < a)
    throw MdmError(ErrorKind::Resource, "point count overflows 64 bits");
  return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a)
    throw MdmError(ErrorKind::Resource, "point count overflows 64 bits");
  return a * b;
}

// distinct non-anchored nodes of the nested anchored-unit sparse grid:
// n(1, kappa) = 2^kappa and
// n(d, kappa) = 2 n(d-1, kappa-1) + sum_{s=2}^{kappa-d+1} 2^{s-1} n(d-1, kappa-s)
std::uint64_t anchored_count(int d, int kappa) {
  static std::map<std::pair<int, int>, std::uint64_t> memo;
  static std::mutex memo_mutex;
  if (d == 1) return checked_shift(kappa);
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    auto it = memo.find({d, kappa});
    if (it != memo.end()) return it->second;
  }
  std::uint64_t total = checked_mul(2, anchored_count(d - 1, kappa - 1));
  for (int s = 2; s <= kappa - d + 1; ++s)
    total = checked_add(
        total, checked_mul(checked_shift(s - 1), anchored_count(d - 1, kappa - s)));
  std::lock_guard<std::mutex> lock(memo_mutex);
  memo.emplace(std::make_pair(d, kappa), total);
  return total;
}

}  // namespace

const char* family_name(Family f) {
  return f == Family::AnchoredUnit ? "anchored-unit" : "exp-weighted";
}

QuadratureRule univariate_rule(Family family, int i) {
  QuadratureRule rule{family, 1, i, {}};
  for (const auto& n : uni_nodes(family, i))
    rule.nodes.push_back({{coordinate(family, n.key)}, n.w});
  return rule;
}

QuadratureRule smolyak_rule(Family family, int d, int kappa,
                            std::uint64_t node_budget) {
  if (d < 1) throw MdmError(ErrorKind::Config, "dimension must be at least 1");
  QuadratureRule rule{family, d, kappa, {}};
  if (kappa < d) return rule;

  const int max_level = kappa - d + 1;
  std::vector<std::vector<UniNode>> levels(static_cast<std::size_t>(max_level) + 1);
  for (int i = 1; i <= max_level; ++i)
    levels[static_cast<std::size_t>(i)] = uni_nodes(family, i);

  std::map<std::vector<Frac>, double> acc;
  std::vector<int> comp(static_cast<std::size_t>(d), 1);
  std::vector<Frac> key(static_cast<std::size_t>(d));

  // recursively place levels comp[pos..] summing to `rest`, then tensor
  auto tensor = [&](const std::vector<int>& c, double coeff) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    while (true) {
      double w = coeff;
      for (int j = 0; j < d; ++j) {
        const auto& un =
            levels[static_cast<std::size_t>(c[static_cast<std::size_t>(j)])]
                  [idx[static_cast<std::size_t>(j)]];
        key[static_cast<std::size_t>(j)] = un.key;
        w *= un.w;
      }
      acc[key] += w;
      if (acc.size() > node_budget)
        throw MdmError(ErrorKind::Resource,
                       "rule in dimension " + std::to_string(d) + " at level " +
                           std::to_string(kappa) + " exceeds the node budget");
      int j = d - 1;
      while (j >= 0) {
        auto& i_j = idx[static_cast<std::size_t>(j)];
        if (++i_j <
            levels[static_cast<std::size_t>(c[static_cast<std::size_t>(j)])].size())
          break;
        i_j = 0;
        --j;
      }
      if (j < 0) break;
    }
  };

  auto enumerate = [&](auto&& self, int pos, int rest, double coeff) -> void {
    if (pos == d - 1) {
      if (rest >= 1 && rest <= max_level) {
        comp[static_cast<std::size_t>(pos)] = rest;
        tensor(comp, coeff);
      }
      return;
    }
    int remaining = d - 1 - pos;
    for (int i = 1; i <= std::min(max_level, rest - remaining); ++i) {
      comp[static_cast<std::size_t>(pos)] = i;
      self(self, pos + 1, rest - i, coeff);
    }
  };

  for (int m = std::max(d, kappa - d + 1); m <= kappa; ++m) {
    const double coeff =
        (((kappa - m) % 2 == 0) ? 1.0 : -1.0) * binomial(d - 1, kappa - m);
    enumerate(enumerate, 0, m, coeff);
  }

  rule.nodes.reserve(acc.size());
  for (const auto& [k, w] : acc) {
    RuleNode node;
    node.x.reserve(static_cast<std::size_t>(d));
    for (const auto& f : k) node.x.push_back(coordinate(family, f));
    node.w = w;
    rule.nodes.push_back(std::move(node));
  }
  return rule;
}

std::shared_ptr<const QuadratureRule> smolyak_rule_cached(
    Family family, int d, int kappa, std::uint64_t node_budget) {
  static std::map<std::tuple<Family, int, int>,
                  std::shared_ptr<const QuadratureRule>>
      cache;
  static std::mutex cache_mutex;
  const auto key = std::make_tuple(family, d, kappa);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const QuadratureRule>(
      smolyak_rule(family, d, kappa, node_budget));
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto [it, inserted] = cache.emplace(key, std::move(rule));
  return it->second;
}

std::uint64_t point_count(Family family, int d, int kappa) {
  if (d < 1) throw MdmError(ErrorKind::Config, "dimension must be at least 1");
  if (kappa < d) return 0;
  if (family == Family::AnchoredUnit) return anchored_count(d, kappa);
  return checked_mul(checked_shift(kappa - d + 1),
                     binomial_u64(kappa - 1, d - 1));
}

double error_bound(Family family, int d, int kappa) {
  if (d < 1) throw MdmError(ErrorKind::Config, "dimension must be at least 1");
  if (family == Family::AnchoredUnit) {
    if (kappa < d) return std::pow(12.0, -0.5 * d);
    return std::exp2(-kappa - 1.0) * std::pow(3.0, -0.5 * d) *
           std::sqrt(binomial(kappa, d - 1));
  }
  if (kappa < d) return 1.0;
  return kExpErrorConstant * std::exp2(-(kappa - d + 1.0)) *
         binomial(kappa, d - 1);
}

double g_factor(Family family, int d, int kappa, double q) {
  if (d < 1) throw MdmError(ErrorKind::Config, "dimension must be at least 1");
  if (!(q > 0.0) || q > 1.0)
    throw MdmError(ErrorKind::Config, "sparse-grid error factors need q in (0, 1]");
  if (family == Family::AnchoredUnit) {
    if (kappa < d) return std::pow(12.0, -0.5 * d);
    const double log_core = (d - 1) * std::log(static_cast<double>(kappa)) -
                            log_factorial(d - 1);
    return std::exp2(-d - 1.0 + (kappa - d + 1.0) * q) *
           std::pow(3.0, -0.5 * d) * std::exp((0.5 * d - 1.0) * q) *
           std::exp((0.5 + q) * log_core);
  }
  if (kappa < d) return 1.0;
  return kExpErrorConstant * std::exp2((q - 1.0) * (kappa - d + 1.0)) *
         std::pow(binomial(kappa, d - 1), 1.0 + q);
}

double y_term(Family family, int d, int kappa) {
  if (d < 1) throw MdmError(ErrorKind::Config, "dimension must be at least 1");
  if (kappa < d)
    throw MdmError(ErrorKind::Config, "cost inflation is defined for active rules only");
  if (family == Family::AnchoredUnit)
    return 2.0 * std::exp(0.5 * d - 1.0) *
           std::exp((d - 1) * std::log(static_cast<double>(kappa)) -
                    log_factorial(d - 1));
  return 2.0 * binomial(kappa - 1, d - 1);
}

void export_rule(const QuadratureRule& rule, std::ostream& out) {
  char buf[32];
  for (const auto& node : rule.nodes) {
    std::string line;
    for (double c : node.x) {
      std::snprintf(buf, sizeof buf, "%.17g", c);
      line += buf;
      line += ' ';
    }
    std::snprintf(buf, sizeof buf, "%.17g", node.w);
    line += buf;
    line += '\n';
    out << line;
  }
}

}  // namespace mdm
