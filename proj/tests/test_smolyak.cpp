#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mdm/errors.hpp"
#include "mdm/math_util.hpp"
#include "mdm/smolyak.hpp"

using namespace mdm;

namespace {

constexpr double kC0 = 0.2886751345948129;  // 12^{-1/2}

// Reproducing kernel of the anchored space on [-1/2, 1/2]: K(x, y) =
// min(|x|, |y|) when x and y share a sign, else 0. B(t) = int K(t, .) dy
// and A = int int K. The worst-case error of a rule with weights w_k is
//   e^2 = A - 2 sum_k w_k B(x_k) + sum_{k,l} w_k w_l K(x_k, x_l).
double kernel(double x, double y) {
  if (x == 0.0 || y == 0.0 || (x > 0.0) != (y > 0.0)) return 0.0;
  return std::min(std::abs(x), std::abs(y));
}

double kernel_mean(double t) { return 0.5 * std::abs(t) - 0.5 * t * t; }

double worst_case_error(const QuadratureRule& rule) {
  CompensatedSum acc;
  acc.add(1.0 / 12.0);
  for (const auto& a : rule.nodes) acc.add(-2.0 * a.w * kernel_mean(a.x[0]));
  for (const auto& a : rule.nodes)
    for (const auto& b : rule.nodes)
      acc.add(a.w * b.w * kernel(a.x[0], b.x[0]));
  return std::sqrt(acc.value());
}

// Independent univariate transcription: the 2^i + 1 point trapezoid on
// [-1/2, 1/2], anchor kept (every test function vanishes there).
struct UniOracle {
  std::vector<double> x, w;
};

UniOracle uni_oracle(int i) {
  UniOracle u;
  if (i == 0) return u;
  const std::int64_t m = std::int64_t{1} << i;
  for (std::int64_t k = 0; k <= m; ++k) {
    u.x.push_back(-0.5 + static_cast<double>(k) / static_cast<double>(m));
    u.w.push_back(((k == 0 || k == m) ? 0.5 : 1.0) / static_cast<double>(m));
  }
  return u;
}

using Fn = std::function<double(const std::vector<double>&)>;

double tensor_apply(const std::vector<UniOracle>& rules, const Fn& f) {
  const int d = static_cast<int>(rules.size());
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  std::vector<double> x(static_cast<std::size_t>(d));
  double total = 0.0;
  while (true) {
    double w = 1.0;
    for (int j = 0; j < d; ++j) {
      const auto& r = rules[static_cast<std::size_t>(j)];
      x[static_cast<std::size_t>(j)] = r.x[idx[static_cast<std::size_t>(j)]];
      w *= r.w[idx[static_cast<std::size_t>(j)]];
    }
    total += w * f(x);
    int j = d - 1;
    while (j >= 0) {
      auto& i_j = idx[static_cast<std::size_t>(j)];
      if (++i_j < rules[static_cast<std::size_t>(j)].x.size()) break;
      i_j = 0;
      --j;
    }
    if (j < 0) break;
  }
  return total;
}

// Telescoping form of the sparse grid: sum over level vectors i >= 1 with
// |i| <= kappa of the tensor product of first differences U_i - U_{i-1}.
double oracle_sparse(int d, int kappa, const Fn& f) {
  std::map<int, UniOracle> cache;
  auto rule_at = [&](int i) -> const UniOracle& {
    auto [it, fresh] = cache.try_emplace(i);
    if (fresh) it->second = uni_oracle(i);
    return it->second;
  };

  double total = 0.0;
  std::vector<int> levels(static_cast<std::size_t>(d), 1);
  auto walk = [&](auto&& self, int pos, int rest) -> void {
    if (pos == d) {
      for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
        std::vector<UniOracle> rules;
        bool dead = false;
        int sign = 1;
        for (int j = 0; j < d && !dead; ++j) {
          int l = levels[static_cast<std::size_t>(j)];
          if (mask & (1u << j)) {
            if (--l == 0) dead = true;  // the zero rule annihilates the term
            sign = -sign;
          }
          if (!dead) rules.push_back(rule_at(l));
        }
        if (!dead) total += sign * tensor_apply(rules, f);
      }
      return;
    }
    for (int i = 1; i <= rest - (d - 1 - pos); ++i) {
      levels[static_cast<std::size_t>(pos)] = i;
      self(self, pos + 1, rest - i);
    }
  };
  walk(walk, 0, kappa);
  return total;
}

double apply_rule(const QuadratureRule& rule, const Fn& f) {
  CompensatedSum acc;
  for (const auto& node : rule.nodes) acc.add(node.w * f(node.x));
  return acc.value();
}

// In-test transcription of the nested-grid point recursion.
std::uint64_t count_oracle(int d, int kappa) {
  if (d == 1) return std::uint64_t{1} << kappa;
  std::uint64_t total = 2 * count_oracle(d - 1, kappa - 1);
  for (int s = 2; s <= kappa - d + 1; ++s)
    total += (std::uint64_t{1} << (s - 1)) * count_oracle(d - 1, kappa - s);
  return total;
}

}  // namespace

TEST_CASE("univariate error norms match the kernel quadratic form") {
  for (int i = 0; i <= 9; ++i) {
    const QuadratureRule rule = univariate_rule(Family::AnchoredUnit, i);
    const double closed = kC0 * std::exp2(-i);
    CHECK(std::abs(worst_case_error(rule) - closed) <= 1e-12);
    CHECK(error_bound(Family::AnchoredUnit, 1, i) ==
          doctest::Approx(closed).epsilon(1e-13));
  }
}

TEST_CASE("univariate trapezoid rules integrate polynomials as expected") {
  for (int i = 1; i <= 8; ++i) {
    const QuadratureRule rule = univariate_rule(Family::AnchoredUnit, i);
    CHECK(rule.nodes.size() == (std::uint64_t{1} << i));
    double odd = 0.0, square = 0.0;
    for (const auto& node : rule.nodes) {
      CHECK(node.x[0] != 0.0);
      odd += node.w * node.x[0];
      square += node.w * node.x[0] * node.x[0];
    }
    CHECK(odd == doctest::Approx(0.0).epsilon(1e-15));
    // composite trapezoid on x^2: exact Euler-Maclaurin correction h^2 / 6
    CHECK(square ==
          doctest::Approx(1.0 / 12.0 + std::exp2(-2.0 * i) / 6.0)
              .epsilon(1e-13));
  }
}

TEST_CASE("sparse grids agree with the telescoping tensor oracle") {
  const Fn f = [](const std::vector<double>& x) {
    double v = 1.0;
    for (double c : x) v *= c * std::exp(c);
    return v;
  };
  for (int d = 1; d <= 3; ++d) {
    for (int kappa = d; kappa <= 7; ++kappa) {
      const QuadratureRule rule = smolyak_rule(Family::AnchoredUnit, d, kappa);
      const double via_rule = apply_rule(rule, f);
      const double via_oracle = oracle_sparse(d, kappa, f);
      CHECK(via_rule == doctest::Approx(via_oracle).epsilon(1e-12));
    }
  }
}

TEST_CASE("nested point counts follow the recursion and its envelope") {
  CHECK(point_count(Family::AnchoredUnit, 2, 2) == 4);
  CHECK(point_count(Family::AnchoredUnit, 2, 3) == 12);
  for (int d = 2; d <= 5; ++d) {
    for (int kappa = d; kappa <= 12; ++kappa) {
      const std::uint64_t n = point_count(Family::AnchoredUnit, d, kappa);
      CHECK(n == count_oracle(d, kappa));
      const double lower = std::exp2(kappa - d + 1);
      const double upper = lower * std::exp(0.5 * d - 1.0) *
                           std::pow(static_cast<double>(kappa), d - 1) /
                           std::exp(log_factorial(d - 1));
      CHECK(static_cast<double>(n) >= lower);
      CHECK(static_cast<double>(n) <= upper * (1.0 + 1e-12));
    }
  }
  for (int d = 1; d <= 4; ++d) {
    for (int kappa = d; kappa <= 8; ++kappa) {
      const QuadratureRule rule = smolyak_rule(Family::AnchoredUnit, d, kappa);
      CHECK(rule.nodes.size() == point_count(Family::AnchoredUnit, d, kappa));
    }
  }
  CHECK(point_count(Family::AnchoredUnit, 3, 2) == 0);  // zero rule
}

TEST_CASE("weighted half-line rules carry the exact density at each node") {
  for (int i = 1; i <= 6; ++i) {
    const QuadratureRule rule = univariate_rule(Family::ExpWeighted, i);
    const auto m = std::uint64_t{1} << i;
    REQUIRE(rule.nodes.size() == m);
    const double den = static_cast<double>(m) + 1.0;
    for (std::uint64_t k = 1; k <= m; ++k) {
      const double x = rule.nodes[k - 1].x[0];
      const double r = 1.0 - static_cast<double>(k) / den;
      CHECK(std::exp(-x) == doctest::Approx(r * r).epsilon(1e-14));
      CHECK(x > 0.0);
    }
  }
}

TEST_CASE("weighted half-line rules converge at the advertised rate") {
  // g(x) = 1 - e^{-x} has unit norm: int g'(x)^2 e^x dx = 1, and
  // int g e^{-x} dx = 1/2.
  const Fn g = [](const std::vector<double>& x) {
    return 1.0 - std::exp(-x[0]);
  };
  for (int i = 2; i <= 10; ++i) {
    const QuadratureRule rule = univariate_rule(Family::ExpWeighted, i);
    const double err = std::abs(apply_rule(rule, g) - 0.5);
    CHECK(err <= error_bound(Family::ExpWeighted, 1, i));
  }
}

TEST_CASE("weighted point counts use the closed combination formula") {
  for (int d = 1; d <= 5; ++d) {
    for (int kappa = d; kappa <= 12; ++kappa) {
      CHECK(point_count(Family::ExpWeighted, d, kappa) ==
            (std::uint64_t{1} << (kappa - d + 1)) *
                binomial_u64(kappa - 1, d - 1));
    }
  }
  CHECK(point_count(Family::ExpWeighted, 2, 1) == 0);
}

TEST_CASE("error factors dominate the quantized point counts") {
  for (double q : {0.5, 1.0}) {
    for (int kappa = 1; kappa <= 12; ++kappa) {
      const auto n =
          static_cast<double>(point_count(Family::ExpWeighted, 1, kappa));
      CHECK(error_bound(Family::ExpWeighted, 1, kappa) ==
            doctest::Approx(g_factor(Family::ExpWeighted, 1, kappa, q) /
                            std::pow(n, q))
                .epsilon(1e-12));
    }
    for (Family fam : {Family::AnchoredUnit, Family::ExpWeighted}) {
      for (int d = 2; d <= 4; ++d) {
        for (int kappa = d; kappa <= 12; ++kappa) {
          const auto n = static_cast<double>(point_count(fam, d, kappa));
          CHECK(error_bound(fam, d, kappa) <=
                g_factor(fam, d, kappa, q) / std::pow(n, q) * (1.0 + 1e-12));
        }
      }
    }
  }
}

TEST_CASE("error factor formulas transcribe correctly") {
  for (int d = 1; d <= 4; ++d) {
    for (int kappa = d; kappa <= 10; ++kappa) {
      for (double q : {0.5, 0.75, 1.0}) {
        const double core =
            std::pow(static_cast<double>(kappa), d - 1) /
            std::exp(log_factorial(d - 1));
        const double expected =
            std::exp2(-d - 1.0 + (kappa - d + 1.0) * q) *
            std::pow(3.0, -0.5 * d) * std::exp((0.5 * d - 1.0) * q) *
            std::pow(core, 0.5 + q);
        CHECK(g_factor(Family::AnchoredUnit, d, kappa, q) ==
              doctest::Approx(expected).epsilon(1e-12));
        CHECK(y_term(Family::AnchoredUnit, d, kappa) ==
              doctest::Approx(2.0 * std::exp(0.5 * d - 1.0) * core)
                  .epsilon(1e-12));
        CHECK(y_term(Family::ExpWeighted, d, kappa) ==
              doctest::Approx(2.0 * binomial(kappa - 1, d - 1))
                  .epsilon(1e-12));
      }
    }
  }
  CHECK(g_factor(Family::AnchoredUnit, 3, 2, 1.0) ==
        doctest::Approx(std::pow(12.0, -1.5)).epsilon(1e-13));
  CHECK(g_factor(Family::ExpWeighted, 3, 2, 1.0) == doctest::Approx(1.0));
  CHECK(error_bound(Family::AnchoredUnit, 2, 1) ==
        doctest::Approx(1.0 / 12.0).epsilon(1e-13));
  CHECK_THROWS_AS(y_term(Family::AnchoredUnit, 3, 2), MdmError);
  CHECK_THROWS_AS(g_factor(Family::AnchoredUnit, 2, 4, 1.5), MdmError);
}

TEST_CASE("rule construction guards its resources") {
  CHECK_THROWS_AS(smolyak_rule(Family::AnchoredUnit, 3, 14, 100), MdmError);
  CHECK_THROWS_AS(univariate_rule(Family::AnchoredUnit, 41), MdmError);
  CHECK_THROWS_AS(smolyak_rule(Family::AnchoredUnit, 0, 3), MdmError);
  CHECK(smolyak_rule(Family::AnchoredUnit, 3, 2).nodes.empty());
}

TEST_CASE("the rule cache hands out shared instances") {
  const auto a = smolyak_rule_cached(Family::AnchoredUnit, 2, 5);
  const auto b = smolyak_rule_cached(Family::AnchoredUnit, 2, 5);
  CHECK(a.get() == b.get());
  CHECK(a->nodes.size() == point_count(Family::AnchoredUnit, 2, 5));
}

TEST_CASE("rule export emits one line per node") {
  const QuadratureRule rule = smolyak_rule(Family::AnchoredUnit, 2, 4);
  std::ostringstream out;
  export_rule(rule, out);
  const std::string text = out.str();
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  CHECK(lines == rule.nodes.size());
  std::istringstream in(text);
  double first_x, first_y, first_w;
  REQUIRE(static_cast<bool>(in >> first_x >> first_y >> first_w));
  CHECK(first_x == rule.nodes[0].x[0]);
  CHECK(first_y == rule.nodes[0].x[1]);
  CHECK(first_w == rule.nodes[0].w);
}
