#include "mdm/lattice.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "mdm/errors.hpp"
#include "mdm/math_util.hpp"

namespace mdm {

namespace {

constexpr std::uint64_t kMaxLatticeN = std::uint64_t{1} << 31;

// Bernoulli polynomial of degree two on [0, 1)
double b2(double t) { return t * (t - 1.0) + 1.0 / 6.0; }

void check_rule_size(std::uint64_t n) {
  if (n < 3 || n >= kMaxLatticeN || !is_prime(n))
    throw MdmError(ErrorKind::Config,
                   "lattice size must be an odd prime below 2^31, got " +
                       std::to_string(n));
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1p-53;
}

}  // namespace

double cbc_criterion(const LatticeRule& rule, int s) {
  check_rule_size(rule.n);
  if (s < 1 || s > static_cast<int>(rule.z.size()))
    throw MdmError(ErrorKind::Config, "criterion prefix out of range");
  const double n = static_cast<double>(rule.n);
  CompensatedSum sum;
  for (std::uint64_t k = 0; k < rule.n; ++k) {
    double prod = 1.0;
    for (int j = 0; j < s; ++j) {
      const std::uint64_t r = (k * rule.z[static_cast<std::size_t>(j)]) % rule.n;
      prod *= 1.0 + b2(static_cast<double>(r) / n);
    }
    sum.add(prod);
  }
  return sum.value() / n - 1.0;
}

LatticeRule cbc_construct(std::uint64_t n, int dimension) {
  check_rule_size(n);
  if (dimension < 1)
    throw MdmError(ErrorKind::Config, "lattice dimension must be at least 1");

  LatticeRule rule{n, dimension, {}};
  rule.z.reserve(static_cast<std::size_t>(dimension));

  const double nd = static_cast<double>(n);
  std::vector<double> prod(static_cast<std::size_t>(n), 1.0);
  for (int s = 0; s < dimension; ++s) {
    std::uint64_t best_z = 1;
    double best_e = std::numeric_limits<double>::infinity();
    for (std::uint64_t z = 1; z < n; ++z) {
      CompensatedSum sum;
      for (std::uint64_t k = 0; k < n; ++k) {
        const std::uint64_t r = (k * z) % n;
        sum.add(prod[static_cast<std::size_t>(k)] *
                (1.0 + b2(static_cast<double>(r) / nd)));
      }
      const double e = sum.value() / nd - 1.0;
      if (e < best_e) {
        best_e = e;
        best_z = z;
      }
      if (s == 0) break;  // all single components are equivalent
    }
    rule.z.push_back(best_z);
    for (std::uint64_t k = 0; k < n; ++k)
      prod[static_cast<std::size_t>(k)] *=
          1.0 + b2(static_cast<double>((k * best_z) % n) / nd);
  }
  return rule;
}

double lattice_g_factor(int card, double q) {
  if (card < 1)
    throw MdmError(ErrorKind::Config, "lattice error factors need card >= 1");
  if (q < 0.5 || q >= 1.0)
    throw MdmError(ErrorKind::Config, "lattice error factors need q in [1/2, 1)");
  const double base =
      2.0 * zeta_accurate(1.0 / q) /
          std::pow(2.0 * std::numbers::pi * std::numbers::pi, 0.5 / q) +
      std::pow(12.0, -0.5 / q);
  return std::exp2(q) * std::pow(base, card * q);
}

ShiftedEstimate lattice_integrate(
    const std::function<double(const std::vector<double>&)>& g,
    const LatticeRule& rule, int shift_count, std::uint64_t seed) {
  check_rule_size(rule.n);
  if (rule.dimension < 1 ||
      rule.z.size() != static_cast<std::size_t>(rule.dimension))
    throw MdmError(ErrorKind::Config, "lattice rule has inconsistent dimension");
  if (shift_count < 2 || shift_count % 2 != 0)
    throw MdmError(ErrorKind::Config, "shift count must be even and positive");

  const auto d = static_cast<std::size_t>(rule.dimension);
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> shifts;
  shifts.reserve(static_cast<std::size_t>(shift_count));
  for (int p = 0; p < shift_count / 2; ++p) {
    std::vector<double> delta(d);
    for (auto& c : delta) c = uniform01(rng);
    std::vector<double> mirror(d);
    for (std::size_t j = 0; j < d; ++j) mirror[j] = 1.0 - delta[j];
    shifts.push_back(std::move(delta));
    shifts.push_back(std::move(mirror));
  }

  ShiftedEstimate out;
  out.per_shift.reserve(shifts.size());
  const double nd = static_cast<double>(rule.n);
  std::vector<double> x(d);
  for (const auto& delta : shifts) {
    CompensatedSum sum;
    for (std::uint64_t i = 1; i <= rule.n; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const std::uint64_t r = (i * rule.z[j]) % rule.n;
        double t = static_cast<double>(r) / nd + delta[j];
        if (t >= 1.0) t -= 1.0;
        x[j] = t - 0.5;
      }
      sum.add(g(x));
    }
    out.per_shift.push_back(sum.value() / nd);
  }

  CompensatedSum mean_sum;
  for (double v : out.per_shift) mean_sum.add(v);
  out.mean = mean_sum.value() / static_cast<double>(shifts.size());
  CompensatedSum var_sum;
  for (double v : out.per_shift) {
    const double dlt = v - out.mean;
    var_sum.add(dlt * dlt);
  }
  const auto m = static_cast<double>(shifts.size());
  out.rms = std::sqrt(var_sum.value() / (m - 1.0)) / std::sqrt(m);
  return out;
}

void export_rule(const LatticeRule& rule, std::ostream& out) {
  out << rule.n << ' ' << rule.dimension;
  for (std::uint64_t z : rule.z) out << ' ' << z;
  out << '\n';
}

LatticeRule parse_lattice_rule(std::istream& in) {
  LatticeRule rule;
  if (!(in >> rule.n >> rule.dimension))
    throw MdmError(ErrorKind::Config, "malformed lattice rule header");
  if (rule.dimension < 1)
    throw MdmError(ErrorKind::Config, "lattice rule dimension must be positive");
  rule.z.resize(static_cast<std::size_t>(rule.dimension));
  for (auto& z : rule.z)
    if (!(in >> z))
      throw MdmError(ErrorKind::Config, "lattice rule is missing components");
  check_rule_size(rule.n);
  for (std::uint64_t z : rule.z)
    if (z == 0 || z >= rule.n)
      throw MdmError(ErrorKind::Config,
                     "lattice components must lie in {1, ..., n-1}");
  return rule;
}

}  // namespace mdm
