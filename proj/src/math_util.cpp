#include "mdm/math_util.hpp"

#include <algorithm>
#include <limits>

#include "mdm/errors.hpp"

namespace mdm {

double binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int j = 1; j <= k; ++j) {
    r *= static_cast<double>(n - k + j);
    r /= static_cast<double>(j);
  }
  return r;
}

std::uint64_t binomial_u64(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int j = 1; j <= k; ++j) {
    // multiply first, divide by j afterwards; the running value stays integral
    std::uint64_t num = static_cast<std::uint64_t>(n - k + j);
    if (r > std::numeric_limits<std::uint64_t>::max() / num) {
      throw MdmError(ErrorKind::Evaluation, "binomial coefficient overflows 64 bits");
    }
    r = r * num / static_cast<std::uint64_t>(j);
  }
  return r;
}

double log_factorial(int n) {
  if (n <= 1) return 0.0;
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL,
                          19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // this base set is deterministic for all 64-bit integers
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL,
                          19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::uint64_t largest_prime_at_most(double x) {
  if (!(x >= 2.0)) return 0;
  double cap = std::min(x, 9.2e18);
  std::uint64_t n = static_cast<std::uint64_t>(std::floor(cap));
  while (n >= 2) {
    if (is_prime(n)) return n;
    --n;
  }
  return 0;
}

double zeta_partial(double s, int terms) {
  CompensatedSum acc;
  for (int j = terms; j >= 1; --j) {
    acc.add(std::pow(static_cast<double>(j), -s));
  }
  return acc.value();
}

double zeta_upper(double s, int terms) {
  if (!(s > 1.0)) {
    throw MdmError(ErrorKind::Divergence, "zeta bound requires exponent > 1");
  }
  double n = static_cast<double>(terms);
  return zeta_partial(s, terms) + std::pow(n, 1.0 - s) / (s - 1.0);
}

double zeta_accurate(double s) {
  if (!(s > 1.0)) {
    throw MdmError(ErrorKind::Divergence, "zeta requires exponent > 1");
  }
  const int n = 20000;
  double nn = static_cast<double>(n);
  double partial = zeta_partial(s, n);
  // Euler-Maclaurin tail at n: integral + half term + first correction
  double tail = std::pow(nn, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(nn, -s) +
                s / 12.0 * std::pow(nn, -s - 1.0);
  return partial + tail;
}

double log_sum_exp(const std::vector<double>& v) {
  if (v.empty()) return -std::numeric_limits<double>::infinity();
  double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) return m;
  CompensatedSum acc;
  for (double x : v) acc.add(std::exp(x - m));
  return m + std::log(acc.value());
}

void gauss_legendre(int order, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  if (order < 1) throw MdmError(ErrorKind::Config, "quadrature order must be >= 1");
  nodes.assign(order, 0.0);
  weights.assign(order, 0.0);
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton iteration from the Chebyshev initial guess
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < order; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = order * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[order - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[order - 1 - i] = w;
  }
}

}  // namespace mdm
