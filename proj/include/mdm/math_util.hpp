#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace mdm {

// Binomial coefficient as a double; exact while the value fits in 53 bits.
double binomial(int n, int k);

// Binomial coefficient in 64-bit integer arithmetic; throws on overflow.
std::uint64_t binomial_u64(int n, int k);

double log_factorial(int n);
double log_binomial(int n, int k);

// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime(std::uint64_t n);

// Largest prime p with p <= x, or 0 if there is none (x < 2).
std::uint64_t largest_prime_at_most(double x);

// Partial sum sum_{j=1}^{terms} j^{-s}.
double zeta_partial(double s, int terms);

// Upper bound on zeta(s) for s > 1: partial sum plus the integral tail
// bound terms^(1-s)/(s-1).
double zeta_upper(double s, int terms = 64);

// zeta(s) for s > 1 to near machine accuracy (partial sum with
// Euler-Maclaurin tail corrections).
double zeta_accurate(double s);

// log(sum(exp(v_i))) without overflow; -inf for an empty list.
double log_sum_exp(const std::vector<double>& v);

// Neumaier compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + carry; }
};

// Gauss-Legendre nodes and weights on [-1,1].
void gauss_legendre(int order, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace mdm
