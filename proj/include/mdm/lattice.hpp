#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

namespace mdm {

/// Rank-1 lattice rule: n points generated by z over [-1/2, 1/2]^d.
/// n must be an odd prime; components of z lie in {1, ..., n-1}.
struct LatticeRule {
  std::uint64_t n = 0;
  int dimension = 0;
  std::vector<std::uint64_t> z;
};

inline constexpr double kLatticeDefaultQ = 0.9;
inline constexpr int kLatticeShiftCount = 8;

/// Shift-averaged squared worst-case error of the first s components of z,
/// with all product weights equal to one.
double cbc_criterion(const LatticeRule& rule, int s);

/// Greedy component-by-component construction: each component minimizes
/// cbc_criterion given the previous ones, smallest candidate on ties.
LatticeRule cbc_construct(std::uint64_t n, int dimension);

/// Quadrature error factor of the lattice family for a card-sized subset,
/// valid for q in [1/2, 1).
double lattice_g_factor(int card, double q);

struct ShiftedEstimate {
  double mean = 0.0;
  double rms = 0.0;
  std::vector<double> per_shift;
};

/// Averages the lattice rule over shift_count random shifts taken in
/// antithetic pairs, seeded deterministically. rms is the sample standard
/// deviation of the per-shift estimates divided by sqrt(shift_count).
ShiftedEstimate lattice_integrate(
    const std::function<double(const std::vector<double>&)>& g,
    const LatticeRule& rule, int shift_count, std::uint64_t seed);

/// One line "n d z_1 ... z_d".
void export_rule(const LatticeRule& rule, std::ostream& out);
LatticeRule parse_lattice_rule(std::istream& in);

}  // namespace mdm
