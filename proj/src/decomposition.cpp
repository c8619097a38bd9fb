#include "mdm/decomposition.hpp"

#include <algorithm>
#include <string>

#include "mdm/errors.hpp"
#include "mdm/math_util.hpp"

namespace mdm {

void CostTally::record(int card) {
  ++raw_calls;
  if (static_cast<std::size_t>(card) >= calls_by_card.size())
    calls_by_card.resize(static_cast<std::size_t>(card) + 1, 0);
  ++calls_by_card[static_cast<std::size_t>(card)];
}

void CostTally::merge(const CostTally& other) {
  raw_calls += other.raw_calls;
  if (other.calls_by_card.size() > calls_by_card.size())
    calls_by_card.resize(other.calls_by_card.size(), 0);
  for (std::size_t i = 0; i < other.calls_by_card.size(); ++i)
    calls_by_card[i] += other.calls_by_card[i];
}

double evaluate_anchored(const Integrand& f, const Subset& u,
                         const std::vector<double>& x_u) {
  if (x_u.size() != static_cast<std::size_t>(u.card()))
    throw MdmError(ErrorKind::Config,
                   "coordinate vector length does not match subset size");
  std::vector<Coord> coords;
  coords.reserve(x_u.size());
  for (int i = 0; i < u.card(); ++i)
    coords.emplace_back(u.labels()[static_cast<std::size_t>(i)],
                        x_u[static_cast<std::size_t>(i)]);
  return f.eval_sparse(coords);
}

double decomposition_term(const Integrand& f, const Subset& u,
                          const std::vector<double>& x_u, CostTally* tally,
                          int max_card) {
  const int k = u.card();
  if (x_u.size() != static_cast<std::size_t>(k))
    throw MdmError(ErrorKind::Config,
                   "coordinate vector length does not match subset size");
  if (k > max_card)
    throw MdmError(ErrorKind::Resource,
                   "refusing decomposition term over " + std::to_string(k) +
                       " coordinates: 2^" + std::to_string(k) +
                       " evaluations exceed the cardinality cap of " +
                       std::to_string(max_card));

  for (double x : x_u)
    if (x == 0.0) return 0.0;

  CompensatedSum acc;
  std::vector<Coord> coords;
  coords.reserve(static_cast<std::size_t>(k));
  const std::uint32_t full = 1u << k;
  for (int c = 0; c <= k; ++c) {
    const double sign = ((k - c) & 1) ? -1.0 : 1.0;
    std::uint32_t mask = (c == 0) ? 0u : (1u << c) - 1u;
    do {
      coords.clear();
      for (int i = 0; i < k; ++i)
        if (mask >> i & 1u)
          coords.emplace_back(u.labels()[static_cast<std::size_t>(i)],
                              x_u[static_cast<std::size_t>(i)]);
      acc.add(sign * f.eval_sparse(coords));
      if (tally) tally->record(c);
      if (c == 0) break;
      std::uint32_t low = mask & (~mask + 1u);
      std::uint32_t carry = mask + low;
      mask = carry + (((carry ^ mask) / low) >> 2);
    } while (mask < full);
  }
  return acc.value();
}

double reconstruct_from_terms(const Integrand& f, int d,
                              const std::vector<double>& x, CostTally* tally) {
  if (d < 0 || x.size() != static_cast<std::size_t>(d))
    throw MdmError(ErrorKind::Config,
                   "coordinate vector length does not match dimension");
  if (d > 16)
    throw MdmError(ErrorKind::Resource,
                   "refusing reconstruction over " + std::to_string(d) +
                       " coordinates: 3^" + std::to_string(d) +
                       " evaluations exceed the cap of 16");

  CompensatedSum acc;
  const std::uint32_t full = (d == 0) ? 1u : (1u << d);
  for (int c = 0; c <= d; ++c) {
    std::uint32_t mask = (c == 0) ? 0u : (1u << c) - 1u;
    do {
      std::vector<std::int32_t> labels;
      std::vector<double> x_u;
      for (int i = 0; i < d; ++i)
        if (mask >> i & 1u) {
          labels.push_back(i + 1);
          x_u.push_back(x[static_cast<std::size_t>(i)]);
        }
      acc.add(decomposition_term(f, Subset(std::move(labels)), x_u, tally));
      if (c == 0) break;
      std::uint32_t low = mask & (~mask + 1u);
      std::uint32_t carry = mask + low;
      mask = carry + (((carry ^ mask) / low) >> 2);
    } while (mask < full);
  }
  return acc.value();
}

}  // namespace mdm
