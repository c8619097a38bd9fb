#pragma once

#include <cmath>
#include <string>

#include "mdm/errors.hpp"

namespace mdm {

// Integration domains, both anchored at 0.
// SymmetricUnit: D = [-1/2, 1/2] with uniform density.
// HalfLineExp:   D = [0, inf) with density exp(-x).
enum class DomainKind { SymmetricUnit, HalfLineExp };

inline bool domain_contains(DomainKind d, double x) {
  switch (d) {
    case DomainKind::SymmetricUnit:
      return x >= -0.5 && x <= 0.5;
    case DomainKind::HalfLineExp:
      return x >= 0.0 && std::isfinite(x);
  }
  return false;
}

inline std::string domain_name(DomainKind d) {
  return d == DomainKind::SymmetricUnit ? "symmetric-unit" : "half-line-exp";
}

// Norm of the integration functional on the subset spaces: C_u = c0^{|u|}.
struct NormModel {
  double c0 = 1.0;

  static NormModel for_domain(DomainKind d) {
    NormModel m;
    // [-1/2,1/2] kernel space: c0 = 12^{-1/2}; half-line space: c0 = 1
    m.c0 = d == DomainKind::SymmetricUnit ? 1.0 / std::sqrt(12.0) : 1.0;
    return m;
  }

  double norm_of_integration(int card) const {
    if (card < 0) throw MdmError(ErrorKind::Config, "cardinality must be >= 0");
    return std::pow(c0, card);
  }

  double log_c0() const { return std::log(c0); }
};

}  // namespace mdm
