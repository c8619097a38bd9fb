#include "mdm/cost_model.hpp"

#include <cmath>

#include "mdm/errors.hpp"
#include "mdm/math_util.hpp"

namespace mdm {

CostModel::CostModel(Kind kind, double scale, double parameter)
    : kind_(kind), scale_(scale), parameter_(parameter) {
  if (!(scale > 0.0)) {
    throw MdmError(ErrorKind::Config, "cost scale must be positive");
  }
  if (kind == Kind::Polynomial && !(parameter >= 0.0)) {
    throw MdmError(ErrorKind::Config, "cost degree must be non-negative");
  }
  if (kind == Kind::Exponential && !(parameter >= 1.0)) {
    throw MdmError(ErrorKind::Config, "cost base must be >= 1 to keep $ non-decreasing");
  }
}

CostModel CostModel::constant(double c) { return CostModel(Kind::Constant, c, 0.0); }

CostModel CostModel::polynomial(double c, double degree) {
  return CostModel(Kind::Polynomial, c, degree);
}

CostModel CostModel::exponential(double c, double base) {
  return CostModel(Kind::Exponential, c, base);
}

double CostModel::dollar(int k) const {
  if (k < 0) throw MdmError(ErrorKind::Config, "argument count must be >= 0");
  switch (kind_) {
    case Kind::Constant:
      return scale_;
    case Kind::Polynomial:
      return scale_ * std::pow(1.0 + k, parameter_);
    case Kind::Exponential:
      return scale_ * std::pow(parameter_, k);
  }
  return scale_;
}

double CostModel::pound(int k) const {
  if (k < 0) throw MdmError(ErrorKind::Config, "argument count must be >= 0");
  CompensatedSum acc;
  for (int j = 0; j <= k; ++j) {
    acc.add(binomial(k, j) * dollar(j));
  }
  return acc.value();
}

std::string CostModel::describe() const {
  switch (kind_) {
    case Kind::Constant:
      return "constant";
    case Kind::Polynomial:
      return "polynomial";
    case Kind::Exponential:
      return "exponential";
  }
  return "constant";
}

}  // namespace mdm
