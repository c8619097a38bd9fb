#pragma once

#include <string>

namespace mdm {

// Cost accounting for integrand evaluations.
// dollar(k): cost of one call f(x_v; 0) with k coordinates off the anchor.
// pound(k):  cost of one decomposition-term value obtained from the
//            2^k-term inclusion-exclusion, sum_j C(k,j) dollar(j).
class CostModel {
 public:
  enum class Kind { Constant, Polynomial, Exponential };

  static CostModel constant(double c = 1.0);
  static CostModel polynomial(double c, double degree);   // c * (1+k)^degree
  static CostModel exponential(double c, double base);    // c * base^k

  double dollar(int k) const;
  double pound(int k) const;

  Kind kind() const { return kind_; }
  double scale() const { return scale_; }
  double parameter() const { return parameter_; }
  std::string describe() const;

 private:
  CostModel(Kind kind, double scale, double parameter);

  Kind kind_;
  double scale_;
  double parameter_;
};

}  // namespace mdm
