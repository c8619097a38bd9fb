#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "mdm/subset.hpp"

namespace mdm {

// Exact sum over subsets of a finite weight list:
//   sum_{l=0}^{L} (l!)^t e_l(g_1..g_L)
// with e_l the elementary symmetric polynomials.
double subset_sum_capped(const std::vector<double>& g, double t);

// Per-subset norm bounds B_u >= ||f_u||, in one of three shapes:
//  - POD:     B_u = (|u|!)^{b1} mu prod_{j in u} (kappa j)^{-b2}
//  - product: B_u = prod_{j in u} w_j with non-increasing weights
//  - custom:  black-box callback plus user-supplied decay data
class BoundsModel {
 public:
  enum class Kind { Pod, Product, Custom };

  static BoundsModel pod(double b1, double b2, double mu, double kappa);
  static BoundsModel product_power(double p, double scale);
  static BoundsModel product_geometric(double r, double scale);
  static BoundsModel product_explicit(std::vector<double> weights);
  static BoundsModel custom(
      std::function<double(const Subset&)> value, double alpha0,
      std::function<double(double alpha, double c0)> s_alpha_upper);

  Kind kind() const { return kind_; }

  double value(const Subset& u) const;
  double log_value(const Subset& u) const;

  // decay({C_u B_u}); +inf when every power tau > 1 is summable
  double alpha0() const;
  double default_alpha() const;

  // Upper bound on S_alpha = sum over all finite subsets of (C_v B_v)^{1/alpha},
  // with C_v = c0^{|v|}. With ell_max the sum runs over labels <= ell_max only
  // and is exact for POD/product shapes.
  double s_alpha_upper(double alpha, double c0,
                       std::optional<int> ell_max = std::nullopt) const;

  // Exact sum of C_u B_u over all u within labels <= ell_max (POD/product only).
  double capped_subset_mass(double c0, int ell_max) const;

  // Structure used by the active-set enumeration: C_u B_u factorises as
  // mu (|u|!)^{b1} prod_{j in u} c0 w(j). max_label caps usable labels
  // (INT32_MAX when unbounded).
  struct ProductView {
    double mu = 1.0;
    double b1 = 0.0;
    std::int32_t max_label = 0;
    std::function<double(std::int32_t)> coord_weight;
  };
  std::optional<ProductView> product_view() const;

  // POD accessors (throw for other kinds)
  double pod_b1() const;
  double pod_b2() const;
  double pod_mu() const;
  double pod_kappa() const;

 private:
  BoundsModel() = default;

  Kind kind_ = Kind::Pod;

  // POD parameters
  double b1_ = 0.0, b2_ = 0.0, mu_ = 1.0, kappa_ = 1.0;

  // product parameters
  enum class ProductForm { Power, Geometric, Explicit };
  ProductForm form_ = ProductForm::Power;
  double p_ = 0.0;      // power exponent or geometric ratio
  double scale_ = 1.0;
  std::vector<double> weights_;

  // custom parameters
  std::function<double(const Subset&)> custom_value_;
  double custom_alpha0_ = 0.0;
  std::function<double(double, double)> custom_tail_;

  double product_weight(std::int32_t j) const;
};

}  // namespace mdm
