#include "mdm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

#include "mdm/errors.hpp"
#include "mdm/math_util.hpp"

namespace mdm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// sum_{j > n} j^{-s} <= integral bound, s > 1
double power_tail_upper(double s, int n) {
  return std::pow(static_cast<double>(n), 1.0 - s) / (s - 1.0);
}

double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

double subset_sum_capped(const std::vector<double>& g, double t) {
  const std::size_t L = g.size();
  std::vector<double> e(L + 1, 0.0);
  e[0] = 1.0;
  std::size_t used = 0;
  for (double gj : g) {
    ++used;
    for (std::size_t l = used; l >= 1; --l) e[l] += gj * e[l - 1];
  }
  CompensatedSum total;
  double fact_weight = 1.0;
  total.add(e[0]);
  for (std::size_t l = 1; l <= L; ++l) {
    fact_weight *= std::pow(static_cast<double>(l), t);
    total.add(fact_weight * e[l]);
  }
  return total.value();
}

BoundsModel BoundsModel::pod(double b1, double b2, double mu, double kappa) {
  if (!(b2 > std::max(b1, 0.0)))
    throw MdmError(ErrorKind::Config, "pod bounds need b2 > max(b1, 0)");
  if (!(mu > 0.0) || !(kappa > 0.0))
    throw MdmError(ErrorKind::Config, "pod bounds need mu > 0 and kappa > 0");
  BoundsModel m;
  m.kind_ = Kind::Pod;
  m.b1_ = b1;
  m.b2_ = b2;
  m.mu_ = mu;
  m.kappa_ = kappa;
  return m;
}

BoundsModel BoundsModel::product_power(double p, double scale) {
  if (!(p > 1.0))
    throw MdmError(ErrorKind::Config, "power-law weights need exponent > 1");
  if (!(scale > 0.0))
    throw MdmError(ErrorKind::Config, "weight scale must be positive");
  BoundsModel m;
  m.kind_ = Kind::Product;
  m.form_ = ProductForm::Power;
  m.p_ = p;
  m.scale_ = scale;
  return m;
}

BoundsModel BoundsModel::product_geometric(double r, double scale) {
  if (!(r > 0.0) || !(r < 1.0))
    throw MdmError(ErrorKind::Config, "geometric weights need ratio in (0, 1)");
  if (!(scale > 0.0))
    throw MdmError(ErrorKind::Config, "weight scale must be positive");
  BoundsModel m;
  m.kind_ = Kind::Product;
  m.form_ = ProductForm::Geometric;
  m.p_ = r;
  m.scale_ = scale;
  return m;
}

BoundsModel BoundsModel::product_explicit(std::vector<double> weights) {
  if (weights.empty())
    throw MdmError(ErrorKind::Config, "explicit weight list must be non-empty");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
      throw MdmError(ErrorKind::Config, "explicit weights must be positive and finite");
    if (i > 0 && weights[i] > weights[i - 1])
      throw MdmError(ErrorKind::Config, "explicit weights must be non-increasing");
  }
  BoundsModel m;
  m.kind_ = Kind::Product;
  m.form_ = ProductForm::Explicit;
  m.weights_ = std::move(weights);
  return m;
}

BoundsModel BoundsModel::custom(
    std::function<double(const Subset&)> value, double alpha0,
    std::function<double(double, double)> s_alpha_upper) {
  if (!value || !s_alpha_upper)
    throw MdmError(ErrorKind::Config, "custom bounds need value and tail callbacks");
  if (!(alpha0 > 1.0))
    throw MdmError(ErrorKind::Config, "custom bounds need decay exponent > 1");
  BoundsModel m;
  m.kind_ = Kind::Custom;
  m.custom_value_ = std::move(value);
  m.custom_alpha0_ = alpha0;
  m.custom_tail_ = std::move(s_alpha_upper);
  return m;
}

double BoundsModel::product_weight(std::int32_t j) const {
  switch (form_) {
    case ProductForm::Power:
      return scale_ * std::pow(static_cast<double>(j), -p_);
    case ProductForm::Geometric:
      return scale_ * std::pow(p_, static_cast<double>(j));
    case ProductForm::Explicit:
      return j <= static_cast<std::int32_t>(weights_.size()) ? weights_[j - 1] : 0.0;
  }
  return 0.0;
}

double BoundsModel::value(const Subset& u) const {
  switch (kind_) {
    case Kind::Pod: {
      double b = mu_;
      for (int m = 1; m <= u.card(); ++m) b *= std::pow(static_cast<double>(m), b1_);
      for (std::int32_t j : u.labels()) b *= std::pow(kappa_ * j, -b2_);
      return b;
    }
    case Kind::Product: {
      double b = 1.0;
      for (std::int32_t j : u.labels()) b *= product_weight(j);
      return b;
    }
    case Kind::Custom:
      return custom_value_(u);
  }
  return 0.0;
}

double BoundsModel::log_value(const Subset& u) const {
  switch (kind_) {
    case Kind::Pod: {
      double lb = std::log(mu_) + b1_ * log_factorial(u.card());
      for (std::int32_t j : u.labels()) lb -= b2_ * std::log(kappa_ * j);
      return lb;
    }
    case Kind::Product: {
      double lb = 0.0;
      for (std::int32_t j : u.labels()) {
        double w = product_weight(j);
        if (w <= 0.0) return -kInf;
        lb += std::log(w);
      }
      return lb;
    }
    case Kind::Custom: {
      double v = custom_value_(u);
      return v > 0.0 ? std::log(v) : -kInf;
    }
  }
  return -kInf;
}

double BoundsModel::alpha0() const {
  switch (kind_) {
    case Kind::Pod:
      return b2_;
    case Kind::Product:
      return form_ == ProductForm::Power ? p_ : kInf;
    case Kind::Custom:
      return custom_alpha0_;
  }
  return 0.0;
}

double BoundsModel::default_alpha() const {
  double a0 = alpha0();
  return std::isfinite(a0) ? 0.5 * (1.0 + a0) : 2.0;
}

double BoundsModel::s_alpha_upper(double alpha, double c0,
                                  std::optional<int> ell_max) const {
  if (!(alpha > 1.0))
    throw MdmError(ErrorKind::Config, "decay sum needs alpha > 1");
  if (!(c0 > 0.0))
    throw MdmError(ErrorKind::Config, "decay sum needs c0 > 0");

  if (kind_ == Kind::Custom) {
    if (ell_max)
      throw MdmError(ErrorKind::Config,
                     "custom bounds provide no capped decay sum");
    return custom_tail_(alpha, c0);
  }

  auto view = product_view();
  const double inv_a = 1.0 / alpha;
  const double t = view->b1 * inv_a;

  int cap = 0;
  if (ell_max) {
    if (*ell_max < 1)
      throw MdmError(ErrorKind::Config, "label cap must be at least 1");
    cap = std::min(*ell_max, view->max_label);
  } else if (view->max_label != INT32_MAX) {
    cap = view->max_label;
  }

  if (cap > 0) {
    std::vector<double> g(static_cast<std::size_t>(cap));
    for (int j = 1; j <= cap; ++j)
      g[j - 1] = std::pow(c0 * view->coord_weight(j), inv_a);
    return std::pow(view->mu, inv_a) * subset_sum_capped(g, t);
  }

  if (kind_ == Kind::Pod) {
    if (!(alpha > b1_))
      throw MdmError(ErrorKind::Divergence,
                     "decay sum diverges: alpha must exceed the factorial "
                     "exponent b1 (or supply a label cap)");
    if (!(alpha < b2_))
      throw MdmError(ErrorKind::Divergence,
                     "decay sum diverges: alpha must stay below the product "
                     "exponent b2 (or supply a label cap)");
    const double log_G = inv_a * (std::log(c0) - b2_ * std::log(kappa_)) +
                         std::log(zeta_upper(b2_ * inv_a));
    const double exponent = t - 1.0;
    double log_sum = -kInf;
    for (long l = 0;; ++l) {
      double log_term =
          exponent * log_factorial(static_cast<int>(l)) + static_cast<double>(l) * log_G;
      log_sum = log_add(log_sum, log_term);
      double ratio = std::pow(static_cast<double>(l + 2), exponent) * std::exp(log_G);
      if (ratio < 1.0) {
        double log_next = exponent * log_factorial(static_cast<int>(l) + 1) +
                          static_cast<double>(l + 1) * log_G;
        double log_tail = log_next - std::log1p(-ratio);
        if (log_tail < log_sum + std::log(1e-15)) {
          log_sum = log_add(log_sum, log_tail);
          break;
        }
      }
      if (l > 2000000)
        throw MdmError(ErrorKind::Divergence,
                       "decay sum bound fails to close; increase alpha or "
                       "supply a label cap");
    }
    double s = std::pow(mu_, inv_a) * std::exp(log_sum);
    if (!std::isfinite(s) || s > 1e200)
      throw MdmError(ErrorKind::Divergence,
                     "decay sum bound overflows; increase alpha or supply a "
                     "label cap");
    return s;
  }

  // unbounded product weights: S <= prod_j (1 + g_j), closed with an
  // exp(tail-sum) factor past a finite prefix
  const int prefix = 64;
  double log_s = 0.0;
  for (int j = 1; j <= prefix; ++j)
    log_s += std::log1p(std::pow(c0 * view->coord_weight(j), inv_a));
  double tail_sum = 0.0;
  if (form_ == ProductForm::Power) {
    double s_exp = p_ * inv_a;
    if (!(s_exp > 1.0))
      throw MdmError(ErrorKind::Divergence,
                     "decay sum diverges: alpha must stay below the weight "
                     "decay exponent (or supply a label cap)");
    tail_sum = std::pow(c0 * scale_, inv_a) * power_tail_upper(s_exp, prefix);
  } else {
    double rho = std::pow(p_, inv_a);
    tail_sum = std::pow(c0 * scale_, inv_a) *
               std::pow(rho, static_cast<double>(prefix + 1)) / (1.0 - rho);
  }
  return std::exp(log_s + tail_sum);
}

double BoundsModel::capped_subset_mass(double c0, int ell_max) const {
  if (kind_ == Kind::Custom)
    throw MdmError(ErrorKind::Config,
                   "custom bounds provide no capped subset mass");
  if (ell_max < 1)
    throw MdmError(ErrorKind::Config, "label cap must be at least 1");
  auto view = product_view();
  int cap = std::min(ell_max, view->max_label);
  std::vector<double> g(static_cast<std::size_t>(cap));
  for (int j = 1; j <= cap; ++j) g[j - 1] = c0 * view->coord_weight(j);
  return view->mu * subset_sum_capped(g, view->b1);
}

std::optional<BoundsModel::ProductView> BoundsModel::product_view() const {
  ProductView v;
  switch (kind_) {
    case Kind::Pod:
      v.mu = mu_;
      v.b1 = b1_;
      v.max_label = INT32_MAX;
      v.coord_weight = [kappa = kappa_, b2 = b2_](std::int32_t j) {
        return std::pow(kappa * j, -b2);
      };
      return v;
    case Kind::Product:
      v.max_label = form_ == ProductForm::Explicit
                        ? static_cast<std::int32_t>(weights_.size())
                        : INT32_MAX;
      v.coord_weight = [this](std::int32_t j) { return product_weight(j); };
      return v;
    case Kind::Custom:
      return std::nullopt;
  }
  return std::nullopt;
}

double BoundsModel::pod_b1() const {
  if (kind_ != Kind::Pod) throw MdmError(ErrorKind::Config, "not a pod bounds model");
  return b1_;
}
double BoundsModel::pod_b2() const {
  if (kind_ != Kind::Pod) throw MdmError(ErrorKind::Config, "not a pod bounds model");
  return b2_;
}
double BoundsModel::pod_mu() const {
  if (kind_ != Kind::Pod) throw MdmError(ErrorKind::Config, "not a pod bounds model");
  return mu_;
}
double BoundsModel::pod_kappa() const {
  if (kind_ != Kind::Pod) throw MdmError(ErrorKind::Config, "not a pod bounds model");
  return kappa_;
}

}  // namespace mdm
