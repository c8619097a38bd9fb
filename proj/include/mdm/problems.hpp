#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mdm/bounds.hpp"
#include "mdm/cost_model.hpp"
#include "mdm/decomposition.hpp"
#include "mdm/domain.hpp"
#include "mdm/subset.hpp"

namespace mdm {

enum class ProblemKind {
  MotivatingExample,
  QuadraticExample,
  HatCounterexample,
  PodSynthetic,
};

/// Coefficient sequence of the quadratic example, lambda_j for j >= 1.
class LambdaSequence {
 public:
  enum class Form { Geometric, Power, Explicit };

  static LambdaSequence geometric(double r);        // lambda_j = r^j
  static LambdaSequence power(double p);            // lambda_j = j^-p
  static LambdaSequence explicit_list(std::vector<double> values);

  double value(int j) const;
  double partial_sum(int d) const;
  double total() const;  // sum_{j>=1} lambda_j
  std::string describe() const;

  Form form() const { return form_; }
  double parameter() const { return param_; }
  const std::vector<double>& list() const { return values_; }

 private:
  Form form_ = Form::Geometric;
  double param_ = 0.5;
  std::vector<double> values_;
};

/// Label cap that certifies a truncation error for problems whose distant
/// coordinates can be dropped ahead of planning.
struct TruncationRule {
  int label_cap_for(double tol) const;
  double tail_bound(int ell) const;
  double constant = 0.0;  // tail_bound(ell) = constant * ell^-exponent
  double exponent = 0.0;
};

struct ProblemSpec {
  std::string name;
  ProblemKind kind = ProblemKind::QuadraticExample;
  DomainKind domain = DomainKind::SymmetricUnit;
  std::shared_ptr<const Integrand> integrand;
  BoundsModel bounds = BoundsModel::pod(0.0, 2.0, 1.0, 1.0);
  NormModel norm;
  CostModel cost = CostModel::constant();
  std::optional<double> closed_form_reference;
  std::optional<TruncationRule> truncation;
  bool refuses_mdm = false;  // decomposition breaks dominated convergence
};

ProblemSpec make_motivating_example();
ProblemSpec make_quadratic_example(const LambdaSequence& lambda);
ProblemSpec make_hat_counterexample();
/// Additive integrand whose singleton norms match the POD bound exactly:
/// sum_j a_j x_j^2 on the symmetric domain, sum_j a_j (1 - e^-x_j) on the
/// half line, with a_j chosen from (b1, b2, mu, kappa).
ProblemSpec make_pod_synthetic(DomainKind domain, double b1, double b2,
                               double mu, double kappa);

struct ReferenceResult {
  double value = 0.0;
  double tolerance = 0.0;  // certified bound on |value - I(f)|
  bool certified = false;
  std::string detail;
};

/// Reference integral by an independent route: closed forms where available,
/// otherwise truncation to a certified label cap plus one-dimensional
/// reduction integrated on two unrelated refinement ladders.
ReferenceResult reference_value(const ProblemSpec& problem, double tol);

/// integral of f(x_1..x_d, a, a, ...) over the first d coordinates, the tail
/// coordinates d+1, d+2, ... held at the given values (missing entries 0).
double anchored_truncated_integral(const ProblemSpec& problem, int d,
                                   const std::vector<double>& tail);

/// Exact integrals of the hat decomposition terms: 1 for k = 1, else 0.
double hat_integral(int k);
/// Hat decomposition term on {1..k} evaluated at x1.
double hat_term(int k, double x1);
/// sum_{u subseteq {1..d}} I_u of the hat decomposition; equals 1 for every
/// d >= 1 although the decomposed function is identically zero.
double hat_partial_sum(int d);

/// Norm of point evaluation at x_u on the symmetric-unit subset space,
/// prod_{j in u} |x_j|^{1/2}.
double point_eval_norm(const Subset& u, const std::vector<double>& x_u);

/// Closed-form mixed first derivative of the motivating integrand on the
/// coordinates of u, the others anchored.
double motivating_mixed_derivative(const Subset& u,
                                   const std::vector<double>& x_u);

/// Smallest label cap whose certified truncation error is at most tol for
/// the motivating example, and the bound itself.
int example_label_cap(double tol);
double example_truncation_bound(int ell);

ProblemSpec problem_by_name(const std::string& name);

}  // namespace mdm
