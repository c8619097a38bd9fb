#include "mdm/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mdm/errors.hpp"
#include "mdm/math_util.hpp"

namespace mdm {

namespace {

constexpr double kExampleGap = 1.0 - std::numbers::pi * std::numbers::pi / 12.0;

class MotivatingIntegrand final : public Integrand {
 public:
  double eval_sparse(const std::vector<Coord>& coords) const override {
    CompensatedSum s;
    for (const auto& [j, x] : coords) {
      const double jd = static_cast<double>(j);
      s.add(x / (jd * jd));
    }
    return 1.0 / (1.0 + s.value());
  }
};

class QuadraticIntegrand final : public Integrand {
 public:
  explicit QuadraticIntegrand(LambdaSequence lambda)
      : lambda_(std::move(lambda)) {}

  double eval_sparse(const std::vector<Coord>& coords) const override {
    CompensatedSum s;
    for (const auto& [j, x] : coords) s.add(lambda_.value(j) * x * x);
    return s.value();
  }

  const LambdaSequence& lambda() const { return lambda_; }

 private:
  LambdaSequence lambda_;
};

class AdditiveSyntheticIntegrand final : public Integrand {
 public:
  AdditiveSyntheticIntegrand(DomainKind domain, double scale, double b2,
                             double kappa)
      : domain_(domain), scale_(scale), b2_(b2), kappa_(kappa) {}

  double coefficient(int j) const {
    return scale_ * std::pow(kappa_ * static_cast<double>(j), -b2_);
  }

  double eval_sparse(const std::vector<Coord>& coords) const override {
    CompensatedSum s;
    for (const auto& [j, x] : coords) {
      const double a = coefficient(j);
      s.add(domain_ == DomainKind::SymmetricUnit ? a * x * x
                                                 : a * -std::expm1(-x));
    }
    return s.value();
  }

 private:
  DomainKind domain_;
  double scale_;
  double b2_;
  double kappa_;
};

class ZeroIntegrand final : public Integrand {
 public:
  double eval_sparse(const std::vector<Coord>&) const override { return 0.0; }
};

double hat_bump(int k, double t) {
  const double scale = std::ldexp(1.0, k + 1);
  return scale * std::max(0.0, 1.0 - std::abs(scale * t - 1.0));
}

// log(sinh(u)/u), continuous through u = 0, overflow-free for large u
double log_sinch(double u) {
  u = std::abs(u);
  if (u < 1e-4) return std::log1p(u * u / 6.0 * (1.0 + u * u / 20.0));
  if (u < 20.0) return std::log(std::sinh(u) / u);
  return u - std::log(2.0 * u) + std::log1p(-std::exp(-2.0 * u));
}

// After truncating the motivating integrand to the first L coordinates and
// freezing an anchored offset c, the integral over [-1/2,1/2]^L collapses to
//   int_0^inf exp(-t(1+c)) prod_{j<=L} sinh(t/(2j^2)) / (t/(2j^2)) dt
// because 1/(1+s) = int_0^inf e^{-t(1+s)} dt and the coordinates factorize.
double reduced_integrand(double t, int dim, double offset) {
  double logv = -t * (1.0 + offset);
  for (int j = 1; j <= dim; ++j) {
    const double jd = static_cast<double>(j);
    logv += log_sinch(t / (2.0 * jd * jd));
  }
  return std::exp(logv);
}

constexpr double kReducedTailRate = kExampleGap;  // decay rate of the reduced integrand
constexpr double kReducedCutoff = 400.0;

double reduced_tail_bound(double cutoff) {
  return std::exp(-kReducedTailRate * cutoff) / kReducedTailRate;
}

double reduced_by_gauss(int dim, double offset, int panels) {
  static const auto gl = [] {
    std::pair<std::vector<double>, std::vector<double>> nw;
    gauss_legendre(24, nw.first, nw.second);
    return nw;
  }();
  const auto& [nodes, weights] = gl;
  const double width = kReducedCutoff / panels;
  CompensatedSum sum;
  for (int p = 0; p < panels; ++p) {
    const double a = p * width;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double t = a + 0.5 * width * (nodes[i] + 1.0);
      sum.add(0.5 * width * weights[i] * reduced_integrand(t, dim, offset));
    }
  }
  return sum.value();
}

double reduced_by_simpson(int dim, double offset, int intervals) {
  const double h = kReducedCutoff / intervals;
  CompensatedSum sum;
  sum.add(reduced_integrand(0.0, dim, offset));
  sum.add(reduced_integrand(kReducedCutoff, dim, offset));
  for (int i = 1; i < intervals; ++i)
    sum.add((i % 2 == 1 ? 4.0 : 2.0) * reduced_integrand(i * h, dim, offset));
  return sum.value() * h / 3.0;
}

struct LadderResult {
  double value = 0.0;
  double error = 0.0;  // last refinement step plus the cutoff tail
  bool converged = false;
};

template <typename Eval>
LadderResult run_ladder(const Eval& eval, int start, int max_size, double tol) {
  LadderResult out;
  double prev = eval(start);
  for (int size = 2 * start; size <= max_size; size *= 2) {
    const double cur = eval(size);
    out.value = cur;
    out.error = std::abs(cur - prev) + reduced_tail_bound(kReducedCutoff);
    if (out.error <= tol) {
      out.converged = true;
      return out;
    }
    prev = cur;
  }
  return out;
}

// both ladders must converge and agree before a value counts as certified
LadderResult truncated_reference(int dim, double tol, std::string* detail) {
  const auto gauss = run_ladder(
      [dim](int panels) { return reduced_by_gauss(dim, 0.0, panels); }, 32,
      1 << 14, tol / 2.0);
  const auto simpson = run_ladder(
      [dim](int n) { return reduced_by_simpson(dim, 0.0, n); }, 1 << 10,
      1 << 22, tol / 2.0);
  LadderResult out;
  out.value = gauss.value;
  const double disagreement = std::abs(gauss.value - simpson.value);
  out.error = std::max({gauss.error, simpson.error, disagreement});
  out.converged = gauss.converged && simpson.converged && disagreement <= tol;
  if (detail) {
    std::ostringstream os;
    os << "gauss/simpson ladders at " << dim << " coordinates disagree by "
       << disagreement;
    *detail = os.str();
  }
  return out;
}

}  // namespace

LambdaSequence LambdaSequence::geometric(double r) {
  if (!(r > 0.0) || r >= 1.0)
    throw MdmError(ErrorKind::Config,
                   "geometric coefficient ratio must lie in (0, 1)");
  LambdaSequence s;
  s.form_ = Form::Geometric;
  s.param_ = r;
  return s;
}

LambdaSequence LambdaSequence::power(double p) {
  if (!(p > 1.0))
    throw MdmError(ErrorKind::Config,
                   "power coefficients need exponent > 1 for a finite sum");
  LambdaSequence s;
  s.form_ = Form::Power;
  s.param_ = p;
  return s;
}

LambdaSequence LambdaSequence::explicit_list(std::vector<double> values) {
  if (values.empty())
    throw MdmError(ErrorKind::Config, "explicit coefficient list is empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i]))
      throw MdmError(ErrorKind::Config,
                     "explicit coefficients must be positive and finite");
    if (i > 0 && values[i] > values[i - 1])
      throw MdmError(ErrorKind::Config,
                     "explicit coefficients must be non-increasing");
  }
  LambdaSequence s;
  s.form_ = Form::Explicit;
  s.values_ = std::move(values);
  return s;
}

double LambdaSequence::value(int j) const {
  if (j < 1) throw MdmError(ErrorKind::Config, "coefficient labels start at 1");
  switch (form_) {
    case Form::Geometric:
      return std::pow(param_, j);
    case Form::Power:
      return std::pow(static_cast<double>(j), -param_);
    case Form::Explicit:
      return static_cast<std::size_t>(j) <= values_.size()
                 ? values_[static_cast<std::size_t>(j) - 1]
                 : 0.0;
  }
  return 0.0;
}

double LambdaSequence::partial_sum(int d) const {
  if (d < 0) throw MdmError(ErrorKind::Config, "partial sums need d >= 0");
  switch (form_) {
    case Form::Geometric:
      return param_ * (1.0 - std::pow(param_, d)) / (1.0 - param_);
    case Form::Power: {
      CompensatedSum s;
      for (int j = 1; j <= d; ++j) s.add(value(j));
      return s.value();
    }
    case Form::Explicit: {
      CompensatedSum s;
      const int n = std::min<int>(d, static_cast<int>(values_.size()));
      for (int j = 1; j <= n; ++j) s.add(values_[static_cast<std::size_t>(j) - 1]);
      return s.value();
    }
  }
  return 0.0;
}

double LambdaSequence::total() const {
  switch (form_) {
    case Form::Geometric:
      return param_ / (1.0 - param_);
    case Form::Power:
      return zeta_accurate(param_);
    case Form::Explicit:
      return partial_sum(static_cast<int>(values_.size()));
  }
  return 0.0;
}

std::string LambdaSequence::describe() const {
  std::ostringstream os;
  switch (form_) {
    case Form::Geometric:
      os << "geometric(" << param_ << ")";
      break;
    case Form::Power:
      os << "power(" << param_ << ")";
      break;
    case Form::Explicit:
      os << "explicit[" << values_.size() << "]";
      break;
  }
  return os.str();
}

int TruncationRule::label_cap_for(double tol) const {
  if (!(tol > 0.0))
    throw MdmError(ErrorKind::Config, "truncation tolerance must be positive");
  int ell = static_cast<int>(
      std::ceil(std::pow(constant / tol, 1.0 / exponent)));
  ell = std::max(ell, 1);
  while (tail_bound(ell) > tol) ++ell;
  while (ell > 1 && tail_bound(ell - 1) <= tol) --ell;
  return ell;
}

double TruncationRule::tail_bound(int ell) const {
  if (ell < 1) throw MdmError(ErrorKind::Config, "label caps start at 1");
  return constant * std::pow(static_cast<double>(ell), -exponent);
}

ProblemSpec make_motivating_example() {
  ProblemSpec p;
  p.name = "motivating";
  p.kind = ProblemKind::MotivatingExample;
  p.domain = DomainKind::SymmetricUnit;
  p.integrand = std::make_shared<MotivatingIntegrand>();
  p.bounds = BoundsModel::pod(1.0, 2.0, 1.0 / kExampleGap, std::sqrt(kExampleGap));
  p.norm = NormModel::for_domain(p.domain);
  p.cost = CostModel::constant();
  TruncationRule t;
  t.constant = 1.0 / (36.0 * kExampleGap * kExampleGap * kExampleGap);
  t.exponent = 3.0;
  p.truncation = t;
  return p;
}

ProblemSpec make_quadratic_example(const LambdaSequence& lambda) {
  ProblemSpec p;
  p.kind = ProblemKind::QuadraticExample;
  p.domain = DomainKind::SymmetricUnit;
  p.integrand = std::make_shared<QuadraticIntegrand>(lambda);
  std::ostringstream name;
  name << "quadratic-" << lambda.describe();
  p.name = name.str();
  // ||f_{j}|| is the L2 norm of d/dx lambda_j x^2 over [-1/2,1/2], which is
  // 2 lambda_j sqrt(1/12) = lambda_j / sqrt(3); terms with |u| >= 2 vanish,
  // so the product shape over-counts them harmlessly.
  const double scale = 1.0 / std::sqrt(3.0);
  switch (lambda.form()) {
    case LambdaSequence::Form::Geometric:
      p.bounds = BoundsModel::product_geometric(lambda.parameter(), scale);
      break;
    case LambdaSequence::Form::Power:
      p.bounds = BoundsModel::product_power(lambda.parameter(), scale);
      break;
    case LambdaSequence::Form::Explicit: {
      std::vector<double> w;
      w.reserve(lambda.list().size());
      for (double lam : lambda.list()) w.push_back(scale * lam);
      p.bounds = BoundsModel::product_explicit(std::move(w));
      break;
    }
  }
  p.norm = NormModel::for_domain(p.domain);
  p.cost = CostModel::constant();
  p.closed_form_reference = lambda.total() / 12.0;
  return p;
}

ProblemSpec make_hat_counterexample() {
  ProblemSpec p;
  p.name = "hat-counterexample";
  p.kind = ProblemKind::HatCounterexample;
  p.domain = DomainKind::SymmetricUnit;
  p.integrand = std::make_shared<ZeroIntegrand>();
  p.bounds = BoundsModel::product_geometric(0.5, 1.0);
  p.norm = NormModel::for_domain(p.domain);
  p.cost = CostModel::constant();
  p.closed_form_reference = 0.0;
  p.refuses_mdm = true;
  return p;
}

ProblemSpec make_pod_synthetic(DomainKind domain, double b1, double b2,
                               double mu, double kappa) {
  if (!(b2 > 1.0))
    throw MdmError(ErrorKind::Config,
                   "synthetic coefficients need b2 > 1 for a finite integral");
  ProblemSpec p;
  p.name = "pod-synthetic";
  p.kind = ProblemKind::PodSynthetic;
  p.domain = domain;
  // coefficients a_j = scale * (kappa j)^-b2 make the singleton norms equal
  // the bound mu (kappa j)^-b2 exactly on either domain
  const double scale =
      domain == DomainKind::SymmetricUnit ? std::sqrt(3.0) * mu : mu;
  p.integrand =
      std::make_shared<AdditiveSyntheticIntegrand>(domain, scale, b2, kappa);
  p.bounds = BoundsModel::pod(b1, b2, mu, kappa);
  p.norm = NormModel::for_domain(domain);
  p.cost = CostModel::constant();
  const double coeff_sum = scale * std::pow(kappa, -b2) * zeta_accurate(b2);
  p.closed_form_reference =
      domain == DomainKind::SymmetricUnit ? coeff_sum / 12.0 : coeff_sum / 2.0;
  return p;
}

ReferenceResult reference_value(const ProblemSpec& problem, double tol) {
  if (!(tol > 0.0))
    throw MdmError(ErrorKind::Config, "reference tolerance must be positive");
  ReferenceResult out;
  switch (problem.kind) {
    case ProblemKind::QuadraticExample:
    case ProblemKind::PodSynthetic: {
      if (!problem.closed_form_reference)
        throw MdmError(ErrorKind::Config, "problem lost its closed form");
      out.value = *problem.closed_form_reference;
      out.tolerance = std::abs(out.value) * 1e-14;
      out.certified = true;
      out.detail = "closed form";
      return out;
    }
    case ProblemKind::HatCounterexample:
      throw MdmError(ErrorKind::Refusal,
                     "the hat decomposition integrates the zero function; "
                     "its term sums are not a reference value");
    case ProblemKind::MotivatingExample:
      break;
  }

  const auto& rule = *problem.truncation;
  const int ell = rule.label_cap_for(tol / 2.0);
  std::string detail_hi;
  const auto lo = truncated_reference(ell, tol / 4.0, nullptr);
  const auto hi = truncated_reference(ell + 2, tol / 4.0, &detail_hi);
  const double truncation_gap = std::abs(hi.value - lo.value);

  out.value = hi.value;
  out.tolerance = rule.tail_bound(ell + 2) + hi.error;
  out.certified = lo.converged && hi.converged &&
                  truncation_gap + rule.tail_bound(ell) <= tol &&
                  out.tolerance <= tol;
  std::ostringstream os;
  os << "label caps " << ell << " and " << ell + 2 << " agree to "
     << truncation_gap << "; " << detail_hi;
  out.detail = os.str();
  if (!out.certified) out.tolerance = std::max(out.tolerance, truncation_gap);
  return out;
}

double anchored_truncated_integral(const ProblemSpec& problem, int d,
                                   const std::vector<double>& tail) {
  if (d < 0) throw MdmError(ErrorKind::Config, "dimension must be >= 0");
  for (double a : tail)
    if (!domain_contains(problem.domain, a))
      throw MdmError(ErrorKind::Domain, "tail value outside the domain");

  switch (problem.kind) {
    case ProblemKind::QuadraticExample: {
      const auto& f =
          dynamic_cast<const QuadraticIntegrand&>(*problem.integrand);
      // closed form: E sum_{j<=d} lambda_j + sum_{j>d} lambda_j a_j^2
      CompensatedSum s;
      s.add(f.lambda().partial_sum(d) / 12.0);
      for (std::size_t k = 0; k < tail.size(); ++k) {
        const int j = d + 1 + static_cast<int>(k);
        s.add(f.lambda().value(j) * tail[k] * tail[k]);
      }
      return s.value();
    }
    case ProblemKind::MotivatingExample: {
      CompensatedSum c;
      for (std::size_t k = 0; k < tail.size(); ++k) {
        const double j = static_cast<double>(d + 1 + static_cast<int>(k));
        c.add(tail[k] / (j * j));
      }
      if (d == 0) return 1.0 / (1.0 + c.value());
      const auto ladder = run_ladder(
          [d, &c](int panels) { return reduced_by_gauss(d, c.value(), panels); },
          32, 1 << 14, 1e-12);
      if (!ladder.converged)
        throw MdmError(ErrorKind::Evaluation,
                       "dense quadrature did not converge for this dimension");
      return ladder.value;
    }
    case ProblemKind::PodSynthetic: {
      const auto& f =
          dynamic_cast<const AdditiveSyntheticIntegrand&>(*problem.integrand);
      CompensatedSum s;
      const double moment =
          problem.domain == DomainKind::SymmetricUnit ? 1.0 / 12.0 : 0.5;
      for (int j = 1; j <= d; ++j) s.add(f.coefficient(j) * moment);
      for (std::size_t k = 0; k < tail.size(); ++k) {
        const int j = d + 1 + static_cast<int>(k);
        s.add(f.eval_sparse({{j, tail[k]}}));
      }
      return s.value();
    }
    case ProblemKind::HatCounterexample:
      return 0.0;  // the decomposed function is identically zero
  }
  throw MdmError(ErrorKind::Config, "unknown problem kind");
}

double hat_integral(int k) {
  if (k < 1) throw MdmError(ErrorKind::Config, "hat terms start at k = 1");
  return k == 1 ? 1.0 : 0.0;
}

double hat_term(int k, double x1) {
  if (k < 1) throw MdmError(ErrorKind::Config, "hat terms start at k = 1");
  if (k == 1) return hat_bump(1, x1);
  return hat_bump(k, x1) - hat_bump(k - 1, x1);
}

double hat_partial_sum(int d) {
  if (d < 0) throw MdmError(ErrorKind::Config, "partial sums need d >= 0");
  CompensatedSum s;
  for (int k = 1; k <= d; ++k) s.add(hat_integral(k));
  return s.value();
}

double point_eval_norm(const Subset& u, const std::vector<double>& x_u) {
  if (x_u.size() != static_cast<std::size_t>(u.card()))
    throw MdmError(ErrorKind::Config, "coordinate count must match the subset");
  double prod = 1.0;
  for (double x : x_u) prod *= std::sqrt(std::abs(x));
  return prod;
}

double motivating_mixed_derivative(const Subset& u,
                                   const std::vector<double>& x_u) {
  const auto& labels = u.labels();
  if (x_u.size() != labels.size())
    throw MdmError(ErrorKind::Config, "coordinate count must match the subset");
  CompensatedSum s;
  double log_prod = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double j = static_cast<double>(labels[i]);
    s.add(x_u[i] / (j * j));
    log_prod -= 2.0 * std::log(j);
  }
  const int card = u.card();
  const double sign = card % 2 == 0 ? 1.0 : -1.0;
  return sign * std::exp(log_factorial(card) + log_prod) /
         std::pow(1.0 + s.value(), card + 1);
}

int example_label_cap(double tol) {
  return make_motivating_example().truncation->label_cap_for(tol);
}

double example_truncation_bound(int ell) {
  return make_motivating_example().truncation->tail_bound(ell);
}

ProblemSpec problem_by_name(const std::string& name) {
  if (name == "motivating") return make_motivating_example();
  if (name == "quadratic") return make_quadratic_example(LambdaSequence::power(4.0));
  if (name == "hat-counterexample") return make_hat_counterexample();
  if (name == "pod-synthetic")
    return make_pod_synthetic(DomainKind::SymmetricUnit, 0.0, 2.0, 1.0, 1.0);
  throw MdmError(ErrorKind::Config, "unknown problem name: " + name);
}

}  // namespace mdm
