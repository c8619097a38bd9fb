#include "mdm/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mdm/errors.hpp"

namespace mdm {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& message) {
  throw MdmError(ErrorKind::Config, message);
}

void check_keys(const ordered_json& j, const std::string& where,
                const std::set<std::string>& allowed) {
  for (const auto& item : j.items())
    if (!allowed.contains(item.key()))
      bad("unknown key '" + item.key() + "' in " + where);
}

double as_number(const ordered_json& v, const std::string& where) {
  if (!v.is_number()) bad(where + " must be a number");
  return v.get<double>();
}

std::string as_string(const ordered_json& v, const std::string& where) {
  if (!v.is_string()) bad(where + " must be a string");
  return v.get<std::string>();
}

std::uint64_t as_count(const ordered_json& v, const std::string& where) {
  if (!v.is_number_unsigned()) bad(where + " must be a non-negative integer");
  return v.get<std::uint64_t>();
}

std::vector<double> as_number_list(const ordered_json& v,
                                   const std::string& where) {
  if (!v.is_array()) bad(where + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(as_number(x, where + " entries"));
  return out;
}

void parse_lambda(const ordered_json& j, RunConfig& c) {
  check_keys(j, "lambda", {"form", "parameter", "values"});
  if (j.contains("form")) c.lambda_form = as_string(j["form"], "lambda.form");
  if (c.lambda_form != "power" && c.lambda_form != "geometric" &&
      c.lambda_form != "explicit")
    bad("lambda.form must be power, geometric, or explicit");
  if (j.contains("parameter"))
    c.lambda_parameter = as_number(j["parameter"], "lambda.parameter");
  if (j.contains("values"))
    c.lambda_values = as_number_list(j["values"], "lambda.values");
  if (c.lambda_form == "explicit" && c.lambda_values.empty())
    bad("lambda.form explicit needs lambda.values");
}

void parse_pod(const ordered_json& j, RunConfig& c) {
  check_keys(j, "pod", {"domain", "b1", "b2", "mu", "kappa"});
  if (j.contains("domain")) c.pod_domain = as_string(j["domain"], "pod.domain");
  if (c.pod_domain != "symmetric-unit" && c.pod_domain != "half-line-exp")
    bad("pod.domain must be symmetric-unit or half-line-exp");
  if (j.contains("b1")) c.pod_b1 = as_number(j["b1"], "pod.b1");
  if (j.contains("b2")) c.pod_b2 = as_number(j["b2"], "pod.b2");
  if (j.contains("mu")) c.pod_mu = as_number(j["mu"], "pod.mu");
  if (j.contains("kappa")) c.pod_kappa = as_number(j["kappa"], "pod.kappa");
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const ordered_json::parse_error& e) {
    bad(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) bad("config must be a JSON object");
  check_keys(j, "config",
             {"problem", "lambda", "pod", "epsilon", "epsilon_list", "alpha",
              "backend", "path", "q", "seed", "threads", "shifts",
              "max_model_cost", "max_subsets", "node_budget",
              "oracle_tolerance"});

  RunConfig c;
  if (j.contains("problem")) c.problem = as_string(j["problem"], "problem");
  if (j.contains("lambda")) {
    if (!j["lambda"].is_object()) bad("lambda must be an object");
    parse_lambda(j["lambda"], c);
  }
  if (j.contains("pod")) {
    if (!j["pod"].is_object()) bad("pod must be an object");
    parse_pod(j["pod"], c);
  }
  if (j.contains("epsilon")) {
    c.epsilon = as_number(j["epsilon"], "epsilon");
    if (!(*c.epsilon > 0.0)) bad("epsilon must be positive");
  }
  if (j.contains("epsilon_list")) {
    c.epsilon_list = as_number_list(j["epsilon_list"], "epsilon_list");
    for (double e : c.epsilon_list)
      if (!(e > 0.0)) bad("epsilon_list entries must be positive");
  }
  if (j.contains("alpha")) c.alpha = as_number(j["alpha"], "alpha");
  if (j.contains("backend")) c.backend = as_string(j["backend"], "backend");
  backend_by_name(c.backend);
  if (j.contains("path")) {
    c.path = as_string(j["path"], "path");
    path_by_name(*c.path);
  }
  if (j.contains("q")) c.q = as_number(j["q"], "q");
  if (j.contains("seed")) c.seed = as_count(j["seed"], "seed");
  if (j.contains("threads")) {
    const auto t = as_count(j["threads"], "threads");
    if (t > 1024) bad("threads must be at most 1024");
    c.threads = static_cast<int>(t);
  }
  if (j.contains("shifts")) {
    const auto s = as_count(j["shifts"], "shifts");
    if (s < 2 || s > 4096 || s % 2 != 0)
      bad("shifts must be even, between 2 and 4096");
    c.shifts = static_cast<int>(s);
  }
  if (j.contains("max_model_cost")) {
    c.max_model_cost = as_number(j["max_model_cost"], "max_model_cost");
    if (!(c.max_model_cost > 0.0)) bad("max_model_cost must be positive");
  }
  if (j.contains("max_subsets"))
    c.max_subsets = as_count(j["max_subsets"], "max_subsets");
  if (j.contains("node_budget"))
    c.node_budget = as_count(j["node_budget"], "node_budget");
  if (j.contains("oracle_tolerance")) {
    c.oracle_tolerance = as_number(j["oracle_tolerance"], "oracle_tolerance");
    if (!(c.oracle_tolerance > 0.0)) bad("oracle_tolerance must be positive");
  }
  return c;
}

RunConfig load_config(const std::string& file_path) {
  std::ifstream in(file_path);
  if (!in) bad("cannot open config file '" + file_path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string config_to_json(const RunConfig& c, int indent) {
  ordered_json j;
  j["problem"] = c.problem;
  ordered_json lambda;
  lambda["form"] = c.lambda_form;
  lambda["parameter"] = c.lambda_parameter;
  if (!c.lambda_values.empty()) lambda["values"] = c.lambda_values;
  j["lambda"] = std::move(lambda);
  ordered_json pod;
  pod["domain"] = c.pod_domain;
  pod["b1"] = c.pod_b1;
  pod["b2"] = c.pod_b2;
  pod["mu"] = c.pod_mu;
  pod["kappa"] = c.pod_kappa;
  j["pod"] = std::move(pod);
  if (c.epsilon) j["epsilon"] = *c.epsilon;
  if (!c.epsilon_list.empty()) j["epsilon_list"] = c.epsilon_list;
  if (c.alpha) j["alpha"] = *c.alpha;
  j["backend"] = c.backend;
  if (c.path) j["path"] = *c.path;
  if (c.q) j["q"] = *c.q;
  j["seed"] = c.seed;
  j["threads"] = static_cast<std::uint64_t>(c.threads);
  j["shifts"] = static_cast<std::uint64_t>(c.shifts);
  j["max_model_cost"] = c.max_model_cost;
  j["max_subsets"] = c.max_subsets;
  j["node_budget"] = c.node_budget;
  j["oracle_tolerance"] = c.oracle_tolerance;
  return j.dump(indent) + "\n";
}

ProblemSpec problem_from_config(const RunConfig& c) {
  if (c.problem == "motivating") return make_motivating_example();
  if (c.problem == "quadratic") {
    if (c.lambda_form == "geometric")
      return make_quadratic_example(
          LambdaSequence::geometric(c.lambda_parameter));
    if (c.lambda_form == "explicit")
      return make_quadratic_example(
          LambdaSequence::explicit_list(c.lambda_values));
    return make_quadratic_example(LambdaSequence::power(c.lambda_parameter));
  }
  if (c.problem == "hat-counterexample") return make_hat_counterexample();
  if (c.problem == "pod-synthetic")
    return make_pod_synthetic(c.pod_domain == "half-line-exp"
                                  ? DomainKind::HalfLineExp
                                  : DomainKind::SymmetricUnit,
                              c.pod_b1, c.pod_b2, c.pod_mu, c.pod_kappa);
  bad("unknown problem '" + c.problem +
      "'; expected motivating, quadratic, hat-counterexample, or "
      "pod-synthetic");
}

MdmRequest request_from_config(const RunConfig& c) {
  MdmRequest req;
  req.problem = problem_from_config(c);
  if (c.epsilon)
    req.epsilon = *c.epsilon;
  else if (c.epsilon_list.size() == 1)
    req.epsilon = c.epsilon_list.front();
  else
    bad("this command needs a single epsilon; set the epsilon field");
  req.alpha = c.alpha;
  req.backend = backend_by_name(c.backend);
  if (c.path) req.path = path_by_name(*c.path);
  req.q = c.q;
  req.seed = c.seed;
  req.threads = c.threads;
  req.shifts = c.shifts;
  req.max_model_cost = c.max_model_cost;
  req.max_subsets = c.max_subsets;
  req.node_budget = c.node_budget;
  return req;
}

std::vector<double> sweep_epsilons(const RunConfig& c) {
  if (!c.epsilon_list.empty()) return c.epsilon_list;
  if (c.epsilon) return {*c.epsilon};
  bad("a sweep needs epsilon_list (or a single epsilon)");
}

}  // namespace mdm
