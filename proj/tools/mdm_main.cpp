#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mdm/config.hpp"
#include "mdm/engine.hpp"
#include "mdm/errors.hpp"
#include "mdm/serialize.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::string csv_path;
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_csv) {
  cmd->add_option("--config", args.config_path, "JSON run configuration")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", args.out_path, "output file (default: stdout)");
  if (with_csv)
    cmd->add_option("--csv", args.csv_path, "also write per-subset CSV rows");
  cmd->add_option("--threads", args.threads, "worker threads (0: all cores)")
      ->check(CLI::Range(0, 1024));
  cmd->add_option("--seed", args.seed, "random-shift seed");
}

int resolve_threads(const CommonArgs& args, const mdm::RunConfig& cfg) {
  if (args.threads) return *args.threads;
  if (cfg.threads > 0) return cfg.threads;
  if (const char* env = std::getenv("MDM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0 || v > 1024)
      throw mdm::MdmError(mdm::ErrorKind::Config,
                          "MDM_THREADS must be an integer in [0, 1024]");
    return static_cast<int>(v);
  }
  return 0;
}

void emit(const std::string& out_path,
          const std::function<void(std::ostream&)>& write) {
  if (out_path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(out_path);
  if (!out)
    throw mdm::MdmError(mdm::ErrorKind::Config,
                        "cannot open output file '" + out_path + "'");
  write(out);
}

mdm::MdmRequest build_request(const CommonArgs& args,
                              const mdm::RunConfig& cfg) {
  mdm::MdmRequest req = mdm::request_from_config(cfg);
  req.threads = resolve_threads(args, cfg);
  if (args.seed) req.seed = *args.seed;
  return req;
}

int run_report_command(const CommonArgs& args, bool plan_only) {
  const mdm::RunConfig cfg = mdm::load_config(args.config_path);
  mdm::MdmRequest req = build_request(args, cfg);
  req.plan_only = plan_only;
  const mdm::MdmReport report = mdm::run_mdm(req);
  emit(args.out_path,
       [&](std::ostream& out) { out << mdm::report_to_json(report); });
  if (!args.csv_path.empty())
    emit(args.csv_path,
         [&](std::ostream& out) { mdm::write_subset_csv(report, out); });
  if (!report.success) {
    std::cerr << "run failed: " << report.failure << "\n";
    return 1;
  }
  return 0;
}

int cmd_sweep(const CommonArgs& args) {
  mdm::RunConfig cfg = mdm::load_config(args.config_path);
  const std::vector<double> eps = mdm::sweep_epsilons(cfg);
  if (!cfg.epsilon) cfg.epsilon = eps.front();
  mdm::MdmRequest base = build_request(args, cfg);
  const mdm::SweepResult sweep = mdm::run_sweep(base, eps);
  emit(args.out_path,
       [&](std::ostream& out) { mdm::write_sweep_csv(sweep, out); });
  bool all_ok = true;
  for (const auto& row : sweep.rows) {
    if (!row.report.success) {
      all_ok = false;
      std::cerr << "epsilon " << row.epsilon
                << " failed: " << row.report.failure << "\n";
    }
  }
  std::cerr << "cost slope " << sweep.cost_slope << ", error slope "
            << sweep.error_slope << "\n";
  return all_ok ? 0 : 1;
}

int cmd_oracle(const CommonArgs& args) {
  const mdm::RunConfig cfg = mdm::load_config(args.config_path);
  const mdm::ProblemSpec problem = mdm::problem_from_config(cfg);
  const mdm::ReferenceResult ref =
      mdm::reference_value(problem, cfg.oracle_tolerance);
  emit(args.out_path, [&](std::ostream& out) {
    out << mdm::reference_to_json(problem.name, cfg.oracle_tolerance, ref);
  });
  if (!ref.certified) {
    std::cerr << "reference not certified: " << ref.detail << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multivariate decomposition method for integrands of "
               "infinitely many variables"};
  app.require_subcommand(1);

  CommonArgs plan_args, integrate_args, sweep_args, oracle_args;
  CLI::App* plan = app.add_subcommand(
      "plan", "active set, budgets, and cost report without evaluating");
  add_common(plan, plan_args, true);
  CLI::App* integrate =
      app.add_subcommand("integrate", "full run with error certificate");
  add_common(integrate, integrate_args, true);
  CLI::App* sweep = app.add_subcommand(
      "sweep", "one run per epsilon, CSV rows and fitted slopes");
  add_common(sweep, sweep_args, false);
  CLI::App* oracle = app.add_subcommand(
      "oracle", "independent reference value with certified tolerance");
  add_common(oracle, oracle_args, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (plan->parsed()) return run_report_command(plan_args, true);
    if (integrate->parsed()) return run_report_command(integrate_args, false);
    if (sweep->parsed()) return cmd_sweep(sweep_args);
    return cmd_oracle(oracle_args);
  } catch (const mdm::MdmError& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case mdm::ErrorKind::Config:
      case mdm::ErrorKind::Domain:
      case mdm::ErrorKind::Refusal:
        return 2;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
