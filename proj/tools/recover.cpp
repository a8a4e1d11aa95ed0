#include "salsa/experiment.hpp"
#include "salsa/pgm.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>

namespace {

using namespace salsa;

std::vector<SolverKind> parse_solver_list(const std::string& text) {
  std::vector<SolverKind> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(parse_solver_kind(item));
  }
  if (out.empty()) throw std::invalid_argument("--solvers: empty list");
  return out;
}

void print_metrics(const ExperimentResult& r) {
  std::cout << to_string(r.solver) << ": iterations=" << r.metrics.iterations
            << " objective=" << format_metric(r.metrics.final_objective) << " mse=" << format_metric(r.metrics.mse);
  if (r.metrics.isnr_db) std::cout << " isnr_db=" << format_metric(*r.metrics.isnr_db);
  const double seconds = r.trace.rows.empty() ? 0.0 : r.trace.rows.back().seconds;
  std::cout << " seconds=" << seconds << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Image recovery benchmarks: SALSA, IST and FISTA"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string out_dir = "out";
  std::string timing = "on";

  auto* run = app.add_subcommand("run", "Solve one instance and write trace, estimate and metrics");
  std::string solver_name = "salsa";
  run->add_option("--spec", spec_path, "Experiment spec file")->required()->check(CLI::ExistingFile);
  run->add_option("--solver", solver_name, "salsa, ist or fista");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--timing", timing, "Write elapsed seconds to trace.csv (off gives reproducible bytes)")
      ->check(CLI::IsMember({"on", "off"}));

  auto* compare = app.add_subcommand("compare", "Run SALSA, then baselines to SALSA's final objective");
  std::string solver_list = "salsa,ist,fista";
  int baseline_max_iters = 10000;
  compare->add_option("--spec", spec_path, "Experiment spec file")->required()->check(CLI::ExistingFile);
  compare->add_option("--solvers", solver_list, "Comma-separated solvers");
  compare->add_option("--out", out_dir, "Output directory (one subdirectory per solver)");
  compare->add_option("--baseline-max-iters", baseline_max_iters, "Iteration cap for IST/FISTA")
      ->check(CLI::PositiveNumber);
  compare->add_option("--timing", timing, "Write elapsed seconds to trace.csv")->check(CLI::IsMember({"on", "off"}));

  auto* tune = app.add_subcommand("tune-tau", "Golden-section search of tau for best ISNR");
  double tau_min = 1e-4;
  double tau_max = 10.0;
  int evals = 16;
  tune->add_option("--spec", spec_path, "Experiment spec file")->required()->check(CLI::ExistingFile);
  tune->add_option("--tau-min", tau_min, "Lower end of the search interval")->check(CLI::PositiveNumber);
  tune->add_option("--tau-max", tau_max, "Upper end of the search interval")->check(CLI::PositiveNumber);
  tune->add_option("--evals", evals, "Number of SALSA runs")->check(CLI::Range(3, 1000));

  auto* phantom = app.add_subcommand("phantom", "Write a Shepp-Logan phantom as 16-bit PGM");
  int size = 128;
  std::string phantom_out;
  phantom->add_option("--size", size, "Side length")->check(CLI::Range(2, 1 << 14));
  phantom->add_option("--out", phantom_out, "Output PGM path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    OutputOptions output;
    output.trace.include_timing = timing == "on";

    if (run->parsed()) {
      const Problem problem = build_problem(load_experiment_spec(spec_path));
      const ExperimentResult result = run_solver(problem, parse_solver_kind(solver_name));
      write_outputs(out_dir, problem, result, output);
      print_metrics(result);
    } else if (compare->parsed()) {
      const Problem problem = build_problem(load_experiment_spec(spec_path));
      const auto results = compare_solvers(problem, parse_solver_list(solver_list), baseline_max_iters);
      for (const auto& r : results) {
        write_outputs(std::filesystem::path(out_dir) / std::string(to_string(r.solver)), problem, r, output);
        print_metrics(r);
      }
    } else if (tune->parsed()) {
      const TuneResult result = tune_tau(load_experiment_spec(spec_path), tau_min, tau_max, evals);
      for (const auto& e : result.evaluations) {
        std::cout << "tau=" << format_metric(e.tau) << " score=" << format_metric(e.score) << '\n';
      }
      std::cout << "best_tau = " << format_metric(result.best_tau) << '\n';
      std::cout << "best_score = " << format_metric(result.best_score) << '\n';
    } else if (phantom->parsed()) {
      write_pgm16(phantom_out, shepp_logan(size, size));
    }
  } catch (const std::exception& e) {
    std::cerr << "recover: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
