// Command-line workbench: runs configuration-driven experiments around the
// logarithmic-Laplacian exterior-value problem and writes CSV/JSON artifacts.
//
// Exit codes: 0 = all asserted checks passed; 1 = a numerical check failed
// (or a runtime error occurred); 2 = configuration/schema violation.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "loglap/config.hpp"
#include "loglap/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "loglap: numerical workbench for the logarithmic Laplacian — forward "
      "solves, exterior measurement operators, and potential reconstruction"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int threads = 1;
  bool verbose = false;

  const std::vector<std::pair<std::string, std::string>> kinds = {
      {"assemble", "assemble a bilinear form and persist it as CSV"},
      {"solve", "solve the exterior-value problem for given data"},
      {"dnmap", "assemble the exterior measurement (DN) matrix"},
      {"identity", "check the integral identity linking two potentials"},
      {"monotone", "compare two measurement operators in the semidefinite order"},
      {"reconstruct", "blockwise potential reconstruction from a measurement target"},
      {"runge", "least-squares fit of exterior data toward an interior target"},
      {"localize", "build a localized-potential sequence"},
      {"spectrum", "interior spectrum and eigenvalue-condition check"},
      {"fraclimit", "fractional-family expansion error table"},
  };
  for (const auto& [name, desc] : kinds) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "JSON experiment configuration")
        ->required();
    sub->add_option("--out", out_dir, "output directory (overrides the config)");
    sub->add_option("--threads", threads, "worker threads for assembly")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--verbose", verbose, "print progress information");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string subcommand = app.get_subcommands().front()->get_name();
  try {
    const loglap::ExperimentConfig cfg = loglap::parse_config_file(config_path);
    if (loglap::experiment_kind_name(cfg.kind) != subcommand) {
      std::cerr << "configuration error at /experiment: config declares '"
                << loglap::experiment_kind_name(cfg.kind)
                << "' but the subcommand is '" << subcommand << "'\n";
      return 2;
    }
    loglap::RunOptions opt;
    opt.out_dir = out_dir;
    opt.threads = threads;
    opt.verbose = verbose;
    const loglap::RunOutcome outcome = loglap::run_experiment(cfg, opt);
    std::cout << outcome.detail << "\n";
    return outcome.passed ? 0 : 1;
  } catch (const loglap::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
