#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rbfsbp/errors.hpp"
#include "rbfsbp/experiment.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"RBF summation-by-parts operators and SAT solvers"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  const std::vector<std::pair<std::string, std::string>> verbs = {
      {"build-operator", "construct an RBFSBP operator and compare it with golden matrices"},
      {"verify", "check the SBP properties of a stored or configured operator"},
      {"diagnose", "collocation quadrature diagnostic (residual and smallest weight)"},
      {"solve", "run an advection, advection-diffusion or 2D advection problem"},
      {"convergence", "error table of a solve over several K"},
  };
  for (const auto& [name, help] : verbs) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "experiment configuration (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory")->required();
  }
  CLI11_PARSE(app, argc, argv);
  const std::string verb = app.get_subcommands().front()->get_name();

  try {
    nlohmann::json config;
    {
      std::ifstream in(config_path);
      if (!in) throw rbfsbp::ConfigError("cannot read " + config_path);
      try {
        in >> config;
      } catch (const nlohmann::json::exception& e) {
        throw rbfsbp::ConfigError(config_path + ": " + e.what());
      }
    }
    const rbfsbp::RunResult result =
        rbfsbp::run_verb(verb, config, fs::path(config_path).parent_path(), out_dir);
    std::cout << verb << ": " << result.summary << '\n';
    for (const auto& p : result.artifacts) std::cout << "  wrote " << p.string() << '\n';
    return result.exit_code;
  } catch (const rbfsbp::ConfigError& e) {
    std::cerr << verb << ": configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << verb << ": " << e.what() << '\n';
    return 1;
  }
}
