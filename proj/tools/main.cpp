#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cycles/errors.hpp"
#include "cycles/scenario.hpp"

namespace {

constexpr int kExitVerdictFail = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

int run(const std::string& config_path) {
  cycles::scenario::ScenarioConfig config = cycles::scenario::load_config(config_path);
  if (const char* override_dir = std::getenv("CYCLES_OUTPUT_DIR")) {
    config.output_dir = override_dir;
  }
  const cycles::scenario::RunReport report = cycles::scenario::run_scenario(config);
  std::cout << report.text();
  return report.pass() ? 0 : kExitVerdictFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cycles: batch scenario runner for the spacetime-cycles toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* run_cmd = app.add_subcommand("run", "run one scenario from a JSON config");
  run_cmd->add_option("config", config_path, "path to the scenario config")->required();

  CLI::App* list_cmd =
      app.add_subcommand("list", "list every scenario with its parameters");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list_cmd->parsed()) {
      std::cout << cycles::scenario::catalog_text();
      return 0;
    }
    return run(config_path);
  } catch (const cycles::ConfigError& e) {
    std::cerr << "error: validation: " << e.what() << "\n";
    return kExitValidation;
  } catch (const cycles::IoError& e) {
    std::cerr << "error: io: " << e.what() << "\n";
    return kExitIo;
  } catch (const cycles::Error& e) {
    std::cerr << "error: numerical: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return kExitNumerical;
  }
}
