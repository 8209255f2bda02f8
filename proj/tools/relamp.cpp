// relamp: run a named scenario from a JSON config, or validate a config.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "relamp/cli.hpp"
#include "relamp/errors.hpp"

namespace {

using relamp::cli::ExitCode;

int code(ExitCode c) { return static_cast<int>(c); }

bool read_file(const std::string& path, std::string& text) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return false;
  std::ostringstream ss;
  ss << is.rdbuf();
  text = ss.str();
  return true;
}

// Reads and validates; prints problems and returns nullopt on failure.
std::optional<relamp::cli::ScenarioConfig> load(const std::string& path) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error [cli/config]: cannot read " << path << "\n";
    return std::nullopt;
  }
  auto result = relamp::cli::validate_config(text);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& issue : result.issues) std::cerr << "error [cli/" << issue.parameter << "]: " << issue.message << "\n";
  return result.config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relativistic probability amplitude toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;

  auto* validate = app.add_subcommand("validate", "check a config and echo it with defaults filled in");
  validate->add_option("--config", config_path, "JSON config")->required();

  std::vector<CLI::App*> runners;
  for (const char* name : {"spread", "dispersion", "currents-check", "oscillator", "boost"}) {
    auto* sub = app.add_subcommand(name, std::string("run the ") + name + " scenario");
    sub->add_option("--config", config_path, "JSON config")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "random seed (overrides the config)");
    runners.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : code(ExitCode::validation);
  }

  auto config = load(config_path);
  if (!config) return code(ExitCode::validation);

  if (validate->parsed()) {
    std::cout << config->normalized().dump(2) << "\n";
    return code(ExitCode::ok);
  }

  CLI::App* chosen = nullptr;
  for (auto* sub : runners) {
    if (sub->parsed()) chosen = sub;
  }
  if (chosen->get_name() != config->scenario) {
    std::cerr << "error [cli/scenario]: command '" << chosen->get_name() << "' does not match config scenario '"
              << config->scenario << "'\n";
    return code(ExitCode::validation);
  }
  if (chosen->count("--seed") > 0) config->seed = seed;
  if (out_dir.empty()) out_dir = config->out.value_or("relamp-out");

  try {
    const auto result = relamp::cli::run_scenario(*config);
    relamp::cli::write_outputs(result, out_dir);
    std::cout << "wrote " << result.tables.size() << " table(s) and summary.json to " << out_dir << " (config "
              << config->hash() << ")\n";
    return code(result.status);
  } catch (const relamp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return code(relamp::cli::exit_code_for(e));
  } catch (const std::exception& e) {
    std::cerr << "error [cli]: " << e.what() << "\n";
    return code(ExitCode::internal);
  }
}
