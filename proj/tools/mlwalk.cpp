// mlwalk: run quantum and classical walk experiments on multilayer networks.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "mlwalk/config.hpp"
#include "mlwalk/error.hpp"
#include "mlwalk/kernels.hpp"
#include "mlwalk/presets.hpp"
#include "mlwalk/runner.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

int report_problems(const std::vector<std::string>& problems) {
  for (const auto& p : problems) std::cerr << "error: " << p << '\n';
  return problems.empty() ? kOk : kConfigError;
}

int execute(const mlwalk::ExperimentConfig& config, const mlwalk::RunOptions& options) {
  if (int rc = report_problems(mlwalk::validate(config)); rc != kOk) return rc;
  const auto result = mlwalk::run_experiment(config, options);
  std::cout << "wrote " << result.outputs.size() << " files to " << result.directory.string()
            << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-time quantum and classical walks on multilayer networks"};
  app.require_subcommand(1);

  std::string kernel_choice;
  unsigned threads = 0;
  std::string output_root;
  app.add_option("--kernels", kernel_choice, "Kernel set: scalar, avx2 or auto");
  app.add_option("--threads", threads, "Monte Carlo worker threads (0: all cores)");
  app.add_option("--root", output_root, "Output root (default $MLWALK_OUTPUT_ROOT or ./runs)");

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment config");
  run_cmd->add_option("config", config_path, "Config file (sectioned text or JSON)")->required();

  std::string preset_name;
  std::uint64_t seed = 0;
  std::string out_dir;
  int steps = 0;
  int trials = 0;
  auto* preset_cmd = app.add_subcommand("preset", "Run a built-in preset");
  preset_cmd->add_option("name", preset_name, "Preset name (see list-presets)")->required();
  auto* seed_opt = preset_cmd->add_option("--seed", seed, "Experiment seed");
  auto* out_opt = preset_cmd->add_option("--out", out_dir, "Output directory");
  auto* steps_opt = preset_cmd->add_option("--steps", steps, "Override every T")
                        ->check(CLI::NonNegativeNumber);
  auto* trials_opt = preset_cmd->add_option("--trials", trials, "Monte Carlo trials")
                         ->check(CLI::PositiveNumber);

  auto* list_cmd = app.add_subcommand("list-presets", "List built-in presets");

  auto* validate_cmd = app.add_subcommand("validate", "Check a config without running it");
  validate_cmd->add_option("config", config_path, "Config file")->required();

  bool as_json = false;
  auto* show_cmd = app.add_subcommand("show-preset", "Print a preset as a config file");
  show_cmd->add_option("name", preset_name, "Preset name")->required();
  show_cmd->add_flag("--json", as_json, "Print JSON instead of sectioned text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (!kernel_choice.empty() && !mlwalk::kernels::select(kernel_choice)) {
      std::cerr << "error: kernel set '" << kernel_choice << "' is not available\n";
      return kConfigError;
    }
    mlwalk::RunOptions options;
    options.output_root = output_root;
    options.threads = threads;

    if (*list_cmd) {
      for (const auto& p : mlwalk::list_presets()) {
        std::printf("%-22s %s\n", p.name.c_str(), p.description.c_str());
      }
      return kOk;
    }
    if (*show_cmd || *preset_cmd) {
      const mlwalk::Preset* preset = mlwalk::find_preset(preset_name);
      if (!preset) {
        std::cerr << "error: unknown preset '" << preset_name << "'\n";
        return kConfigError;
      }
      if (*show_cmd) {
        std::cout << (as_json ? mlwalk::to_json(preset->config) + "\n"
                              : mlwalk::to_text(preset->config));
        return kOk;
      }
      mlwalk::PresetOverrides overrides;
      if (*seed_opt) overrides.seed = seed;
      if (*out_opt) overrides.output = out_dir;
      if (*steps_opt) overrides.steps = steps;
      if (*trials_opt) overrides.trials = trials;
      return execute(mlwalk::apply_overrides(preset->config, overrides), options);
    }
    const auto config = mlwalk::load_config(config_path);
    if (*validate_cmd) {
      const int rc = report_problems(mlwalk::validate(config));
      if (rc == kOk) std::cout << "ok\n";
      return rc;
    }
    return execute(config, options);
  } catch (const mlwalk::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    const bool config_side =
        e.code() == mlwalk::ErrorCode::ConfigError || e.code() == mlwalk::ErrorCode::ParseError;
    return config_side ? kConfigError : kRuntimeError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}
