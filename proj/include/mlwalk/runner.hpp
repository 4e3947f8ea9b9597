#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mlwalk/config.hpp"
#include "mlwalk/multilayer.hpp"

namespace mlwalk {

inline constexpr const char* kVersion = "0.1.0";

struct BuiltNetwork {
  std::string name;
  MultilayerNetwork net;
  std::vector<std::uint64_t> sf_seeds;  // as used, including derived ones
  int steps = 0;
};

// Builds one network of the experiment. SF layers without explicit seeds get
// derive_seed(config.seed, hash(network name) + layer index).
BuiltNetwork build_network(const NetworkSpec& spec, const ExperimentConfig& config);

// Problems found before any computation, one message per offending field.
// Empty when the config is runnable.
std::vector<std::string> validate(const ExperimentConfig& config);

struct RunOptions {
  std::filesystem::path output_root;  // empty: default_output_root()
  unsigned threads = 0;
};

struct RunResult {
  std::filesystem::path directory;
  std::vector<std::filesystem::path> outputs;  // data files, summary.json last
};

// $MLWALK_OUTPUT_ROOT, else "runs".
std::filesystem::path default_output_root();

// Throws ConfigError listing every validation problem; engine errors propagate.
// summary.json is written after all data files.
RunResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace mlwalk
