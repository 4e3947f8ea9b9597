#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mlwalk/config.hpp"

namespace mlwalk {

struct Preset {
  std::string name;
  std::string description;
  ExperimentConfig config;
};

const std::vector<Preset>& list_presets();
// nullptr when unknown.
const Preset* find_preset(std::string_view name);

struct PresetOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;
  // Replaces every T, including per-network overrides; Polya grids are cut at T.
  std::optional<int> steps;
  std::optional<int> trials;
};

ExperimentConfig apply_overrides(ExperimentConfig config, const PresetOverrides& overrides);

}  // namespace mlwalk
