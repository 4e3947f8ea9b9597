#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mlwalk/analysis.hpp"
#include "mlwalk/coins.hpp"
#include "mlwalk/graph.hpp"
#include "mlwalk/series.hpp"

namespace mlwalk {

enum class NetworkKind { toy, multiplex, edge_list, multilayer_file };

struct NetworkSpec {
  std::string name;
  NetworkKind kind = NetworkKind::toy;
  // multiplex: layer generators "SF", "CP" or "STAR", coupled by identity.
  std::vector<std::string> layers;
  int layer_size = 50;
  int sf_attach = 2;
  // One per SF layer; derived from the experiment seed when empty.
  std::vector<std::uint64_t> sf_seeds;
  std::string path;  // edge_list / multilayer_file
  std::optional<int> steps;  // overrides the experiment's T

  friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

enum class StartKind { node, localized, phi1, phi2 };

enum class AnalysisKind { series, layer_prob, time_avg, heatmap, polya, final_dist, decoherence, period };
std::string_view to_string(AnalysisKind kind);

struct DecoherenceSpec {
  std::vector<Edge> edges;    // explicit breakable edges
  int random_edges = 0;       // extra breakable edges drawn at random
  std::string scope = "all";  // pool for random edges: intra | inter | all
  double p_break = 0.5;
  int trials = 1000;

  friend bool operator==(const DecoherenceSpec&, const DecoherenceSpec&) = default;
};

struct RunSpec {
  std::string name;
  WalkerKind walker = WalkerKind::quantum;
  CoinFamily coin = CoinFamily::fourier;
  StartKind start = StartKind::node;
  Vertex node = 1;
  Vertex coin_label = 0;  // localized only
  std::vector<AnalysisKind> analyses;
  std::vector<int> polya_grid;
  PolyaForm polya_form = PolyaForm::product;
  std::optional<DecoherenceSpec> decoherence;

  friend bool operator==(const RunSpec&, const RunSpec&) = default;
};

// Every run is executed on every network.
struct ExperimentConfig {
  std::string name = "experiment";
  int steps = 100;
  std::uint64_t seed = 1;
  std::string output;  // empty: <output root>/<name>
  std::vector<NetworkSpec> networks;
  std::vector<RunSpec> runs;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Sectioned key-value text: [experiment], [network NAME], [run NAME].
// JSON input (first non-blank character '{') is accepted too. Throws
// ConfigError with the offending section, key and line.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);
std::string to_text(const ExperimentConfig& config);
std::string to_json(const ExperimentConfig& config);

// FNV-1a 64 of the canonical text form.
std::uint64_t config_hash(const ExperimentConfig& config);

}  // namespace mlwalk
