#include <gtest/gtest.h>

#include "mlwalk/config.hpp"
#include "mlwalk/presets.hpp"
#include "support.hpp"

using namespace mlwalk;
using mlwalk::testing::error_code_of;

namespace {

constexpr const char* kSample = R"(# sample
[experiment]
name = sample
steps = 40
seed = 9

[network toy]
kind = toy

[network pair]
kind = multiplex
layers = SF, STAR
layer_size = 20
sf_attach = 3
sf_seeds = 17
steps = 30

[run walk]
walker = quantum
coin = grover
init = localized
node = 1
coin_label = 3
analyses = layer_prob, polya, decoherence
polya_grid = 1, 5, 10
polya_form = sum
break_edges = 1-3, 2-4
break_random = 2
break_scope = inter
p_break = 0.25
trials = 50
)";

std::string config_error(std::string_view text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigError);
    return e.what();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return {};
}

}  // namespace

TEST(Config, ParsesSectionedText) {
  const ExperimentConfig cfg = parse_config(kSample);
  EXPECT_EQ(cfg.name, "sample");
  EXPECT_EQ(cfg.steps, 40);
  EXPECT_EQ(cfg.seed, 9u);
  ASSERT_EQ(cfg.networks.size(), 2u);
  EXPECT_EQ(cfg.networks[0].kind, NetworkKind::toy);
  const NetworkSpec& pair = cfg.networks[1];
  EXPECT_EQ(pair.layers, (std::vector<std::string>{"SF", "STAR"}));
  EXPECT_EQ(pair.layer_size, 20);
  EXPECT_EQ(pair.sf_attach, 3);
  EXPECT_EQ(pair.sf_seeds, (std::vector<std::uint64_t>{17}));
  EXPECT_EQ(pair.steps, 30);
  ASSERT_EQ(cfg.runs.size(), 1u);
  const RunSpec& run = cfg.runs[0];
  EXPECT_EQ(run.coin, CoinFamily::grover);
  EXPECT_EQ(run.start, StartKind::localized);
  EXPECT_EQ(run.coin_label, 3);
  EXPECT_EQ(run.analyses, (std::vector<AnalysisKind>{AnalysisKind::layer_prob, AnalysisKind::polya,
                                                      AnalysisKind::decoherence}));
  EXPECT_EQ(run.polya_grid, (std::vector<int>{1, 5, 10}));
  EXPECT_EQ(run.polya_form, PolyaForm::sum);
  ASSERT_TRUE(run.decoherence);
  EXPECT_EQ(run.decoherence->edges, (std::vector<Edge>{{1, 3}, {2, 4}}));
  EXPECT_EQ(run.decoherence->random_edges, 2);
  EXPECT_EQ(run.decoherence->scope, "inter");
  EXPECT_EQ(run.decoherence->p_break, 0.25);
  EXPECT_EQ(run.decoherence->trials, 50);
}

TEST(Config, TextAndJsonRoundTrip) {
  const ExperimentConfig cfg = parse_config(kSample);
  EXPECT_EQ(parse_config(to_text(cfg)), cfg);
  EXPECT_EQ(parse_config(to_json(cfg)), cfg);
  EXPECT_EQ(to_text(parse_config(to_json(cfg))), to_text(cfg));
  EXPECT_EQ(config_hash(parse_config(to_json(cfg))), config_hash(cfg));
  ExperimentConfig changed = cfg;
  changed.seed = 10;
  EXPECT_NE(config_hash(changed), config_hash(cfg));
}

TEST(Config, FieldLevelDiagnostics) {
  const std::string unknown = config_error("[experiment]\nsteps = 10\ncolour = red\n");
  EXPECT_NE(unknown.find("[experiment] colour"), std::string::npos) << unknown;
  EXPECT_NE(unknown.find("line 3"), std::string::npos) << unknown;

  const std::string steps = config_error("[experiment]\nsteps = ten\n");
  EXPECT_NE(steps.find("steps"), std::string::npos);
  EXPECT_NE(steps.find("line 2"), std::string::npos);

  const std::string coin = config_error("[run a]\ncoin = hadamard\n");
  EXPECT_NE(coin.find("[run a] coin"), std::string::npos) << coin;

  const std::string edge = config_error("[run a]\nbreak_edges = 1-3, 4\n");
  EXPECT_NE(edge.find("break_edges"), std::string::npos) << edge;

  config_error("[network]\nkind = toy\n");
  config_error("steps = 3\n");
  config_error("[experiment\n");
  config_error("[widget w]\n");
  config_error("{\"experiment\": {\"steps\": \"x\"}}");
  config_error("{\"nonsense\": 1}");
  config_error("{broken json");
}

TEST(Presets, CatalogContents) {
  const auto& presets = list_presets();
  for (const char* name :
       {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "appendix-c"}) {
    EXPECT_NE(find_preset(name), nullptr) << name;
  }
  EXPECT_EQ(find_preset("fig99"), nullptr);

  const ExperimentConfig& fig2 = find_preset("fig2")->config;
  EXPECT_EQ(fig2.steps, 100);
  ASSERT_EQ(fig2.runs.size(), 3u);
  EXPECT_EQ(fig2.runs[0].walker, WalkerKind::classical);
  EXPECT_EQ(fig2.runs[1].coin_label, 3);
  EXPECT_EQ(fig2.runs[2].coin_label, 5);

  EXPECT_EQ(find_preset("fig3")->config.runs.size(), 5u);

  const ExperimentConfig& fig4 = find_preset("fig4")->config;
  EXPECT_EQ(fig4.runs[0].polya_grid.front(), 1);
  EXPECT_EQ(fig4.runs[0].polya_grid[1], 5);
  EXPECT_EQ(fig4.runs[0].polya_grid.back(), 200);

  const ExperimentConfig& fig5 = find_preset("fig5")->config;
  const RunSpec& broken = fig5.runs.back();
  ASSERT_TRUE(broken.decoherence);
  EXPECT_EQ(broken.decoherence->trials, 1000);
  EXPECT_EQ(broken.decoherence->p_break, 0.5);
  EXPECT_EQ(broken.decoherence->edges, (std::vector<Edge>{{1, 3}}));
  EXPECT_EQ(broken.node, 1);
  EXPECT_EQ(broken.coin_label, 2);

  const ExperimentConfig& fig7 = find_preset("fig7")->config;
  ASSERT_EQ(fig7.networks.size(), 6u);
  for (const NetworkSpec& n : fig7.networks) {
    const bool extended = n.name == "cp_cp" || n.name == "star_star";
    EXPECT_EQ(n.steps.value_or(fig7.steps), extended ? 200 : 100) << n.name;
    EXPECT_EQ(n.layer_size, 50);
    EXPECT_EQ(n.sf_attach, 2);
  }
  EXPECT_EQ(find_preset("fig8")->config.runs[0].polya_grid.back(), 100);
  EXPECT_GE(presets.size(), 8u);
}

TEST(Presets, RoundTrip) {
  for (const Preset& p : list_presets()) {
    EXPECT_EQ(parse_config(to_text(p.config)), p.config) << p.name;
    EXPECT_EQ(parse_config(to_json(p.config)), p.config) << p.name;
  }
}

TEST(Presets, Overrides) {
  PresetOverrides o;
  o.seed = 5;
  o.steps = 12;
  o.trials = 3;
  o.output = "elsewhere";
  const auto fig4 = apply_overrides(find_preset("fig4")->config, o);
  EXPECT_EQ(fig4.seed, 5u);
  EXPECT_EQ(fig4.steps, 12);
  EXPECT_EQ(fig4.output, "elsewhere");
  EXPECT_EQ(fig4.runs[0].polya_grid, (std::vector<int>{1, 5, 10}));
  const auto fig7 = apply_overrides(find_preset("fig7")->config, o);
  for (const auto& n : fig7.networks) EXPECT_FALSE(n.steps);
  const auto fig5 = apply_overrides(find_preset("fig5")->config, o);
  EXPECT_EQ(fig5.runs.back().decoherence->trials, 3);
}
