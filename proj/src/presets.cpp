#include "mlwalk/presets.hpp"

#include <algorithm>
#include <cctype>

namespace mlwalk {

namespace {

NetworkSpec toy() {
  NetworkSpec n;
  n.name = "toy";
  n.kind = NetworkKind::toy;
  return n;
}

std::vector<NetworkSpec> six_multiplexes() {
  const char* combos[][2] = {{"SF", "SF"}, {"SF", "CP"},   {"SF", "STAR"},
                             {"CP", "CP"}, {"CP", "STAR"}, {"STAR", "STAR"}};
  std::vector<NetworkSpec> out;
  for (const auto& c : combos) {
    NetworkSpec n;
    n.kind = NetworkKind::multiplex;
    n.layers = {c[0], c[1]};
    std::string name = std::string(c[0]) + "_" + c[1];
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    n.name = name;
    out.push_back(std::move(n));
  }
  return out;
}

RunSpec run(std::string name, WalkerKind walker, CoinFamily coin, StartKind start,
            std::vector<AnalysisKind> analyses) {
  RunSpec r;
  r.name = std::move(name);
  r.walker = walker;
  r.coin = coin;
  r.start = start;
  r.analyses = std::move(analyses);
  return r;
}

RunSpec classical(std::string name, std::vector<AnalysisKind> analyses) {
  return run(std::move(name), WalkerKind::classical, CoinFamily::fourier, StartKind::node,
             std::move(analyses));
}

RunSpec quantum(std::string name, CoinFamily coin, StartKind start,
                std::vector<AnalysisKind> analyses) {
  return run(std::move(name), WalkerKind::quantum, coin, start, std::move(analyses));
}

RunSpec localized(std::string name, Vertex x, Vertex c, std::vector<AnalysisKind> analyses) {
  RunSpec r = quantum(std::move(name), CoinFamily::fourier, StartKind::localized,
                      std::move(analyses));
  r.node = x;
  r.coin_label = c;
  return r;
}

ExperimentConfig experiment(std::string name, int steps) {
  ExperimentConfig cfg;
  cfg.name = std::move(name);
  cfg.steps = steps;
  cfg.seed = 1;
  return cfg;
}

std::vector<Preset> build_catalog() {
  using A = AnalysisKind;
  std::vector<Preset> out;

  {
    auto cfg = experiment("fig2", 100);
    cfg.networks = {toy()};
    cfg.runs = {classical("crw", {A::layer_prob}), localized("fourier_1_3", 1, 3, {A::layer_prob}),
                localized("fourier_1_5", 1, 5, {A::layer_prob})};
    out.push_back({"fig2", "toy model layer probabilities: CRW, Fourier |1>|3>, Fourier |1>|5>",
                   cfg});
  }
  {
    auto cfg = experiment("fig3", 100);
    cfg.networks = {toy()};
    cfg.runs = {classical("a_classical", {A::heatmap}),
                quantum("b_fourier_phi1", CoinFamily::fourier, StartKind::phi1, {A::heatmap}),
                quantum("c_grover_phi1", CoinFamily::grover, StartKind::phi1, {A::heatmap}),
                quantum("d_fourier_phi2", CoinFamily::fourier, StartKind::phi2, {A::heatmap}),
                quantum("e_grover_phi2", CoinFamily::grover, StartKind::phi2, {A::heatmap})};
    out.push_back({"fig3", "toy model heatmaps over all start nodes (a-e)", cfg});
  }
  {
    auto cfg = experiment("fig4", 200);
    cfg.networks = {toy()};
    cfg.runs = {classical("classical", {A::polya}),
                quantum("fourier", CoinFamily::fourier, StartKind::phi1, {A::polya}),
                quantum("grover", CoinFamily::grover, StartKind::phi1, {A::polya})};
    for (auto& r : cfg.runs) r.polya_grid = polya_grid(200, 5);
    out.push_back({"fig4", "toy model partial Polya curves, T_p in {1,5,...,200}", cfg});
  }
  {
    auto cfg = experiment("fig5", 100);
    cfg.networks = {toy()};
    RunSpec broken = localized("c_fourier_broken", 1, 2, {A::decoherence});
    DecoherenceSpec d;
    d.edges = {{1, 3}};
    d.p_break = 0.5;
    d.trials = 1000;
    broken.decoherence = d;
    cfg.runs = {classical("a_crw", {A::final_dist}),
                localized("b_fourier", 1, 2, {A::final_dist}), broken};
    out.push_back({"fig5", "toy model final distributions with broken-link decoherence on 1-3",
                   cfg});
  }
  {
    auto cfg = experiment("fig6", 100);
    cfg.networks = six_multiplexes();
    cfg.runs = {quantum("fourier", CoinFamily::fourier, StartKind::phi1, {A::layer_prob})};
    out.push_back({"fig6", "Fourier layer probabilities on six 100-node multiplexes", cfg});
  }
  {
    auto cfg = experiment("fig7", 100);
    cfg.networks = six_multiplexes();
    for (auto& n : cfg.networks) {
      if (n.name == "cp_cp" || n.name == "star_star") n.steps = 200;
    }
    cfg.runs = {quantum("grover", CoinFamily::grover, StartKind::phi1,
                        {A::layer_prob, A::period})};
    out.push_back({"fig7", "Grover layer probabilities on six multiplexes (CP-CP, STAR-STAR to 200)",
                   cfg});
  }
  {
    auto cfg = experiment("fig8", 100);
    cfg.networks = six_multiplexes();
    cfg.runs = {classical("classical", {A::polya}),
                quantum("fourier", CoinFamily::fourier, StartKind::phi1, {A::polya}),
                quantum("grover", CoinFamily::grover, StartKind::phi1, {A::polya})};
    for (auto& r : cfg.runs) r.polya_grid = polya_grid(100, 5);
    out.push_back({"fig8", "partial Polya curves on six multiplexes, T_p in {1,5,...,100}", cfg});
  }
  {
    auto cfg = experiment("appendix-c", 100);
    cfg.networks = six_multiplexes();
    cfg.runs = {classical("crw", {A::layer_prob})};
    out.push_back({"appendix-c", "classical layer probabilities on six multiplexes", cfg});
  }
  {
    auto cfg = experiment("multiplex-decoherence", 100);
    cfg.networks = six_multiplexes();
    RunSpec r = quantum("fourier_broken", CoinFamily::fourier, StartKind::phi1,
                        {A::decoherence});
    DecoherenceSpec d;
    d.random_edges = 10;
    d.scope = "all";
    d.p_break = 0.5;
    d.trials = 1000;
    r.decoherence = d;
    cfg.runs = {r};
    out.push_back({"multiplex-decoherence",
                   "Fourier walk with randomly chosen breakable edges on six multiplexes", cfg});
  }
  return out;
}

}  // namespace

const std::vector<Preset>& list_presets() {
  static const std::vector<Preset> catalog = build_catalog();
  return catalog;
}

const Preset* find_preset(std::string_view name) {
  for (const Preset& p : list_presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

ExperimentConfig apply_overrides(ExperimentConfig config, const PresetOverrides& overrides) {
  if (overrides.seed) config.seed = *overrides.seed;
  if (overrides.output) config.output = *overrides.output;
  if (overrides.steps) {
    const int steps = *overrides.steps;
    config.steps = steps;
    for (auto& n : config.networks) n.steps.reset();
    for (auto& r : config.runs) {
      std::erase_if(r.polya_grid, [steps](int t) { return t > steps; });
    }
  }
  if (overrides.trials) {
    for (auto& r : config.runs) {
      if (r.decoherence) r.decoherence->trials = *overrides.trials;
    }
  }
  return config;
}

}  // namespace mlwalk
