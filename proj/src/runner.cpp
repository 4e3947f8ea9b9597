#include "mlwalk/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>

#include "json.hpp"
#include "mlwalk/analysis.hpp"
#include "mlwalk/crw.hpp"
#include "mlwalk/dtqw.hpp"
#include "mlwalk/error.hpp"
#include "mlwalk/kernels.hpp"
#include "mlwalk/rng.hpp"

namespace mlwalk {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool has(const RunSpec& run, AnalysisKind kind) {
  return std::find(run.analyses.begin(), run.analyses.end(), kind) != run.analyses.end();
}

bool needs_series(const RunSpec& run) {
  for (AnalysisKind k : run.analyses) {
    if (k != AnalysisKind::heatmap && k != AnalysisKind::decoherence) return true;
  }
  return false;
}

std::string init_label(const RunSpec& run) {
  const std::string x = std::to_string(run.node);
  if (run.walker == WalkerKind::classical) return "delta(" + x + ")";
  switch (run.start) {
    case StartKind::localized: return "localized(" + x + "," + std::to_string(run.coin_label) + ")";
    case StartKind::phi1: return "phi1(" + x + ")";
    case StartKind::phi2: return "phi2(" + x + ")";
    case StartKind::node: break;
  }
  return "node(" + x + ")";
}

BlockState initial_state(const Graph& g, const RunSpec& run) {
  switch (run.start) {
    case StartKind::localized: return init_localized(g, run.node, run.coin_label);
    case StartKind::phi2: return init_phi2(g, run.node);
    default: return init_phi1(g, run.node);
  }
}

std::vector<Edge> breakable_pool(const BuiltNetwork& b, const std::string& scope) {
  const MultilayerNetwork& net = b.net;
  std::vector<Edge> pool;
  if (scope == "all") {
    const auto edges = net.supra().edges();
    pool.assign(edges.begin(), edges.end());
    return pool;
  }
  if (scope == "intra") {
    for (int a = 1; a <= net.layer_count(); ++a) {
      for (const Edge& e : net.layer(a).edges()) {
        pool.push_back(Edge{net.global_label(a, e.u), net.global_label(a, e.v)}.normalized());
      }
    }
  } else {
    for (const auto& [key, edges] : net.interlayer()) {
      for (const Edge& e : edges) {
        pool.push_back(
            Edge{net.global_label(key.first, e.u), net.global_label(key.second, e.v)}.normalized());
      }
    }
  }
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::uint64_t stream_of(const std::string& network, const std::string& run, std::string_view tag) {
  return fnv1a(network + "/" + run + "/" + std::string(tag));
}

BrokenLinkPolicy make_policy(const BuiltNetwork& b, const RunSpec& run,
                             const ExperimentConfig& cfg) {
  const DecoherenceSpec& d = *run.decoherence;
  std::set<Edge> chosen;
  for (const Edge& e : d.edges) chosen.insert(e.normalized());
  if (d.random_edges > 0) {
    std::vector<Edge> pool;
    for (const Edge& e : breakable_pool(b, d.scope)) {
      if (!chosen.contains(e)) pool.push_back(e);
    }
    Rng rng(derive_seed(cfg.seed, stream_of(b.name, run.name, "edges")));
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(d.random_edges), pool.size());
    for (std::size_t i = 0; i < k; ++i) {
      const auto span = pool.size() - i;
      auto j = i + static_cast<std::size_t>(rng.uniform() * static_cast<double>(span));
      if (j >= pool.size()) j = pool.size() - 1;
      std::swap(pool[i], pool[j]);
      chosen.insert(pool[i]);
    }
  }
  BrokenLinkPolicy policy;
  policy.breakable.assign(chosen.begin(), chosen.end());
  policy.p_break = d.p_break;
  policy.seed = derive_seed(cfg.seed, stream_of(b.name, run.name, "breaks"));
  return policy;
}

void check_run(const RunSpec& run, const BuiltNetwork& b, std::vector<std::string>& problems) {
  const Graph& g = b.net.supra();
  const std::string where = "[run " + run.name + "] on network '" + b.name + "': ";
  auto problem = [&](const std::string& what) { problems.push_back(where + what); };

  if (g.min_degree() < 1) problem("network has isolated nodes");
  const bool sweep = has(run, AnalysisKind::heatmap);
  if (run.node < 1 || run.node > g.order()) {
    problem("node = " + std::to_string(run.node) + " is outside 1.." + std::to_string(g.order()));
    return;
  }
  if (run.walker == WalkerKind::quantum) {
    if (run.start == StartKind::localized && !g.adjacent(run.node, run.coin_label)) {
      problem("coin_label = " + std::to_string(run.coin_label) + " is not a neighbor of node " +
              std::to_string(run.node));
    }
    if (run.start == StartKind::phi2 && g.min_degree() < 2) {
      problem("init = phi2 needs every node to have degree >= 2");
    }
    if (sweep && run.start != StartKind::phi1 && run.start != StartKind::phi2) {
      problem("heatmap needs init = phi1 or phi2 for quantum walks");
    }
  }
  const int steps = b.steps;
  if (steps < 0) problem("steps must be >= 0");
  if ((sweep || has(run, AnalysisKind::time_avg)) && steps < 1) {
    problem("heatmap and time_avg need steps >= 1");
  }
  if (has(run, AnalysisKind::period) && steps + 1 < 16) {
    problem("period needs at least 16 samples (steps >= 15)");
  }
  if (has(run, AnalysisKind::polya)) {
    const auto& grid = run.polya_grid;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (grid[k] < 1) problem("polya_grid entries must be >= 1");
      if (k && grid[k] <= grid[k - 1]) problem("polya_grid must be strictly ascending");
    }
    if (!grid.empty() && grid.back() > steps) {
      problem("polya_grid reaches " + std::to_string(grid.back()) + " beyond steps = " +
              std::to_string(steps));
    }
    if (grid.empty() && steps < 1) problem("polya needs steps >= 1");
  }
  if (has(run, AnalysisKind::decoherence)) {
    if (run.walker != WalkerKind::quantum) problem("decoherence needs walker = quantum");
    if (!run.decoherence) problem("decoherence needs break_edges or break_random");
  }
  if (run.decoherence) {
    const DecoherenceSpec& d = *run.decoherence;
    if (!(d.p_break >= 0.0 && d.p_break <= 1.0)) problem("p_break must lie in [0, 1]");
    if (d.trials < 1) problem("trials must be >= 1");
    if (d.random_edges < 0) problem("break_random must be >= 0");
    for (const Edge& e : d.edges) {
      if (e.u < 1 || e.v < 1 || e.u > g.order() || e.v > g.order() || !g.adjacent(e.u, e.v)) {
        problem("break_edges entry " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                " is not an edge");
      }
    }
    if (d.random_edges > 0) {
      std::set<Edge> explicit_edges;
      for (const Edge& e : d.edges) explicit_edges.insert(e.normalized());
      std::size_t available = 0;
      for (const Edge& e : breakable_pool(b, d.scope)) available += !explicit_edges.contains(e);
      if (static_cast<std::size_t>(d.random_edges) > available) {
        problem("break_random = " + std::to_string(d.random_edges) + " exceeds the " +
                std::to_string(available) + " edges available in scope '" + d.scope + "'");
      }
    }
  }
}

struct Writer {
  fs::path dir;
  RunResult* result;

  std::string write(const std::string& file, const std::function<void(std::ostream&)>& body) {
    const fs::path path = dir / file;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    body(out);
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
    result->outputs.push_back(path);
    return file;
  }
};

void write_node_csv(std::ostream& out, const char* column, std::span<const double> values) {
  out << "node," << column << '\n';
  for (std::size_t k = 0; k < values.size(); ++k) out << k + 1 << ',' << fmt(values[k]) << '\n';
}

json network_record(const NetworkSpec& spec, const BuiltNetwork& b) {
  const Graph& g = b.net.supra();
  json rec = {{"name", b.name},
              {"nodes", g.order()},
              {"edges", g.edge_count()},
              {"layers", b.net.layer_count()},
              {"steps", b.steps},
              {"backend", choose_backend(g) == StateBackend::dense ? "dense" : "arc_list"}};
  if (spec.kind == NetworkKind::multiplex) {
    rec["generators"] = spec.layers;
    rec["layer_size"] = spec.layer_size;
    rec["sf_attach"] = spec.sf_attach;
    rec["sf_seeds"] = b.sf_seeds;
  }
  if (!spec.path.empty()) rec["path"] = spec.path;
  return rec;
}

json execute_run(const ExperimentConfig& cfg, const BuiltNetwork& b, const RunSpec& run,
                 Writer& writer, unsigned threads) {
  const Graph& g = b.net.supra();
  const int steps = b.steps;
  const std::string prefix = b.name + "_" + run.name + "_";
  const bool quantum = run.walker == WalkerKind::quantum;

  json rec = {{"network", b.name},
              {"run", run.name},
              {"walker", std::string(to_string(run.walker))},
              {"init", init_label(run)},
              {"steps", steps}};
  if (quantum) rec["coin"] = std::string(to_string(run.coin));
  json outputs = json::array();
  json results = json::object();

  std::optional<CoinAssignment> coins;
  if (quantum) coins = assign_coins(g, run.coin);

  ProbabilitySeries series;
  if (needs_series(run)) {
    if (quantum) {
      series = evolve(initial_state(g, run), *coins, steps);
    } else {
      series = crw_evolve(delta_distribution(g, run.node), unbiased_transition(g), steps);
    }
  }

  for (AnalysisKind kind : run.analyses) {
    const std::string stem = prefix + std::string(to_string(kind));
    switch (kind) {
      case AnalysisKind::series:
        outputs.push_back(
            writer.write(stem + ".csv", [&](std::ostream& o) { write_series_csv(o, series); }));
        break;
      case AnalysisKind::layer_prob: {
        const LayerSeries layers = layer_probability(series, b.net.membership());
        outputs.push_back(
            writer.write(stem + ".csv", [&](std::ostream& o) { write_layer_csv(o, layers); }));
        json last = json::array();
        for (int a = 1; a <= layers.layer_count(); ++a) last.push_back(layers.value(layers.length() - 1, a));
        results["layer_prob_final"] = last;
        break;
      }
      case AnalysisKind::time_avg: {
        const auto avg = time_avg_probability(series);
        outputs.push_back(writer.write(
            stem + ".csv", [&](std::ostream& o) { write_node_csv(o, "time_avg", avg); }));
        break;
      }
      case AnalysisKind::heatmap: {
        InitFamily family = InitFamily::classical;
        if (quantum) family = run.start == StartKind::phi2 ? InitFamily::phi2 : InitFamily::phi1;
        const Heatmap map = heatmap(g, run.coin, family, steps);
        outputs.push_back(
            writer.write(stem + ".csv", [&](std::ostream& o) { write_heatmap_csv(o, map); }));
        outputs.push_back(writer.write(stem + ".json", [&](std::ostream& o) {
          write_heatmap_metadata(o, map, cfg.seed);
        }));
        break;
      }
      case AnalysisKind::polya: {
        const std::vector<int> grid =
            run.polya_grid.empty() ? polya_grid(steps, 5) : run.polya_grid;
        const PolyaEstimate est = polya_curve(series, run.node, grid, run.polya_form);
        outputs.push_back(
            writer.write(stem + ".csv", [&](std::ostream& o) { write_polya_csv(o, est); }));
        results["polya"] = {{"form", std::string(to_string(est.form))},
                            {"origin", est.origin},
                            {"T_p", est.grid.back()},
                            {"value", est.values.back()}};
        break;
      }
      case AnalysisKind::final_dist: {
        const auto last = series.back();
        outputs.push_back(writer.write(
            stem + ".csv", [&](std::ostream& o) { write_node_csv(o, "probability", last); }));
        break;
      }
      case AnalysisKind::decoherence: {
        const BrokenLinkPolicy policy = make_policy(b, run, cfg);
        const BlockState init = initial_state(g, run);
        MonteCarloOptions mc_options;
        mc_options.threads = threads;
        const MonteCarloResult mc = broken_link_monte_carlo(
            init, *coins, policy, run.decoherence->trials, steps, mc_options);
        const auto unbroken = evolve_final(init, *coins, steps);
        const auto classical =
            crw_evolve(delta_distribution(g, run.node), unbiased_transition(g), steps);
        const auto reference = classical.back();
        outputs.push_back(writer.write(stem + ".csv", [&](std::ostream& o) {
          o << "node,mean,unbroken,classical\n";
          for (std::size_t k = 0; k < mc.mean.size(); ++k) {
            o << k + 1 << ',' << fmt(mc.mean[k]) << ',' << fmt(unbroken[k]) << ','
              << fmt(reference[k]) << '\n';
          }
        }));
        json edges = json::array();
        for (const Edge& e : policy.breakable) edges.push_back({e.u, e.v});
        results["decoherence"] = {{"breakable", edges},
                                  {"p_break", policy.p_break},
                                  {"trials", run.decoherence->trials},
                                  {"policy_seed", policy.seed},
                                  {"tv_mean_to_classical", total_variation(mc.mean, reference)},
                                  {"tv_unbroken_to_classical", total_variation(unbroken, reference)}};
        break;
      }
      case AnalysisKind::period: {
        const LayerSeries layers = layer_probability(series, b.net.membership());
        json periods = json::array();
        std::vector<PeriodEstimate> estimates;
        for (int a = 1; a <= layers.layer_count(); ++a) {
          const auto trace = layers.layer(a);
          estimates.push_back(dominant_period(trace));
          periods.push_back({{"layer", a},
                             {"period", estimates.back().period},
                             {"strength", estimates.back().strength},
                             {"periodic", estimates.back().periodic}});
        }
        outputs.push_back(writer.write(stem + ".csv", [&](std::ostream& o) {
          o << "layer,period,strength,periodic\n";
          for (std::size_t k = 0; k < estimates.size(); ++k) {
            o << k + 1 << ',' << estimates[k].period << ',' << fmt(estimates[k].strength) << ','
              << (estimates[k].periodic ? 1 : 0) << '\n';
          }
        }));
        results["period"] = periods;
        break;
      }
    }
  }
  rec["outputs"] = outputs;
  rec["results"] = results;
  return rec;
}

}  // namespace

BuiltNetwork build_network(const NetworkSpec& spec, const ExperimentConfig& config) {
  BuiltNetwork b;
  b.name = spec.name;
  b.steps = spec.steps.value_or(config.steps);
  switch (spec.kind) {
    case NetworkKind::toy:
      b.net = toy_multiplex();
      break;
    case NetworkKind::multiplex: {
      if (spec.layers.size() < 2) {
        throw Error(ErrorCode::ConfigError,
                    "[network " + spec.name + "] layers: a multiplex needs at least two layers");
      }
      const auto sf_count = std::count(spec.layers.begin(), spec.layers.end(), "SF");
      if (!spec.sf_seeds.empty() && static_cast<long>(spec.sf_seeds.size()) != sf_count) {
        throw Error(ErrorCode::ConfigError, "[network " + spec.name +
                                                "] sf_seeds: need one seed per SF layer");
      }
      if (spec.layer_size < 2) {
        throw Error(ErrorCode::ConfigError,
                    "[network " + spec.name + "] layer_size: must be >= 2");
      }
      std::vector<Graph> layers;
      std::size_t sf_index = 0;
      for (std::size_t k = 0; k < spec.layers.size(); ++k) {
        const std::string& kind = spec.layers[k];
        if (kind == "SF") {
          if (spec.sf_attach < 1 || spec.sf_attach >= spec.layer_size) {
            throw Error(ErrorCode::ConfigError,
                        "[network " + spec.name + "] sf_attach: must lie in 1..layer_size-1");
          }
          const std::uint64_t seed = spec.sf_seeds.empty()
                                         ? derive_seed(config.seed, fnv1a(spec.name) + k)
                                         : spec.sf_seeds[sf_index];
          ++sf_index;
          b.sf_seeds.push_back(seed);
          layers.push_back(gen_scale_free(spec.layer_size, spec.sf_attach, seed));
        } else if (kind == "CP") {
          layers.push_back(gen_complete(spec.layer_size));
        } else if (kind == "STAR") {
          layers.push_back(gen_star(spec.layer_size));
        } else {
          throw Error(ErrorCode::ConfigError, "[network " + spec.name + "] layers: unknown '" +
                                                  kind + "' (expected SF, CP or STAR)");
        }
      }
      b.net = build_multiplex(std::move(layers));
      break;
    }
    case NetworkKind::edge_list:
      b.net = build_general({load_edge_list(spec.path)}, {});
      break;
    case NetworkKind::multilayer_file:
      b.net = load_multilayer(spec.path);
      break;
  }
  return b;
}

std::vector<std::string> validate(const ExperimentConfig& config) {
  std::vector<std::string> problems;
  if (config.steps < 0) problems.push_back("[experiment] steps: must be >= 0");
  if (config.networks.empty()) problems.push_back("[experiment]: no networks defined");

  std::set<std::string> names;
  for (const NetworkSpec& n : config.networks) {
    if (!names.insert(n.name).second) problems.push_back("[network " + n.name + "]: duplicate name");
  }
  names.clear();
  for (const RunSpec& r : config.runs) {
    if (!names.insert(r.name).second) problems.push_back("[run " + r.name + "]: duplicate name");
    if (r.walker == WalkerKind::classical && r.start != StartKind::node) {
      problems.push_back("[run " + r.name + "] init: classical walks start from init = node");
    }
    if (r.walker == WalkerKind::quantum && r.start == StartKind::node) {
      problems.push_back("[run " + r.name +
                         "] init: quantum walks need localized, phi1 or phi2");
    }
  }

  for (const NetworkSpec& spec : config.networks) {
    BuiltNetwork built;
    try {
      built = build_network(spec, config);
    } catch (const Error& e) {
      problems.push_back(e.code() == ErrorCode::ConfigError
                             ? std::string(e.what())
                             : "[network " + spec.name + "]: " + e.what());
      continue;
    }
    for (const RunSpec& run : config.runs) check_run(run, built, problems);
  }
  return problems;
}

fs::path default_output_root() {
  if (const char* env = std::getenv("MLWALK_OUTPUT_ROOT"); env && *env) return env;
  return "runs";
}

RunResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  const auto problems = validate(config);
  if (!problems.empty()) {
    std::string message = "invalid config:";
    for (const auto& p : problems) message += "\n  " + p;
    throw Error(ErrorCode::ConfigError, message);
  }

  RunResult result;
  const fs::path root = options.output_root.empty() ? default_output_root() : options.output_root;
  result.directory = config.output.empty() ? root / config.name : fs::path(config.output);
  std::error_code ec;
  fs::create_directories(result.directory, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + result.directory.string());
  Writer writer{result.directory, &result};

  const std::string canonical = to_text(config);
  writer.write("config.txt", [&](std::ostream& o) { o << canonical; });

  json summary;
  summary["experiment"] = config.name;
  summary["version"] = kVersion;
  summary["config_hash"] = hex64(config_hash(config));
  summary["kernels"] = std::string(kernels::active().name);
  summary["seed"] = config.seed;
  summary["steps"] = config.steps;
  summary["config"] = canonical;
  summary["networks"] = json::array();
  summary["runs"] = json::array();

  for (const NetworkSpec& spec : config.networks) {
    const BuiltNetwork built = build_network(spec, config);
    summary["networks"].push_back(network_record(spec, built));
    for (const RunSpec& run : config.runs) {
      summary["runs"].push_back(execute_run(config, built, run, writer, options.threads));
    }
  }

  const fs::path final_path = result.directory / "summary.json";
  const fs::path tmp_path = result.directory / "summary.json.tmp";
  {
    std::ofstream out(tmp_path, std::ios::binary);
    out << summary.dump(2) << '\n';
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp_path.string());
  }
  fs::rename(tmp_path, final_path, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot finalize " + final_path.string());
  result.outputs.push_back(final_path);
  return result;
}

}  // namespace mlwalk
