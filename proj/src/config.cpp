#include "mlwalk/config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mlwalk/error.hpp"
#include "text_util.hpp"

namespace mlwalk {

std::string_view to_string(AnalysisKind kind) {
  switch (kind) {
    case AnalysisKind::series: return "series";
    case AnalysisKind::layer_prob: return "layer_prob";
    case AnalysisKind::time_avg: return "time_avg";
    case AnalysisKind::heatmap: return "heatmap";
    case AnalysisKind::polya: return "polya";
    case AnalysisKind::final_dist: return "final";
    case AnalysisKind::decoherence: return "decoherence";
    case AnalysisKind::period: return "period";
  }
  return "unknown";
}

namespace {

using nlohmann::json;

constexpr AnalysisKind kAllAnalyses[] = {
    AnalysisKind::series, AnalysisKind::layer_prob, AnalysisKind::time_avg,
    AnalysisKind::heatmap, AnalysisKind::polya, AnalysisKind::final_dist,
    AnalysisKind::decoherence, AnalysisKind::period};

std::string_view to_string(NetworkKind kind) {
  switch (kind) {
    case NetworkKind::toy: return "toy";
    case NetworkKind::multiplex: return "multiplex";
    case NetworkKind::edge_list: return "edges";
    case NetworkKind::multilayer_file: return "multilayer";
  }
  return "unknown";
}

std::string_view to_string(StartKind kind) {
  switch (kind) {
    case StartKind::node: return "node";
    case StartKind::localized: return "localized";
    case StartKind::phi1: return "phi1";
    case StartKind::phi2: return "phi2";
  }
  return "unknown";
}

// One key = value entry with its source line (0 for JSON input).
struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

struct Section {
  std::string kind;  // experiment | network | run
  std::string name;
  int line = 0;
  std::vector<Entry> entries;
};

[[noreturn]] void fail(const Section& s, const Entry* e, const std::string& what) {
  std::string where = "[" + s.kind + (s.name.empty() ? "" : " " + s.name) + "]";
  if (e) {
    where += " " + e->key;
    if (e->line) where += " (line " + std::to_string(e->line) + ")";
  } else if (s.line) {
    where += " (line " + std::to_string(s.line) + ")";
  }
  throw Error(ErrorCode::ConfigError, where + ": " + what);
}

template <typename Int>
Int as_int(const Section& s, const Entry& e) {
  const auto v = detail::parse_int<Int>(e.value);
  if (!v) fail(s, &e, "expected an integer, got '" + e.value + "'");
  return *v;
}

double as_double(const Section& s, const Entry& e) {
  const auto v = detail::parse_double(e.value);
  if (!v) fail(s, &e, "expected a number, got '" + e.value + "'");
  return *v;
}

std::vector<std::string> as_list(const Entry& e) {
  std::vector<std::string> out;
  if (detail::trim(e.value).empty()) return out;
  for (auto item : detail::split(e.value, ',')) out.emplace_back(item);
  return out;
}

Edge as_edge(const Section& s, const Entry& e, std::string_view item) {
  const auto parts = detail::split(item, '-');
  if (parts.size() == 2) {
    const auto u = detail::parse_int<int>(parts[0]);
    const auto v = detail::parse_int<int>(parts[1]);
    if (u && v) return {*u, *v};
  }
  fail(s, &e, "expected an edge 'u-v', got '" + std::string(item) + "'");
}

std::vector<Section> sections_from_text(std::string_view text) {
  std::vector<Section> sections;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#' || body.front() == ';') continue;
    if (body.front() == '[') {
      if (body.back() != ']') {
        throw Error(ErrorCode::ConfigError,
                    "line " + std::to_string(line_no) + ": unterminated section header");
      }
      const auto fields = detail::split_ws(body.substr(1, body.size() - 2));
      if (fields.empty() || fields.size() > 2) {
        throw Error(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": bad header");
      }
      Section s;
      s.kind = std::string(fields[0]);
      if (fields.size() == 2) s.name = std::string(fields[1]);
      s.line = line_no;
      sections.push_back(std::move(s));
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ConfigError,
                  "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    if (sections.empty()) {
      throw Error(ErrorCode::ConfigError,
                  "line " + std::to_string(line_no) + ": key outside any section");
    }
    sections.back().entries.push_back({std::string(detail::trim(body.substr(0, eq))),
                                       std::string(detail::trim(body.substr(eq + 1))),
                                       line_no});
  }
  return sections;
}

std::string json_scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    // [u, v] pairs are edges.
    if (v.size() == 2 && v[0].is_number_integer() && v[1].is_number_integer()) {
      return std::to_string(v[0].get<long>()) + "-" + std::to_string(v[1].get<long>());
    }
    std::string joined;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k) joined += ", ";
      joined += json_scalar(v[k]);
    }
    return joined;
  }
  return v.dump();
}

Section section_from_json(const std::string& kind, const json& obj, bool named) {
  if (!obj.is_object()) {
    throw Error(ErrorCode::ConfigError, "JSON '" + kind + "' entries must be objects");
  }
  Section s;
  s.kind = kind;
  for (const auto& [key, value] : obj.items()) {
    if (named && key == "name") {
      s.name = json_scalar(value);
      continue;
    }
    if (key == "break_edges" && value.is_array()) {
      // Always a list of edges, even with a single [u, v] entry.
      std::string joined;
      for (std::size_t k = 0; k < value.size(); ++k) {
        if (k) joined += ", ";
        joined += json_scalar(value[k]);
      }
      s.entries.push_back({key, joined, 0});
      continue;
    }
    s.entries.push_back({key, json_scalar(value), 0});
  }
  return s;
}

std::vector<Section> sections_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::ConfigError, std::string("invalid JSON: ") + ex.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ConfigError, "JSON config must be an object");
  std::vector<Section> sections;
  for (const auto& [key, value] : doc.items()) {
    if (key == "experiment") {
      sections.push_back(section_from_json("experiment", value, false));
    } else if (key == "networks" || key == "runs") {
      if (!value.is_array()) throw Error(ErrorCode::ConfigError, "'" + key + "' must be a list");
      for (const auto& item : value) {
        sections.push_back(section_from_json(key == "networks" ? "network" : "run", item, true));
      }
    } else {
      throw Error(ErrorCode::ConfigError, "unknown top-level key '" + key + "'");
    }
  }
  return sections;
}

void apply_experiment(ExperimentConfig& cfg, const Section& s) {
  for (const Entry& e : s.entries) {
    if (e.key == "name") cfg.name = e.value;
    else if (e.key == "steps") cfg.steps = as_int<int>(s, e);
    else if (e.key == "seed") cfg.seed = as_int<std::uint64_t>(s, e);
    else if (e.key == "output") cfg.output = e.value;
    else fail(s, &e, "unknown key");
  }
}

NetworkSpec parse_network(const Section& s) {
  NetworkSpec n;
  n.name = s.name;
  if (n.name.empty()) fail(s, nullptr, "network sections need a name");
  for (const Entry& e : s.entries) {
    if (e.key == "kind") {
      if (e.value == "toy") n.kind = NetworkKind::toy;
      else if (e.value == "multiplex") n.kind = NetworkKind::multiplex;
      else if (e.value == "edges") n.kind = NetworkKind::edge_list;
      else if (e.value == "multilayer") n.kind = NetworkKind::multilayer_file;
      else fail(s, &e, "expected toy | multiplex | edges | multilayer");
    } else if (e.key == "layers") {
      n.layers = as_list(e);
    } else if (e.key == "layer_size") {
      n.layer_size = as_int<int>(s, e);
    } else if (e.key == "sf_attach") {
      n.sf_attach = as_int<int>(s, e);
    } else if (e.key == "sf_seeds") {
      n.sf_seeds.clear();
      for (const auto& item : as_list(e)) {
        const auto v = detail::parse_int<std::uint64_t>(item);
        if (!v) fail(s, &e, "bad seed '" + item + "'");
        n.sf_seeds.push_back(*v);
      }
    } else if (e.key == "path") {
      n.path = e.value;
    } else if (e.key == "steps") {
      n.steps = as_int<int>(s, e);
    } else {
      fail(s, &e, "unknown key");
    }
  }
  return n;
}

RunSpec parse_run(const Section& s) {
  RunSpec r;
  r.name = s.name;
  if (r.name.empty()) fail(s, nullptr, "run sections need a name");
  auto decoherence = [&]() -> DecoherenceSpec& {
    if (!r.decoherence) r.decoherence.emplace();
    return *r.decoherence;
  };
  for (const Entry& e : s.entries) {
    if (e.key == "walker") {
      if (e.value == "quantum") r.walker = WalkerKind::quantum;
      else if (e.value == "classical") r.walker = WalkerKind::classical;
      else fail(s, &e, "expected quantum | classical");
    } else if (e.key == "coin") {
      if (e.value == "fourier") r.coin = CoinFamily::fourier;
      else if (e.value == "grover") r.coin = CoinFamily::grover;
      else fail(s, &e, "expected fourier | grover");
    } else if (e.key == "init") {
      if (e.value == "node") r.start = StartKind::node;
      else if (e.value == "localized") r.start = StartKind::localized;
      else if (e.value == "phi1") r.start = StartKind::phi1;
      else if (e.value == "phi2") r.start = StartKind::phi2;
      else fail(s, &e, "expected node | localized | phi1 | phi2");
    } else if (e.key == "node") {
      r.node = as_int<int>(s, e);
    } else if (e.key == "coin_label") {
      r.coin_label = as_int<int>(s, e);
    } else if (e.key == "analyses") {
      r.analyses.clear();
      for (const auto& item : as_list(e)) {
        bool found = false;
        for (AnalysisKind k : kAllAnalyses) {
          if (item == to_string(k)) {
            r.analyses.push_back(k);
            found = true;
          }
        }
        if (!found) fail(s, &e, "unknown analysis '" + item + "'");
      }
    } else if (e.key == "polya_grid") {
      r.polya_grid.clear();
      for (const auto& item : as_list(e)) {
        const auto v = detail::parse_int<int>(item);
        if (!v) fail(s, &e, "bad cutoff '" + item + "'");
        r.polya_grid.push_back(*v);
      }
    } else if (e.key == "polya_form") {
      if (e.value == "product") r.polya_form = PolyaForm::product;
      else if (e.value == "sum") r.polya_form = PolyaForm::sum;
      else fail(s, &e, "expected product | sum");
    } else if (e.key == "break_edges") {
      auto& d = decoherence();
      d.edges.clear();
      for (const auto& item : as_list(e)) d.edges.push_back(as_edge(s, e, item));
    } else if (e.key == "break_random") {
      decoherence().random_edges = as_int<int>(s, e);
    } else if (e.key == "break_scope") {
      if (e.value != "intra" && e.value != "inter" && e.value != "all") {
        fail(s, &e, "expected intra | inter | all");
      }
      decoherence().scope = e.value;
    } else if (e.key == "p_break") {
      decoherence().p_break = as_double(s, e);
    } else if (e.key == "trials") {
      decoherence().trials = as_int<int>(s, e);
    } else {
      fail(s, &e, "unknown key");
    }
  }
  return r;
}

ExperimentConfig from_sections(const std::vector<Section>& sections) {
  ExperimentConfig cfg;
  bool have_experiment = false;
  for (const Section& s : sections) {
    if (s.kind == "experiment") {
      if (have_experiment) fail(s, nullptr, "duplicate [experiment] section");
      have_experiment = true;
      apply_experiment(cfg, s);
    } else if (s.kind == "network") {
      cfg.networks.push_back(parse_network(s));
    } else if (s.kind == "run") {
      cfg.runs.push_back(parse_run(s));
    } else {
      fail(s, nullptr, "unknown section kind '" + s.kind + "'");
    }
  }
  return cfg;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T, typename F>
std::string join(const std::vector<T>& items, F&& fmt) {
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k) out += ", ";
    out += fmt(items[k]);
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  const auto body = detail::trim(text);
  if (!body.empty() && body.front() == '{') return from_sections(sections_from_json(body));
  return from_sections(sections_from_text(text));
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "[experiment]\n"
      << "name = " << cfg.name << '\n'
      << "steps = " << cfg.steps << '\n'
      << "seed = " << cfg.seed << '\n';
  if (!cfg.output.empty()) out << "output = " << cfg.output << '\n';
  for (const NetworkSpec& n : cfg.networks) {
    out << "\n[network " << n.name << "]\n"
        << "kind = " << to_string(n.kind) << '\n';
    if (n.kind == NetworkKind::multiplex) {
      out << "layers = " << join(n.layers, [](const std::string& s) { return s; }) << '\n'
          << "layer_size = " << n.layer_size << '\n'
          << "sf_attach = " << n.sf_attach << '\n';
      if (!n.sf_seeds.empty()) {
        out << "sf_seeds = "
            << join(n.sf_seeds, [](std::uint64_t v) { return std::to_string(v); }) << '\n';
      }
    }
    if (!n.path.empty()) out << "path = " << n.path << '\n';
    if (n.steps) out << "steps = " << *n.steps << '\n';
  }
  for (const RunSpec& r : cfg.runs) {
    out << "\n[run " << r.name << "]\n"
        << "walker = " << to_string(r.walker) << '\n';
    if (r.walker == WalkerKind::quantum) out << "coin = " << to_string(r.coin) << '\n';
    out << "init = " << to_string(r.start) << '\n'
        << "node = " << r.node << '\n';
    if (r.start == StartKind::localized) out << "coin_label = " << r.coin_label << '\n';
    out << "analyses = "
        << join(r.analyses, [](AnalysisKind k) { return std::string(to_string(k)); }) << '\n';
    if (!r.polya_grid.empty()) {
      out << "polya_grid = " << join(r.polya_grid, [](int v) { return std::to_string(v); })
          << '\n'
          << "polya_form = " << to_string(r.polya_form) << '\n';
    }
    if (r.decoherence) {
      const DecoherenceSpec& d = *r.decoherence;
      out << "break_edges = "
          << join(d.edges, [](const Edge& e) {
               return std::to_string(e.u) + "-" + std::to_string(e.v);
             })
          << '\n'
          << "break_random = " << d.random_edges << '\n'
          << "break_scope = " << d.scope << '\n'
          << "p_break = " << format_double(d.p_break) << '\n'
          << "trials = " << d.trials << '\n';
    }
  }
  return out.str();
}

std::string to_json(const ExperimentConfig& cfg) {
  json doc;
  doc["experiment"] = {{"name", cfg.name}, {"steps", cfg.steps}, {"seed", cfg.seed}};
  if (!cfg.output.empty()) doc["experiment"]["output"] = cfg.output;
  doc["networks"] = json::array();
  for (const NetworkSpec& n : cfg.networks) {
    json j = {{"name", n.name}, {"kind", std::string(to_string(n.kind))}};
    if (n.kind == NetworkKind::multiplex) {
      j["layers"] = n.layers;
      j["layer_size"] = n.layer_size;
      j["sf_attach"] = n.sf_attach;
      if (!n.sf_seeds.empty()) j["sf_seeds"] = n.sf_seeds;
    }
    if (!n.path.empty()) j["path"] = n.path;
    if (n.steps) j["steps"] = *n.steps;
    doc["networks"].push_back(j);
  }
  doc["runs"] = json::array();
  for (const RunSpec& r : cfg.runs) {
    json j = {{"name", r.name},
              {"walker", std::string(to_string(r.walker))},
              {"init", std::string(to_string(r.start))},
              {"node", r.node}};
    if (r.walker == WalkerKind::quantum) j["coin"] = std::string(to_string(r.coin));
    if (r.start == StartKind::localized) j["coin_label"] = r.coin_label;
    j["analyses"] = json::array();
    for (AnalysisKind k : r.analyses) j["analyses"].push_back(std::string(to_string(k)));
    if (!r.polya_grid.empty()) {
      j["polya_grid"] = r.polya_grid;
      j["polya_form"] = std::string(to_string(r.polya_form));
    }
    if (r.decoherence) {
      const DecoherenceSpec& d = *r.decoherence;
      j["break_edges"] = json::array();
      for (const Edge& e : d.edges) j["break_edges"].push_back({e.u, e.v});
      j["break_random"] = d.random_edges;
      j["break_scope"] = d.scope;
      j["p_break"] = d.p_break;
      j["trials"] = d.trials;
    }
    doc["runs"].push_back(j);
  }
  return doc.dump(2);
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_text(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace mlwalk
