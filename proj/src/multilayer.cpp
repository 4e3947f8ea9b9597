#include "mlwalk/multilayer.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>

#include "mlwalk/error.hpp"
#include "mlwalk/rng.hpp"
#include "text_util.hpp"

namespace mlwalk {

LayerMembership::LayerMembership(std::vector<int> layer_of_node)
    : layer_of_(std::move(layer_of_node)) {
  for (int a : layer_of_) layers_ = std::max(layers_, a);
}

LayerMembership MultilayerNetwork::membership() const {
  std::vector<int> layer_of;
  layer_of.reserve(static_cast<std::size_t>(node_count()));
  for (int alpha = 1; alpha <= layer_count(); ++alpha) {
    layer_of.insert(layer_of.end(),
                    static_cast<std::size_t>(layer(alpha).order()), alpha);
  }
  return LayerMembership(std::move(layer_of));
}

MultilayerNetwork build_general(std::vector<Graph> layers,
                                InterlayerEdges interlayer) {
  if (layers.empty()) {
    throw Error(ErrorCode::InvalidParameter, "need at least one layer");
  }
  const int l = static_cast<int>(layers.size());

  InterlayerEdges normalized;
  for (auto& [key, edges] : interlayer) {
    auto [a, b] = key;
    if (a == b) {
      throw Error(ErrorCode::SelfPairing, "layer " + std::to_string(a));
    }
    if (a < 1 || a > l || b < 1 || b > l) {
      throw Error(ErrorCode::InvalidParameter,
                  "layer pair (" + std::to_string(a) + "," + std::to_string(b) +
                      ") with " + std::to_string(l) + " layers");
    }
    const bool swap = a > b;
    auto& target = normalized[swap ? LayerPair{b, a} : LayerPair{a, b}];
    for (Edge e : edges) {
      if (swap) e = Edge{e.v, e.u};
      const int na = layers[static_cast<std::size_t>(std::min(a, b) - 1)].order();
      const int nb = layers[static_cast<std::size_t>(std::max(a, b) - 1)].order();
      if (e.u < 1 || e.u > na || e.v < 1 || e.v > nb) {
        throw Error(ErrorCode::VertexOutOfRange,
                    "interlayer edge (" + std::to_string(e.u) + "," +
                        std::to_string(e.v) + ")");
      }
      target.push_back(e);
    }
  }
  for (auto& [key, edges] : normalized) std::sort(edges.begin(), edges.end());

  MultilayerNetwork net;
  net.offsets_.reserve(layers.size() + 1);
  net.offsets_.push_back(0);
  for (const Graph& g : layers) net.offsets_.push_back(net.offsets_.back() + g.order());
  net.layers_ = std::move(layers);
  net.interlayer_ = std::move(normalized);

  std::vector<Edge> all;
  for (int alpha = 1; alpha <= l; ++alpha) {
    const int off = net.offset(alpha);
    for (const Edge& e : net.layer(alpha).edges()) {
      all.push_back({off + e.u, off + e.v});
    }
  }
  for (const auto& [key, edges] : net.interlayer_) {
    for (const Edge& e : edges) {
      all.push_back({net.offset(key.first) + e.u, net.offset(key.second) + e.v});
    }
  }
  net.supra_ = Graph::build(net.node_count(), all);
  return net;
}

MultilayerNetwork build_multiplex(std::vector<Graph> layers) {
  if (layers.size() < 2) {
    throw Error(ErrorCode::InvalidParameter, "multiplex needs >= 2 layers");
  }
  const int n = layers.front().order();
  for (const Graph& g : layers) {
    if (g.order() != n) {
      throw Error(ErrorCode::LayerSizeMismatch,
                  std::to_string(g.order()) + " vs " + std::to_string(n));
    }
  }
  std::vector<Edge> identity;
  identity.reserve(static_cast<std::size_t>(n));
  for (Vertex i = 1; i <= n; ++i) identity.push_back({i, i});
  InterlayerEdges coupling;
  for (int a = 1; a < static_cast<int>(layers.size()); ++a) {
    coupling[{a, a + 1}] = identity;
  }
  return build_general(std::move(layers), std::move(coupling));
}

Graph supra_adjacency(const MultilayerNetwork& net) { return net.supra(); }

Graph gen_complete(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidParameter, "complete graph needs n >= 2");
  std::vector<Edge> edges;
  for (Vertex i = 1; i <= n; ++i)
    for (Vertex j = i + 1; j <= n; ++j) edges.push_back({i, j});
  return Graph::build(n, edges);
}

Graph gen_star(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidParameter, "star graph needs n >= 2");
  std::vector<Edge> edges;
  for (Vertex k = 2; k <= n; ++k) edges.push_back({1, k});
  return Graph::build(n, edges);
}

Graph gen_scale_free(int n, int m_attach, std::uint64_t seed) {
  if (n < 2 || m_attach < 1 || m_attach >= n) {
    throw Error(ErrorCode::InvalidParameter,
                "scale-free needs n >= 2 and 1 <= m_attach < n");
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  std::vector<long> degree(static_cast<std::size_t>(n) + 1, 0);
  const int core = m_attach + 1;
  for (Vertex i = 1; i <= core; ++i) {
    for (Vertex j = i + 1; j <= core; ++j) {
      edges.push_back({i, j});
      ++degree[i];
      ++degree[j];
    }
  }
  std::vector<char> chosen(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Vertex> targets;
  for (Vertex v = core + 1; v <= n; ++v) {
    targets.clear();
    long total = 0;
    for (Vertex u = 1; u < v; ++u) total += degree[u];
    for (int k = 0; k < m_attach; ++k) {
      // Roulette over existing, not yet chosen nodes.
      const double pick = rng.uniform() * static_cast<double>(total);
      double acc = 0.0;
      Vertex hit = 0;
      for (Vertex u = 1; u < v; ++u) {
        if (chosen[u]) continue;
        hit = u;
        acc += static_cast<double>(degree[u]);
        if (pick < acc) break;
      }
      chosen[hit] = 1;
      total -= degree[hit];
      targets.push_back(hit);
    }
    for (Vertex u : targets) {
      chosen[u] = 0;
      edges.push_back({u, v});
      ++degree[u];
      ++degree[v];
    }
  }
  return Graph::build(n, edges);
}

MultilayerNetwork toy_multiplex() {
  const std::vector<Edge> cycle{{1, 2}, {2, 3}, {3, 4}, {1, 4}};
  return build_multiplex({gen_complete(4), Graph::build(4, cycle)});
}

namespace {

struct LayerDraft {
  std::optional<int> declared;
  int max_label = 0;
  std::vector<Edge> edges;
};

[[noreturn]] void parse_fail(int line_no, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

MultilayerNetwork read_multilayer(std::istream& in) {
  std::map<int, LayerDraft> layers;
  InterlayerEdges interlayer;
  bool multiplex = false;
  enum class Section { None, Layer, Interlayer } section = Section::None;
  int current_layer = 0;
  LayerPair current_pair{0, 0};

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    if (body.front() == '[') {
      if (body.back() != ']') parse_fail(line_no, "unterminated section header");
      const auto fields = detail::split_ws(body.substr(1, body.size() - 2));
      if (fields.size() == 2 && fields[0] == "layer") {
        const auto k = detail::parse_int<int>(fields[1]);
        if (!k || *k < 1) parse_fail(line_no, "bad layer index");
        if (layers.count(*k)) parse_fail(line_no, "layer declared twice");
        current_layer = *k;
        layers[*k];
        section = Section::Layer;
      } else if (fields.size() == 3 && fields[0] == "interlayer") {
        const auto a = detail::parse_int<int>(fields[1]);
        const auto b = detail::parse_int<int>(fields[2]);
        if (!a || !b) parse_fail(line_no, "bad interlayer indices");
        current_pair = {*a, *b};
        interlayer[current_pair];
        section = Section::Interlayer;
      } else {
        parse_fail(line_no, "unknown section");
      }
      continue;
    }
    const auto fields = detail::split_ws(body);
    if (section == Section::None) {
      if (fields.size() == 1 && fields[0] == "multiplex") {
        multiplex = true;
        continue;
      }
      parse_fail(line_no, "content outside a section");
    }
    if (section == Section::Layer && fields.size() == 2 && fields[0] == "n") {
      auto& draft = layers[current_layer];
      draft.declared = detail::parse_int<int>(fields[1]);
      if (!draft.declared || *draft.declared < 1) parse_fail(line_no, "bad vertex count");
      continue;
    }
    if (fields.size() != 2) parse_fail(line_no, "expected \"i j\"");
    const auto u = detail::parse_int<int>(fields[0]);
    const auto v = detail::parse_int<int>(fields[1]);
    if (!u || !v) parse_fail(line_no, "non-integer label");
    if (section == Section::Layer) {
      auto& draft = layers[current_layer];
      draft.edges.push_back({*u, *v});
      draft.max_label = std::max({draft.max_label, *u, *v});
    } else {
      interlayer[current_pair].push_back({*u, *v});
    }
  }

  if (layers.empty()) throw Error(ErrorCode::ParseError, "no layers");
  std::vector<Graph> graphs;
  int expected = 1;
  for (auto& [k, draft] : layers) {
    if (k != expected++) {
      throw Error(ErrorCode::ParseError, "layer indices must be 1..l without gaps");
    }
    graphs.push_back(Graph::build(draft.declared.value_or(draft.max_label), draft.edges));
  }
  if (multiplex) {
    if (!interlayer.empty()) {
      throw Error(ErrorCode::ParseError,
                  "\"multiplex\" cannot be combined with [interlayer] sections");
    }
    return build_multiplex(std::move(graphs));
  }
  return build_general(std::move(graphs), std::move(interlayer));
}

MultilayerNetwork load_multilayer(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_multilayer(in);
}

void write_multilayer(std::ostream& out, const MultilayerNetwork& net) {
  for (int alpha = 1; alpha <= net.layer_count(); ++alpha) {
    out << "[layer " << alpha << "]\n";
    write_edge_list(out, net.layer(alpha));
  }
  for (const auto& [key, edges] : net.interlayer()) {
    out << "[interlayer " << key.first << ' ' << key.second << "]\n";
    for (const Edge& e : edges) out << e.u << ' ' << e.v << '\n';
  }
}

}  // namespace mlwalk
