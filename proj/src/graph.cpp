#include "mlwalk/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "mlwalk/error.hpp"
#include "text_util.hpp"

namespace mlwalk {

struct Graph::Impl {
  int n = 0;
  std::vector<std::uint8_t> adjacency;
  std::vector<Edge> edges;
  NeighborTable table;
};

Vertex NeighborTable::label(Vertex x, int r) const {
  if (x < 1 || x > order() || r < 1 || r > degree(x)) {
    throw Error(ErrorCode::VertexOutOfRange,
                "f_" + std::to_string(x) + "(" + std::to_string(r) + ")");
  }
  return targets_[offsets_[x - 1] + static_cast<std::size_t>(r - 1)];
}

std::optional<std::size_t> NeighborTable::find_arc(Vertex x, Vertex y) const {
  if (x < 1 || x > order()) return std::nullopt;
  const auto row = neighbors(x);
  const auto it = std::lower_bound(row.begin(), row.end(), y);
  if (it == row.end() || *it != y) return std::nullopt;
  return offsets_[x - 1] + static_cast<std::size_t>(it - row.begin());
}

std::size_t NeighborTable::arc_index(Vertex x, Vertex y) const {
  if (auto arc = find_arc(x, y)) return *arc;
  throw Error(ErrorCode::NotAdjacent,
              std::to_string(x) + " and " + std::to_string(y));
}

Graph::Graph() : impl_(std::make_shared<Impl>()) {}

Graph Graph::build(int n, std::span<const Edge> edges) {
  if (n < 1) {
    throw Error(ErrorCode::InvalidParameter, "graph needs n >= 1");
  }
  auto impl = std::make_shared<Impl>();
  impl->n = n;
  const auto un = static_cast<std::size_t>(n);
  impl->adjacency.assign(un * un, 0);
  impl->edges.reserve(edges.size());
  for (const Edge& raw : edges) {
    if (raw.u < 1 || raw.u > n || raw.v < 1 || raw.v > n) {
      throw Error(ErrorCode::VertexOutOfRange,
                  "edge (" + std::to_string(raw.u) + "," +
                      std::to_string(raw.v) + ") with n=" + std::to_string(n));
    }
    if (raw.u == raw.v) {
      throw Error(ErrorCode::SelfLoop, std::to_string(raw.u));
    }
    auto& cell = impl->adjacency[(raw.u - 1) * un + (raw.v - 1)];
    if (cell) {
      throw Error(ErrorCode::DuplicateEdge,
                  "(" + std::to_string(raw.u) + "," + std::to_string(raw.v) + ")");
    }
    cell = 1;
    impl->adjacency[(raw.v - 1) * un + (raw.u - 1)] = 1;
    impl->edges.push_back(raw.normalized());
  }
  std::sort(impl->edges.begin(), impl->edges.end());

  NeighborTable& t = impl->table;
  t.offsets_.assign(un + 1, 0);
  for (std::size_t x = 0; x < un; ++x) {
    std::size_t d = 0;
    for (std::size_t y = 0; y < un; ++y) d += impl->adjacency[x * un + y];
    t.offsets_[x + 1] = t.offsets_[x] + d;
  }
  t.targets_.reserve(t.offsets_.back());
  t.tails_.reserve(t.offsets_.back());
  for (std::size_t x = 0; x < un; ++x) {
    for (std::size_t y = 0; y < un; ++y) {
      if (impl->adjacency[x * un + y]) {
        t.targets_.push_back(static_cast<Vertex>(y + 1));
        t.tails_.push_back(static_cast<Vertex>(x + 1));
      }
    }
  }
  t.reverse_.resize(t.targets_.size());
  for (std::size_t a = 0; a < t.targets_.size(); ++a) {
    t.reverse_[a] = *t.find_arc(t.targets_[a], t.tails_[a]);
  }
  return Graph(std::move(impl));
}

int Graph::order() const { return impl_->n; }
std::size_t Graph::edge_count() const { return impl_->edges.size(); }

bool Graph::adjacent(Vertex x, Vertex y) const {
  const int n = impl_->n;
  if (x < 1 || x > n || y < 1 || y > n) return false;
  return impl_->adjacency[static_cast<std::size_t>(x - 1) * n + (y - 1)] != 0;
}

std::span<const std::uint8_t> Graph::adjacency_matrix() const {
  return impl_->adjacency;
}

std::span<const Edge> Graph::edges() const { return impl_->edges; }

std::optional<std::size_t> Graph::edge_id(Vertex x, Vertex y) const {
  const Edge key = Edge{x, y}.normalized();
  const auto it =
      std::lower_bound(impl_->edges.begin(), impl_->edges.end(), key);
  if (it == impl_->edges.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - impl_->edges.begin());
}

const NeighborTable& Graph::neighbors() const { return impl_->table; }

int Graph::min_degree() const {
  int best = order() > 0 ? degree(1) : 0;
  for (Vertex x = 2; x <= order(); ++x) best = std::min(best, degree(x));
  return best;
}

bool Graph::connected() const {
  const int n = order();
  if (n == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Vertex> stack{1};
  seen[1] = 1;
  int visited = 1;
  while (!stack.empty()) {
    const Vertex x = stack.back();
    stack.pop_back();
    for (Vertex y : neighbors().neighbors(x)) {
      if (!seen[y]) {
        seen[y] = 1;
        ++visited;
        stack.push_back(y);
      }
    }
  }
  return visited == n;
}

bool operator==(const Graph& a, const Graph& b) {
  return a.order() == b.order() && std::ranges::equal(a.edges(), b.edges());
}

Graph build_graph(int n, std::span<const Edge> edges) {
  return Graph::build(n, edges);
}

NeighborTable neighbor_table(const Graph& g) { return g.neighbors(); }

Graph graph_from_neighbors(const NeighborTable& table) {
  std::vector<Edge> edges;
  for (Vertex x = 1; x <= table.order(); ++x) {
    for (Vertex y : table.neighbors(x)) {
      if (x < y) edges.push_back({x, y});
    }
  }
  return Graph::build(table.order(), edges);
}

Graph read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::optional<int> declared;
  int max_label = 0;
  bool seen_content = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = detail::split_ws(body);
    const auto where = "line " + std::to_string(line_no);
    if (!seen_content && fields.size() == 2 && fields[0] == "n") {
      declared = detail::parse_int<int>(fields[1]);
      if (!declared || *declared < 1) {
        throw Error(ErrorCode::ParseError, where + ": bad vertex count");
      }
      seen_content = true;
      continue;
    }
    seen_content = true;
    if (fields.size() != 2) {
      throw Error(ErrorCode::ParseError, where + ": expected \"i j\"");
    }
    const auto u = detail::parse_int<int>(fields[0]);
    const auto v = detail::parse_int<int>(fields[1]);
    if (!u || !v) {
      throw Error(ErrorCode::ParseError, where + ": non-integer label");
    }
    edges.push_back({*u, *v});
    max_label = std::max({max_label, *u, *v});
  }
  const int n = declared.value_or(max_label);
  return Graph::build(n, edges);
}

Graph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "n " << g.order() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace mlwalk
