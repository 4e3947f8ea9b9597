#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace mlwalk {

// Vertex labels are 1-based throughout the public API.
using Vertex = int;

// Undirected edge. Graph stores edges normalized so that u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge normalized() const { return u <= v ? *this : Edge{v, u}; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Neighbor sets B_x kept in ascending order, and the arc indexing built on
// them. Arc (x, f_x(r)) has index arc_begin(x) + r - 1, so arcs are laid out
// row-major in (x, y) order, which is also the iteration order of every
// per-vertex kernel.
class NeighborTable {
 public:
  NeighborTable() = default;

  int order() const { return static_cast<int>(offsets_.size()) - 1; }
  int degree(Vertex x) const {
    return static_cast<int>(offsets_[x] - offsets_[x - 1]);
  }
  std::span<const Vertex> neighbors(Vertex x) const {
    return {targets_.data() + offsets_[x - 1],
            static_cast<std::size_t>(degree(x))};
  }
  // f_x(r) for r in 1..d_x.
  Vertex label(Vertex x, int r) const;

  std::size_t arc_count() const { return targets_.size(); }
  std::size_t arc_begin(Vertex x) const { return offsets_[x - 1]; }
  std::optional<std::size_t> find_arc(Vertex x, Vertex y) const;
  // Throws NotAdjacent when (x, y) is not an edge.
  std::size_t arc_index(Vertex x, Vertex y) const;
  std::size_t reverse_arc(std::size_t arc) const { return reverse_[arc]; }
  Vertex arc_tail(std::size_t arc) const { return tails_[arc]; }
  Vertex arc_head(std::size_t arc) const { return targets_[arc]; }

  friend bool operator==(const NeighborTable&, const NeighborTable&) = default;

 private:
  friend class Graph;

  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> targets_;
  std::vector<Vertex> tails_;
  std::vector<std::size_t> reverse_;
};

// Finite undirected simple graph. Immutable; copies share storage.
class Graph {
 public:
  Graph();

  // Throws SelfLoop, DuplicateEdge, VertexOutOfRange, InvalidParameter (n < 1).
  static Graph build(int n, std::span<const Edge> edges);

  int order() const;
  std::size_t edge_count() const;
  bool adjacent(Vertex x, Vertex y) const;
  // Row-major n*n 0/1 matrix.
  std::span<const std::uint8_t> adjacency_matrix() const;
  // Sorted, normalized edge list; position in this list is the edge id.
  std::span<const Edge> edges() const;
  std::optional<std::size_t> edge_id(Vertex x, Vertex y) const;
  const NeighborTable& neighbors() const;
  int degree(Vertex x) const { return neighbors().degree(x); }
  int min_degree() const;
  bool connected() const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  struct Impl;
  explicit Graph(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

Graph build_graph(int n, std::span<const Edge> edges);
NeighborTable neighbor_table(const Graph& g);
// Reconstructs a graph from the incidence recorded in a neighbor table.
Graph graph_from_neighbors(const NeighborTable& table);

// Edge-list text format: "i j" per line, 1-based; '#' starts a comment line;
// an optional first "n <count>" line fixes the vertex count, otherwise
// n is the largest label seen.
Graph read_edge_list(std::istream& in);
Graph load_edge_list(const std::filesystem::path& path);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace mlwalk
