#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

#include "mlwalk/graph.hpp"

namespace mlwalk {

// Layer indices are 1-based. Interlayer keys are stored with first < second;
// an edge (i, j) under key (a, b) joins node i of layer a to node j of layer b.
using LayerPair = std::pair<int, int>;
using InterlayerEdges = std::map<LayerPair, std::vector<Edge>>;

// Global label -> layer index.
class LayerMembership {
 public:
  LayerMembership() = default;
  explicit LayerMembership(std::vector<int> layer_of_node);

  int node_count() const { return static_cast<int>(layer_of_.size()); }
  int layer_count() const { return layers_; }
  int layer_of(Vertex x) const { return layer_of_[x - 1]; }

  friend bool operator==(const LayerMembership&,
                         const LayerMembership&) = default;

 private:
  std::vector<int> layer_of_;
  int layers_ = 0;
};

class MultilayerNetwork {
 public:
  MultilayerNetwork() = default;

  int layer_count() const { return static_cast<int>(layers_.size()); }
  const std::vector<Graph>& layers() const { return layers_; }
  const Graph& layer(int alpha) const { return layers_[alpha - 1]; }
  const InterlayerEdges& interlayer() const { return interlayer_; }
  // Layer alpha occupies global labels offset(alpha)+1 .. offset(alpha)+n_alpha.
  int offset(int alpha) const { return offsets_[alpha - 1]; }
  int node_count() const { return offsets_.empty() ? 0 : offsets_.back(); }
  Vertex global_label(int alpha, Vertex local) const {
    return offset(alpha) + local;
  }

  LayerMembership membership() const;
  // Flattened supra-adjacency graph on all global labels.
  const Graph& supra() const { return supra_; }

 private:
  friend MultilayerNetwork build_general(std::vector<Graph>, InterlayerEdges);

  std::vector<Graph> layers_;
  InterlayerEdges interlayer_;
  std::vector<int> offsets_;
  Graph supra_;
};

// Identity coupling between adjacent layers in list order.
// Throws LayerSizeMismatch, InvalidParameter (fewer than two layers).
MultilayerNetwork build_multiplex(std::vector<Graph> layers);
// Throws VertexOutOfRange, SelfPairing, DuplicateEdge.
MultilayerNetwork build_general(std::vector<Graph> layers,
                                InterlayerEdges interlayer);
Graph supra_adjacency(const MultilayerNetwork& net);

Graph gen_complete(int n);
// Node 1 is the hub.
Graph gen_star(int n);
// Barabasi-Albert preferential attachment: complete seed graph on
// m_attach + 1 nodes, then each new node attaches to m_attach distinct
// existing nodes drawn with probability proportional to current degree.
Graph gen_scale_free(int n, int m_attach, std::uint64_t seed);

// The two-layer network of the toy model: K4 on top, the 4-cycle
// 1-2-3-4-1 on the bottom, identity coupling (global labels 1..8).
MultilayerNetwork toy_multiplex();

// Sectioned text format:
//   multiplex                 identity coupling of adjacent layers
//   [layer k]                 followed by optional "n <count>" and "i j" lines
//   [interlayer a b]          followed by "i j" lines (i in a, j in b)
// '#' starts a comment line. "multiplex" may not be combined with
// explicit interlayer sections.
MultilayerNetwork read_multilayer(std::istream& in);
MultilayerNetwork load_multilayer(const std::filesystem::path& path);
void write_multilayer(std::ostream& out, const MultilayerNetwork& net);

}  // namespace mlwalk
