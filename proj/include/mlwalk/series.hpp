#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mlwalk/graph.hpp"

namespace mlwalk {

enum class WalkerKind { quantum, classical };
std::string_view to_string(WalkerKind kind);

struct SeriesMetadata {
  std::string initial;  // e.g. "localized(1,3)", "phi1(1)", "delta(1)"
  std::string coin;     // coin family, or "transition" for classical walks
  std::uint64_t seed = 0;
  // breaks[t] = edges broken during the step t -> t+1 (empty when no policy).
  std::vector<std::vector<Edge>> breaks;
};

// Node-probability vectors P(., t) for t = 0..T.
class ProbabilitySeries {
 public:
  ProbabilitySeries() = default;
  ProbabilitySeries(WalkerKind walker, int node_count)
      : walker_(walker), nodes_(node_count) {}

  WalkerKind walker() const { return walker_; }
  int node_count() const { return nodes_; }
  std::size_t length() const { return data_.size() / static_cast<std::size_t>(nodes_ ? nodes_ : 1); }
  // T, the number of steps covered.
  int steps() const { return static_cast<int>(length()) - 1; }

  // P(., t).
  std::span<const double> at(std::size_t t) const {
    return {data_.data() + t * static_cast<std::size_t>(nodes_),
            static_cast<std::size_t>(nodes_)};
  }
  std::span<const double> back() const { return at(length() - 1); }
  double probability(std::size_t t, Vertex x) const { return at(t)[x - 1]; }

  // Throws DimensionMismatch on a wrong-length vector.
  void push(std::span<const double> distribution);

  SeriesMetadata& metadata() { return meta_; }
  const SeriesMetadata& metadata() const { return meta_; }

 private:
  WalkerKind walker_ = WalkerKind::quantum;
  int nodes_ = 0;
  std::vector<double> data_;
  SeriesMetadata meta_;
};

// CSV with header "t,node_1,...,node_n"; values printed with 17 significant
// digits so the text reproduces the doubles exactly.
void write_series_csv(std::ostream& out, const ProbabilitySeries& series);

}  // namespace mlwalk
