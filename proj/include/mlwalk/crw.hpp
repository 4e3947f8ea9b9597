#pragma once

#include <span>
#include <vector>

#include "mlwalk/graph.hpp"
#include "mlwalk/series.hpp"

namespace mlwalk {

inline constexpr double kStochasticTolerance = 1e-12;

// Row-stochastic n*n matrix; entry (x, y) is the probability of moving from
// x to y, supported on the adjacency of its graph.
class TransitionMatrix {
 public:
  TransitionMatrix() = default;
  // Row-major n*n entries. Throws NonStochastic (row sums off by > 1e-12 or
  // negative entries) and NotAdjacent (mass on a non-edge).
  static TransitionMatrix from_rows(const Graph& g, std::vector<double> row_major);

  const Graph& graph() const { return graph_; }
  int order() const { return graph_.order(); }
  double operator()(Vertex x, Vertex y) const {
    return data_[static_cast<std::size_t>(x - 1) * graph_.order() + (y - 1)];
  }

 private:
  Graph graph_;
  std::vector<double> data_;
};

struct ClassicalDistribution {
  std::vector<double> p;  // p[x - 1] = P_c(x, t)
  int t = 0;
};

// Omega_{x,y} = 1/d_x on edges. Throws IsolatedVertex.
TransitionMatrix unbiased_transition(const Graph& g);

ClassicalDistribution delta_distribution(const Graph& g, Vertex x);

// P_c(x, t) = sum_r Omega_{f_x(r), x} P_c(f_x(r), t - 1), summed with
// Neumaier compensation.
ClassicalDistribution crw_step(const ClassicalDistribution& d, const TransitionMatrix& omega);

ProbabilitySeries crw_evolve(const ClassicalDistribution& initial,
                             const TransitionMatrix& omega, int steps);

}  // namespace mlwalk
