#pragma once

// Helpers shared by the unit tests and the acceptance binary: an explicit
// arc-space evolution operator built with Eigen, random graphs and random
// unitary coins.

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "mlwalk/coins.hpp"
#include "mlwalk/error.hpp"
#include "mlwalk/graph.hpp"
#include "mlwalk/state.hpp"

namespace mlwalk::testing {

using Cx = std::complex<double>;
using MatrixXc = Eigen::Matrix<Cx, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXc = Eigen::Matrix<Cx, Eigen::Dynamic, 1>;

template <typename F>
ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(-1);
}

// Connected simple graph: random spanning tree plus each remaining pair with
// probability `density`.
inline Graph random_connected_graph(int n, double density, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::set<std::pair<int, int>> pairs;
  for (int v = 2; v <= n; ++v) {
    std::uniform_int_distribution<int> pick(1, v - 1);
    pairs.insert({pick(rng), v});
  }
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      if (u(rng) < density) pairs.insert({a, b});
  std::vector<Edge> edges;
  for (auto [a, b] : pairs) edges.push_back({a, b});
  return Graph::build(n, edges);
}

// Haar-like unitary: QR of a complex Gaussian matrix with R's diagonal phases
// folded back into Q.
inline MatrixXc random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  MatrixXc z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) z(i, j) = Cx(g(rng), g(rng));
  Eigen::HouseholderQR<MatrixXc> qr(z);
  MatrixXc q = qr.householderQ();
  MatrixXc r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Cx diag = r(j, j);
    q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

inline CoinMatrix to_coin(const MatrixXc& m) {
  const int d = static_cast<int>(m.rows());
  std::vector<Complex> rows;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) rows.push_back(m(i, j));
  return CoinMatrix::from_rows(d, rows);
}

// Arc space of a graph built from its adjacency matrix alone: arcs (x, y)
// with a_xy = 1 in row-major order, neighbors ascending.
struct ArcSpace {
  int n = 0;
  std::vector<std::pair<int, int>> arcs;
  std::map<std::pair<int, int>, int> index;
  std::vector<std::vector<int>> nbrs;  // nbrs[x] ascending, 1-based x

  explicit ArcSpace(const Graph& g) : n(g.order()), nbrs(static_cast<std::size_t>(g.order()) + 1) {
    const auto adj = g.adjacency_matrix();
    for (int x = 1; x <= n; ++x)
      for (int y = 1; y <= n; ++y)
        if (adj[static_cast<std::size_t>(x - 1) * n + (y - 1)]) {
          index[{x, y}] = static_cast<int>(arcs.size());
          arcs.push_back({x, y});
          nbrs[x].push_back(y);
        }
  }
  int size() const { return static_cast<int>(arcs.size()); }
};

// Dense S C on the arc space. coins[x] acts on the ascending neighbor list
// of x; broken edges keep their two arcs in place.
inline MatrixXc dense_operator(const ArcSpace& space, const std::vector<MatrixXc>& coins,
                               const std::set<std::pair<int, int>>& broken = {}) {
  const int dim = space.size();
  MatrixXc c = MatrixXc::Zero(dim, dim);
  for (int x = 1; x <= space.n; ++x) {
    const auto& b = space.nbrs[x];
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        c(space.index.at({x, b[i]}), space.index.at({x, b[j]})) = coins[x](i, j);
  }
  MatrixXc s = MatrixXc::Zero(dim, dim);
  for (const auto& [arc, k] : space.index) {
    const auto key = std::minmax(arc.first, arc.second);
    if (broken.contains({key.first, key.second})) {
      s(k, k) = 1.0;
    } else {
      s(space.index.at({arc.second, arc.first}), k) = 1.0;
    }
  }
  return s * c;
}

inline VectorXc to_vector(const ArcSpace& space, const BlockState& state) {
  VectorXc v(space.size());
  for (int k = 0; k < space.size(); ++k) v(k) = state.amplitude(space.arcs[k].first, space.arcs[k].second);
  return v;
}

inline BlockState random_state(const Graph& g, std::mt19937_64& rng,
                               std::optional<StateBackend> backend = std::nullopt) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Complex> amps(g.neighbors().arc_count());
  double norm = 0.0;
  for (auto& a : amps) {
    a = Complex(gauss(rng), gauss(rng));
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  BlockState state(g, backend);
  state.set_arc_amplitudes(amps);
  return state;
}

}  // namespace mlwalk::testing
