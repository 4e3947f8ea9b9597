#include "mlwalk/crw.hpp"

#include <cmath>
#include <string>

#include "mlwalk/error.hpp"

namespace mlwalk {

namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace

TransitionMatrix TransitionMatrix::from_rows(const Graph& g, std::vector<double> row_major) {
  const auto n = static_cast<std::size_t>(g.order());
  if (row_major.size() != n * n) {
    throw Error(ErrorCode::DimensionMismatch, "transition matrix must be n*n");
  }
  for (std::size_t x = 0; x < n; ++x) {
    CompensatedSum row;
    for (std::size_t y = 0; y < n; ++y) {
      const double w = row_major[x * n + y];
      if (w < 0.0 || !std::isfinite(w)) {
        throw Error(ErrorCode::NonStochastic, "entry (" + std::to_string(x + 1) + "," +
                                                  std::to_string(y + 1) + ") is invalid");
      }
      if (w > 0.0 && !g.adjacent(static_cast<Vertex>(x + 1), static_cast<Vertex>(y + 1))) {
        throw Error(ErrorCode::NotAdjacent, "transition mass on non-edge (" +
                                                std::to_string(x + 1) + "," +
                                                std::to_string(y + 1) + ")");
      }
      row.add(w);
    }
    if (std::abs(row.value() - 1.0) > kStochasticTolerance) {
      throw Error(ErrorCode::NonStochastic, "row " + std::to_string(x + 1) + " sums to " +
                                                std::to_string(row.value()));
    }
  }
  TransitionMatrix m;
  m.graph_ = g;
  m.data_ = std::move(row_major);
  return m;
}

TransitionMatrix unbiased_transition(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.order());
  std::vector<double> rows(n * n, 0.0);
  for (Vertex x = 1; x <= g.order(); ++x) {
    const int d = g.degree(x);
    if (d == 0) throw Error(ErrorCode::IsolatedVertex, std::to_string(x));
    for (Vertex y : g.neighbors().neighbors(x)) {
      rows[static_cast<std::size_t>(x - 1) * n + (y - 1)] = 1.0 / d;
    }
  }
  return TransitionMatrix::from_rows(g, std::move(rows));
}

ClassicalDistribution delta_distribution(const Graph& g, Vertex x) {
  if (x < 1 || x > g.order()) throw Error(ErrorCode::VertexOutOfRange, std::to_string(x));
  ClassicalDistribution d;
  d.p.assign(static_cast<std::size_t>(g.order()), 0.0);
  d.p[static_cast<std::size_t>(x - 1)] = 1.0;
  return d;
}

ClassicalDistribution crw_step(const ClassicalDistribution& d, const TransitionMatrix& omega) {
  const Graph& g = omega.graph();
  if (d.p.size() != static_cast<std::size_t>(g.order())) {
    throw Error(ErrorCode::DimensionMismatch, "distribution length differs from graph order");
  }
  ClassicalDistribution next;
  next.t = d.t + 1;
  next.p.resize(d.p.size());
  for (Vertex x = 1; x <= g.order(); ++x) {
    CompensatedSum incoming;
    for (Vertex y : g.neighbors().neighbors(x)) {
      incoming.add(omega(y, x) * d.p[static_cast<std::size_t>(y - 1)]);
    }
    next.p[static_cast<std::size_t>(x - 1)] = incoming.value();
  }
  return next;
}

ProbabilitySeries crw_evolve(const ClassicalDistribution& initial,
                             const TransitionMatrix& omega, int steps) {
  if (steps < 0) throw Error(ErrorCode::InvalidParameter, "steps must be >= 0");
  ProbabilitySeries series(WalkerKind::classical, omega.order());
  series.metadata().coin = "transition";
  ClassicalDistribution current = initial;
  series.push(current.p);
  for (int t = 0; t < steps; ++t) {
    current = crw_step(current, omega);
    series.push(current.p);
  }
  return series;
}

}  // namespace mlwalk
