#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mlwalk/crw.hpp"
#include "mlwalk/multilayer.hpp"
#include "support.hpp"

using namespace mlwalk;
using mlwalk::testing::error_code_of;

namespace {

const Graph& toy() {
  static const Graph g = toy_multiplex().supra();
  return g;
}

}  // namespace

TEST(Crw, UnbiasedTransition) {
  const auto k2 = unbiased_transition(gen_complete(2));
  EXPECT_EQ(k2(1, 1), 0.0);
  EXPECT_EQ(k2(1, 2), 1.0);
  EXPECT_EQ(k2(2, 1), 1.0);

  const auto t = unbiased_transition(toy());
  for (Vertex x = 1; x <= 8; ++x) {
    int count = 0;
    for (Vertex y = 1; y <= 8; ++y) {
      if (t(x, y) != 0.0) {
        ++count;
        EXPECT_EQ(t(x, y), x <= 4 ? 0.25 : 1.0 / 3.0);
      }
    }
    EXPECT_EQ(count, x <= 4 ? 4 : 3);
  }

  const auto star = unbiased_transition(gen_star(4));
  EXPECT_EQ(star(1, 2), 1.0 / 3.0);
  EXPECT_EQ(star(3, 1), 1.0);
  EXPECT_EQ(error_code_of([] { unbiased_transition(build_graph(3, std::vector<Edge>{{1, 2}})); }),
            ErrorCode::IsolatedVertex);
}

TEST(Crw, StepExamples) {
  const Graph k2 = gen_complete(2);
  const auto d = crw_step(delta_distribution(k2, 1), unbiased_transition(k2));
  EXPECT_EQ(d.p, (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(d.t, 1);

  const auto e = crw_step(delta_distribution(toy(), 1), unbiased_transition(toy()));
  EXPECT_EQ(e.p, (std::vector<double>{0, 0.25, 0.25, 0.25, 0.25, 0, 0, 0}));
}

TEST(Crw, DegreeDistributionIsStationary) {
  ClassicalDistribution pi;
  for (Vertex x = 1; x <= 8; ++x) pi.p.push_back(toy().degree(x) / 28.0);
  const auto next = crw_step(pi, unbiased_transition(toy()));
  for (int x = 0; x < 8; ++x) EXPECT_NEAR(next.p[x], pi.p[x], 1e-15);
}

TEST(Crw, MatchesTransposedProduct) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = mlwalk::testing::random_connected_graph(6 + trial, 0.3, rng);
    const int n = g.order();
    // Biased, row-stochastic weights on the edges.
    std::vector<double> rows(static_cast<std::size_t>(n) * n, 0.0);
    for (Vertex x = 1; x <= n; ++x) {
      double sum = 0.0;
      for (Vertex y : g.neighbors().neighbors(x)) sum += rows[(x - 1) * n + (y - 1)] = u(rng);
      for (Vertex y : g.neighbors().neighbors(x)) rows[(x - 1) * n + (y - 1)] /= sum;
      double fixed = 0.0;
      for (Vertex y : g.neighbors().neighbors(x)) fixed += rows[(x - 1) * n + (y - 1)];
      const Vertex last = g.neighbors().neighbors(x).back();
      rows[(x - 1) * n + (last - 1)] += 1.0 - fixed;
    }
    const auto omega = TransitionMatrix::from_rows(g, rows);
    ClassicalDistribution d = delta_distribution(g, 1);
    for (int t = 0; t < 20; ++t) {
      const auto next = crw_step(d, omega);
      for (Vertex y = 1; y <= n; ++y) {
        double expect = 0.0;
        for (Vertex x = 1; x <= n; ++x) expect += omega(x, y) * d.p[x - 1];
        ASSERT_NEAR(next.p[y - 1], expect, 1e-15);
      }
      d = next;
    }
  }
}

TEST(Crw, ConservationAndConvergence) {
  const auto series = crw_evolve(delta_distribution(toy(), 1), unbiased_transition(toy()), 1000);
  EXPECT_EQ(series.length(), 1001u);
  for (std::size_t t = 0; t < series.length(); ++t) {
    double sum = 0.0;
    for (double p : series.at(t)) sum += p;
    ASSERT_NEAR(sum, 1.0, 1e-12);
  }
  double diff = 0.0;
  for (int x = 0; x < 8; ++x) diff = std::max(diff, std::abs(series.at(500)[x] - series.at(1000)[x]));
  EXPECT_LT(diff, 1e-9);
  double top = 0.0;
  for (int x = 0; x < 4; ++x) top += series.at(1000)[x];
  EXPECT_NEAR(top, 4.0 / 7.0, 1e-9);

  const auto only = crw_evolve(delta_distribution(toy(), 1), unbiased_transition(toy()), 0);
  EXPECT_EQ(only.length(), 1u);
  EXPECT_EQ(only.walker(), WalkerKind::classical);
}

TEST(Crw, Validation) {
  const Graph k2 = gen_complete(2);
  EXPECT_EQ(error_code_of([&] { TransitionMatrix::from_rows(k2, {0.0, 0.9, 1.0, 0.0}); }),
            ErrorCode::NonStochastic);
  EXPECT_EQ(error_code_of([&] { TransitionMatrix::from_rows(k2, {0.5, 0.5, 1.0, 0.0}); }),
            ErrorCode::NotAdjacent);
  EXPECT_EQ(error_code_of([&] { TransitionMatrix::from_rows(k2, {0.0, 1.0}); }),
            ErrorCode::DimensionMismatch);
  EXPECT_EQ(error_code_of([&] { TransitionMatrix::from_rows(k2, {0.0, 1.5, 1.0, 0.0}); }),
            ErrorCode::NonStochastic);
}
