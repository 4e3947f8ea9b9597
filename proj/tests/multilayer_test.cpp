#include <gtest/gtest.h>

#include <sstream>

#include "mlwalk/multilayer.hpp"
#include "support.hpp"

using namespace mlwalk;
using mlwalk::testing::error_code_of;

namespace {

Graph k4() { return gen_complete(4); }

Graph c4() {
  const std::vector<Edge> edges{{1, 2}, {2, 3}, {3, 4}, {1, 4}};
  return build_graph(4, edges);
}

std::vector<std::uint8_t> adjacency(const Graph& g) {
  const auto a = g.adjacency_matrix();
  return {a.begin(), a.end()};
}

}  // namespace

TEST(Multilayer, ToySupraAdjacencyMatchesBlockMatrix) {
  // Layer blocks K4 and the 4-cycle, identity coupling off the diagonal.
  const std::vector<std::uint8_t> expected{
      0, 1, 1, 1, 1, 0, 0, 0,  //
      1, 0, 1, 1, 0, 1, 0, 0,  //
      1, 1, 0, 1, 0, 0, 1, 0,  //
      1, 1, 1, 0, 0, 0, 0, 1,  //
      1, 0, 0, 0, 0, 1, 0, 1,  //
      0, 1, 0, 0, 1, 0, 1, 0,  //
      0, 0, 1, 0, 0, 1, 0, 1,  //
      0, 0, 0, 1, 1, 0, 1, 0};
  EXPECT_EQ(adjacency(supra_adjacency(toy_multiplex())), expected);
  EXPECT_EQ(adjacency(build_multiplex({k4(), c4()}).supra()), expected);
}

TEST(Multilayer, SmallestMultiplexIsFourCycle) {
  const auto net = build_multiplex({gen_complete(2), gen_complete(2)});
  const Graph& g = net.supra();
  EXPECT_EQ(g.order(), 4);
  EXPECT_EQ(g.edge_count(), 4u);
  for (Vertex x = 1; x <= 4; ++x) EXPECT_EQ(g.degree(x), 2);
  // 1-2-4-3-1
  EXPECT_TRUE(g.adjacent(1, 2));
  EXPECT_TRUE(g.adjacent(2, 4));
  EXPECT_TRUE(g.adjacent(4, 3));
  EXPECT_TRUE(g.adjacent(3, 1));
}

TEST(Multilayer, GeneralCoupling) {
  InterlayerEdges single{{{1, 2}, {{1, 1}}}};
  const auto net = build_general({k4(), c4()}, single);
  const Graph& g = net.supra();
  EXPECT_TRUE(g.adjacent(1, 5));
  for (Vertex x = 2; x <= 4; ++x) EXPECT_FALSE(g.adjacent(x, x + 4));
  EXPECT_EQ(g.edge_count(), 6u + 4u + 1u);

  InterlayerEdges identity{{{1, 2}, {{1, 1}, {2, 2}, {3, 3}, {4, 4}}}};
  EXPECT_EQ(build_general({k4(), c4()}, identity).supra(), toy_multiplex().supra());

  // Reversed key (2, 1) is normalized by swapping endpoints.
  InterlayerEdges reversed{{{2, 1}, {{3, 1}}}};
  EXPECT_TRUE(build_general({k4(), c4()}, reversed).supra().adjacent(1, 7));
}

TEST(Multilayer, ThreeLayerChain) {
  const auto net = build_multiplex({gen_complete(3), gen_complete(3), gen_complete(3)});
  const Graph& g = net.supra();
  EXPECT_EQ(g.order(), 9);
  EXPECT_EQ(net.layer_count(), 3);
  for (Vertex x = 1; x <= 3; ++x) EXPECT_EQ(g.degree(x), 3);
  for (Vertex x = 4; x <= 6; ++x) EXPECT_EQ(g.degree(x), 4);
  for (Vertex x = 7; x <= 9; ++x) EXPECT_EQ(g.degree(x), 3);
  EXPECT_FALSE(g.adjacent(1, 7));
  const auto m = net.membership();
  EXPECT_EQ(m.layer_of(1), 1);
  EXPECT_EQ(m.layer_of(5), 2);
  EXPECT_EQ(m.layer_of(9), 3);
  EXPECT_EQ(m.layer_count(), 3);
}

TEST(Multilayer, SingleLayerIsItsOwnSupra) {
  const auto net = build_general({c4()}, {});
  EXPECT_EQ(net.supra(), c4());
}

TEST(Multilayer, BlockStructureAndDegreeAdditivity) {
  const Graph a = gen_scale_free(20, 2, 3);
  const Graph b = gen_star(20);
  const auto net = build_multiplex({a, b});
  const Graph& g = net.supra();
  const int n = 20;
  for (Vertex i = 1; i <= n; ++i) {
    for (Vertex j = 1; j <= n; ++j) {
      EXPECT_EQ(g.adjacent(i, j), a.adjacent(i, j));
      EXPECT_EQ(g.adjacent(i + n, j + n), b.adjacent(i, j));
      EXPECT_EQ(g.adjacent(i, j + n), i == j);
    }
    EXPECT_EQ(g.degree(i), a.degree(i) + 1);
    EXPECT_EQ(g.degree(i + n), b.degree(i) + 1);
  }
}

TEST(Multilayer, Errors) {
  EXPECT_EQ(error_code_of([] { build_multiplex({gen_complete(3), gen_complete(4)}); }),
            ErrorCode::LayerSizeMismatch);
  EXPECT_EQ(error_code_of([] { build_multiplex({gen_complete(3)}); }),
            ErrorCode::InvalidParameter);
  InterlayerEdges self{{{1, 1}, {{1, 2}}}};
  EXPECT_EQ(error_code_of([&] { build_general({k4(), c4()}, self); }), ErrorCode::SelfPairing);
  InterlayerEdges out{{{1, 2}, {{5, 1}}}};
  EXPECT_EQ(error_code_of([&] { build_general({k4(), c4()}, out); }),
            ErrorCode::VertexOutOfRange);
  EXPECT_EQ(error_code_of([] { gen_scale_free(10, 10, 1); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(error_code_of([] { gen_scale_free(10, 0, 1); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(error_code_of([] { gen_star(1); }), ErrorCode::InvalidParameter);
}

TEST(Generators, StarAndComplete) {
  const Graph s = gen_star(4);
  EXPECT_EQ(std::vector<Edge>(s.edges().begin(), s.edges().end()),
            (std::vector<Edge>{{1, 2}, {1, 3}, {1, 4}}));
  EXPECT_EQ(s.degree(1), 3);
  EXPECT_EQ(gen_complete(50).edge_count(), 1225u);
}

TEST(Generators, ScaleFree) {
  const Graph g = gen_scale_free(50, 2, 7);
  EXPECT_EQ(g.order(), 50);
  EXPECT_TRUE(g.connected());
  EXPECT_GE(g.min_degree(), 2);
  // Complete seed on 3 nodes, then 47 nodes with two edges each.
  EXPECT_EQ(g.edge_count(), 3u + 47u * 2u);
  int sum = 0;
  for (Vertex x = 1; x <= 50; ++x) sum += g.degree(x);
  EXPECT_EQ(sum, static_cast<int>(2 * g.edge_count()));
  EXPECT_EQ(gen_scale_free(50, 2, 7), g);
  EXPECT_FALSE(gen_scale_free(50, 2, 8) == g);
  // Preferential attachment leaves a heavy hub.
  int max_degree = 0;
  for (Vertex x = 1; x <= 50; ++x) max_degree = std::max(max_degree, g.degree(x));
  EXPECT_GE(max_degree, 8);
}

TEST(Generators, SfStarMultiplexCounts) {
  const Graph sf = gen_scale_free(50, 2, 5);
  const Graph star = gen_star(50);
  const auto net = build_multiplex({sf, star});
  EXPECT_EQ(net.node_count(), 100);
  EXPECT_EQ(net.supra().edge_count(), sf.edge_count() + star.edge_count() + 50u);
}

TEST(MultilayerFile, RoundTripAndErrors) {
  std::istringstream in(
      "# two layers\n[layer 1]\nn 3\n1 2\n2 3\n[layer 2]\nn 3\n1 3\n[interlayer 1 2]\n1 1\n3 2\n");
  const auto net = read_multilayer(in);
  EXPECT_EQ(net.layer_count(), 2);
  EXPECT_EQ(net.node_count(), 6);
  EXPECT_TRUE(net.supra().adjacent(1, 4));
  EXPECT_TRUE(net.supra().adjacent(3, 5));
  std::ostringstream out;
  write_multilayer(out, net);
  std::istringstream back(out.str());
  EXPECT_EQ(read_multilayer(back).supra(), net.supra());

  std::istringstream multiplex("multiplex\n[layer 1]\n1 2\n2 3\n1 3\n[layer 2]\n1 2\n2 3\n");
  EXPECT_EQ(read_multilayer(multiplex).supra().edge_count(), 3u + 2u + 3u);

  std::istringstream mixed("multiplex\n[layer 1]\n1 2\n[layer 2]\n1 2\n[interlayer 1 2]\n1 1\n");
  EXPECT_EQ(error_code_of([&] { read_multilayer(mixed); }), ErrorCode::ParseError);
  std::istringstream gap("[layer 1]\n1 2\n[layer 3]\n1 2\n");
  EXPECT_EQ(error_code_of([&] { read_multilayer(gap); }), ErrorCode::ParseError);
}
