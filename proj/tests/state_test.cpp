#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "mlwalk/multilayer.hpp"
#include "mlwalk/state.hpp"
#include "support.hpp"

using namespace mlwalk;
using mlwalk::testing::error_code_of;

namespace {

const Graph& toy() {
  static const Graph g = toy_multiplex().supra();
  return g;
}

}  // namespace

TEST(State, Localized) {
  const BlockState s = init_localized(toy(), 1, 3);
  for (Vertex x = 1; x <= 8; ++x)
    for (Vertex y = 1; y <= 8; ++y)
      EXPECT_EQ(s.amplitude(x, y), (x == 1 && y == 3) ? Complex(1, 0) : Complex(0, 0));
  EXPECT_EQ(init_localized(toy(), 1, 5).amplitude(1, 5), Complex(1, 0));
  EXPECT_EQ(error_code_of([] { init_localized(toy(), 1, 6); }), ErrorCode::NotAdjacent);
  EXPECT_EQ(error_code_of([] { init_localized(toy(), 9, 1); }), ErrorCode::VertexOutOfRange);
}

TEST(State, Phi1) {
  const BlockState s = init_phi1(toy(), 1);
  for (Vertex y : {2, 3, 4, 5}) EXPECT_EQ(s.amplitude(1, y), Complex(0.5, 0));
  EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
  const BlockState s5 = init_phi1(toy(), 5);
  for (Vertex y : {1, 6, 8}) EXPECT_EQ(s5.amplitude(5, y), Complex(1.0 / std::sqrt(3.0), 0));
  EXPECT_EQ(init_phi1(gen_complete(2), 1).amplitude(1, 2), Complex(1, 0));
  const Graph isolated = build_graph(2, {});
  EXPECT_EQ(error_code_of([&] { init_phi1(isolated, 1); }), ErrorCode::IsolatedVertex);
}

TEST(State, Phi2) {
  const double r3 = 1.0 / std::sqrt(3.0);
  const BlockState s = init_phi2(toy(), 5);
  EXPECT_EQ(s.amplitude(5, 1), Complex(0, r3));
  EXPECT_EQ(s.amplitude(5, 6), Complex(r3, 0));
  EXPECT_EQ(s.amplitude(5, 8), Complex(0, -r3));
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-15);

  const BlockState c = init_phi2(gen_complete(3), 2);
  const double r2 = 1.0 / std::sqrt(2.0);
  EXPECT_EQ(c.amplitude(2, 1), Complex(0, r2));
  EXPECT_EQ(c.amplitude(2, 3), Complex(0, -r2));
  EXPECT_EQ(error_code_of([] { init_phi2(gen_complete(2), 1); }), ErrorCode::DegreeTooSmall);
}

TEST(State, BackendsAgree) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = mlwalk::testing::random_connected_graph(3 + trial % 10, 0.4, rng);
    const BlockState dense = mlwalk::testing::random_state(g, rng, StateBackend::dense);
    const BlockState arcs = dense.with_backend(StateBackend::arc_list);
    EXPECT_EQ(arcs.backend(), StateBackend::arc_list);
    EXPECT_EQ(dense.arc_amplitudes(), arcs.arc_amplitudes());
    EXPECT_EQ(dense.to_matrix(), arcs.to_matrix());
    EXPECT_EQ(dense.norm_squared(), arcs.norm_squared());
    EXPECT_EQ(arcs.with_backend(StateBackend::dense).storage().size(), dense.storage().size());
    // Off-support entries of the matrix are zero.
    const auto m = dense.to_matrix();
    const auto adj = g.adjacency_matrix();
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (!adj[k]) EXPECT_EQ(m[k], Complex(0, 0));
    }
  }
  EXPECT_EQ(error_code_of([] {
              BlockState s(toy());
              s.set_amplitude(1, 7, 1.0);
            }),
            ErrorCode::NotAdjacent);
}

TEST(State, BackendChoice) {
  EXPECT_EQ(choose_backend(toy()), StateBackend::dense);
  const auto sparse = build_multiplex({gen_star(50), gen_star(50)}).supra();
  EXPECT_EQ(choose_backend(sparse), StateBackend::arc_list);
  EXPECT_EQ(choose_backend(build_multiplex({gen_complete(50), gen_complete(50)}).supra()),
            StateBackend::dense);
}

TEST(State, SerializationRoundTrip) {
  std::mt19937_64 rng(8);
  for (StateBackend backend : {StateBackend::dense, StateBackend::arc_list}) {
    BlockState s = mlwalk::testing::random_state(toy(), rng, backend);
    s.set_time(17);
    std::stringstream buf;
    write_state(buf, s);
    // 8 + 8 + 1 header bytes, then 2m complex pairs.
    EXPECT_EQ(buf.str().size(), 17u + 28u * 16u);
    const BlockState back = read_state(buf, toy());
    EXPECT_EQ(back.time(), 17u);
    EXPECT_EQ(back.backend(), backend);
    EXPECT_EQ(back.arc_amplitudes(), s.arc_amplitudes());

    std::stringstream truncated(buf.str().substr(0, 40));
    EXPECT_EQ(error_code_of([&] { read_state(truncated, toy()); }), ErrorCode::IoError);
  }
  std::stringstream other;
  write_state(other, init_phi1(gen_complete(3), 1));
  EXPECT_EQ(error_code_of([&] { read_state(other, toy()); }), ErrorCode::DimensionMismatch);
}
