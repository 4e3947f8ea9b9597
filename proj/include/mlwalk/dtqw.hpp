#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mlwalk/coins.hpp"
#include "mlwalk/series.hpp"
#include "mlwalk/state.hpp"

namespace mlwalk {

inline constexpr double kNormTolerance = 1e-8;

// Edges eligible for breaking, each broken independently with probability
// p_break at every step, drawn from the stream seeded by `seed`.
struct BrokenLinkPolicy {
  std::vector<Edge> breakable;
  double p_break = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const BrokenLinkPolicy&, const BrokenLinkPolicy&) = default;
};

// One walk step U = S C on the block matrix:
//   coin:  Ñ(x, f_x(i)) = sum_j C^(x)_ij N(x, f_x(j))
//   shift: N'(x, y) = Ñ(y, x), except on broken edges where N'(x, y) = Ñ(x, y).
// Throws DimensionMismatch (coins built for another graph) and
// NonNormalizedInput (|norm - 1| > 1e-8).
BlockState step(const BlockState& state, const CoinAssignment& coins,
                std::span<const Edge> broken = {});
// Inverse of step() for the same coins and broken set.
BlockState step_inverse(const BlockState& state, const CoinAssignment& coins,
                        std::span<const Edge> broken = {});

// P_q(x) = sum_r |N(x, f_x(r))|^2.
std::vector<double> node_probability(const BlockState& state);

// P_q(., t) for t = 0..steps. With a policy, the edges broken at every step
// are recorded in the series metadata.
ProbabilitySeries evolve(const BlockState& initial, const CoinAssignment& coins,
                         int steps, const std::optional<BrokenLinkPolicy>& policy = std::nullopt);

// Like evolve() but keeps only the final distribution P_q(., steps).
std::vector<double> evolve_final(const BlockState& initial, const CoinAssignment& coins,
                                 int steps,
                                 const std::optional<BrokenLinkPolicy>& policy = std::nullopt);

}  // namespace mlwalk
