#include "mlwalk/dtqw.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mlwalk/error.hpp"
#include "mlwalk/kernels.hpp"
#include "mlwalk/rng.hpp"

namespace mlwalk {

namespace {

void check_normalized(const BlockState& state) {
  const double norm = state.norm_squared();
  if (!(std::abs(norm - 1.0) <= kNormTolerance)) {
    throw Error(ErrorCode::NonNormalizedInput,
                "state norm^2 = " + std::to_string(norm) + " at t=" +
                    std::to_string(state.time()));
  }
}

void check_coins(const BlockState& state, const CoinAssignment& coins) {
  const Graph& g = state.graph();
  if (!(coins.graph() == g)) {
    throw Error(ErrorCode::DimensionMismatch, "coins were assigned for a different graph");
  }
  for (Vertex x = 1; x <= g.order(); ++x) {
    if (coins.coin(x).dim() != g.degree(x)) {
      throw Error(ErrorCode::DimensionMismatch, "coin dimension at " + std::to_string(x));
    }
  }
}

// Per-arc flags for the fixed points of the shift.
std::vector<char> fixed_arcs(const Graph& g, std::span<const Edge> broken) {
  const NeighborTable& t = g.neighbors();
  std::vector<char> fixed(t.arc_count(), 0);
  for (const Edge& e : broken) {
    fixed[t.arc_index(e.u, e.v)] = 1;
    fixed[t.arc_index(e.v, e.u)] = 1;
  }
  return fixed;
}

// Reusable scratch for repeated steps on one graph.
class Stepper {
 public:
  explicit Stepper(const Graph& g)
      : graph_(g), table_(g.neighbors()), kernels_(kernels::active()) {
    const auto n = static_cast<std::size_t>(g.order());
    int max_degree = 0;
    for (Vertex x = 1; x <= g.order(); ++x) max_degree = std::max(max_degree, g.degree(x));
    in_.resize(static_cast<std::size_t>(max_degree));
    out_.resize(static_cast<std::size_t>(max_degree));
    tilde_.resize(n * n > table_.arc_count() ? n * n : table_.arc_count());
  }

  // out = S C in (forward) or C S in (backward, with adjoint coins).
  void apply(const BlockState& in, BlockState& out, const CoinAssignment& coins,
             const std::vector<char>& fixed, bool backward) {
    out.set_time(backward ? (in.time() > 0 ? in.time() - 1 : 0) : in.time() + 1);
    if (in.backend() == StateBackend::arc_list) {
      arc_list(in.storage(), out.storage(), coins, fixed, backward);
    } else {
      dense(in.storage(), out.storage(), coins, fixed, backward);
    }
  }

 private:
  void arc_list(std::span<const Complex> in, std::span<Complex> out,
                const CoinAssignment& coins, const std::vector<char>& fixed, bool backward) {
    const std::size_t arcs = table_.arc_count();
    if (!backward) {
      for (Vertex x = 1; x <= graph_.order(); ++x) {
        const std::size_t off = table_.arc_begin(x);
        kernels_.coin_apply(coins.coin(x).column_major().data(), table_.degree(x),
                            in.data() + off, tilde_.data() + off);
      }
      for (std::size_t a = 0; a < arcs; ++a) {
        out[a] = fixed[a] ? tilde_[a] : tilde_[table_.reverse_arc(a)];
      }
    } else {
      for (std::size_t a = 0; a < arcs; ++a) {
        tilde_[a] = fixed[a] ? in[a] : in[table_.reverse_arc(a)];
      }
      for (Vertex x = 1; x <= graph_.order(); ++x) {
        const std::size_t off = table_.arc_begin(x);
        kernels_.coin_apply(coins.coin(x).column_major().data(), table_.degree(x),
                            tilde_.data() + off, out.data() + off);
      }
    }
  }

  // Row x of the block matrix, restricted to B_x, through the coin at x.
  void coin_row(std::span<const Complex> src, std::span<Complex> dst, Vertex x,
                const CoinAssignment& coins) {
    const auto n = static_cast<std::size_t>(graph_.order());
    const auto row = table_.neighbors(x);
    const std::size_t base = static_cast<std::size_t>(x - 1) * n;
    for (std::size_t r = 0; r < row.size(); ++r) in_[r] = src[base + row[r] - 1];
    kernels_.coin_apply(coins.coin(x).column_major().data(), static_cast<int>(row.size()),
                        in_.data(), out_.data());
    for (std::size_t r = 0; r < row.size(); ++r) dst[base + row[r] - 1] = out_[r];
  }

  // Transpose on the support; fixed arcs keep their entry.
  void transpose(std::span<const Complex> src, std::span<Complex> dst,
                 const std::vector<char>& fixed) {
    const auto n = static_cast<std::size_t>(graph_.order());
    for (std::size_t a = 0; a < table_.arc_count(); ++a) {
      const auto x = static_cast<std::size_t>(table_.arc_tail(a) - 1);
      const auto y = static_cast<std::size_t>(table_.arc_head(a) - 1);
      dst[x * n + y] = fixed[a] ? src[x * n + y] : src[y * n + x];
    }
  }

  void dense(std::span<const Complex> in, std::span<Complex> out,
             const CoinAssignment& coins, const std::vector<char>& fixed, bool backward) {
    const std::span<Complex> tilde(tilde_.data(), in.size());
    if (!backward) {
      for (Vertex x = 1; x <= graph_.order(); ++x) coin_row(in, tilde, x, coins);
      transpose(tilde, out, fixed);
    } else {
      transpose(in, tilde, fixed);
      for (Vertex x = 1; x <= graph_.order(); ++x) coin_row(tilde, out, x, coins);
    }
  }

  const Graph& graph_;
  const NeighborTable& table_;
  const kernels::KernelSet& kernels_;
  std::vector<Complex> in_, out_, tilde_;
};

struct PreparedPolicy {
  std::vector<Edge> breakable;
  double p_break = 0.0;
  std::uint64_t seed = 0;
};

PreparedPolicy prepare(const Graph& g, const BrokenLinkPolicy& policy) {
  if (!(policy.p_break >= 0.0 && policy.p_break <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter,
                "p_break must lie in [0, 1], got " + std::to_string(policy.p_break));
  }
  PreparedPolicy out{{}, policy.p_break, policy.seed};
  for (const Edge& e : policy.breakable) {
    if (!g.adjacent(e.u, e.v)) {
      throw Error(ErrorCode::NotAdjacent, "breakable edge (" + std::to_string(e.u) + "," +
                                              std::to_string(e.v) + ") is not in the graph");
    }
    out.breakable.push_back(e.normalized());
  }
  std::sort(out.breakable.begin(), out.breakable.end());
  if (std::adjacent_find(out.breakable.begin(), out.breakable.end()) != out.breakable.end()) {
    throw Error(ErrorCode::DuplicateEdge, "breakable edge listed twice");
  }
  return out;
}

template <typename Sink>
void run(const BlockState& initial, const CoinAssignment& coins, int steps,
         const std::optional<BrokenLinkPolicy>& policy, Sink&& sink,
         std::vector<std::vector<Edge>>* break_log) {
  if (steps < 0) throw Error(ErrorCode::InvalidParameter, "steps must be >= 0");
  check_coins(initial, coins);
  const Graph& g = initial.graph();
  std::optional<PreparedPolicy> prepared;
  if (policy) prepared = prepare(g, *policy);
  std::optional<Rng> rng;
  if (prepared) rng.emplace(prepared->seed);

  Stepper stepper(g);
  BlockState current = initial;
  BlockState next(g, initial.backend());
  std::vector<char> fixed(g.neighbors().arc_count(), 0);
  std::vector<Edge> broken;
  sink(current, 0);
  for (int t = 0; t < steps; ++t) {
    check_normalized(current);
    if (prepared) {
      broken.clear();
      for (const Edge& e : prepared->breakable) {
        if (rng->uniform() < prepared->p_break) broken.push_back(e);
      }
      fixed = fixed_arcs(g, broken);
      if (break_log) break_log->push_back(broken);
    }
    stepper.apply(current, next, coins, fixed, false);
    std::swap(current, next);
    sink(current, t + 1);
  }
  check_normalized(current);
}

}  // namespace

BlockState step(const BlockState& state, const CoinAssignment& coins,
                std::span<const Edge> broken) {
  check_coins(state, coins);
  check_normalized(state);
  BlockState out(state.graph(), state.backend());
  Stepper(state.graph()).apply(state, out, coins, fixed_arcs(state.graph(), broken), false);
  return out;
}

BlockState step_inverse(const BlockState& state, const CoinAssignment& coins,
                        std::span<const Edge> broken) {
  check_coins(state, coins);
  check_normalized(state);
  BlockState out(state.graph(), state.backend());
  Stepper(state.graph())
      .apply(state, out, coins.adjoint(), fixed_arcs(state.graph(), broken), true);
  return out;
}

std::vector<double> node_probability(const BlockState& state) {
  const Graph& g = state.graph();
  const NeighborTable& t = g.neighbors();
  const std::vector<Complex> arcs = state.arc_amplitudes();
  std::vector<double> norms(arcs.size());
  kernels::active().squared_norms(arcs.data(), arcs.size(), norms.data());
  std::vector<double> p(static_cast<std::size_t>(g.order()), 0.0);
  for (Vertex x = 1; x <= g.order(); ++x) {
    double sum = 0.0;
    const std::size_t begin = t.arc_begin(x);
    for (int r = 0; r < t.degree(x); ++r) sum += norms[begin + static_cast<std::size_t>(r)];
    p[static_cast<std::size_t>(x - 1)] = sum;
  }
  return p;
}

ProbabilitySeries evolve(const BlockState& initial, const CoinAssignment& coins, int steps,
                         const std::optional<BrokenLinkPolicy>& policy) {
  ProbabilitySeries series(WalkerKind::quantum, initial.graph().order());
  series.metadata().coin = std::string(to_string(coins.family()));
  if (policy) series.metadata().seed = policy->seed;
  run(
      initial, coins, steps, policy,
      [&](const BlockState& s, int) { series.push(node_probability(s)); },
      policy ? &series.metadata().breaks : nullptr);
  return series;
}

std::vector<double> evolve_final(const BlockState& initial, const CoinAssignment& coins,
                                 int steps, const std::optional<BrokenLinkPolicy>& policy) {
  std::vector<double> final_distribution;
  run(
      initial, coins, steps, policy,
      [&](const BlockState& s, int t) {
        if (t == steps) final_distribution = node_probability(s);
      },
      nullptr);
  return final_distribution;
}

}  // namespace mlwalk
