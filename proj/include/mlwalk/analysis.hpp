#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mlwalk/coins.hpp"
#include "mlwalk/dtqw.hpp"
#include "mlwalk/multilayer.hpp"
#include "mlwalk/series.hpp"
#include "mlwalk/state.hpp"

namespace mlwalk {

// Per-layer probability over time: value(t, alpha) = sum over nodes of layer
// alpha of P(x, t).
class LayerSeries {
 public:
  LayerSeries(int layers, std::size_t length)
      : layers_(layers), data_(static_cast<std::size_t>(layers) * length, 0.0) {}

  int layer_count() const { return layers_; }
  std::size_t length() const { return data_.size() / static_cast<std::size_t>(layers_); }
  double value(std::size_t t, int alpha) const { return data_[index(t, alpha)]; }
  double& value(std::size_t t, int alpha) { return data_[index(t, alpha)]; }
  // The trace of one layer across time.
  std::vector<double> layer(int alpha) const;

 private:
  std::size_t index(std::size_t t, int alpha) const {
    return t * static_cast<std::size_t>(layers_) + static_cast<std::size_t>(alpha - 1);
  }
  int layers_;
  std::vector<double> data_;
};

// Throws MembershipMismatch when membership and series disagree on n.
LayerSeries layer_probability(const ProbabilitySeries& series, const LayerMembership& membership);
void write_layer_csv(std::ostream& out, const LayerSeries& layers);

// (1/T) sum_{t=0}^{T-1} P(x, t), using the first `window` vectors.
// Throws SeriesTooShort unless 1 <= window <= series.length().
std::vector<double> time_avg_probability(const ProbabilitySeries& series, int window);
// window = series.steps(), i.e. T for a series covering t = 0..T.
std::vector<double> time_avg_probability(const ProbabilitySeries& series);

enum class InitFamily { phi1, phi2, classical };
std::string_view to_string(InitFamily family);

struct Heatmap {
  int nodes = 0;
  int steps = 0;
  WalkerKind walker = WalkerKind::quantum;
  std::string coin;
  std::string init;
  std::vector<double> cells;  // row-major: (start node, target node)

  double operator()(Vertex from, Vertex to) const {
    return cells[static_cast<std::size_t>(from - 1) * nodes + (to - 1)];
  }
};

// Row x: time-averaged P_q over T steps from phi1/phi2 at x (quantum), or
// P_c(., T) from node x (classical; `coin` is ignored).
// Throws DegreeTooSmall for phi2 on a graph with a degree-1 node.
Heatmap heatmap(const Graph& g, CoinFamily coin, InitFamily init, int steps);
void write_heatmap_csv(std::ostream& out, const Heatmap& map);
// Sidecar JSON: walker, coin, init, T, seed.
void write_heatmap_metadata(std::ostream& out, const Heatmap& map, std::uint64_t seed);

enum class PolyaForm { sum, product };
std::string_view to_string(PolyaForm form);
PolyaForm parse_polya_form(std::string_view name);

// returns[k] = P(x0, k + 1). sum form: 1 - 1 / sum; product form:
// 1 - prod(1 - P). Throws UndefinedEstimate for the sum form when the sum is
// zero, InvalidParameter for probabilities outside [0, 1].
double partial_polya(std::span<const double> returns, PolyaForm form);

struct PolyaEstimate {
  std::vector<int> grid;  // cutoffs T_p, ascending
  std::vector<double> values;
  PolyaForm form = PolyaForm::product;
  Vertex origin = 1;
};

// {1, gap, 2 gap, ..., max}.
std::vector<int> polya_grid(int max, int gap);
// Throws SeriesTooShort when the series ends before the last cutoff and
// InvalidParameter for a non-ascending grid.
PolyaEstimate polya_curve(const ProbabilitySeries& series, Vertex origin,
                          std::span<const int> grid, PolyaForm form);
void write_polya_csv(std::ostream& out, const PolyaEstimate& estimate);

struct MonteCarloOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  bool archive = false;  // keep every trial's final distribution
};

struct MonteCarloResult {
  std::vector<double> mean;
  std::vector<std::vector<double>> trials;  // filled when archived
};

// Mean of P_q(., steps) over independent trials; trial k breaks edges with
// the stream derive_seed(policy.seed, k). The reduction runs in trial order
// and is shifted by trial 0, so identical trials reproduce it exactly.
MonteCarloResult broken_link_monte_carlo(const BlockState& initial,
                                         const CoinAssignment& coins,
                                         const BrokenLinkPolicy& policy, int trials,
                                         int steps, MonteCarloOptions options = {});

// Half the L1 distance.
double total_variation(std::span<const double> a, std::span<const double> b);

struct PeriodEstimate {
  int period = 0;  // 0 when aperiodic
  double strength = 0.0;
  bool periodic = false;
};

inline constexpr double kPeriodicThreshold = 0.5;

// Peak of the normalized autocorrelation over lags 2..N/2. Throws
// SeriesTooShort for fewer than 16 samples.
PeriodEstimate dominant_period(std::span<const double> series);

}  // namespace mlwalk
