#include "mlwalk/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

#include "mlwalk/crw.hpp"
#include "mlwalk/error.hpp"
#include "mlwalk/rng.hpp"

namespace mlwalk {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Neumaier-compensated sum.
struct Accumulator {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

std::vector<double> LayerSeries::layer(int alpha) const {
  std::vector<double> trace(length());
  for (std::size_t t = 0; t < trace.size(); ++t) trace[t] = value(t, alpha);
  return trace;
}

LayerSeries layer_probability(const ProbabilitySeries& series, const LayerMembership& membership) {
  if (membership.node_count() != series.node_count() || membership.layer_count() < 1) {
    throw Error(ErrorCode::MembershipMismatch,
                "membership covers " + std::to_string(membership.node_count()) +
                    " nodes, series has " + std::to_string(series.node_count()));
  }
  LayerSeries out(membership.layer_count(), series.length());
  for (std::size_t t = 0; t < series.length(); ++t) {
    const auto p = series.at(t);
    for (Vertex x = 1; x <= series.node_count(); ++x) {
      out.value(t, membership.layer_of(x)) += p[static_cast<std::size_t>(x - 1)];
    }
  }
  return out;
}

void write_layer_csv(std::ostream& out, const LayerSeries& layers) {
  out << 't';
  for (int a = 1; a <= layers.layer_count(); ++a) out << ",layer_" << a;
  out << '\n';
  for (std::size_t t = 0; t < layers.length(); ++t) {
    out << t;
    for (int a = 1; a <= layers.layer_count(); ++a) out << ',' << format_double(layers.value(t, a));
    out << '\n';
  }
}

std::vector<double> time_avg_probability(const ProbabilitySeries& series, int window) {
  if (window < 1 || static_cast<std::size_t>(window) > series.length()) {
    throw Error(ErrorCode::SeriesTooShort,
                "time average over " + std::to_string(window) + " vectors of a series of " +
                    std::to_string(series.length()));
  }
  std::vector<double> avg(static_cast<std::size_t>(series.node_count()), 0.0);
  for (int t = 0; t < window; ++t) {
    const auto p = series.at(static_cast<std::size_t>(t));
    for (std::size_t x = 0; x < avg.size(); ++x) avg[x] += p[x];
  }
  for (double& v : avg) v /= window;
  return avg;
}

std::vector<double> time_avg_probability(const ProbabilitySeries& series) {
  return time_avg_probability(series, series.steps());
}

std::string_view to_string(InitFamily family) {
  switch (family) {
    case InitFamily::phi1: return "phi1";
    case InitFamily::phi2: return "phi2";
    case InitFamily::classical: return "classical";
  }
  return "unknown";
}

Heatmap heatmap(const Graph& g, CoinFamily coin, InitFamily init, int steps) {
  if (steps < 1) throw Error(ErrorCode::InvalidParameter, "heatmap needs T >= 1");
  if (init == InitFamily::phi2 && g.min_degree() < 2) {
    throw Error(ErrorCode::DegreeTooSmall, "phi2 heatmap on a graph with a degree-1 node");
  }
  Heatmap map;
  map.nodes = g.order();
  map.steps = steps;
  map.init = std::string(to_string(init));
  map.cells.reserve(static_cast<std::size_t>(g.order()) * g.order());
  if (init == InitFamily::classical) {
    map.walker = WalkerKind::classical;
    map.coin = "unbiased";
    const TransitionMatrix omega = unbiased_transition(g);
    for (Vertex x = 1; x <= g.order(); ++x) {
      const auto series = crw_evolve(delta_distribution(g, x), omega, steps);
      const auto last = series.back();
      map.cells.insert(map.cells.end(), last.begin(), last.end());
    }
    return map;
  }
  map.walker = WalkerKind::quantum;
  map.coin = std::string(to_string(coin));
  const CoinAssignment coins = assign_coins(g, coin);
  for (Vertex x = 1; x <= g.order(); ++x) {
    const BlockState s0 = init == InitFamily::phi1 ? init_phi1(g, x) : init_phi2(g, x);
    const auto series = evolve(s0, coins, steps - 1);
    const auto avg = time_avg_probability(series, steps);
    map.cells.insert(map.cells.end(), avg.begin(), avg.end());
  }
  return map;
}

void write_heatmap_csv(std::ostream& out, const Heatmap& map) {
  for (Vertex x = 1; x <= map.nodes; ++x) {
    for (Vertex y = 1; y <= map.nodes; ++y) {
      if (y > 1) out << ',';
      out << format_double(map(x, y));
    }
    out << '\n';
  }
}

void write_heatmap_metadata(std::ostream& out, const Heatmap& map, std::uint64_t seed) {
  out << "{\n"
      << "  \"walker\": \"" << to_string(map.walker) << "\",\n"
      << "  \"coin\": \"" << map.coin << "\",\n"
      << "  \"init\": \"" << map.init << "\",\n"
      << "  \"T\": " << map.steps << ",\n"
      << "  \"nodes\": " << map.nodes << ",\n"
      << "  \"seed\": " << seed << "\n"
      << "}\n";
}

std::string_view to_string(PolyaForm form) {
  return form == PolyaForm::sum ? "sum" : "product";
}

PolyaForm parse_polya_form(std::string_view name) {
  if (name == "sum") return PolyaForm::sum;
  if (name == "product") return PolyaForm::product;
  throw Error(ErrorCode::InvalidParameter, "unknown Polya form '" + std::string(name) + "'");
}

double partial_polya(std::span<const double> returns, PolyaForm form) {
  for (double p : returns) {
    if (!(p >= 0.0 && p <= 1.0 + 1e-12)) {
      throw Error(ErrorCode::InvalidParameter, "return probability outside [0,1]");
    }
  }
  if (form == PolyaForm::sum) {
    Accumulator total;
    for (double p : returns) total.add(p);
    if (total.value() <= 0.0) {
      throw Error(ErrorCode::UndefinedEstimate, "no return probability mass up to T_p");
    }
    return 1.0 - 1.0 / total.value();
  }
  double survival = 1.0;
  for (double p : returns) survival *= std::max(0.0, 1.0 - p);
  return 1.0 - survival;
}

std::vector<int> polya_grid(int max, int gap) {
  if (max < 1 || gap < 1) throw Error(ErrorCode::InvalidParameter, "grid needs max, gap >= 1");
  std::vector<int> grid{1};
  for (int t = gap; t <= max; t += gap) {
    if (t > grid.back()) grid.push_back(t);
  }
  return grid;
}

PolyaEstimate polya_curve(const ProbabilitySeries& series, Vertex origin,
                          std::span<const int> grid, PolyaForm form) {
  if (grid.empty() || !std::is_sorted(grid.begin(), grid.end()) || grid.front() < 1 ||
      std::adjacent_find(grid.begin(), grid.end()) != grid.end()) {
    throw Error(ErrorCode::InvalidParameter, "Polya grid must be strictly ascending from >= 1");
  }
  if (origin < 1 || origin > series.node_count()) {
    throw Error(ErrorCode::VertexOutOfRange, std::to_string(origin));
  }
  if (grid.back() > series.steps()) {
    throw Error(ErrorCode::SeriesTooShort, "series ends at t=" + std::to_string(series.steps()) +
                                               ", grid needs " + std::to_string(grid.back()));
  }
  std::vector<double> returns(static_cast<std::size_t>(grid.back()));
  for (int t = 1; t <= grid.back(); ++t) {
    returns[static_cast<std::size_t>(t - 1)] =
        std::clamp(series.probability(static_cast<std::size_t>(t), origin), 0.0, 1.0);
  }
  PolyaEstimate est;
  est.grid.assign(grid.begin(), grid.end());
  est.form = form;
  est.origin = origin;
  for (int cutoff : grid) {
    est.values.push_back(
        partial_polya(std::span(returns).first(static_cast<std::size_t>(cutoff)), form));
  }
  return est;
}

void write_polya_csv(std::ostream& out, const PolyaEstimate& estimate) {
  out << "T_p,polya_" << to_string(estimate.form) << '\n';
  for (std::size_t k = 0; k < estimate.grid.size(); ++k) {
    out << estimate.grid[k] << ',' << format_double(estimate.values[k]) << '\n';
  }
}

MonteCarloResult broken_link_monte_carlo(const BlockState& initial, const CoinAssignment& coins,
                                         const BrokenLinkPolicy& policy, int trials, int steps,
                                         MonteCarloOptions options) {
  if (trials < 1) throw Error(ErrorCode::InvalidParameter, "trials must be >= 1");
  std::vector<std::vector<double>> finals(static_cast<std::size_t>(trials));

  unsigned workers = options.threads ? options.threads : std::thread::hardware_concurrency();
  workers = std::clamp(workers, 1u, static_cast<unsigned>(trials));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int k = next.fetch_add(1); k < trials; k = next.fetch_add(1)) {
      try {
        BrokenLinkPolicy trial = policy;
        trial.seed = derive_seed(policy.seed, static_cast<std::uint64_t>(k));
        finals[static_cast<std::size_t>(k)] = evolve_final(initial, coins, steps, trial);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(trials);
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  const std::vector<double>& base = finals.front();
  MonteCarloResult result;
  result.mean.resize(base.size());
  for (std::size_t x = 0; x < base.size(); ++x) {
    Accumulator deviation;
    for (int k = 1; k < trials; ++k) deviation.add(finals[static_cast<std::size_t>(k)][x] - base[x]);
    result.mean[x] = base[x] + deviation.value() / trials;
  }
  if (options.archive) result.trials = std::move(finals);
  return result;
}

double total_variation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "distributions differ in length");
  }
  Accumulator total;
  for (std::size_t k = 0; k < a.size(); ++k) total.add(std::abs(a[k] - b[k]));
  return 0.5 * total.value();
}

PeriodEstimate dominant_period(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n < 16) {
    throw Error(ErrorCode::SeriesTooShort, "period detection needs >= 16 samples, got " +
                                               std::to_string(n));
  }
  Accumulator mean_acc;
  for (double v : series) mean_acc.add(v);
  const double mean = mean_acc.value() / static_cast<double>(n);
  Accumulator var_acc;
  for (double v : series) var_acc.add((v - mean) * (v - mean));
  const double variance = var_acc.value() / static_cast<double>(n);
  PeriodEstimate est;
  if (!(variance > 1e-24)) return est;

  int best_lag = 0;
  double best = -2.0;
  for (std::size_t lag = 2; lag <= n / 2; ++lag) {
    Accumulator cov;
    for (std::size_t t = 0; t + lag < n; ++t) cov.add((series[t] - mean) * (series[t + lag] - mean));
    const double r = cov.value() / static_cast<double>(n - lag) / variance;
    // Harmonics of the fundamental tie with it; keep the shortest lag.
    if (r > best + 1e-9) {
      best = r;
      best_lag = static_cast<int>(lag);
    }
  }
  est.strength = std::clamp(best, 0.0, 1.0);
  est.periodic = est.strength >= kPeriodicThreshold;
  est.period = est.periodic ? best_lag : 0;
  return est;
}

}  // namespace mlwalk
