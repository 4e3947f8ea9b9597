#include "mlwalk/state.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "mlwalk/error.hpp"
#include "mlwalk/kernels.hpp"

namespace mlwalk {

StateBackend choose_backend(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.order());
  const std::size_t arcs = g.neighbors().arc_count();
  return 4 * arcs < n * n ? StateBackend::arc_list : StateBackend::dense;
}

BlockState::BlockState(Graph g, std::optional<StateBackend> backend)
    : graph_(std::move(g)), backend_(backend.value_or(choose_backend(graph_))) {
  const auto n = static_cast<std::size_t>(graph_.order());
  data_.assign(backend_ == StateBackend::dense ? n * n : graph_.neighbors().arc_count(),
               Complex{});
}

Complex BlockState::amplitude(Vertex x, Vertex y) const {
  const auto arc = graph_.neighbors().find_arc(x, y);
  if (!arc) return {};
  if (backend_ == StateBackend::arc_list) return data_[*arc];
  return data_[static_cast<std::size_t>(x - 1) * graph_.order() + (y - 1)];
}

void BlockState::set_amplitude(Vertex x, Vertex y, Complex value) {
  const std::size_t arc = graph_.neighbors().arc_index(x, y);
  if (backend_ == StateBackend::arc_list) {
    data_[arc] = value;
  } else {
    data_[static_cast<std::size_t>(x - 1) * graph_.order() + (y - 1)] = value;
  }
}

std::vector<Complex> BlockState::arc_amplitudes() const {
  if (backend_ == StateBackend::arc_list) return data_;
  const NeighborTable& t = graph_.neighbors();
  std::vector<Complex> out(t.arc_count());
  const auto n = static_cast<std::size_t>(graph_.order());
  for (std::size_t a = 0; a < out.size(); ++a) {
    out[a] = data_[(t.arc_tail(a) - 1) * n + (t.arc_head(a) - 1)];
  }
  return out;
}

void BlockState::set_arc_amplitudes(std::span<const Complex> values) {
  const NeighborTable& t = graph_.neighbors();
  if (values.size() != t.arc_count()) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(t.arc_count()) +
                                                  " arc amplitudes, got " +
                                                  std::to_string(values.size()));
  }
  if (backend_ == StateBackend::arc_list) {
    data_.assign(values.begin(), values.end());
    return;
  }
  const auto n = static_cast<std::size_t>(graph_.order());
  for (std::size_t a = 0; a < values.size(); ++a) {
    data_[(t.arc_tail(a) - 1) * n + (t.arc_head(a) - 1)] = values[a];
  }
}

std::vector<Complex> BlockState::to_matrix() const {
  if (backend_ == StateBackend::dense) return data_;
  const auto n = static_cast<std::size_t>(graph_.order());
  const NeighborTable& t = graph_.neighbors();
  std::vector<Complex> out(n * n);
  for (std::size_t a = 0; a < data_.size(); ++a) {
    out[(t.arc_tail(a) - 1) * n + (t.arc_head(a) - 1)] = data_[a];
  }
  return out;
}

double BlockState::norm_squared() const {
  const std::vector<Complex> arcs = arc_amplitudes();
  std::vector<double> norms(arcs.size());
  kernels::active().squared_norms(arcs.data(), arcs.size(), norms.data());
  double sum = 0.0;
  for (double v : norms) sum += v;
  return sum;
}

BlockState BlockState::with_backend(StateBackend backend) const {
  BlockState out(graph_, backend);
  out.time_ = time_;
  out.set_arc_amplitudes(arc_amplitudes());
  return out;
}

namespace {

void check_vertex(const Graph& g, Vertex x) {
  if (x < 1 || x > g.order()) {
    throw Error(ErrorCode::VertexOutOfRange, std::to_string(x));
  }
}

}  // namespace

BlockState init_localized(const Graph& g, Vertex x, Vertex c,
                          std::optional<StateBackend> backend) {
  check_vertex(g, x);
  BlockState s(g, backend);
  s.set_amplitude(x, c, 1.0);
  return s;
}

BlockState init_phi1(const Graph& g, Vertex x, std::optional<StateBackend> backend) {
  check_vertex(g, x);
  const int d = g.degree(x);
  if (d == 0) throw Error(ErrorCode::IsolatedVertex, std::to_string(x));
  BlockState s(g, backend);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (Vertex y : g.neighbors().neighbors(x)) s.set_amplitude(x, y, amp);
  return s;
}

BlockState init_phi2(const Graph& g, Vertex x, std::optional<StateBackend> backend) {
  check_vertex(g, x);
  const int d = g.degree(x);
  if (d < 2) {
    throw Error(ErrorCode::DegreeTooSmall,
                "phi2 at vertex " + std::to_string(x) + " needs degree >= 2, has " +
                    std::to_string(d));
  }
  BlockState s(g, backend);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  const auto row = g.neighbors().neighbors(x);
  for (std::size_t r = 0; r < row.size(); ++r) {
    Complex value = amp;
    if (r == 0) value = Complex(0.0, amp);
    if (r + 1 == row.size()) value = Complex(0.0, -amp);
    s.set_amplitude(x, row[r], value);
  }
  return s;
}

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> bytes;
  for (int k = 0; k < 8; ++k) bytes[k] = static_cast<char>((v >> (8 * k)) & 0xff);
  out.write(bytes.data(), bytes.size());
}

std::uint64_t get_u64(std::istream& in) {
  std::array<unsigned char, 8> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    throw Error(ErrorCode::IoError, "truncated state checkpoint");
  }
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(bytes[k]) << (8 * k);
  return v;
}

}  // namespace

void write_state(std::ostream& out, const BlockState& state) {
  put_u64(out, static_cast<std::uint64_t>(state.graph().order()));
  put_u64(out, state.time());
  out.put(static_cast<char>(state.backend()));
  for (const Complex& z : state.arc_amplitudes()) {
    put_u64(out, std::bit_cast<std::uint64_t>(z.real()));
    put_u64(out, std::bit_cast<std::uint64_t>(z.imag()));
  }
}

BlockState read_state(std::istream& in, const Graph& g) {
  const std::uint64_t n = get_u64(in);
  if (n != static_cast<std::uint64_t>(g.order())) {
    throw Error(ErrorCode::DimensionMismatch,
                "checkpoint has n=" + std::to_string(n) + ", graph has " +
                    std::to_string(g.order()));
  }
  const std::uint64_t t = get_u64(in);
  const int tag = in.get();
  if (tag != 0 && tag != 1) throw Error(ErrorCode::IoError, "bad backend tag");
  BlockState s(g, static_cast<StateBackend>(tag));
  s.set_time(t);
  std::vector<Complex> arcs(g.neighbors().arc_count());
  for (auto& z : arcs) {
    const double re = std::bit_cast<double>(get_u64(in));
    const double im = std::bit_cast<double>(get_u64(in));
    z = Complex(re, im);
  }
  s.set_arc_amplitudes(arcs);
  return s;
}

}  // namespace mlwalk
