#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "mlwalk/coins.hpp"
#include "mlwalk/graph.hpp"

namespace mlwalk {

enum class StateBackend : std::uint8_t { dense = 0, arc_list = 1 };

// arc_list when 2m < n^2 / 4, dense otherwise.
StateBackend choose_backend(const Graph& g);

// The block matrix N_t: entry (x, y) is the amplitude of position x with
// coin label y, nonzero only where a_xy = 1.
//
// dense storage holds the full row-major n*n matrix; arc_list storage holds
// only the 2m supported entries in arc order (row-major over the support).
class BlockState {
 public:
  BlockState() = default;
  // Zero state.
  explicit BlockState(Graph g, std::optional<StateBackend> backend = std::nullopt);

  const Graph& graph() const { return graph_; }
  StateBackend backend() const { return backend_; }
  std::uint64_t time() const { return time_; }
  void set_time(std::uint64_t t) { time_ = t; }

  // Zero off the support.
  Complex amplitude(Vertex x, Vertex y) const;
  // Throws NotAdjacent off the support.
  void set_amplitude(Vertex x, Vertex y, Complex value);

  // Supported amplitudes in arc order, independent of backend.
  std::vector<Complex> arc_amplitudes() const;
  void set_arc_amplitudes(std::span<const Complex> values);
  // Full n*n row-major matrix.
  std::vector<Complex> to_matrix() const;

  double norm_squared() const;
  BlockState with_backend(StateBackend backend) const;

  // Backend-specific raw storage (see class comment for layout).
  std::span<const Complex> storage() const { return data_; }
  std::span<Complex> storage() { return data_; }

 private:
  Graph graph_;
  StateBackend backend_ = StateBackend::dense;
  std::uint64_t time_ = 0;
  std::vector<Complex> data_;
};

// |x>_p (x) |c>_c. Throws NotAdjacent when c is not in B_x.
BlockState init_localized(const Graph& g, Vertex x, Vertex c,
                          std::optional<StateBackend> backend = std::nullopt);
// |x>_p (x) uniform superposition over B_x. Throws IsolatedVertex.
BlockState init_phi1(const Graph& g, Vertex x,
                     std::optional<StateBackend> backend = std::nullopt);
// |x>_p (x) (i|f_x(1)> + sum_{1<r<d}|f_x(r)> - i|f_x(d)>)/sqrt(d).
// Throws DegreeTooSmall when d_x < 2.
BlockState init_phi2(const Graph& g, Vertex x,
                     std::optional<StateBackend> backend = std::nullopt);

// Binary checkpoint, little-endian:
//   u64 n | u64 t | u8 backend tag | 2m x (f64 re, f64 im)
// where the amplitude pairs cover the supported arcs in row-major order.
void write_state(std::ostream& out, const BlockState& state);
// Throws IoError on truncated input, DimensionMismatch when n differs.
BlockState read_state(std::istream& in, const Graph& g);

}  // namespace mlwalk
