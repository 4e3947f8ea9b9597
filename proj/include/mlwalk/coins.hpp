#pragma once

#include <complex>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "mlwalk/graph.hpp"

namespace mlwalk {

using Complex = std::complex<double>;

// Dense square complex matrix, stored column-major so a coin kernel can
// stream one column per input amplitude.
class CoinMatrix {
 public:
  CoinMatrix() = default;
  explicit CoinMatrix(int dim);
  // Builds from a row-major list of dim*dim entries.
  static CoinMatrix from_rows(int dim, std::span<const Complex> row_major);

  int dim() const { return dim_; }
  // 0-based (row, column).
  Complex operator()(int i, int j) const { return data_[index(i, j)]; }
  Complex& operator()(int i, int j) { return data_[index(i, j)]; }
  std::span<const Complex> column_major() const { return data_; }

  CoinMatrix adjoint() const;
  // max(|C C^+ - I|, |C^+ C - I|) entrywise.
  double unitarity_error() const;
  bool is_unitary(double tol = 1e-12) const { return unitarity_error() <= tol; }

  friend bool operator==(const CoinMatrix&, const CoinMatrix&) = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(dim_) +
           static_cast<std::size_t>(i);
  }

  int dim_ = 0;
  std::vector<Complex> data_;
};

// Entry (r, s) = exp(2 pi i r s / d) / sqrt(d) for 0-based r, s.
CoinMatrix fourier_coin(int d);
// Diagonal (2 - d)/d, off-diagonal 2/d.
CoinMatrix grover_coin(int d);

enum class CoinFamily { fourier, grover, custom };
std::string_view to_string(CoinFamily family);
CoinFamily parse_coin_family(std::string_view name);

// Per-vertex coins C^(x), each of dimension d_x, indexed by the coin labels
// f_x(1) .. f_x(d_x).
class CoinAssignment {
 public:
  CoinAssignment() = default;

  const Graph& graph() const { return graph_; }
  CoinFamily family() const { return family_; }
  const CoinMatrix& coin(Vertex x) const { return coins_[x - 1]; }
  CoinAssignment adjoint() const;

 private:
  friend CoinAssignment assign_coins(const Graph&, CoinFamily);
  friend CoinAssignment assign_coins(const Graph&, const std::map<Vertex, CoinMatrix>&);

  Graph graph_;
  CoinFamily family_ = CoinFamily::fourier;
  std::vector<CoinMatrix> coins_;
};

// Throws IsolatedVertex for d_x = 0, InvalidParameter for family custom.
CoinAssignment assign_coins(const Graph& g, CoinFamily family);
// Every vertex needs an entry. Throws IsolatedVertex, DimensionMismatch,
// NonUnitaryCoin (tolerance 1e-12), InvalidParameter (missing vertex).
CoinAssignment assign_coins(const Graph& g,
                            const std::map<Vertex, CoinMatrix>& custom);

}  // namespace mlwalk
