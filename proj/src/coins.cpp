#include "mlwalk/coins.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mlwalk/error.hpp"

namespace mlwalk {

CoinMatrix::CoinMatrix(int dim)
    : dim_(dim),
      data_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {}

CoinMatrix CoinMatrix::from_rows(int dim, std::span<const Complex> row_major) {
  if (dim < 1 || row_major.size() != static_cast<std::size_t>(dim) * dim) {
    throw Error(ErrorCode::DimensionMismatch, "coin entries do not form a square");
  }
  CoinMatrix m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      m(i, j) = row_major[static_cast<std::size_t>(i) * dim + j];
  return m;
}

CoinMatrix CoinMatrix::adjoint() const {
  CoinMatrix m(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m(i, j) = std::conj((*this)(j, i));
  return m;
}

double CoinMatrix::unitarity_error() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      Complex left{};   // (C C^+)_ij
      Complex right{};  // (C^+ C)_ij
      for (int k = 0; k < dim_; ++k) {
        left += (*this)(i, k) * std::conj((*this)(j, k));
        right += std::conj((*this)(k, i)) * (*this)(k, j);
      }
      const Complex id = i == j ? 1.0 : 0.0;
      worst = std::max({worst, std::abs(left - id), std::abs(right - id)});
    }
  }
  return worst;
}

CoinMatrix fourier_coin(int d) {
  if (d < 1) throw Error(ErrorCode::InvalidParameter, "coin dimension must be >= 1");
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  // Quarter-turn phases are written exactly (1, i, -1, -i).
  static constexpr Complex quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  CoinMatrix m(d);
  for (int r = 0; r < d; ++r) {
    for (int s = 0; s < d; ++s) {
      const long k = (static_cast<long>(r) * s) % d;
      Complex phase;
      if ((4 * k) % d == 0) {
        phase = quarter[(4 * k) / d];
      } else {
        phase = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / d);
      }
      m(r, s) = phase * scale;
    }
  }
  return m;
}

CoinMatrix grover_coin(int d) {
  if (d < 1) throw Error(ErrorCode::InvalidParameter, "coin dimension must be >= 1");
  CoinMatrix m(d);
  const double diag = static_cast<double>(2 - d) / d;
  const double off = 2.0 / d;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = i == j ? diag : off;
  return m;
}

std::string_view to_string(CoinFamily family) {
  switch (family) {
    case CoinFamily::fourier: return "fourier";
    case CoinFamily::grover: return "grover";
    case CoinFamily::custom: return "custom";
  }
  return "unknown";
}

CoinFamily parse_coin_family(std::string_view name) {
  if (name == "fourier") return CoinFamily::fourier;
  if (name == "grover") return CoinFamily::grover;
  if (name == "custom") return CoinFamily::custom;
  throw Error(ErrorCode::InvalidParameter, "unknown coin family '" + std::string(name) + "'");
}

CoinAssignment CoinAssignment::adjoint() const {
  CoinAssignment out = *this;
  for (auto& c : out.coins_) c = c.adjoint();
  return out;
}

namespace {

void require_no_isolated(const Graph& g) {
  for (Vertex x = 1; x <= g.order(); ++x) {
    if (g.degree(x) == 0) throw Error(ErrorCode::IsolatedVertex, std::to_string(x));
  }
}

}  // namespace

CoinAssignment assign_coins(const Graph& g, CoinFamily family) {
  if (family == CoinFamily::custom) {
    throw Error(ErrorCode::InvalidParameter, "custom coins need explicit matrices");
  }
  require_no_isolated(g);
  CoinAssignment out;
  out.graph_ = g;
  out.family_ = family;
  out.coins_.reserve(static_cast<std::size_t>(g.order()));
  for (Vertex x = 1; x <= g.order(); ++x) {
    const int d = g.degree(x);
    out.coins_.push_back(family == CoinFamily::fourier ? fourier_coin(d) : grover_coin(d));
  }
  return out;
}

CoinAssignment assign_coins(const Graph& g, const std::map<Vertex, CoinMatrix>& custom) {
  require_no_isolated(g);
  CoinAssignment out;
  out.graph_ = g;
  out.family_ = CoinFamily::custom;
  out.coins_.reserve(static_cast<std::size_t>(g.order()));
  for (Vertex x = 1; x <= g.order(); ++x) {
    const auto it = custom.find(x);
    if (it == custom.end()) {
      throw Error(ErrorCode::InvalidParameter, "no coin for vertex " + std::to_string(x));
    }
    if (it->second.dim() != g.degree(x)) {
      throw Error(ErrorCode::DimensionMismatch,
                  "coin at " + std::to_string(x) + " has dim " +
                      std::to_string(it->second.dim()) + ", degree " +
                      std::to_string(g.degree(x)));
    }
    if (!it->second.is_unitary()) {
      throw Error(ErrorCode::NonUnitaryCoin, std::to_string(x));
    }
    out.coins_.push_back(it->second);
  }
  return out;
}

}  // namespace mlwalk
