#include "mlwalk/series.hpp"

#include <cstdio>
#include <ostream>
#include <string>

#include "mlwalk/error.hpp"

namespace mlwalk {

std::string_view to_string(WalkerKind kind) {
  return kind == WalkerKind::quantum ? "quantum" : "classical";
}

void ProbabilitySeries::push(std::span<const double> distribution) {
  if (distribution.size() != static_cast<std::size_t>(nodes_)) {
    throw Error(ErrorCode::DimensionMismatch,
                "series has " + std::to_string(nodes_) + " nodes, got " +
                    std::to_string(distribution.size()));
  }
  data_.insert(data_.end(), distribution.begin(), distribution.end());
}

void write_series_csv(std::ostream& out, const ProbabilitySeries& series) {
  out << 't';
  for (int x = 1; x <= series.node_count(); ++x) out << ",node_" << x;
  out << '\n';
  char buf[32];
  for (std::size_t t = 0; t < series.length(); ++t) {
    out << t;
    for (double p : series.at(t)) {
      std::snprintf(buf, sizeof buf, "%.17g", p);
      out << ',' << buf;
    }
    out << '\n';
  }
}

}  // namespace mlwalk
