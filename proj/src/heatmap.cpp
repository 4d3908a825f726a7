#include "qpa/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace qpa {

namespace {

std::size_t common_width(const ProbabilityMatrix& rows) {
  if (rows.empty()) {
    throw std::invalid_argument("heatmap needs at least one row");
  }
  const std::size_t width = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != width) {
      throw std::invalid_argument("heatmap rows differ in length");
    }
  }
  return width;
}

}  // namespace

void write_heatmap_csv(std::ostream& out, const ProbabilityMatrix& rows, CsvPrecision precision) {
  common_width(rows);
  const char* fmt = precision == CsvPrecision::Full ? "%.17g" : "%f";
  char buf[64];
  for (const auto& row : rows) {
    for (std::size_t x = 0; x < row.size(); ++x) {
      if (x > 0) out << ',';
      std::snprintf(buf, sizeof buf, fmt, row[x]);
      out << buf;
    }
    out << '\n';
  }
}

void write_heatmap_pgm(std::ostream& out, const ProbabilityMatrix& rows, PgmEncoding encoding) {
  const std::size_t width = common_width(rows);
  double top = 0.0;
  for (const auto& r : rows) {
    for (double v : r) top = std::max(top, v);
  }
  auto pixel = [top](double v) -> int {
    if (top <= 0.0) return 0;
    return static_cast<int>(std::lround(std::clamp(v / top, 0.0, 1.0) * 255.0));
  };

  out << (encoding == PgmEncoding::Ascii ? "P2" : "P5") << '\n' << width << ' ' << rows.size() << "\n255\n";
  for (const auto& row : rows) {
    for (std::size_t x = 0; x < width; ++x) {
      if (encoding == PgmEncoding::Ascii) {
        if (x > 0) out << ' ';
        out << pixel(row[x]);
      } else {
        out.put(static_cast<char>(static_cast<unsigned char>(pixel(row[x]))));
      }
    }
    if (encoding == PgmEncoding::Ascii) out << '\n';
  }
}

}  // namespace qpa
