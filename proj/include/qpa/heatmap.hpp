#pragma once

#include <iosfwd>
#include <vector>

namespace qpa {

// Rows are time steps, columns are cells.
using ProbabilityMatrix = std::vector<std::vector<double>>;

enum class CsvPrecision {
  Full,     // %.17g, round-trips every double
  Compat6,  // %f, six decimals
};

// One line per row, values separated by ',' and rows terminated by '\n'.
void write_heatmap_csv(std::ostream& out, const ProbabilityMatrix& rows, CsvPrecision precision = CsvPrecision::Full);

enum class PgmEncoding { Ascii /* P2 */, Binary /* P5 */ };

// Grayscale image with maxval 255. Pixel = round(255 * p / pmax) with pmax the
// largest probability in the matrix; an all-zero matrix maps to black.
void write_heatmap_pgm(std::ostream& out, const ProbabilityMatrix& rows, PgmEncoding encoding = PgmEncoding::Ascii);

}  // namespace qpa
