#pragma once

#include <iosfwd>

#include "buyhold/game.hpp"

namespace buyhold {

// Row-major CSV without a header. Throws ParseError on malformed or ragged
// rows and NonPositiveEntry on entries that are not strictly positive.
PayoffMatrix<double> load_matrix_csv(std::istream& in);
void write_matrix_csv(std::ostream& out, const MatrixX<double>& m);

}  // namespace buyhold
