#pragma once

#include "coxcss/bit_matrix.hpp"

#include <iosfwd>
#include <string>

namespace coxcss {

/// MacKay alist (1-based, zero padded).
void write_alist(std::ostream& os, const BitMatrix& m);
BitMatrix read_alist(std::istream& is);
std::string to_alist(const BitMatrix& m);
BitMatrix from_alist(const std::string& text);

/// MatrixMarket coordinate pattern (1-based).
void write_matrix_market(std::ostream& os, const BitMatrix& m);
BitMatrix read_matrix_market(std::istream& is);

}  // namespace coxcss
