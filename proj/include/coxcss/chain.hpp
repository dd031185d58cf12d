#pragma once

#include "coxcss/bit_matrix.hpp"
#include "coxcss/bruhat.hpp"

#include <vector>

namespace coxcss {

/// Chain complex over GF(2). maps[q] : C_{q+1} -> C_q has shape dims[q] x dims[q+1].
struct ChainComplex {
  int lowest_degree = 0;
  std::vector<std::size_t> dims;
  std::vector<BitMatrix> maps;
};

/// Incidence between layer q-1 (rows) and layer q (columns) of the subposet.
BitMatrix boundary_matrix(const LayeredSubposet& subposet, int q);

/// All consecutive boundary maps; verifies d o d = 0 (throws Error(Structural)).
ChainComplex to_chain_complex(const LayeredSubposet& subposet);

/// Throws Error(Structural) when some composite maps[q] * maps[q+1] is nonzero.
void verify_chain_complex(const ChainComplex& complex);

/// Betti numbers with zero maps beyond both ends.
std::vector<std::size_t> compute_betti(const ChainComplex& complex);

}  // namespace coxcss
