#include "coxcss/chain.hpp"

#include "coxcss/error.hpp"

namespace coxcss {

BitMatrix boundary_matrix(const LayeredSubposet& subposet, int q) {
  if (q - 1 < subposet.lo || q > subposet.hi)
    throw Error(ErrorKind::InvalidInput, "boundary map " + std::to_string(q) + " outside subposet ranks");
  const BruhatInterval& iv = *subposet.interval;
  const auto lower = iv.layer(q - 1);
  const auto upper = iv.layer(q);
  BitMatrix m(lower.size(), upper.size());
  for (std::size_t j = 0; j < upper.size(); ++j)
    for (ElementId d : iv.down[iv.id(q, j)]) m.set(iv.position(d), j);
  for (const auto& e : lower) m.row_labels.push_back(format_word(e.word));
  for (const auto& e : upper) m.col_labels.push_back(format_word(e.word));
  return m;
}

void verify_chain_complex(const ChainComplex& complex) {
  for (std::size_t q = 0; q + 1 < complex.maps.size(); ++q) {
    if (!(complex.maps[q] * complex.maps[q + 1]).is_zero())
      throw Error(ErrorKind::Structural, "boundary composite d_" + std::to_string(q) + " d_" +
                                             std::to_string(q + 1) + " is nonzero");
  }
}

ChainComplex to_chain_complex(const LayeredSubposet& subposet) {
  ChainComplex c;
  c.lowest_degree = subposet.lo;
  for (int r = subposet.lo; r <= subposet.hi; ++r) c.dims.push_back(subposet.layer_size(r));
  for (int q = subposet.lo + 1; q <= subposet.hi; ++q) c.maps.push_back(boundary_matrix(subposet, q));
  verify_chain_complex(c);
  return c;
}

std::vector<std::size_t> compute_betti(const ChainComplex& complex) {
  if (complex.maps.size() + 1 != complex.dims.size() && !(complex.maps.empty() && complex.dims.size() <= 1))
    throw Error(ErrorKind::InvalidInput, "chain complex has inconsistent dimensions");
  std::vector<std::size_t> ranks;
  for (const auto& m : complex.maps) ranks.push_back(rank_gf2(m));
  std::vector<std::size_t> betti;
  for (std::size_t q = 0; q < complex.dims.size(); ++q) {
    const std::size_t out_rank = q > 0 ? ranks[q - 1] : 0;
    const std::size_t in_rank = q < ranks.size() ? ranks[q] : 0;
    betti.push_back(complex.dims[q] - out_rank - in_rank);
  }
  return betti;
}

}  // namespace coxcss
