#pragma once

#include "coxcss/css_code.hpp"
#include "coxcss/spheres.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace coxcss {

enum class BiasMode { Fixed, CrownFraction, LayerFraction };

struct SpliceConfig {
  std::size_t kappa = 10;   // iterations
  std::size_t lambda = 1;   // max overlap with already spliced rows
  std::size_t cutoff = 50;  // attempts per iteration
  BiasMode bias_mode = BiasMode::CrownFraction;
  double bias = 0.5;  // used when bias_mode == Fixed
  std::uint64_t seed = 0;
  SideConvention convention = SideConvention::LowerX;
};

/// Probability of drawing a left crown.
double bias_probability(const SpliceConfig& config, std::size_t left_crowns, std::size_t right_crowns,
                        std::size_t lower_layer, std::size_t upper_layer);

/// Each group becomes one row (sum of the original rows); every row used in
/// some group is deleted. Surviving rows keep their order, new rows follow.
CssCode splice_rows(const CssCode& code, CheckType side, const std::vector<std::vector<std::size_t>>& groups);

/// Stochastic crown splicing. The code must come straight from css_from_triple
/// at the same p (row indices are layer positions).
CssCode crown_splice(const CssCode& code, const std::vector<CrownRecord>& left, const std::vector<CrownRecord>& right,
                     const SpliceConfig& config);

/// Like crown_splice, but each accepted S^2 splices its vertex rows and its face rows.
CssCode s2_splice(const CssCode& code, const std::vector<SphereRecord>& spheres, const SpliceConfig& config);

enum class SpliceSides { X, Z, Both };

/// Uniformly random perfect matching of rows on the chosen sides; with an odd
/// row count one random row stays unspliced.
CssCode random_splice(const CssCode& code, SpliceSides sides, std::uint64_t seed);

/// Removes `count` diamonds that share no check row (x row from the lower
/// matrix, z row from the upper), then prunes.
CssCode diamond_removal(const CssCode& code, const std::vector<DiamondRecord>& diamonds, std::size_t count,
                        std::uint64_t seed, SideConvention convention = SideConvention::LowerX);

enum class FoldVariant { Single, Fused };

/// Folded code from layers p-2..p+2: qubits l_{p-1} + l_{p+1}, Z checks l_p,
/// X checks blockdiag(K_{p-1}, K_{p+2}^T) (single) or [K_{p-1} | K_{p+2}^T] (fused).
CssCode fold(const LayeredSubposet& subposet, int p, FoldVariant variant);

/// Metacheck code of the length-6 fold (layers p-3..p+3): qubits l_{p-2} + l_{p+2},
/// H_Z = blockdiag(K_{p-1}, K_{p+2}^T)^T, H_X = [K_{p-2} | K_{p+3}^T].
CssCode extract_metacheck_code(const LayeredSubposet& subposet, int p);

/// Metacheck matrix M with M H_X = 0 for the single fold of a length-6 complex.
BitMatrix fold_metacheck_matrix(const LayeredSubposet& subposet, int p);

}  // namespace coxcss
