#pragma once

#include "coxcss/css_code.hpp"

#include <cstdint>
#include <optional>

namespace coxcss {

/// Distance of one logical type. side X: X logicals (ker H_Z outside
/// rowspace H_X); side Z: Z logicals (ker H_X outside rowspace H_Z).
struct DistanceReport {
  CheckType side = CheckType::Z;
  std::string method;
  std::optional<std::size_t> exact;
  std::size_t upper_bound = 0;
  BitVector witness;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

/// Gray-code walk over the kernel; throws Error(CapExceeded) when the kernel
/// dimension exceeds dim_cap and Error(InvalidInput) when k = 0.
DistanceReport exact_distance(const CssCode& code, CheckType side, std::size_t dim_cap = 28);

/// Random information sets: permute columns, row-reduce a kernel basis, keep the
/// lightest row outside the stabilizer space. Deterministic in (seed, trials).
DistanceReport ris_upper_bound(const CssCode& code, CheckType side, std::size_t trials, std::uint64_t seed);

/// Exhaustive search over supports of weight <= max_weight. When a logical is
/// found its weight is the exact distance; otherwise distance > max_weight.
struct BoundedSearch {
  std::optional<std::size_t> distance;
  std::size_t max_weight = 0;
  BitVector witness;
};
BoundedSearch low_weight_search(const CssCode& code, CheckType side, std::size_t max_weight);

/// Greedy stabilizer reduction of the logical basis; an upper bound only.
std::size_t min_logical_weight(const CssCode& code, CheckType side);

/// Checks that v is a logical of the given type (in the kernel, not a stabilizer).
bool is_logical(const CssCode& code, CheckType side, const BitVector& v);

nlohmann::json to_json(const DistanceReport& r);

}  // namespace coxcss
