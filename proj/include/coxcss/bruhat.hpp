#pragma once

#include "coxcss/coxeter.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>

namespace coxcss {

using ElementId = std::uint32_t;

/// Hasse diagram of a Bruhat interval [bottom, top]. Elements are stored
/// rank by rank (ascending); within a rank they are sorted by canonical key,
/// so the position of an element inside its layer is reproducible.
struct BruhatInterval {
  std::shared_ptr<const CoxeterSystem> system;
  GroupElement bottom;
  GroupElement top;
  std::vector<GroupElement> elements;
  std::vector<std::size_t> layer_offsets;  // size = number of ranks + 1
  std::vector<std::vector<ElementId>> down;  // lower covers
  std::vector<std::vector<ElementId>> up;    // upper covers

  int min_rank() const { return bottom.length; }
  int max_rank() const { return top.length; }
  std::size_t size() const { return elements.size(); }
  std::size_t num_covers() const;
  std::size_t layer_size(int rank) const;
  std::vector<std::size_t> layer_sizes() const;
  std::span<const GroupElement> layer(int rank) const;
  ElementId id(int rank, std::size_t position) const;
  int rank_of(ElementId id) const { return elements[id].length; }
  std::size_t position(ElementId id) const { return id - layer_offsets[elements[id].length - min_rank()]; }
};

struct IntervalOptions {
  std::size_t size_cap = 5'000'000;
};

/// Bruhat order test via the lifting property.
bool bruhat_leq(const CoxeterSystem& system, const GroupElement& u, const GroupElement& w);

/// Lower covers by single-letter deletion from the canonical reduced word.
std::vector<GroupElement> lower_covers(const CoxeterSystem& system, const GroupElement& w);

/// Coatoms through the du Cloux recursion; same set as lower_covers.
std::vector<GroupElement> coatoms(const CoxeterSystem& system, const GroupElement& w);

BruhatInterval build_interval(std::shared_ptr<const CoxeterSystem> system, const GroupElement& bottom,
                              const GroupElement& top, const IntervalOptions& options = {});

/// Ranks lo..hi (inclusive) of a parent interval.
struct LayeredSubposet {
  std::shared_ptr<const BruhatInterval> interval;
  int lo = 0;
  int hi = 0;

  int center() const { return (lo + hi) / 2; }
  int half_width() const { return (hi - lo) / 2; }
  int num_layers() const { return hi - lo + 1; }
  std::size_t layer_size(int rank) const { return interval->layer_size(rank); }
};

/// Layers p-k .. p+k; requires bottom.length <= p-k and p+k <= top.length.
LayeredSubposet layered_subposet(std::shared_ptr<const BruhatInterval> interval, int p, int k);
LayeredSubposet rank_range(std::shared_ptr<const BruhatInterval> interval, int lo, int hi);
/// Open interval (bottom, top): ranks bottom+1 .. top-1.
LayeredSubposet open_interval(std::shared_ptr<const BruhatInterval> interval);

nlohmann::json to_json(const BruhatInterval& interval);

void save_interval_cache(const BruhatInterval& interval, const std::string& path);
/// Returns nullptr when the file is missing or was built for a different
/// (group, bottom, top) triple.
std::shared_ptr<BruhatInterval> load_interval_cache(const std::string& path,
                                                    std::shared_ptr<const CoxeterSystem> system,
                                                    const GroupElement& bottom, const GroupElement& top);

}  // namespace coxcss
