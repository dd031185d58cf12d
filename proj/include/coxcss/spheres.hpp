#pragma once

#include "coxcss/bruhat.hpp"

#include <string>
#include <vector>

namespace coxcss {

/// Length-2 interval [x, z] with x in layer p-1 and z in layer p+1.
struct DiamondRecord {
  ElementId x = 0;
  ElementId z = 0;
  std::size_t x_row = 0;  // position of x in layer p-1
  std::size_t z_row = 0;  // position of z in layer p+1
  std::vector<ElementId> middle;
};

enum class CrownSide { Left, Right };

/// Length-3 interval [bottom, top] whose open interval is a k-crown.
/// Left: bottom in p-2, top in p+1, spliceable rows in layer p-1.
/// Right: bottom in p-1, top in p+2, spliceable rows in layer p+1.
struct CrownRecord {
  CrownSide side = CrownSide::Left;
  ElementId bottom = 0;
  ElementId top = 0;
  std::vector<ElementId> lower;  // middle layer adjacent to bottom
  std::vector<ElementId> upper;  // middle layer adjacent to top
  std::vector<std::size_t> rows;
  std::size_t k() const { return lower.size(); }
};

/// Length-4 interval [bottom, top], bottom in p-2, top in p+2.
struct SphereRecord {
  ElementId bottom = 0;
  ElementId top = 0;
  std::vector<ElementId> vertices;  // layer p-1
  std::vector<ElementId> edges;     // layer p
  std::vector<ElementId> faces;     // layer p+1
  std::vector<std::size_t> vertex_rows;
  std::vector<std::size_t> face_rows;
};

struct Verdict {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

std::vector<DiamondRecord> enumerate_diamonds(const LayeredSubposet& subposet, int p);
std::vector<CrownRecord> enumerate_crowns(const LayeredSubposet& subposet, int p, CrownSide side);
std::vector<SphereRecord> enumerate_s2(const LayeredSubposet& subposet, int p);

Verdict verify_diamond(const BruhatInterval& interval, const DiamondRecord& d);
Verdict verify_crown(const BruhatInterval& interval, const CrownRecord& c);
Verdict verify_s2(const BruhatInterval& interval, const SphereRecord& s);

/// Counts and structural verdicts for diamonds, crowns and S^2 around p.
nlohmann::json sphere_census(const LayeredSubposet& subposet, int p);

}  // namespace coxcss
