#include "coxcss/spheres.hpp"

#include "coxcss/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace coxcss {

namespace {

void require_ranks(const LayeredSubposet& s, int lo, int hi, const char* what) {
  if (lo < s.lo || hi > s.hi)
    throw Error(ErrorKind::InvalidInput, std::string(what) + " needs ranks " + std::to_string(lo) + ".." +
                                             std::to_string(hi) + " inside the subposet");
}

// Elements of the interval strictly between b and t.
std::vector<ElementId> up_closure_layer(const BruhatInterval& iv, const std::vector<ElementId>& from) {
  std::set<ElementId> out;
  for (ElementId x : from)
    for (ElementId u : iv.up[x]) out.insert(u);
  return {out.begin(), out.end()};
}

std::vector<ElementId> down_closure_layer(const BruhatInterval& iv, const std::vector<ElementId>& from) {
  std::set<ElementId> out;
  for (ElementId x : from)
    for (ElementId d : iv.down[x]) out.insert(d);
  return {out.begin(), out.end()};
}

std::vector<ElementId> intersect(const std::vector<ElementId>& a, const std::vector<ElementId>& b) {
  std::vector<ElementId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Layers of the open interval (b, t), from rank(b)+1 to rank(t)-1.
std::vector<std::vector<ElementId>> open_layers(const BruhatInterval& iv, ElementId b, ElementId t) {
  const int len = iv.rank_of(t) - iv.rank_of(b);
  std::vector<std::vector<ElementId>> up{{b}}, down{{t}};
  for (int i = 1; i < len; ++i) {
    up.push_back(up_closure_layer(iv, up.back()));
    down.push_back(down_closure_layer(iv, down.back()));
  }
  std::vector<std::vector<ElementId>> out;
  for (int i = 1; i < len; ++i) out.push_back(intersect(up[i], down[len - i]));
  return out;
}

bool covers(const BruhatInterval& iv, ElementId lower, ElementId upper) {
  const auto& d = iv.down[upper];
  return std::binary_search(d.begin(), d.end(), lower);
}

std::size_t count_components(const BruhatInterval& iv, const std::vector<ElementId>& lower,
                             const std::vector<ElementId>& upper) {
  std::map<ElementId, ElementId> parent;
  std::function<ElementId(ElementId)> find = [&](ElementId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (ElementId x : lower) parent[x] = x;
  for (ElementId x : upper) parent[x] = x;
  for (ElementId u : upper)
    for (ElementId l : lower)
      if (covers(iv, l, u)) parent[find(l)] = find(u);
  std::set<ElementId> roots;
  for (auto& [x, _] : parent) roots.insert(find(x));
  return roots.size();
}

}  // namespace

std::vector<DiamondRecord> enumerate_diamonds(const LayeredSubposet& subposet, int p) {
  require_ranks(subposet, p - 1, p + 1, "diamond enumeration");
  const BruhatInterval& iv = *subposet.interval;
  std::vector<DiamondRecord> out;
  for (std::size_t xi = 0; xi < iv.layer_size(p - 1); ++xi) {
    const ElementId x = iv.id(p - 1, xi);
    std::map<ElementId, std::vector<ElementId>> mids;
    for (ElementId q : iv.up[x])
      for (ElementId z : iv.up[q]) mids[z].push_back(q);
    for (auto& [z, m] : mids) {
      if (m.size() != 2)
        throw Error(ErrorKind::Structural, "length-2 interval with " + std::to_string(m.size()) + " middle elements");
      out.push_back(DiamondRecord{x, z, xi, iv.position(z), m});
    }
  }
  return out;
}

std::vector<CrownRecord> enumerate_crowns(const LayeredSubposet& subposet, int p, CrownSide side) {
  const int blo = side == CrownSide::Left ? p - 2 : p - 1;
  require_ranks(subposet, blo, blo + 3, "crown enumeration");
  const BruhatInterval& iv = *subposet.interval;
  std::vector<CrownRecord> out;
  for (std::size_t bi = 0; bi < iv.layer_size(blo); ++bi) {
    const ElementId b = iv.id(blo, bi);
    const auto u1 = up_closure_layer(iv, {b});
    const auto u2 = up_closure_layer(iv, u1);
    const auto u3 = up_closure_layer(iv, u2);
    for (ElementId t : u3) {
      CrownRecord c;
      c.side = side;
      c.bottom = b;
      c.top = t;
      c.upper = intersect(u2, iv.down[t]);
      for (ElementId l : u1)
        if (std::any_of(c.upper.begin(), c.upper.end(), [&](ElementId q) { return covers(iv, l, q); }))
          c.lower.push_back(l);
      const auto& spliced = side == CrownSide::Left ? c.lower : c.upper;
      for (ElementId e : spliced) c.rows.push_back(iv.position(e));
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<SphereRecord> enumerate_s2(const LayeredSubposet& subposet, int p) {
  require_ranks(subposet, p - 2, p + 2, "S^2 enumeration");
  const BruhatInterval& iv = *subposet.interval;
  std::vector<SphereRecord> out;
  for (std::size_t bi = 0; bi < iv.layer_size(p - 2); ++bi) {
    const ElementId b = iv.id(p - 2, bi);
    std::vector<ElementId> frontier{b};
    for (int i = 0; i < 4; ++i) frontier = up_closure_layer(iv, frontier);
    for (ElementId t : frontier) {
      auto layers = open_layers(iv, b, t);
      SphereRecord s;
      s.bottom = b;
      s.top = t;
      s.vertices = std::move(layers[0]);
      s.edges = std::move(layers[1]);
      s.faces = std::move(layers[2]);
      for (ElementId v : s.vertices) s.vertex_rows.push_back(iv.position(v));
      for (ElementId f : s.faces) s.face_rows.push_back(iv.position(f));
      out.push_back(std::move(s));
    }
  }
  return out;
}

Verdict verify_diamond(const BruhatInterval& iv, const DiamondRecord& d) {
  if (d.middle.size() != 2) return {false, "diamond must have two middle elements"};
  for (ElementId m : d.middle)
    if (!covers(iv, d.x, m) || !covers(iv, m, d.z)) return {false, "middle element not between x and z"};
  return {};
}

Verdict verify_crown(const BruhatInterval& iv, const CrownRecord& c) {
  if (iv.rank_of(c.top) - iv.rank_of(c.bottom) != 3) return {false, "crown interval must have length 3"};
  const std::size_t k = c.lower.size();
  if (k < 2) return {false, "crown needs k >= 2"};
  if (c.upper.size() != k) return {false, "crown middle layers differ in size"};
  for (ElementId l : c.lower)
    if (!covers(iv, c.bottom, l)) return {false, "lower middle element does not cover bottom"};
  for (ElementId u : c.upper)
    if (!covers(iv, u, c.top)) return {false, "upper middle element not covered by top"};
  for (ElementId l : c.lower) {
    const auto deg = std::count_if(c.upper.begin(), c.upper.end(), [&](ElementId u) { return covers(iv, l, u); });
    if (deg != 2) return {false, "crown vertex of degree " + std::to_string(deg)};
  }
  for (ElementId u : c.upper) {
    const auto deg = std::count_if(c.lower.begin(), c.lower.end(), [&](ElementId l) { return covers(iv, l, u); });
    if (deg != 2) return {false, "crown vertex of degree " + std::to_string(deg)};
  }
  if (count_components(iv, c.lower, c.upper) != 1) return {false, "crown middle is not a single cycle"};
  return {};
}

Verdict verify_s2(const BruhatInterval& iv, const SphereRecord& s) {
  if (iv.rank_of(s.top) - iv.rank_of(s.bottom) != 4) return {false, "S^2 interval must have length 4"};
  const long v = static_cast<long>(s.vertices.size());
  const long e = static_cast<long>(s.edges.size());
  const long f = static_cast<long>(s.faces.size());
  if (v - e + f != 2) return {false, "Euler characteristic " + std::to_string(v - e + f) + " != 2"};
  for (ElementId q : s.edges) {
    const auto nv = std::count_if(s.vertices.begin(), s.vertices.end(), [&](ElementId x) { return covers(iv, x, q); });
    const auto nf = std::count_if(s.faces.begin(), s.faces.end(), [&](ElementId z) { return covers(iv, q, z); });
    if (nv != 2) return {false, "edge with " + std::to_string(nv) + " vertices"};
    if (nf != 2) return {false, "edge in " + std::to_string(nf) + " faces"};
  }
  if (count_components(iv, s.vertices, s.edges) != 1) return {false, "1-skeleton is disconnected"};
  return {};
}

nlohmann::json sphere_census(const LayeredSubposet& subposet, int p) {
  const BruhatInterval& iv = *subposet.interval;
  nlohmann::json out{{"p", p}};
  if (p - 1 >= subposet.lo && p + 1 <= subposet.hi) {
    const auto ds = enumerate_diamonds(subposet, p);
    std::size_t bad = 0;
    for (const auto& d : ds) bad += !verify_diamond(iv, d);
    out["diamonds"] = {{"count", ds.size()}, {"failed", bad}};
  }
  for (CrownSide side : {CrownSide::Left, CrownSide::Right}) {
    const int blo = side == CrownSide::Left ? p - 2 : p - 1;
    if (blo < subposet.lo || blo + 3 > subposet.hi) continue;
    const auto cs = enumerate_crowns(subposet, p, side);
    std::map<std::size_t, std::size_t> hist;
    std::size_t bad = 0;
    for (const auto& c : cs) {
      bad += !verify_crown(iv, c);
      ++hist[c.k()];
    }
    nlohmann::json h = nlohmann::json::object();
    for (auto [k, n] : hist) h[std::to_string(k)] = n;
    out[side == CrownSide::Left ? "left_crowns" : "right_crowns"] = {{"count", cs.size()}, {"failed", bad}, {"k_histogram", h}};
  }
  if (p - 2 >= subposet.lo && p + 2 <= subposet.hi) {
    const auto ss = enumerate_s2(subposet, p);
    std::size_t bad = 0;
    for (const auto& s : ss) bad += !verify_s2(iv, s);
    out["s2"] = {{"count", ss.size()}, {"failed", bad}};
  }
  return out;
}

}  // namespace coxcss
