#include "support.hpp"

#include "coxcss/bruhat.hpp"
#include "coxcss/spheres.hpp"

#include <doctest.h>

#include <set>

using namespace coxcss;

namespace {

std::shared_ptr<const BruhatInterval> full(const char* spec, const char* top = "longest") {
  auto s = std::make_shared<const CoxeterSystem>(parse_group_spec(spec));
  return std::make_shared<const BruhatInterval>(build_interval(s, s->identity(), parse_element(*s, top).element));
}

// Comparable pairs (x, z) with rank(z) - rank(x) == len, by an independent order test.
std::size_t comparable_pairs(const BruhatInterval& iv, int lo, int len, const std::string& spec) {
  const int n = iv.system->rank();
  std::size_t c = 0;
  for (const auto& x : iv.layer(lo))
    for (const auto& z : iv.layer(lo + len)) {
      if (spec[0] == 'A') c += oracle::tableau_leq(oracle::perm_of_word(x.word, n + 1), oracle::perm_of_word(z.word, n + 1));
      else c += (oracle::mask_of_word(x.word) & ~oracle::mask_of_word(z.word)) == 0;
    }
  return c;
}

}  // namespace

TEST_CASE("exhaustive sphere invariants on small groups") {
  for (const char* spec : {"A3", "A4", "C2^4", "C2^6", "C2^8"}) {
    CAPTURE(spec);
    const auto iv = full(spec);
    const int lo = iv->min_rank(), hi = iv->max_rank();
    const auto sub = rank_range(iv, lo, hi);
    for (int p = lo + 1; p + 1 <= hi; ++p) {
      const auto ds = enumerate_diamonds(sub, p);
      CHECK(ds.size() == comparable_pairs(*iv, p - 1, 2, spec));
      for (const auto& d : ds) CHECK(verify_diamond(*iv, d));
    }
    for (int p = lo + 2; p + 1 <= hi; ++p) {
      const auto cs = enumerate_crowns(sub, p, CrownSide::Left);
      CHECK(cs.size() == comparable_pairs(*iv, p - 2, 3, spec));
      for (const auto& c : cs) {
        const auto v = verify_crown(*iv, c);
        CHECK_MESSAGE(v.ok, v.reason);
      }
    }
    for (int p = lo + 2; p + 2 <= hi; ++p) {
      const auto ss = enumerate_s2(sub, p);
      CHECK(ss.size() == comparable_pairs(*iv, p - 2, 4, spec));
      for (const auto& s : ss) {
        const auto v = verify_s2(*iv, s);
        CHECK_MESSAGE(v.ok, v.reason);
      }
    }
  }
}

TEST_CASE("left and right crowns pick rows from the matching layer") {
  const auto iv = full("A4");
  const auto sub = layered_subposet(iv, 5, 2);
  for (const auto& c : enumerate_crowns(sub, 5, CrownSide::Left)) {
    CHECK(iv->rank_of(c.bottom) == 3);
    REQUIRE(c.rows.size() == c.k());
    for (std::size_t i = 0; i < c.k(); ++i) CHECK(c.rows[i] == iv->position(c.lower[i]));
  }
  for (const auto& c : enumerate_crowns(sub, 5, CrownSide::Right)) {
    CHECK(iv->rank_of(c.top) == 7);
    REQUIRE(c.rows.size() == c.k());
    for (std::size_t i = 0; i < c.k(); ++i) CHECK(c.rows[i] == iv->position(c.upper[i]));
  }
}

TEST_CASE("crowns in a dihedral-type interval are larger than 2") {
  // Rank-3 intervals of I_2(m)-like pieces in the triangle group produce k-crowns with k > 2.
  const auto iv = full("triangle 2 3 7", "(s1s2s3)^4");
  std::set<std::size_t> ks;
  for (int p = iv->min_rank() + 2; p + 1 <= iv->max_rank(); ++p)
    for (const auto& c : enumerate_crowns(rank_range(iv, iv->min_rank(), iv->max_rank()), p, CrownSide::Left)) {
      CHECK(verify_crown(*iv, c));
      ks.insert(c.k());
    }
  CHECK(ks.count(2) == 1);
  CHECK(*ks.rbegin() > 2);
}

TEST_CASE("every 4-cycle of the lower Tanner bigraph is the middle of a 2-crown") {
  for (const char* spec : {"A4", "C2^6"}) {
    CAPTURE(spec);
    const auto iv = full(spec);
    for (int p = iv->min_rank() + 2; p + 1 <= iv->max_rank(); ++p) {
      const auto sub = rank_range(iv, iv->min_rank(), iv->max_rank());
      std::set<std::pair<std::set<ElementId>, std::set<ElementId>>> crowns;
      for (const auto& c : enumerate_crowns(sub, p, CrownSide::Left))
        if (c.k() == 2)
          crowns.insert({std::set<ElementId>(c.lower.begin(), c.lower.end()), std::set<ElementId>(c.upper.begin(), c.upper.end())});
      const auto lower = iv->layer(p - 1);
      for (std::size_t a = 0; a < lower.size(); ++a)
        for (std::size_t b = a + 1; b < lower.size(); ++b) {
          const ElementId x1 = iv->id(p - 1, a), x2 = iv->id(p - 1, b);
          std::vector<ElementId> common;
          for (ElementId q : iv->up[x1])
            if (std::count(iv->up[x2].begin(), iv->up[x2].end(), q)) common.push_back(q);
          for (std::size_t i = 0; i < common.size(); ++i)
            for (std::size_t j = i + 1; j < common.size(); ++j)
              CHECK(crowns.count({{x1, x2}, {common[i], common[j]}}) == 1);
        }
    }
  }
}

TEST_CASE("sphere census JSON") {
  const auto iv = full("A4");
  const auto j = sphere_census(layered_subposet(iv, 5, 2), 5);
  CHECK(j["diamonds"]["failed"] == 0);
  CHECK(j["left_crowns"]["failed"] == 0);
  CHECK(j["right_crowns"]["failed"] == 0);
  CHECK(j["left_crowns"]["count"] == 208);
  CHECK(j.contains("s2"));
}
