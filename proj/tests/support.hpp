#pragma once

// Independent reference implementations used as test oracles. Nothing here
// calls into the library's algorithms beyond plain data access.

#include "coxcss/bit_matrix.hpp"
#include "coxcss/css_code.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace oracle {

using Perm = std::vector<int>;

// One-line notation of s_{w[0]} s_{w[1]} ... acting on positions.
inline Perm perm_of_word(const std::vector<int>& word, int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  for (int g : word) std::swap(p[g], p[g + 1]);
  return p;
}

inline int inversions(const Perm& p) {
  int c = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) c += p[i] > p[j];
  return c;
}

// Tableau criterion for Bruhat order on S_n.
inline bool tableau_leq(const Perm& u, const Perm& w) {
  const int n = static_cast<int>(u.size());
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      int cu = 0, cw = 0;
      for (int j = 0; j <= i; ++j) {
        cu += u[j] >= k;
        cw += w[j] >= k;
      }
      if (cu > cw) return false;
    }
  return true;
}

inline std::vector<Perm> all_perms(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Subset mask of the generators appearing an odd number of times.
inline std::uint32_t mask_of_word(const std::vector<int>& word) {
  std::uint32_t m = 0;
  for (int g : word) m ^= 1u << g;
  return m;
}

inline std::vector<std::uint64_t> rows_as_masks(const coxcss::BitMatrix& m) {
  std::vector<std::uint64_t> out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::uint64_t v = 0;
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.get(r, c)) v |= std::uint64_t{1} << c;
    out.push_back(v);
  }
  return out;
}

inline std::size_t rank(std::vector<std::uint64_t> rows) {
  std::size_t r = 0;
  for (int bit = 63; bit >= 0; --bit) {
    const std::uint64_t b = std::uint64_t{1} << bit;
    auto it = std::find_if(rows.begin() + static_cast<long>(r), rows.end(), [&](std::uint64_t v) { return v & b; });
    if (it == rows.end()) continue;
    std::swap(*it, rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && (rows[i] & b)) rows[i] ^= rows[r];
    ++r;
  }
  return r;
}

inline bool in_span(const std::vector<std::uint64_t>& rows, std::uint64_t v) {
  auto with = rows;
  with.push_back(v);
  return rank(with) == rank(rows);
}

// Minimum weight of v in ker(checks) outside span(stabs), by enumeration of
// all 2^n vectors. Returns 0 when no such vector exists.
inline std::size_t brute_distance(const coxcss::BitMatrix& checks, const coxcss::BitMatrix& stabs) {
  const std::size_t n = checks.cols();
  const auto h = rows_as_masks(checks);
  const auto s = rows_as_masks(stabs);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::uint64_t v = 1; v < (std::uint64_t{1} << n); ++v) {
    const auto w = static_cast<std::size_t>(__builtin_popcountll(v));
    if (w >= best) continue;
    bool ok = true;
    for (std::uint64_t r : h)
      if (__builtin_popcountll(r & v) & 1) {
        ok = false;
        break;
      }
    if (ok && !in_span(s, v)) best = w;
  }
  return best == std::numeric_limits<std::size_t>::max() ? 0 : best;
}

inline std::size_t brute_distance(const coxcss::CssCode& c, coxcss::CheckType side) {
  return side == coxcss::CheckType::X ? brute_distance(c.hz, c.hx) : brute_distance(c.hx, c.hz);
}

inline std::size_t brute_k(const coxcss::CssCode& c) {
  return c.n() - rank(rows_as_masks(c.hx)) - rank(rows_as_masks(c.hz));
}

}  // namespace oracle

namespace fixture {

inline nlohmann::json load(const std::string& name) {
  std::ifstream is(std::string(COXCSS_FIXTURE_DIR) + "/" + name);
  if (!is) throw std::runtime_error("missing fixture " + name);
  return nlohmann::json::parse(is);
}

inline coxcss::CssCode code(const nlohmann::json& j) {
  return coxcss::make_css_code(coxcss::BitMatrix::from_strings(j.at("hx").get<std::vector<std::string>>()),
                               coxcss::BitMatrix::from_strings(j.at("hz").get<std::vector<std::string>>()));
}

}  // namespace fixture
