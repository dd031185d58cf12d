#include "coxcss/distance.hpp"

#include "coxcss/error.hpp"
#include "coxcss/rng.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <mutex>
#include <thread>

namespace coxcss {

namespace {

// side Z: logicals live in ker H_X and are trivial modulo rowspace H_Z.
const BitMatrix& kernel_of(const CssCode& c, CheckType side) { return side == CheckType::Z ? c.hx : c.hz; }
const BitMatrix& stabilizers_of(const CssCode& c, CheckType side) { return side == CheckType::Z ? c.hz : c.hx; }

std::size_t popcount_words(const std::vector<std::uint64_t>& w) {
  std::size_t s = 0;
  for (auto x : w) s += static_cast<std::size_t>(std::popcount(x));
  return s;
}

}  // namespace

bool is_logical(const CssCode& code, CheckType side, const BitVector& v) {
  const BitMatrix& h = kernel_of(code, side);
  BitMatrix col(v.size(), 1);
  for (std::size_t i : v.support()) col.set(i, 0);
  if (!(h * col).is_zero()) return false;
  return !RowReducer(stabilizers_of(code, side)).contains(v);
}

DistanceReport exact_distance(const CssCode& code, CheckType side, std::size_t dim_cap) {
  const LogicalBasis lb = logical_operators(code);
  const BitMatrix& logicals = side == CheckType::X ? lb.x : lb.z;
  const std::size_t k = logicals.rows();
  if (k == 0) throw Error(ErrorKind::InvalidInput, "code has no logical qubits");
  RowReducer stab(stabilizers_of(code, side));
  std::vector<BitVector> basis;
  for (std::size_t r = 0; r < k; ++r) basis.push_back(logicals.row(r));
  {
    RowReducer tmp(code.n());
    const BitMatrix& s = stabilizers_of(code, side);
    for (std::size_t r = 0; r < s.rows(); ++r)
      if (tmp.add(s.row(r))) basis.push_back(s.row(r));
  }
  const std::size_t dim = basis.size();
  if (dim > dim_cap)
    throw Error(ErrorKind::CapExceeded, "kernel dimension " + std::to_string(dim) + " exceeds exact cap " +
                                            std::to_string(dim_cap));
  DistanceReport rep;
  rep.side = side;
  rep.method = "exact";
  std::size_t best = code.n() + 1;
  BitVector v(code.n());
  std::uint64_t logical_mask = 0;
  const std::uint64_t total = std::uint64_t{1} << dim;
  for (std::uint64_t i = 1; i < total; ++i) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(i));
    v ^= basis[bit];
    if (bit < k) logical_mask ^= std::uint64_t{1} << bit;
    if (!logical_mask) continue;
    const std::size_t w = popcount_words(v.words());
    if (w < best) {
      best = w;
      rep.witness = v;
    }
  }
  rep.exact = best;
  rep.upper_bound = best;
  return rep;
}

namespace {

struct TrialResult {
  std::size_t weight;
  BitVector witness;
};

TrialResult ris_trial(const BitMatrix& gen, const RowReducer& stab, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = gen.cols();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  rng.shuffle(perm);
  std::vector<BitVector> rows;
  for (std::size_t r = 0; r < gen.rows(); ++r) rows.push_back(gen.row(r));
  std::size_t rank = 0;
  for (std::size_t j = 0; j < n && rank < rows.size(); ++j) {
    const std::size_t c = perm[j];
    std::size_t piv = rank;
    while (piv < rows.size() && !rows[piv].get(c)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r].get(c)) rows[r] ^= rows[rank];
    ++rank;
  }
  TrialResult best{n + 1, BitVector(n)};
  for (const auto& r : rows) {
    const std::size_t w = r.weight();
    if (w == 0 || w >= best.weight) continue;
    if (stab.contains(r)) continue;
    best = {w, r};
  }
  return best;
}

}  // namespace

DistanceReport ris_upper_bound(const CssCode& code, CheckType side, std::size_t trials, std::uint64_t seed) {
  if (logical_count(code) == 0) throw Error(ErrorKind::InvalidInput, "code has no logical qubits");
  if (trials == 0) throw Error(ErrorKind::InvalidInput, "RIS needs at least one trial");
  const BitMatrix gen = kernel_basis(kernel_of(code, side));
  const RowReducer stab(stabilizers_of(code, side));
  std::vector<TrialResult> results(trials, TrialResult{code.n() + 1, BitVector(code.n())});
  const unsigned workers = std::max(1u, std::min<unsigned>(worker_count(), static_cast<unsigned>(trials)));
  auto run = [&](unsigned w) {
    for (std::size_t t = w; t < trials; t += workers) results[t] = ris_trial(gen, stab, derive_seed(seed, t));
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }
  DistanceReport rep;
  rep.side = side;
  rep.method = "ris";
  rep.trials = trials;
  rep.seed = seed;
  rep.upper_bound = code.n() + 1;
  for (const auto& r : results)
    if (r.weight < rep.upper_bound) {
      rep.upper_bound = r.weight;
      rep.witness = r.witness;
    }
  if (rep.upper_bound > code.n()) throw Error(ErrorKind::Structural, "RIS found no logical operator");
  return rep;
}

BoundedSearch low_weight_search(const CssCode& code, CheckType side, std::size_t max_weight) {
  const BitMatrix& h = kernel_of(code, side);
  const RowReducer stab(stabilizers_of(code, side));
  const std::size_t n = code.n();
  // column syndromes, packed
  const BitMatrix cols = h.transpose();
  const std::size_t words = cols.words_per_row();
  BoundedSearch out;
  out.max_weight = max_weight;
  std::vector<std::size_t> idx;
  std::vector<std::vector<std::uint64_t>> syn(max_weight + 1, std::vector<std::uint64_t>(words, 0));
  bool found = false;
  // depth-first over increasing supports of fixed weight w
  std::function<void(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth, std::size_t w) {
    if (found) return;
    if (depth == w) {
      const auto& s = syn[depth];
      if (std::any_of(s.begin(), s.end(), [](std::uint64_t x) { return x != 0; })) return;
      BitVector v(n);
      for (std::size_t i : idx) v.set(i);
      if (stab.contains(v)) return;
      out.distance = w;
      out.witness = v;
      found = true;
      return;
    }
    for (std::size_t c = start; c + (w - depth) <= n && !found; ++c) {
      const std::uint64_t* col = cols.row_data(c);
      for (std::size_t t = 0; t < words; ++t) syn[depth + 1][t] = syn[depth][t] ^ col[t];
      idx.push_back(c);
      rec(c + 1, depth + 1, w);
      idx.pop_back();
    }
  };
  for (std::size_t w = 1; w <= max_weight && w <= n && !found; ++w) rec(0, 0, w);
  return out;
}

std::size_t min_logical_weight(const CssCode& code, CheckType side) {
  const LogicalBasis lb = logical_operators(code);
  const BitMatrix& logicals = side == CheckType::X ? lb.x : lb.z;
  if (logicals.rows() == 0) throw Error(ErrorKind::InvalidInput, "code has no logical qubits");
  const BitMatrix& s = stabilizers_of(code, side);
  std::size_t best = code.n() + 1;
  for (std::size_t r = 0; r < logicals.rows(); ++r) {
    BitVector v = logicals.row(r);
    std::size_t w = v.weight();
    for (bool improved = true; improved;) {
      improved = false;
      for (std::size_t j = 0; j < s.rows(); ++j) {
        BitVector t = v;
        t ^= s.row(j);
        const std::size_t tw = t.weight();
        if (tw < w) {
          v = std::move(t);
          w = tw;
          improved = true;
        }
      }
    }
    best = std::min(best, w);
  }
  return best;
}

nlohmann::json to_json(const DistanceReport& r) {
  nlohmann::json j{{"side", std::string(to_string(r.side))}, {"method", r.method}, {"upper_bound", r.upper_bound}};
  if (r.exact) j["exact"] = *r.exact;
  if (r.method == "ris") {
    j["trials"] = r.trials;
    j["seed"] = r.seed;
  }
  j["witness"] = r.witness.support();
  return j;
}

}  // namespace coxcss
