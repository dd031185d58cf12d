#include "coxcss/transform.hpp"

#include "coxcss/chain.hpp"
#include "coxcss/error.hpp"
#include "coxcss/rng.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace coxcss {

namespace {

CheckType lower_type(SideConvention c) { return c == SideConvention::LowerX ? CheckType::X : CheckType::Z; }

std::string join_labels(const BitMatrix& h, const std::vector<std::size_t>& rows) {
  std::string s;
  for (std::size_t r : rows) {
    if (!s.empty()) s += "+";
    s += h.row_labels.empty() ? std::to_string(r) : h.row_labels[r];
  }
  return s;
}

std::size_t overlap(const std::vector<std::size_t>& rows, const std::set<std::size_t>& used) {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [&](std::size_t r) { return used.count(r) > 0; }));
}

void check_rows(const BitMatrix& h, const std::vector<std::size_t>& rows) {
  for (std::size_t r : rows)
    if (r >= h.rows()) throw Error(ErrorKind::InvalidInput, "splice row index out of range");
}

}  // namespace

double bias_probability(const SpliceConfig& config, std::size_t left_crowns, std::size_t right_crowns,
                        std::size_t lower_layer, std::size_t upper_layer) {
  switch (config.bias_mode) {
    case BiasMode::Fixed:
      if (config.bias < 0.0 || config.bias > 1.0) throw Error(ErrorKind::InvalidInput, "bias must lie in [0,1]");
      return config.bias;
    case BiasMode::CrownFraction:
      if (left_crowns + right_crowns == 0) return 0.5;
      return static_cast<double>(left_crowns) / static_cast<double>(left_crowns + right_crowns);
    case BiasMode::LayerFraction:
      if (lower_layer + upper_layer == 0) return 0.5;
      return static_cast<double>(lower_layer) / static_cast<double>(lower_layer + upper_layer);
  }
  return 0.5;
}

CssCode splice_rows(const CssCode& code, CheckType side, const std::vector<std::vector<std::size_t>>& groups) {
  const BitMatrix& h = code.checks(side);
  std::vector<bool> used(h.rows(), false);
  BitMatrix added(0, h.cols());
  std::vector<std::string> added_labels;
  for (const auto& g : groups) {
    check_rows(h, g);
    BitVector v(h.cols());
    for (std::size_t r : g) {
      v ^= h.row(r);
      used[r] = true;
    }
    added.append_row(v);
    added_labels.push_back(join_labels(h, g));
  }
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < h.rows(); ++r)
    if (!used[r]) keep.push_back(r);
  BitMatrix kept = h.select_rows(keep);
  BitMatrix merged = vstack(kept, added);
  if (!h.row_labels.empty()) {
    merged.row_labels = kept.row_labels;
    merged.row_labels.insert(merged.row_labels.end(), added_labels.begin(), added_labels.end());
  }
  CssCode out = code;
  out.checks(side) = std::move(merged);
  out.provenance.push_back({{"op", "splice_rows"}, {"side", std::string(to_string(side))}, {"groups", groups}});
  if (!is_orthogonal(out)) throw Error(ErrorKind::Structural, "splicing broke orthogonality");
  return out;
}

CssCode crown_splice(const CssCode& code, const std::vector<CrownRecord>& left, const std::vector<CrownRecord>& right,
                     const SpliceConfig& config) {
  const CheckType lower = lower_type(config.convention);
  const CheckType upper = opposite(lower);
  for (const auto& c : left) check_rows(code.checks(lower), c.rows);
  for (const auto& c : right) check_rows(code.checks(upper), c.rows);
  const double p_left =
      bias_probability(config, left.size(), right.size(), code.checks(lower).rows(), code.checks(upper).rows());
  Rng rng(config.seed);
  std::vector<bool> used_left(left.size(), false), used_right(right.size(), false);
  std::set<std::size_t> rows_left, rows_right;
  std::vector<std::vector<std::size_t>> groups_left, groups_right;
  nlohmann::json log = nlohmann::json::array();
  std::size_t skipped = 0;
  for (std::size_t it = 0; it < config.kappa; ++it) {
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < config.cutoff && !accepted; ++attempt) {
      const bool is_left = rng.bernoulli(p_left);
      const auto& pool = is_left ? left : right;
      auto& used = is_left ? used_left : used_right;
      std::vector<std::size_t> avail;
      for (std::size_t i = 0; i < pool.size(); ++i)
        if (!used[i]) avail.push_back(i);
      if (avail.empty()) continue;
      const std::size_t pick = avail[rng.below(avail.size())];
      auto& rows = is_left ? rows_left : rows_right;
      const std::size_t ov = overlap(pool[pick].rows, rows);
      if (ov > config.lambda) continue;
      used[pick] = true;
      rows.insert(pool[pick].rows.begin(), pool[pick].rows.end());
      (is_left ? groups_left : groups_right).push_back(pool[pick].rows);
      log.push_back({{"iteration", it}, {"attempt", attempt}, {"side", is_left ? "left" : "right"},
                     {"crown", pick}, {"k", pool[pick].k()}, {"overlap", ov}});
      accepted = true;
    }
    if (!accepted) {
      ++skipped;
      log.push_back({{"iteration", it}, {"warning", "cutoff reached, iteration skipped"}});
    }
  }
  CssCode out = code;
  if (!groups_left.empty()) out = splice_rows(out, lower, groups_left);
  if (!groups_right.empty()) out = splice_rows(out, upper, groups_right);
  out.provenance = code.provenance;
  out.provenance.push_back({{"op", "crown_splice"},
                            {"kappa", config.kappa},
                            {"lambda", config.lambda},
                            {"cutoff", config.cutoff},
                            {"bias", p_left},
                            {"seed", config.seed},
                            {"skipped", skipped},
                            {"draws", log}});
  return prune_decoupled_qubits(out);
}

CssCode s2_splice(const CssCode& code, const std::vector<SphereRecord>& spheres, const SpliceConfig& config) {
  const CheckType lower = lower_type(config.convention);
  const CheckType upper = opposite(lower);
  for (const auto& s : spheres) {
    check_rows(code.checks(lower), s.vertex_rows);
    check_rows(code.checks(upper), s.face_rows);
  }
  Rng rng(config.seed);
  std::vector<bool> used(spheres.size(), false);
  std::set<std::size_t> rows_lower, rows_upper;
  std::vector<std::vector<std::size_t>> groups_lower, groups_upper;
  nlohmann::json log = nlohmann::json::array();
  std::size_t skipped = 0;
  for (std::size_t it = 0; it < config.kappa; ++it) {
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < config.cutoff && !accepted; ++attempt) {
      std::vector<std::size_t> avail;
      for (std::size_t i = 0; i < spheres.size(); ++i)
        if (!used[i]) avail.push_back(i);
      if (avail.empty()) break;
      const std::size_t pick = avail[rng.below(avail.size())];
      const auto& s = spheres[pick];
      const std::size_t ov_l = overlap(s.vertex_rows, rows_lower);
      const std::size_t ov_u = overlap(s.face_rows, rows_upper);
      if (ov_l > config.lambda || ov_u > config.lambda) continue;
      used[pick] = true;
      rows_lower.insert(s.vertex_rows.begin(), s.vertex_rows.end());
      rows_upper.insert(s.face_rows.begin(), s.face_rows.end());
      groups_lower.push_back(s.vertex_rows);
      groups_upper.push_back(s.face_rows);
      log.push_back({{"iteration", it}, {"attempt", attempt}, {"sphere", pick}, {"overlap", {ov_l, ov_u}}});
      accepted = true;
    }
    if (!accepted) {
      ++skipped;
      log.push_back({{"iteration", it}, {"warning", "cutoff reached, iteration skipped"}});
    }
  }
  CssCode out = code;
  if (!groups_lower.empty()) out = splice_rows(out, lower, groups_lower);
  if (!groups_upper.empty()) out = splice_rows(out, upper, groups_upper);
  out.provenance = code.provenance;
  out.provenance.push_back({{"op", "s2_splice"},
                            {"kappa", config.kappa},
                            {"lambda", config.lambda},
                            {"cutoff", config.cutoff},
                            {"seed", config.seed},
                            {"skipped", skipped},
                            {"draws", log}});
  return prune_decoupled_qubits(out);
}

CssCode random_splice(const CssCode& code, SpliceSides sides, std::uint64_t seed) {
  Rng rng(seed);
  CssCode out = code;
  nlohmann::json unmatched = nlohmann::json::object();
  for (CheckType t : {CheckType::X, CheckType::Z}) {
    if (sides == SpliceSides::X && t != CheckType::X) continue;
    if (sides == SpliceSides::Z && t != CheckType::Z) continue;
    std::vector<std::size_t> order(out.checks(t).rows());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    std::vector<std::vector<std::size_t>> pairs;
    for (std::size_t i = 0; i + 1 < order.size(); i += 2) pairs.push_back({order[i], order[i + 1]});
    if (order.size() % 2) unmatched[std::string(to_string(t))] = order.back();
    out = splice_rows(out, t, pairs);
  }
  out.provenance = code.provenance;
  out.provenance.push_back({{"op", "random_splice"},
                            {"sides", sides == SpliceSides::X ? "x" : sides == SpliceSides::Z ? "z" : "both"},
                            {"seed", seed},
                            {"unmatched", unmatched}});
  return prune_decoupled_qubits(out);
}

CssCode diamond_removal(const CssCode& code, const std::vector<DiamondRecord>& diamonds, std::size_t count,
                        std::uint64_t seed, SideConvention convention) {
  const CheckType lower = lower_type(convention);
  const CheckType upper = opposite(lower);
  const std::size_t nl = code.checks(lower).rows();
  const std::size_t nu = code.checks(upper).rows();
  for (const auto& d : diamonds)
    if (d.x_row >= nl || d.z_row >= nu) throw Error(ErrorKind::InvalidInput, "diamond row out of range");
  Rng rng(seed);
  std::vector<std::size_t> order(diamonds.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  // matching between lower and upper rows; edges are diamonds
  std::vector<long> match_l(nl, -1), match_u(nu, -1);  // diamond index
  std::size_t size = 0;
  for (std::size_t i : order) {
    if (size == count) break;
    const auto& d = diamonds[i];
    if (match_l[d.x_row] < 0 && match_u[d.z_row] < 0) {
      match_l[d.x_row] = match_u[d.z_row] = static_cast<long>(i);
      ++size;
    }
  }
  if (size < count) {
    std::vector<std::vector<std::size_t>> adj(nl);
    for (std::size_t i : order) adj[diamonds[i].x_row].push_back(i);
    std::vector<char> seen;
    std::function<bool(std::size_t)> augment = [&](std::size_t x) -> bool {
      for (std::size_t di : adj[x]) {
        const std::size_t z = diamonds[di].z_row;
        if (seen[z]) continue;
        seen[z] = 1;
        if (match_u[z] < 0 || augment(diamonds[static_cast<std::size_t>(match_u[z])].x_row)) {
          match_l[x] = match_u[z] = static_cast<long>(di);
          return true;
        }
      }
      return false;
    };
    for (std::size_t x = 0; x < nl && size < count; ++x) {
      if (match_l[x] >= 0 || adj[x].empty()) continue;
      seen.assign(nu, 0);
      if (augment(x)) ++size;
    }
  }
  if (size < count)
    throw Error(ErrorKind::InvalidInput, "requested " + std::to_string(count) + " disjoint diamonds, at most " +
                                             std::to_string(size) + " available");
  std::vector<std::size_t> chosen;
  for (std::size_t x = 0; x < nl; ++x)
    if (match_l[x] >= 0) chosen.push_back(static_cast<std::size_t>(match_l[x]));
  std::vector<bool> drop_l(nl, false), drop_u(nu, false);
  for (std::size_t i : chosen) {
    drop_l[diamonds[i].x_row] = true;
    drop_u[diamonds[i].z_row] = true;
  }
  std::vector<std::size_t> keep_l, keep_u;
  for (std::size_t r = 0; r < nl; ++r)
    if (!drop_l[r]) keep_l.push_back(r);
  for (std::size_t r = 0; r < nu; ++r)
    if (!drop_u[r]) keep_u.push_back(r);
  CssCode out = code;
  out.checks(lower) = code.checks(lower).select_rows(keep_l);
  out.checks(upper) = code.checks(upper).select_rows(keep_u);
  out.provenance.push_back({{"op", "diamond_removal"}, {"count", count}, {"seed", seed}, {"diamonds", chosen}});
  return prune_decoupled_qubits(out);
}

namespace {

BitMatrix qubit_labelled(BitMatrix m) {
  m.col_labels.clear();
  return m;
}

}  // namespace

CssCode fold(const LayeredSubposet& subposet, int p, FoldVariant variant) {
  if (p - 2 < subposet.lo || p + 2 > subposet.hi) throw Error(ErrorKind::InvalidInput, "fold needs layers p-2..p+2");
  const BitMatrix k1 = boundary_matrix(subposet, p - 1);              // l_{p-2} x l_{p-1}
  const BitMatrix k2 = boundary_matrix(subposet, p);                  // l_{p-1} x l_p
  const BitMatrix k3 = boundary_matrix(subposet, p + 1);              // l_p x l_{p+1}
  const BitMatrix k4t = boundary_matrix(subposet, p + 2).transpose();  // l_{p+2} x l_{p+1}
  BitMatrix hz = hstack(k2.transpose(), k3);
  BitMatrix hx;
  if (variant == FoldVariant::Single) {
    hx = block_diagonal(k1, k4t);
  } else {
    if (k1.rows() != k4t.rows())
      throw Error(ErrorKind::InvalidInput, "fused fold needs |l_{p-2}| == |l_{p+2}|");
    hx = hstack(k1, k4t);
    hx.row_labels.clear();
    for (std::size_t r = 0; r < k1.rows(); ++r) hx.row_labels.push_back(k1.row_labels[r] + "|" + k4t.row_labels[r]);
  }
  std::vector<std::string> qubits = k2.row_labels;
  qubits.insert(qubits.end(), k3.col_labels.begin(), k3.col_labels.end());
  nlohmann::json prov = nlohmann::json::array();
  prov.push_back({{"op", "fold"},
                  {"group", subposet.interval->system->spec()},
                  {"bottom", format_word(subposet.interval->bottom.word)},
                  {"top", format_word(subposet.interval->top.word)},
                  {"p", p},
                  {"variant", variant == FoldVariant::Single ? "single" : "fused"}});
  CssCode code = make_css_code(qubit_labelled(std::move(hx)), qubit_labelled(std::move(hz)), prov);
  code.qubit_labels = std::move(qubits);
  return code;
}

BitMatrix fold_metacheck_matrix(const LayeredSubposet& subposet, int p) {
  if (p - 3 < subposet.lo || p + 3 > subposet.hi) throw Error(ErrorKind::InvalidInput, "metacheck needs layers p-3..p+3");
  const BitMatrix k0 = boundary_matrix(subposet, p - 2);              // l_{p-3} x l_{p-2}
  const BitMatrix k5t = boundary_matrix(subposet, p + 3).transpose();  // l_{p+3} x l_{p+2}
  if (k0.rows() != k5t.rows()) throw Error(ErrorKind::InvalidInput, "metacheck needs |l_{p-3}| == |l_{p+3}|");
  BitMatrix m = hstack(k0, k5t);
  m.row_labels.clear();
  for (std::size_t r = 0; r < k0.rows(); ++r) m.row_labels.push_back(k0.row_labels[r] + "|" + k5t.row_labels[r]);
  return m;
}

CssCode extract_metacheck_code(const LayeredSubposet& subposet, int p) {
  BitMatrix hx = fold_metacheck_matrix(subposet, p);
  const BitMatrix k1 = boundary_matrix(subposet, p - 1);
  const BitMatrix k4t = boundary_matrix(subposet, p + 2).transpose();
  BitMatrix hz = block_diagonal(k1, k4t).transpose();
  std::vector<std::string> qubits = k1.row_labels;
  qubits.insert(qubits.end(), k4t.row_labels.begin(), k4t.row_labels.end());
  nlohmann::json prov = nlohmann::json::array();
  prov.push_back({{"op", "metacheck_code"},
                  {"group", subposet.interval->system->spec()},
                  {"bottom", format_word(subposet.interval->bottom.word)},
                  {"top", format_word(subposet.interval->top.word)},
                  {"p", p}});
  CssCode code = make_css_code(qubit_labelled(std::move(hx)), qubit_labelled(std::move(hz)), prov);
  code.qubit_labels = std::move(qubits);
  return code;
}

}  // namespace coxcss
