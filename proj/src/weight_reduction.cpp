#include "coxcss/weight_reduction.hpp"

#include "coxcss/error.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace coxcss {

std::vector<std::size_t> BridgePlan::arm_weights() const {
  std::vector<std::size_t> w;
  for (std::size_t i = 0; i < arms.size(); ++i) {
    const std::size_t adjacent = (i > 0) + (i + 1 < arms.size());
    w.push_back(arms[i].size() + adjacent);
  }
  return w;
}

namespace {

struct DualOverlap {
  std::size_t dual_row;
  std::vector<std::size_t> cols;  // ascending
};

std::vector<DualOverlap> dual_overlaps(const CssCode& code, CheckType side, std::size_t row) {
  const BitMatrix& h = code.checks(side);
  const BitMatrix& dual = code.checks(opposite(side));
  if (row >= h.rows()) throw Error(ErrorKind::InvalidInput, "split row out of range");
  const BitVector v = h.row(row);
  std::vector<DualOverlap> out;
  for (std::size_t j = 0; j < dual.rows(); ++j) {
    BitVector w = dual.row(j);
    for (std::size_t k = 0; k < w.words().size(); ++k) w.words()[k] &= v.words()[k];
    if (!w.is_zero()) out.push_back({j, w.support()});
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::size_t>> required_bridge_rows(const CssCode& code, CheckType side, std::size_t row,
                                                           const std::vector<std::vector<std::size_t>>& arms) {
  const auto overlaps = dual_overlaps(code, side, row);
  std::vector<std::vector<std::size_t>> out;
  std::set<std::size_t> prefix;
  for (std::size_t i = 0; i + 1 < arms.size(); ++i) {
    prefix.insert(arms[i].begin(), arms[i].end());
    std::vector<std::size_t> rows;
    for (const auto& o : overlaps) {
      const auto cnt = std::count_if(o.cols.begin(), o.cols.end(), [&](std::size_t c) { return prefix.count(c) > 0; });
      if (cnt % 2) rows.push_back(o.dual_row);
    }
    out.push_back(std::move(rows));
  }
  return out;
}

Verdict validate_plan(const CssCode& code, const BridgePlan& plan) {
  const BitMatrix& h = code.checks(plan.side);
  if (plan.row >= h.rows()) return {false, "split row out of range"};
  if (plan.arms.size() < 2) return {false, "a split needs at least two arms"};
  if (plan.bridge_rows.size() != plan.bridges()) return {false, "one dual-row list per bridge required"};
  const auto support = h.row_support(plan.row);
  std::vector<std::size_t> all;
  for (const auto& a : plan.arms) {
    if (a.empty()) return {false, "empty arm"};
    all.insert(all.end(), a.begin(), a.end());
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) return {false, "arms overlap"};
  if (all != support) return {false, "arm sizes inconsistent with the row support"};
  const auto overlaps = dual_overlaps(code, plan.side, plan.row);
  for (const auto& o : overlaps)
    if (o.cols.size() % 2) return {false, "dual row " + std::to_string(o.dual_row) + " meets the row oddly"};
  if (support.size() == 4)
    for (const auto& o : overlaps)
      if (o.cols.size() >= 4) return {false, "weight-4 row fully shared with a dual row cannot be split"};
  const auto required = required_bridge_rows(code, plan.side, plan.row, plan.arms);
  for (std::size_t i = 0; i < plan.bridges(); ++i) {
    if (required[i].empty()) return {false, "bridge " + std::to_string(i + 1) + " touches no dual row"};
    std::vector<std::size_t> given = plan.bridge_rows[i];
    std::sort(given.begin(), given.end());
    if (given != required[i]) return {false, "bridge " + std::to_string(i + 1) + " dual rows violate the parity rule"};
  }
  return {};
}

namespace {

// Arm 1 as a bitmask over support positions, minimising the odd overlaps (at least one).
std::uint64_t min_bridge_arm(const std::vector<std::uint64_t>& overlaps, std::size_t m, std::size_t s1, std::uint64_t start) {
  auto cost = [&](std::uint64_t a) {
    std::size_t c = 0;
    for (std::uint64_t e : overlaps) c += std::popcount(e & a) & 1u;
    return c == 0 ? overlaps.size() + 1 : c;
  };
  double combos = 1;
  for (std::size_t i = 0; i < s1; ++i) combos = combos * static_cast<double>(m - i) / static_cast<double>(i + 1);
  if (combos <= 200000) {
    std::uint64_t best = 0;
    std::size_t best_cost = overlaps.size() + 2;
    const std::uint64_t limit = m == 64 ? 0 : (std::uint64_t{1} << m);
    for (std::uint64_t a = (std::uint64_t{1} << s1) - 1; a != 0 && (limit == 0 || a < limit);) {
      const std::size_t c = cost(a);
      if (c < best_cost) {
        best_cost = c;
        best = a;
        if (c == 1) break;
      }
      const std::uint64_t low = a & (~a + 1), ripple = a + low;  // next mask with the same popcount
      if (ripple == 0) break;
      a = (((ripple ^ a) >> 2) / low) | ripple;
    }
    return best;
  }
  std::uint64_t a = start;
  std::size_t c = cost(a);
  for (bool improved = true; improved && c > 1;) {
    improved = false;
    for (std::size_t i = 0; i < m && !improved; ++i) {
      if (!(a >> i & 1u)) continue;
      for (std::size_t j = 0; j < m && !improved; ++j) {
        if (a >> j & 1u) continue;
        const std::uint64_t b = (a & ~(std::uint64_t{1} << i)) | (std::uint64_t{1} << j);
        if (const std::size_t cb = cost(b); cb < c) {
          a = b;
          c = cb;
          improved = true;
        }
      }
    }
  }
  return a;
}

}  // namespace

BridgePlan propose_split(const CssCode& code, CheckType side, std::size_t row, const std::vector<std::size_t>& arm_weights,
                         SplitPolicy policy) {
  const BitMatrix& h = code.checks(side);
  if (row >= h.rows()) throw Error(ErrorKind::InvalidInput, "split row out of range");
  if (arm_weights.size() < 2) throw Error(ErrorKind::InvalidInput, "a split needs at least two arms");
  const auto support = h.row_support(row);
  std::vector<std::size_t> sizes;
  std::size_t total = 0;
  for (std::size_t i = 0; i < arm_weights.size(); ++i) {
    const std::size_t adjacent = (i > 0) + (i + 1 < arm_weights.size());
    if (arm_weights[i] <= adjacent) throw Error(ErrorKind::InvalidInput, "arm weight too small");
    sizes.push_back(arm_weights[i] - adjacent);
    total += sizes.back();
  }
  if (total != support.size())
    throw Error(ErrorKind::InvalidInput, "arm weights sum to " + std::to_string(total) + " columns, row has " +
                                             std::to_string(support.size()));
  const auto overlaps = dual_overlaps(code, side, row);
  for (const auto& o : overlaps)
    if (o.cols.size() % 2) throw Error(ErrorKind::Structural, "dual row meets the split row oddly");
  if (support.size() == 4)
    for (const auto& o : overlaps)
      if (o.cols.size() >= 4) throw Error(ErrorKind::InvalidInput, "weight-4 row fully shared with a dual row cannot be split");

  std::vector<int> arm_of(h.cols(), -1);
  for (std::size_t cut = 0; cut + 1 < sizes.size(); ++cut) {
    std::vector<char> decided(h.cols(), 0);
    std::vector<std::size_t> in_a, in_rest;
    std::size_t pool = 0;
    for (std::size_t c : support) pool += arm_of[c] < 0;
    const std::size_t cap_a = sizes[cut];
    const std::size_t cap_rest = pool - cap_a;
    auto prefix_parity = [&](const DualOverlap& o) {
      std::size_t cnt = 0;
      for (std::size_t c : o.cols) cnt += arm_of[c] >= 0;
      return cnt % 2;
    };
    bool anchored = false;
    for (const auto& o : overlaps) {
      std::vector<std::size_t> undecided;
      std::size_t already_a = 0;
      for (std::size_t c : o.cols) {
        if (arm_of[c] >= 0) continue;
        if (decided[c] == 1) ++already_a;
        else if (decided[c] == 0) undecided.push_back(c);
      }
      if (undecided.empty() && !anchored) continue;
      // anchor: first dual row still meeting the pool; its prefix overlap must be odd
      const bool anchor = !anchored && !undecided.empty();
      anchored = anchored || anchor;
      const std::size_t want = anchor ? 1 : 0;
      const std::size_t base = (prefix_parity(o) + already_a) % 2;
      const std::size_t room_a = cap_a - in_a.size();
      const std::size_t room_rest = cap_rest - in_rest.size();
      const std::size_t u = undecided.size();
      const std::size_t tmin = u > room_rest ? u - room_rest : 0;
      const std::size_t tmax = std::min(u, room_a);
      if (tmin > tmax) throw Error(ErrorKind::InvalidInput, "arm capacities cannot hold the row support");
      std::optional<std::size_t> pick;
      auto ok = [&](std::size_t t) { return t >= tmin && t <= tmax && (base + t) % 2 == want; };
      if (anchor) {
        for (std::size_t t = tmin; t <= tmax && !pick; ++t)
          if (ok(t)) pick = t;
      } else {
        const bool whole_a = ok(u), whole_rest = ok(0);
        if (whole_a && whole_rest) pick = (room_a - u >= room_rest) ? u : 0;
        else if (whole_a) pick = u;
        else if (whole_rest) pick = 0;
        for (std::size_t t = tmin; t <= tmax && !pick; ++t)
          if (ok(t)) pick = t;
      }
      const std::size_t t = pick.value_or(tmin);
      for (std::size_t i = 0; i < u; ++i) {
        decided[undecided[i]] = i < t ? 1 : 2;
        (i < t ? in_a : in_rest).push_back(undecided[i]);
      }
    }
    for (std::size_t c : support) {
      if (arm_of[c] >= 0 || decided[c]) continue;
      if (in_a.size() < cap_a) in_a.push_back(c);
      else in_rest.push_back(c);
    }
    for (std::size_t c : in_a) arm_of[c] = static_cast<int>(cut);
  }
  BridgePlan plan;
  plan.side = side;
  plan.row = row;
  plan.arms.assign(sizes.size(), {});
  for (std::size_t c : support) {
    const std::size_t a = arm_of[c] < 0 ? sizes.size() - 1 : static_cast<std::size_t>(arm_of[c]);
    plan.arms[a].push_back(c);
  }
  if (policy == SplitPolicy::MinBridges && sizes.size() == 2 && support.size() <= 64) {
    std::vector<std::size_t> pos(h.cols());
    for (std::size_t i = 0; i < support.size(); ++i) pos[support[i]] = i;
    std::vector<std::uint64_t> masks;
    for (const auto& o : overlaps) {
      std::uint64_t e = 0;
      for (std::size_t c : o.cols) e |= std::uint64_t{1} << pos[c];
      masks.push_back(e);
    }
    std::uint64_t start = 0;
    for (std::size_t c : plan.arms[0]) start |= std::uint64_t{1} << pos[c];
    const std::uint64_t a = min_bridge_arm(masks, support.size(), sizes[0], start);
    plan.arms = {{}, {}};
    for (std::size_t i = 0; i < support.size(); ++i) plan.arms[(a >> i & 1u) ? 0 : 1].push_back(support[i]);
  }
  plan.bridge_rows = required_bridge_rows(code, side, row, plan.arms);
  if (const Verdict v = validate_plan(code, plan); !v)
    throw Error(ErrorKind::InvalidInput, "no valid split for these arm weights: " + v.reason);
  return plan;
}

CssCode apply_bridge(const CssCode& code, const BridgePlan& plan) {
  if (const Verdict v = validate_plan(code, plan); !v) throw Error(ErrorKind::InvalidInput, "invalid bridge plan: " + v.reason);
  const std::size_t n = code.n();
  const std::size_t b = plan.bridges();
  CssCode out = code;
  BitMatrix& h = out.checks(plan.side);
  BitMatrix& dual = out.checks(opposite(plan.side));
  h.add_cols(b);
  dual.add_cols(b);
  const std::string base_label = h.row_labels.empty() ? std::to_string(plan.row) : h.row_labels[plan.row];
  for (std::size_t i = 0; i <= b; ++i) {
    BitVector v(n + b);
    for (std::size_t c : plan.arms[i]) v.set(c);
    if (i > 0) v.set(n + i - 1);
    if (i < b) v.set(n + i);
    const std::string label = base_label + "/" + std::to_string(i + 1);
    if (i == 0) {
      h.set_row(plan.row, v);
      if (!h.row_labels.empty()) h.row_labels[plan.row] = label;
    } else {
      h.append_row(v, h.row_labels.empty() ? std::string() : label);
    }
  }
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t r : plan.bridge_rows[i]) dual.set(r, n + i);
  if (!out.qubit_labels.empty() || n == 0) {
    out.qubit_labels.resize(n);
    for (std::size_t i = 0; i < b; ++i) out.qubit_labels.push_back("bridge:" + base_label + ":" + std::to_string(i + 1));
  }
  out.provenance.push_back({{"op", "bridge"}, {"plan", plan_to_json(plan)}});
  if (!is_orthogonal(out)) throw Error(ErrorKind::Structural, "bridge broke H_X H_Z^T = 0");
  return out;
}

namespace {

std::optional<BridgePlan> try_split(const CssCode& code, CheckType side, std::size_t row, SplitPolicy policy,
                                    std::string& error) {
  // balanced arm weights first, then increasingly lopsided ones
  const std::size_t m = code.checks(side).row_weight(row);
  const std::size_t hi = (m + 3) / 2;
  for (std::size_t d = 0; hi >= 3 + d; ++d) {
    for (std::size_t m1 : {hi - d, m + 2 - (hi - d)}) {
      const std::size_t m2 = m + 2 - m1;
      if (m1 < 3 || m2 < 3 || m1 >= m || m2 >= m) continue;
      try {
        return propose_split(code, side, row, {m1, m2}, policy);
      } catch (const Error& e) {
        error = e.what();
      }
    }
  }
  if (error.empty()) error = "row too light to split";
  return std::nullopt;
}

}  // namespace

ReductionResult reduce_to_threshold(const CssCode& code, std::size_t w_max, std::size_t max_steps, SplitPolicy policy) {
  if (w_max < 4) throw Error(ErrorKind::InvalidInput, "weight threshold must be >= 4");
  ReductionResult res;
  res.code = code;
  std::map<std::pair<CheckType, std::size_t>, std::string> failed;  // cleared after every bridge
  while (true) {
    std::vector<HeavyRow> heavy;
    for (CheckType t : {CheckType::X, CheckType::Z}) {
      const BitMatrix& h = res.code.checks(t);
      for (std::size_t r = 0; r < h.rows(); ++r)
        if (h.row_weight(r) > w_max) heavy.push_back({t, r, h.row_weight(r), {}});
    }
    std::stable_sort(heavy.begin(), heavy.end(), [](const HeavyRow& a, const HeavyRow& b) { return a.weight > b.weight; });
    if (heavy.empty()) {
      res.converged = true;
      return res;
    }
    std::optional<BridgePlan> plan;
    if (res.steps < max_steps) {
      for (auto& hr : heavy) {
        if (failed.count({hr.side, hr.row})) continue;
        std::string error;
        plan = try_split(res.code, hr.side, hr.row, policy, error);
        if (plan) break;
        failed[{hr.side, hr.row}] = error;
      }
    }
    if (!plan) {
      for (auto& hr : heavy)
        if (auto it = failed.find({hr.side, hr.row}); it != failed.end()) hr.reason = it->second;
      res.residual = std::move(heavy);
      return res;
    }
    res.code = apply_bridge(res.code, *plan);
    ++res.steps;
    failed.clear();
  }
}

nlohmann::json to_json(const ReductionResult& r) {
  nlohmann::json residual = nlohmann::json::array();
  for (const auto& h : r.residual) {
    nlohmann::json e{{"side", std::string(to_string(h.side))}, {"row", h.row}, {"weight", h.weight}};
    if (!h.reason.empty()) e["reason"] = h.reason;
    residual.push_back(std::move(e));
  }
  return {{"steps", r.steps}, {"converged", r.converged}, {"residual", residual}};
}

nlohmann::json plan_to_json(const BridgePlan& plan) {
  auto one_based = [](const std::vector<std::vector<std::size_t>>& sets) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& s : sets) {
      nlohmann::json a = nlohmann::json::array();
      for (std::size_t v : s) a.push_back(v + 1);
      j.push_back(a);
    }
    return j;
  };
  return {{"side", std::string(to_string(plan.side))},
          {"row", plan.row + 1},
          {"arms", one_based(plan.arms)},
          {"bridge_rows", one_based(plan.bridge_rows)}};
}

BridgePlan plan_from_json(const nlohmann::json& j) {
  auto zero_based = [](const nlohmann::json& sets) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& s : sets) {
      std::vector<std::size_t> v;
      for (const auto& x : s) {
        const auto i = x.get<long>();
        if (i < 1) throw Error(ErrorKind::Parse, "plan indices are 1-based");
        v.push_back(static_cast<std::size_t>(i - 1));
      }
      out.push_back(std::move(v));
    }
    return out;
  };
  try {
    BridgePlan p;
    const std::string side = j.at("side").get<std::string>();
    if (side != "X" && side != "Z") throw Error(ErrorKind::Parse, "plan side must be X or Z");
    p.side = side == "X" ? CheckType::X : CheckType::Z;
    const auto row = j.at("row").get<long>();
    if (row < 1) throw Error(ErrorKind::Parse, "plan indices are 1-based");
    p.row = static_cast<std::size_t>(row - 1);
    p.arms = zero_based(j.at("arms"));
    p.bridge_rows = zero_based(j.at("bridge_rows"));
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("bad bridge plan: ") + e.what());
  }
}

}  // namespace coxcss
