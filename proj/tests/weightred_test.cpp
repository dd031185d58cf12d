#include "support.hpp"

#include "coxcss/bruhat.hpp"
#include "coxcss/distance.hpp"
#include "coxcss/error.hpp"
#include "coxcss/rng.hpp"
#include "coxcss/transform.hpp"
#include "coxcss/weight_reduction.hpp"

#include <doctest.h>

#include <set>

using namespace coxcss;

namespace {

const char* const kFixtures[] = {"weightred/shor_step1.json", "weightred/shor_step2.json",
                                 "weightred/code642_step1.json", "weightred/code642_step2.json",
                                 "weightred/a4_spliced.json"};

std::size_t max_weight(const CssCode& c) {
  const auto w = weight_stats(c);
  return std::max(w.max_x, w.max_z);
}

}  // namespace

TEST_CASE("bridge fixtures replay bit-exact") {
  for (const char* name : kFixtures) {
    CAPTURE(name);
    const auto j = fixture::load(name);
    const CssCode in = fixture::code(j["input"]);
    const BridgePlan plan = plan_from_json(j["plan"]);
    CHECK(validate_plan(in, plan));
    const CssCode out = apply_bridge(in, plan);
    const CssCode expect = fixture::code(j["expected"]);
    CHECK(out.hx == expect.hx);
    CHECK(out.hz == expect.hz);
    CHECK(logical_count(out) == logical_count(in));
    CHECK(plan_to_json(plan) == j["plan"]);
    const BitMatrix& dual_in = in.checks(opposite(plan.side));
    const BitMatrix& dual_out = out.checks(opposite(plan.side));
    for (std::size_t r = 0; r < dual_in.rows(); ++r) {
      std::size_t gained = 0;
      for (const auto& rows : plan.bridge_rows) gained += std::count(rows.begin(), rows.end(), r);
      CHECK(dual_out.row_weight(r) == dual_in.row_weight(r) + gained);
    }
  }
}

TEST_CASE("bridge fixtures keep both distances") {
  for (const char* name : kFixtures) {
    CAPTURE(name);
    const auto j = fixture::load(name);
    const CssCode in = fixture::code(j["input"]);
    const CssCode out = fixture::code(j["expected"]);
    for (CheckType t : {CheckType::X, CheckType::Z}) {
      const std::size_t want = j["distance"][std::string(to_string(t))];
      CHECK(exact_distance(in, t).exact == want);
      CHECK(exact_distance(out, t).exact == want);
      CHECK(oracle::brute_distance(out, t) == want);
    }
  }
}

TEST_CASE("required bridge rows reproduce the fixture plans") {
  for (const char* name : kFixtures) {
    CAPTURE(name);
    const auto j = fixture::load(name);
    const CssCode in = fixture::code(j["input"]);
    const BridgePlan plan = plan_from_json(j["plan"]);
    CHECK(required_bridge_rows(in, plan.side, plan.row, plan.arms) == plan.bridge_rows);
  }
}

TEST_CASE("validate_plan rejects malformed plans") {
  const auto j = fixture::load("weightred/shor_step1.json");
  const CssCode in = fixture::code(j["input"]);
  const BridgePlan good = plan_from_json(j["plan"]);
  BridgePlan p = good;
  p.bridge_rows[0].clear();
  CHECK_FALSE(validate_plan(in, p));
  CHECK_THROWS_AS(apply_bridge(in, p), Error);
  p = good;
  p.arms[1].pop_back();  // arms no longer cover the row
  CHECK_FALSE(validate_plan(in, p));
  p = good;
  p.arms[1].push_back(p.arms[0][0]);  // overlapping arms
  CHECK_FALSE(validate_plan(in, p));
  p = good;
  p.row = 99;
  CHECK_FALSE(validate_plan(in, p));
  p = good;
  p.arms = {good.arms[0]};
  p.bridge_rows.clear();
  CHECK_FALSE(validate_plan(in, p));
}

TEST_CASE("propose_split produces valid plans with the requested arm sizes") {
  const auto j = fixture::load("weightred/a4_spliced.json");
  const CssCode in = fixture::code(j["input"]);
  for (CheckType t : {CheckType::X, CheckType::Z}) {
    const BitMatrix& h = in.checks(t);
    for (std::size_t r = 0; r < h.rows(); ++r) {
      const std::size_t w = h.row_weight(r);
      if (w < 6) continue;
      const std::size_t m1 = (w + 3) / 2, m2 = w + 2 - m1;
      try {
        const BridgePlan plan = propose_split(in, t, r, {m1, m2});
        CHECK(validate_plan(in, plan));
        CHECK(plan.arm_weights() == std::vector<std::size_t>{m1, m2});
        const CssCode out = apply_bridge(in, plan);
        CHECK(out.n() == in.n() + 1);
        CHECK(logical_count(out) == logical_count(in));
      } catch (const Error& e) {
        // some rows admit no split at these sizes; the error must say so
        CHECK(e.kind() == ErrorKind::InvalidInput);
      }
    }
  }
}

TEST_CASE("reduce_to_threshold reaches the target weight and keeps k") {
  const auto sys = std::make_shared<const CoxeterSystem>(parse_group_spec("C2^8"));
  const auto iv = std::make_shared<const BruhatInterval>(build_interval(sys, sys->identity(), longest_element(*sys)));
  const CssCode base = css_from_triple(layered_subposet(iv, 4, 1), 4);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const CssCode spliced = random_splice(base, SpliceSides::Both, seed);
    for (std::size_t w_max : {8u, 9u}) {
      CAPTURE(seed);
      CAPTURE(w_max);
      const auto r = reduce_to_threshold(spliced, w_max);
      CHECK(r.converged);
      CHECK(r.residual.empty());
      CHECK(max_weight(r.code) <= w_max);
      CHECK(is_orthogonal(r.code));
      CHECK(r.code.n() == spliced.n() + r.steps);
      CHECK(logical_count(r.code) == logical_count(spliced));
    }
  }
  CHECK_THROWS_AS(reduce_to_threshold(base, 3), Error);
}

TEST_CASE("reduce_to_threshold on [6,4,2]") {
  const BitMatrix h = BitMatrix::from_strings({"111111"});
  const CssCode c = make_css_code(h, h);
  const auto r = reduce_to_threshold(c, 5);
  CHECK(r.converged);
  CHECK(r.code.n() == 8);
  CHECK(logical_count(r.code) == 4);
  CHECK(max_weight(r.code) == 5);
  for (CheckType t : {CheckType::X, CheckType::Z}) CHECK(exact_distance(r.code, t).exact == 2u);
  // Already light enough: nothing to do.
  const auto same = reduce_to_threshold(r.code, 5);
  CHECK(same.steps == 0);
  CHECK(same.code.hx == r.code.hx);
  // Weight 4 see-saws: every split pushes a dual row back above the threshold.
  const auto stuck = reduce_to_threshold(c, 4, 40);
  CHECK_FALSE(stuck.converged);
  CHECK(stuck.steps == 40);
  CHECK_FALSE(stuck.residual.empty());
  CHECK(logical_count(stuck.code) == 4);
  const auto j = to_json(stuck);
  CHECK(j["converged"] == false);
  CHECK(j["residual"].size() == stuck.residual.size());
}

TEST_CASE("both split policies give valid plans on spliced codes") {
  const auto j = fixture::load("weightred/a4_spliced.json");
  const CssCode in = fixture::code(j["input"]);
  for (CheckType t : {CheckType::X, CheckType::Z})
    for (std::size_t r = 0; r < in.checks(t).rows(); ++r) {
      const std::size_t w = in.checks(t).row_weight(r);
      if (w < 5) continue;
      const std::size_t m1 = (w + 3) / 2;
      std::size_t anchor_rows = 0, min_rows = 0;
      try {
        const auto a = propose_split(in, t, r, {m1, w + 2 - m1}, SplitPolicy::Anchor);
        const auto b = propose_split(in, t, r, {m1, w + 2 - m1}, SplitPolicy::MinBridges);
        CHECK(validate_plan(in, b));
        anchor_rows = a.bridge_rows[0].size();
        min_rows = b.bridge_rows[0].size();
        CHECK(min_rows >= 1);
        CHECK(min_rows <= anchor_rows);
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidInput);
      }
    }
}

TEST_CASE("reduce_to_threshold on crown-spliced A4 codes") {
  const auto j = fixture::load("weightred/a4_spliced.json");
  const CssCode in = fixture::code(j["input"]);
  const auto r = reduce_to_threshold(in, 6);
  CHECK(r.converged);
  CHECK(max_weight(r.code) <= 6);
  CHECK(logical_count(r.code) == logical_count(in));
  for (CheckType t : {CheckType::X, CheckType::Z}) CHECK(*exact_distance(r.code, t).exact >= 1);
}

TEST_CASE("plan JSON is 1-based and round trips") {
  BridgePlan p;
  p.side = CheckType::Z;
  p.row = 2;
  p.arms = {{0, 1}, {2, 3}, {4, 5}};
  p.bridge_rows = {{0}, {1, 2}};
  const auto j = plan_to_json(p);
  CHECK(j["row"] == 3);
  CHECK(j["arms"][0] == nlohmann::json({1, 2}));
  const BridgePlan back = plan_from_json(j);
  CHECK(back.side == p.side);
  CHECK(back.row == p.row);
  CHECK(back.arms == p.arms);
  CHECK(back.bridge_rows == p.bridge_rows);
  CHECK(p.arm_weights() == std::vector<std::size_t>{3, 4, 3});
  CHECK_THROWS_AS(plan_from_json(nlohmann::json{{"side", "Y"}, {"row", 1}, {"arms", {{1}}}, {"bridge_rows", {}}}), Error);
  CHECK_THROWS_AS(plan_from_json(nlohmann::json{{"side", "X"}, {"row", 0}, {"arms", {{1}}}, {"bridge_rows", {}}}), Error);
}
