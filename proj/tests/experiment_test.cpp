#include "support.hpp"

#include "coxcss/error.hpp"
#include "coxcss/experiment.hpp"
#include "coxcss/rng.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace coxcss;

namespace {

std::vector<nlohmann::json> run_with_workers(const ExperimentConfig& c, const char* workers) {
  setenv("COXCSS_WORKERS", workers, 1);
  std::vector<nlohmann::json> lines;
  run_experiment(c, [&](const nlohmann::json& j) { lines.push_back(j); });
  unsetenv("COXCSS_WORKERS");
  return lines;
}

}  // namespace

TEST_CASE("config JSON round trip") {
  const auto c = ExperimentConfig::from_json({{"group", "A4"}, {"p", 5}, {"method", "crown"}, {"kappa", 12},
                                              {"lambda", 2}, {"bias", 0.3}, {"seed", 42}, {"trials", 7}});
  CHECK(c.method == Method::Crown);
  CHECK(c.splice.kappa == 12);
  CHECK(c.splice.bias_mode == BiasMode::Fixed);
  CHECK(c.splice.bias == doctest::Approx(0.3));
  const auto back = ExperimentConfig::from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());
}

TEST_CASE("method names and aliases") {
  CHECK(method_from_string("fold-m5") == Method::Fold);
  CHECK(method_from_string("fold-m7") == Method::Fold);
  CHECK(method_from_string("weightred") == Method::WeightReduction);
  for (Method m : {Method::Triple, Method::Crown, Method::S2, Method::Random, Method::Diamond, Method::Fold,
                   Method::Metacheck, Method::WeightReduction})
    CHECK(method_from_string(to_string(m)) == m);
  CHECK_THROWS_AS(method_from_string("nope"), Error);
  CHECK(ExperimentConfig::from_json({{"group", "C2^8"}, {"p", 4}, {"method", "fold-m7"}}).fold_variant ==
        FoldVariant::Single);
  CHECK(ExperimentConfig::from_json({{"group", "C2^8"}, {"p", 4}, {"method", "fold-m5"}}).fold_variant ==
        FoldVariant::Fused);
}

TEST_CASE("bad configs are parse errors") {
  for (const nlohmann::json& j : {nlohmann::json{{"p", 3}}, nlohmann::json{{"group", "A3"}},
                                  nlohmann::json{{"group", "A3"}, {"p", 3}, {"bias", "sideways"}},
                                  nlohmann::json{{"group", "A3"}, {"p", 3}, {"side_convention", "up"}}}) {
    CAPTURE(j.dump());
    try {
      ExperimentConfig::from_json(j);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Parse);
    }
  }
}

TEST_CASE("build_code is a pure function of the seed") {
  auto c = ExperimentConfig::from_json({{"group", "A4"}, {"p", 5}, {"method", "crown"}, {"kappa", 20}});
  const auto iv = prepare_interval(c);
  for (std::uint64_t seed : {0ull, 1ull, 12345ull}) {
    const CssCode a = build_code(c, iv, seed), b = build_code(c, iv, seed);
    CHECK(code_hash(a) == code_hash(b));
    CHECK(a.provenance == b.provenance);
  }
}

TEST_CASE("parallel runs match the sequential run line for line") {
  auto c = ExperimentConfig::from_json({{"group", "C2^8"}, {"p", 4}, {"method", "random"}, {"seed", 3},
                                        {"trials", 12}, {"ris_trials", 50}, {"search_weight", 2}});
  const auto seq = run_with_workers(c, "1");
  const auto par = run_with_workers(c, "3");
  REQUIRE(seq.size() == 12);
  CHECK(seq == par);
  for (std::size_t t = 0; t < seq.size(); ++t) {
    CHECK(seq[t]["trial"] == t);
    CHECK(seq[t]["seed"] == derive_seed(3, t));
    CHECK(seq[t].contains("hash"));
  }
}

TEST_CASE("trial errors are reported per line") {
  auto c = ExperimentConfig::from_json({{"group", "C2^6"}, {"p", 3}, {"method", "diamond"}, {"count", 1000},
                                        {"trials", 2}});
  std::vector<nlohmann::json> lines;
  run_experiment(c, [&](const nlohmann::json& j) { lines.push_back(j); });
  REQUIRE(lines.size() == 2);
  for (const auto& l : lines) CHECK(l["error"]["kind"] == "invalid-input");
}

TEST_CASE("weight reduction on top of a base method") {
  auto c = ExperimentConfig::from_json(
      {{"group", "C2^8"}, {"p", 4}, {"method", "weightred"}, {"base_method", "random"}, {"w_max", 8}});
  const auto iv = prepare_interval(c);
  const CssCode code = build_code(c, iv, 0);
  const auto w = weight_stats(code);
  CHECK(std::max(w.max_x, w.max_z) <= 8);
  CHECK(code.provenance.back()["op"] == "reduce_to_threshold");
  c.w_max = 0;
  CHECK_THROWS_AS(build_code(c, iv, 0), Error);
}
