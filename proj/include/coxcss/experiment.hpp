#pragma once

#include "coxcss/bruhat.hpp"
#include "coxcss/css_code.hpp"
#include "coxcss/transform.hpp"

#include <json.hpp>

#include <functional>
#include <memory>
#include <string>

namespace coxcss {

enum class Method { Triple, Crown, S2, Random, Diamond, Fold, Metacheck, WeightReduction };
std::string_view to_string(Method m);
Method method_from_string(std::string_view s);

struct ExperimentConfig {
  std::string group;
  std::string bottom = "id";
  std::string top = "longest";
  int p = 0;
  Method method = Method::Triple;
  SpliceConfig splice;  // splice.seed is the master seed
  SpliceSides random_sides = SpliceSides::Both;
  std::size_t diamond_count = 1;
  FoldVariant fold_variant = FoldVariant::Fused;
  Method base_method = Method::Crown;  // for weight reduction
  std::size_t w_max = 0;
  std::size_t trials = 1;
  std::size_t exact_cap = 28;
  std::size_t ris_trials = 0;
  std::size_t search_weight = 0;
  std::size_t size_cap = 5'000'000;

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Builds the group and interval named by the config.
std::shared_ptr<const BruhatInterval> prepare_interval(const ExperimentConfig& config);

/// One code for one trial seed; a pure function of (config, seed).
CssCode build_code(const ExperimentConfig& config, const std::shared_ptr<const BruhatInterval>& interval,
                   std::uint64_t seed);

/// n, k, weights, distances and hash of a code.
nlohmann::json evaluate_code(const CssCode& code, const ExperimentConfig& config, std::uint64_t seed);

/// Runs config.trials trials with seeds derived from the master seed, calling
/// sink with one JSON report line per trial (in trial order).
void run_experiment(const ExperimentConfig& config, const std::function<void(const nlohmann::json&)>& sink);

}  // namespace coxcss
