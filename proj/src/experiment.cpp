#include "coxcss/experiment.hpp"

#include "coxcss/distance.hpp"
#include "coxcss/error.hpp"
#include "coxcss/rng.hpp"
#include "coxcss/weight_reduction.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

namespace coxcss {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Triple: return "triple";
    case Method::Crown: return "crown";
    case Method::S2: return "s2";
    case Method::Random: return "random";
    case Method::Diamond: return "diamond";
    case Method::Fold: return "fold";
    case Method::Metacheck: return "metacheck";
    case Method::WeightReduction: return "weight-reduction";
  }
  return "unknown";
}

Method method_from_string(std::string_view s) {
  if (s == "fold-m5" || s == "fold-m7") return Method::Fold;
  if (s == "weightred") return Method::WeightReduction;
  for (Method m : {Method::Triple, Method::Crown, Method::S2, Method::Random, Method::Diamond, Method::Fold,
                   Method::Metacheck, Method::WeightReduction})
    if (to_string(m) == s) return m;
  throw Error(ErrorKind::Parse, "unknown method '" + std::string(s) + "'");
}

namespace {

BiasMode bias_from_json(const nlohmann::json& j, double& value) {
  if (j.is_number()) {
    value = j.get<double>();
    return BiasMode::Fixed;
  }
  const std::string s = j.get<std::string>();
  if (s == "auto") return BiasMode::CrownFraction;
  if (s == "layers") return BiasMode::LayerFraction;
  throw Error(ErrorKind::Parse, "bias must be a number, \"auto\" or \"layers\"");
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  try {
    ExperimentConfig c;
    c.group = j.at("group").get<std::string>();
    c.bottom = j.value("wb", c.bottom);
    c.top = j.value("wt", c.top);
    c.p = j.at("p").get<int>();
    const std::string method = j.value("method", "triple");
    c.method = method_from_string(method);
    c.splice.kappa = j.value("kappa", c.splice.kappa);
    c.splice.lambda = j.value("lambda", c.splice.lambda);
    c.splice.cutoff = j.value("cutoff", c.splice.cutoff);
    if (j.contains("bias")) c.splice.bias_mode = bias_from_json(j["bias"], c.splice.bias);
    c.splice.seed = j.value("seed", std::uint64_t{0});
    const std::string conv = j.value("side_convention", "lower-x");
    if (conv != "lower-x" && conv != "lower-z") throw Error(ErrorKind::Parse, "side_convention must be lower-x or lower-z");
    c.splice.convention = conv == "lower-x" ? SideConvention::LowerX : SideConvention::LowerZ;
    const std::string sides = j.value("sides", "both");
    c.random_sides = sides == "x" ? SpliceSides::X : sides == "z" ? SpliceSides::Z : SpliceSides::Both;
    c.diamond_count = j.value("count", c.diamond_count);
    const std::string variant = j.value("variant", method == "fold-m7" ? "single" : "fused");
    if (variant != "single" && variant != "fused") throw Error(ErrorKind::Parse, "variant must be single or fused");
    c.fold_variant = variant == "single" ? FoldVariant::Single : FoldVariant::Fused;
    if (j.contains("base_method")) c.base_method = method_from_string(j["base_method"].get<std::string>());
    c.w_max = j.value("w_max", c.w_max);
    c.trials = j.value("trials", c.trials);
    c.exact_cap = j.value("exact_cap", c.exact_cap);
    c.ris_trials = j.value("ris_trials", c.ris_trials);
    c.search_weight = j.value("search_weight", c.search_weight);
    c.size_cap = j.value("size_cap", c.size_cap);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("bad experiment config: ") + e.what());
  }
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json bias;
  switch (splice.bias_mode) {
    case BiasMode::Fixed: bias = splice.bias; break;
    case BiasMode::CrownFraction: bias = "auto"; break;
    case BiasMode::LayerFraction: bias = "layers"; break;
  }
  return {{"group", group},
          {"wb", bottom},
          {"wt", top},
          {"p", p},
          {"method", std::string(coxcss::to_string(method))},
          {"kappa", splice.kappa},
          {"lambda", splice.lambda},
          {"cutoff", splice.cutoff},
          {"bias", bias},
          {"seed", splice.seed},
          {"side_convention", splice.convention == SideConvention::LowerX ? "lower-x" : "lower-z"},
          {"sides", random_sides == SpliceSides::X ? "x" : random_sides == SpliceSides::Z ? "z" : "both"},
          {"count", diamond_count},
          {"variant", fold_variant == FoldVariant::Single ? "single" : "fused"},
          {"base_method", std::string(coxcss::to_string(base_method))},
          {"w_max", w_max},
          {"trials", trials},
          {"exact_cap", exact_cap},
          {"ris_trials", ris_trials},
          {"search_weight", search_weight},
          {"size_cap", size_cap}};
}

std::shared_ptr<const BruhatInterval> prepare_interval(const ExperimentConfig& config) {
  auto system = std::make_shared<const CoxeterSystem>(parse_group_spec(config.group));
  const auto bottom = parse_element(*system, config.bottom);
  const auto top = parse_element(*system, config.top);
  IntervalOptions opts;
  opts.size_cap = config.size_cap;
  return std::make_shared<const BruhatInterval>(build_interval(system, bottom.element, top.element, opts));
}

namespace {

CssCode build_with(Method method, const ExperimentConfig& config, const std::shared_ptr<const BruhatInterval>& iv,
                   std::uint64_t seed) {
  const int p = config.p;
  SpliceConfig sc = config.splice;
  sc.seed = seed;
  auto sub = [&](int k) { return layered_subposet(iv, p, k); };
  switch (method) {
    case Method::Triple: return css_from_triple(sub(1), p, sc.convention);
    case Method::Crown: {
      const auto s = sub(2);
      return crown_splice(css_from_triple(s, p, sc.convention), enumerate_crowns(s, p, CrownSide::Left),
                          enumerate_crowns(s, p, CrownSide::Right), sc);
    }
    case Method::S2: {
      const auto s = sub(2);
      return s2_splice(css_from_triple(s, p, sc.convention), enumerate_s2(s, p), sc);
    }
    case Method::Random: return random_splice(css_from_triple(sub(1), p, sc.convention), config.random_sides, seed);
    case Method::Diamond: {
      const auto s = sub(1);
      return diamond_removal(css_from_triple(s, p, sc.convention), enumerate_diamonds(s, p), config.diamond_count, seed,
                             sc.convention);
    }
    case Method::Fold: return fold(sub(2), p, config.fold_variant);
    case Method::Metacheck: return extract_metacheck_code(sub(3), p);
    case Method::WeightReduction: {
      if (config.base_method == Method::WeightReduction) throw Error(ErrorKind::InvalidInput, "recursive base method");
      if (config.w_max == 0) throw Error(ErrorKind::InvalidInput, "weight reduction needs w_max");
      ReductionResult r = reduce_to_threshold(build_with(config.base_method, config, iv, seed), config.w_max);
      r.code.provenance.push_back({{"op", "reduce_to_threshold"}, {"w_max", config.w_max}, {"report", to_json(r)}});
      return std::move(r.code);
    }
  }
  throw Error(ErrorKind::InvalidInput, "unknown method");
}

}  // namespace

CssCode build_code(const ExperimentConfig& config, const std::shared_ptr<const BruhatInterval>& interval,
                   std::uint64_t seed) {
  return build_with(config.method, config, interval, seed);
}

nlohmann::json evaluate_code(const CssCode& code, const ExperimentConfig& config, std::uint64_t seed) {
  nlohmann::json line = code_summary(code);
  line["hash"] = code_hash(code);
  const std::size_t k = line["k"].get<std::size_t>();
  nlohmann::json dist = nlohmann::json::object();
  if (k > 0) {
    for (CheckType side : {CheckType::X, CheckType::Z}) {
      nlohmann::json d = nlohmann::json::object();
      try {
        d["exact"] = *exact_distance(code, side, config.exact_cap).exact;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::CapExceeded) throw;
        d["exact"] = nullptr;
      }
      if (config.ris_trials > 0) d["ris"] = ris_upper_bound(code, side, config.ris_trials, derive_seed(seed, 1)).upper_bound;
      if (config.search_weight > 0) {
        const auto s = low_weight_search(code, side, config.search_weight);
        if (s.distance) d["search"] = *s.distance;
        else d["search_lower_bound"] = config.search_weight + 1;
      }
      dist[std::string(to_string(side))] = d;
    }
  }
  line["distance"] = dist;
  return line;
}

void run_experiment(const ExperimentConfig& config, const std::function<void(const nlohmann::json&)>& sink) {
  const auto iv = prepare_interval(config);
  auto run_trial = [&](std::size_t t) {
    const std::uint64_t seed = derive_seed(config.splice.seed, t);
    nlohmann::json line{{"trial", t}, {"seed", seed}, {"method", std::string(to_string(config.method))}};
    try {
      const CssCode code = build_code(config, iv, seed);
      line.update(evaluate_code(code, config, seed));
    } catch (const Error& e) {
      line["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    }
    return line;
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(worker_count(), static_cast<unsigned>(config.trials)));
  if (workers == 1) {
    for (std::size_t t = 0; t < config.trials; ++t) sink(run_trial(t));
    return;
  }
  // Lines are buffered until every earlier trial has been emitted.
  std::mutex mu;
  std::map<std::size_t, nlohmann::json> pending;
  std::size_t next_emit = 0;
  std::atomic<std::size_t> next_trial{0};
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t t; (t = next_trial.fetch_add(1)) < config.trials;) {
      nlohmann::json line;
      try {
        line = run_trial(t);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        line = {{"trial", t}, {"error", {{"kind", "internal"}}}};
      }
      std::lock_guard lock(mu);
      pending.emplace(t, std::move(line));
      while (!pending.empty() && pending.begin()->first == next_emit) {
        if (!failure) sink(pending.begin()->second);
        pending.erase(pending.begin());
        ++next_emit;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace coxcss
