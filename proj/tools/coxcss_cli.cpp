#include "coxcss/bruhat.hpp"
#include "coxcss/chain.hpp"
#include "coxcss/css_code.hpp"
#include "coxcss/distance.hpp"
#include "coxcss/error.hpp"
#include "coxcss/experiment.hpp"
#include "coxcss/matrix_io.hpp"
#include "coxcss/rng.hpp"
#include "coxcss/spheres.hpp"
#include "coxcss/transform.hpp"
#include "coxcss/weight_reduction.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace coxcss;
using nlohmann::json;

namespace {

struct Common {
  std::string group;
  std::string wb = "id";
  std::string wt = "longest";
  int p = 0;
  std::string format = "json";
  std::string output;
  std::string convention = "lower-x";
  std::size_t size_cap = 5'000'000;
};

struct SpliceOpts {
  std::string method = "crown";
  std::size_t kappa = 10;
  std::size_t lambda = 1;
  std::size_t cutoff = 50;
  std::string bias = "auto";
  std::optional<std::uint64_t> seed;
  std::string sides = "both";
  std::size_t count = 1;
};

void add_interval_flags(CLI::App* cmd, Common& c, bool need_p) {
  cmd->add_option("--group", c.group, "group spec, e.g. A4, C2^8, 'triangle 2 3 7'")->required();
  cmd->add_option("--wb", c.wb, "bottom element (word)");
  cmd->add_option("--wt", c.wt, "top element (word or 'longest')");
  cmd->add_option("--size-cap", c.size_cap, "maximum interval size");
  if (need_p) cmd->add_option("-p", c.p, "middle rank")->required();
}

void add_output_flags(CLI::App* cmd, Common& c, const std::string& formats) {
  cmd->add_option("--format", c.format, "output format: " + formats);
  cmd->add_option("-o,--output", c.output, "output file (prefix for alist/mtx)");
}

SideConvention parse_convention(const std::string& s) {
  if (s == "lower-x") return SideConvention::LowerX;
  if (s == "lower-z") return SideConvention::LowerZ;
  throw Error(ErrorKind::Parse, "side convention must be lower-x or lower-z");
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::shared_ptr<const BruhatInterval> load_interval(const Common& c) {
  ExperimentConfig cfg;
  cfg.group = c.group;
  cfg.bottom = c.wb;
  cfg.top = c.wt;
  cfg.size_cap = c.size_cap;
  return prepare_interval(cfg);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
  os << text;
  if (!os) throw Error(ErrorKind::Io, "write to " + path + " failed");
}

std::string read_text(const std::string& path) {
  std::stringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::Io, "cannot open " + path);
  ss << is.rdbuf();
  return ss.str();
}

void emit_code(const CssCode& code, const Common& c, const json& extra) {
  if (c.format == "bundle") {
    write_text(c.output, to_bundle(code, extra));
  } else if (c.format == "json") {
    json j = code_summary(code);
    j["hash"] = code_hash(code);
    j.update(extra);
    write_text(c.output, j.dump() + "\n");
  } else if (c.format == "alist" || c.format == "mtx") {
    if (c.output.empty()) throw Error(ErrorKind::InvalidInput, "--format " + c.format + " needs -o <prefix>");
    for (CheckType t : {CheckType::X, CheckType::Z}) {
      std::ostringstream os;
      if (c.format == "alist") write_alist(os, code.checks(t));
      else write_matrix_market(os, code.checks(t));
      write_text(c.output + ".h" + (t == CheckType::X ? "x." : "z.") + c.format, os.str());
    }
  } else {
    throw Error(ErrorKind::Parse, "unknown format '" + c.format + "'");
  }
}

CssCode load_code(const std::string& path) { return from_bundle(read_text(path)); }

CheckType parse_side(const std::string& s) {
  if (s == "X" || s == "x") return CheckType::X;
  if (s == "Z" || s == "z") return CheckType::Z;
  throw Error(ErrorKind::Parse, "side must be X or Z");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum CSS codes from Bruhat intervals of Coxeter groups"};
  app.require_subcommand(1);
  Common c;
  SpliceOpts so;

  // group
  auto* group = app.add_subcommand("group", "describe a Coxeter group");
  std::string word;
  group->add_option("--group", c.group)->required();
  group->add_option("--word", word, "optional word to reduce");

  // interval
  auto* interval = app.add_subcommand("interval", "enumerate a Bruhat interval");
  add_interval_flags(interval, c, false);
  add_output_flags(interval, c, "json|summary");
  bool with_betti = false;
  interval->add_flag("--betti", with_betti, "Betti numbers of the open interval");

  // spheres
  auto* spheres = app.add_subcommand("spheres", "diamond, crown and S^2 census around rank p");
  add_interval_flags(spheres, c, true);

  // make-trivial
  auto* trivial = app.add_subcommand("make-trivial", "three-layer code from ranks p-1, p, p+1");
  add_interval_flags(trivial, c, true);
  add_output_flags(trivial, c, "json|bundle|alist|mtx");
  trivial->add_option("--side-convention", c.convention, "lower-x or lower-z");

  // splice
  auto* splice = app.add_subcommand("splice", "crown, S^2 or random splicing, or diamond removal");
  add_interval_flags(splice, c, true);
  add_output_flags(splice, c, "json|bundle|alist|mtx");
  splice->add_option("--side-convention", c.convention);
  splice->add_option("--method", so.method, "crown|s2|random|diamond");
  splice->add_option("--kappa", so.kappa);
  splice->add_option("--lambda", so.lambda);
  splice->add_option("--cutoff", so.cutoff);
  splice->add_option("--bias", so.bias, "probability, 'auto' or 'layers'");
  splice->add_option("--seed", so.seed);
  splice->add_option("--sides", so.sides, "random splicing: x|z|both");
  splice->add_option("--count", so.count, "diamonds to remove");

  // fold
  auto* foldc = app.add_subcommand("fold", "fold five layers into a CSS code");
  add_interval_flags(foldc, c, true);
  add_output_flags(foldc, c, "json|bundle|alist|mtx");
  std::string variant = "fused";
  bool metacheck = false;
  foldc->add_option("--variant", variant, "single|fused");
  foldc->add_flag("--metacheck", metacheck, "emit the metacheck code of the seven-layer fold");

  // reduce-weight
  auto* reduce = app.add_subcommand("reduce-weight", "bridged-star weight reduction");
  std::string input, plan_path;
  std::size_t w_max = 0;
  reduce->add_option("-i,--input", input, "code bundle")->required();
  reduce->add_option("--plan", plan_path, "JSON plan (1-based indices)");
  reduce->add_option("--w-max", w_max, "reduce until every check weight is at most this");
  std::size_t max_steps = 1000;
  reduce->add_option("--max-steps", max_steps, "bridge budget for --w-max");
  add_output_flags(reduce, c, "json|bundle|alist|mtx");

  // distance
  auto* distance = app.add_subcommand("distance", "exact and randomized distance of a code bundle");
  std::size_t exact_cap = 28, ris_trials = 0, search_weight = 0;
  std::string side_opt;
  distance->add_option("-i,--input", input, "code bundle")->required();
  distance->add_option("--exact-cap", exact_cap, "largest kernel dimension for the exact walk");
  distance->add_option("--ris-trials", ris_trials, "random information set trials");
  distance->add_option("--search-weight", search_weight, "exhaustive search up to this weight");
  distance->add_option("--seed", so.seed);
  distance->add_option("--side", side_opt, "X or Z (default both)");

  // run
  auto* run = app.add_subcommand("run", "run an experiment config, one JSON line per trial");
  std::string config_path, bundle_dir;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> replay;
  run->add_option("--config", config_path, "experiment config (JSON)")->required();
  run->add_option("--trials", trials);
  run->add_option("--seed", so.seed, "master seed (overrides the config)");
  run->add_option("--exact-cap", exact_cap);
  run->add_option("--ris-trials", ris_trials);
  run->add_option("--replay", replay, "rebuild the code of one trial seed and print its bundle");
  run->add_option("--bundle-dir", bundle_dir, "write one bundle per trial");
  run->add_option("-o,--output", c.output, "report file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*group) {
      const CoxeterSystem sys = parse_group_spec(c.group);
      json j = to_json(sys);
      const auto cls = classify(sys);
      j["classification"] = to_json(cls);
      if (cls.kind == GroupClass::Finite) j["longest"] = to_json(longest_element(sys));
      if (!word.empty()) {
        const auto pe = parse_element(sys, word);
        j["element"] = to_json(pe.element);
        j["input_reduced"] = pe.input_reduced;
      }
      std::cout << j.dump() << "\n";
    } else if (*interval) {
      const auto iv = load_interval(c);
      json j = c.format == "summary" ? json{{"size", iv->size()}, {"layers", iv->layer_sizes()}, {"covers", iv->num_covers()}}
                                     : to_json(*iv);
      if (with_betti) j["betti"] = compute_betti(to_chain_complex(open_interval(iv)));
      write_text(c.output, j.dump() + "\n");
    } else if (*spheres) {
      const auto iv = load_interval(c);
      const int lo = std::max(iv->min_rank(), c.p - 2), hi = std::min(iv->max_rank(), c.p + 2);
      std::cout << sphere_census(rank_range(iv, lo, hi), c.p).dump() << "\n";
    } else if (*trivial) {
      const auto iv = load_interval(c);
      const CssCode code = css_from_triple(layered_subposet(iv, c.p, 1), c.p, parse_convention(c.convention));
      emit_code(code, c, {{"group", c.group}, {"wb", c.wb}, {"wt", c.wt}, {"p", c.p}});
    } else if (*splice) {
      ExperimentConfig cfg = ExperimentConfig::from_json({{"group", c.group},
                                                          {"wb", c.wb},
                                                          {"wt", c.wt},
                                                          {"p", c.p},
                                                          {"method", so.method},
                                                          {"kappa", so.kappa},
                                                          {"lambda", so.lambda},
                                                          {"cutoff", so.cutoff},
                                                          {"side_convention", c.convention},
                                                          {"sides", so.sides},
                                                          {"count", so.count},
                                                          {"size_cap", c.size_cap}});
      if (so.method != "crown" && so.method != "s2" && so.method != "random" && so.method != "diamond")
        throw Error(ErrorKind::InvalidInput, "splice method must be crown, s2, random or diamond");
      if (so.bias == "auto") cfg.splice.bias_mode = BiasMode::CrownFraction;
      else if (so.bias == "layers") cfg.splice.bias_mode = BiasMode::LayerFraction;
      else {
        cfg.splice.bias_mode = BiasMode::Fixed;
        try {
          cfg.splice.bias = std::stod(so.bias);
        } catch (const std::exception&) {
          throw Error(ErrorKind::Parse, "bad --bias '" + so.bias + "'");
        }
      }
      cfg.splice.seed = so.seed ? *so.seed : fresh_seed();
      const auto iv = prepare_interval(cfg);
      const CssCode code = build_code(cfg, iv, cfg.splice.seed);
      emit_code(code, c, {{"config", cfg.to_json()}, {"seed", cfg.splice.seed}});
    } else if (*foldc) {
      if (variant != "single" && variant != "fused") throw Error(ErrorKind::Parse, "variant must be single or fused");
      const auto iv = load_interval(c);
      const CssCode code = metacheck ? extract_metacheck_code(layered_subposet(iv, c.p, 3), c.p)
                                     : fold(layered_subposet(iv, c.p, 2), c.p,
                                            variant == "single" ? FoldVariant::Single : FoldVariant::Fused);
      emit_code(code, c, {{"group", c.group}, {"p", c.p}, {"variant", variant}, {"metacheck", metacheck}});
    } else if (*reduce) {
      const CssCode code = load_code(input);
      CssCode out;
      json extra = json::object();
      if (!plan_path.empty()) {
        const BridgePlan plan = plan_from_json(json::parse(read_text(plan_path)));
        out = apply_bridge(code, plan);
      } else if (w_max > 0) {
        const ReductionResult r = reduce_to_threshold(code, w_max, max_steps);
        extra["reduction"] = to_json(r);
        if (!r.converged)
          std::cerr << "warning: " << r.residual.size() << " rows still above weight " << w_max << " after " << r.steps
                    << " bridges\n";
        out = r.code;
      } else {
        throw Error(ErrorKind::InvalidInput, "reduce-weight needs --plan or --w-max");
      }
      emit_code(out, c, extra);
    } else if (*distance) {
      const CssCode code = load_code(input);
      const std::uint64_t seed = so.seed ? *so.seed : fresh_seed();
      json j{{"n", code.n()}, {"k", logical_count(code)}, {"seed", seed}};
      std::vector<CheckType> sides{CheckType::X, CheckType::Z};
      if (!side_opt.empty()) sides = {parse_side(side_opt)};
      for (CheckType t : sides) {
        json d = json::object();
        try {
          d["exact"] = to_json(exact_distance(code, t, exact_cap));
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::CapExceeded) throw;
          d["exact"] = nullptr;
        }
        if (ris_trials > 0) d["ris"] = to_json(ris_upper_bound(code, t, ris_trials, seed));
        if (search_weight > 0) {
          const auto s = low_weight_search(code, t, search_weight);
          d["search"] = s.distance ? json(*s.distance) : json(nullptr);
          d["search_max_weight"] = search_weight;
        }
        j[std::string(to_string(t))] = d;
      }
      std::cout << j.dump() << "\n";
    } else if (*run) {
      json cj = json::parse(read_text(config_path));
      if (so.seed) cj["seed"] = *so.seed;
      if (!cj.contains("seed")) cj["seed"] = fresh_seed();
      if (trials) cj["trials"] = *trials;
      if (run->count("--exact-cap")) cj["exact_cap"] = exact_cap;
      if (run->count("--ris-trials")) cj["ris_trials"] = ris_trials;
      const ExperimentConfig cfg = ExperimentConfig::from_json(cj);
      if (replay) {
        const CssCode code = build_code(cfg, prepare_interval(cfg), *replay);
        std::cout << to_bundle(code, {{"config", cfg.to_json()}, {"seed", *replay}});
        return 0;
      }
      std::ofstream file;
      if (!c.output.empty()) {
        file.open(c.output);
        if (!file) throw Error(ErrorKind::Io, "cannot open " + c.output);
      }
      std::ostream& os = c.output.empty() ? std::cout : file;
      os << json{{"config", cfg.to_json()}, {"master_seed", cfg.splice.seed}}.dump() << "\n";
      std::shared_ptr<const BruhatInterval> iv;
      if (!bundle_dir.empty()) iv = prepare_interval(cfg);
      run_experiment(cfg, [&](const json& line) {
        os << line.dump() << "\n";
        os.flush();
        if (!bundle_dir.empty() && !line.contains("error")) {
          const auto seed = line["seed"].get<std::uint64_t>();
          write_text(bundle_dir + "/trial_" + std::to_string(line["trial"].get<std::size_t>()) + ".bundle",
                     to_bundle(build_code(cfg, iv, seed), {{"config", cfg.to_json()}, {"seed", seed}}));
        }
      });
    }
  } catch (const Error& e) {
    std::cerr << json{{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}}.dump() << "\n";
    return 2 + static_cast<int>(e.kind());
  } catch (const json::exception& e) {
    std::cerr << json{{"error", {{"kind", "parse"}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  }
  return 0;
}
