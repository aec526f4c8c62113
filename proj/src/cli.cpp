#include "mtype/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>

#include "CLI11.hpp"
#include "mtype/bounds.hpp"
#include "mtype/errors.hpp"
#include "mtype/metrics.hpp"
#include "mtype/quantize.hpp"

namespace mtype {

namespace {

Target load_from_file(const std::string& path, bool normalize) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input file '" + path + "'");
  return make_target(parse_probability_lines(in), normalize);
}

// The Yule-Simon convergence floor only applies when we know the target is that
// family; recover rho from the shorthand if so.
std::optional<double> yule_rho_of(const RunConfig& cfg) {
  if (cfg.family.empty()) return std::nullopt;
  const FamilySpec spec = parse_family(cfg.family);
  if (spec.kind == FamilyKind::yule_simon) return spec.real_param;
  return std::nullopt;
}

nlohmann::ordered_json input_echo(const RunConfig& cfg, const Target& t) {
  nlohmann::ordered_json j;
  j["source"] = cfg.family.empty() ? "file:" + cfg.input_path : "family:" + cfg.family;
  j["normalize"] = cfg.normalize;
  j["original_size"] = t.original_size;
  j["materialized"] = t.n();
  j["tail_mass"] = t.tail_mass;
  return j;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file '" + path + "'");
  out << text;
  out.flush();
  if (!out) throw IoError("failed while writing output file '" + path + "'");
}

void require_single_precision(const RunConfig& cfg) {
  if (cfg.M < 1) throw std::invalid_argument("precision M must be at least 1");
}

}  // namespace

Target load_target(const RunConfig& cfg, long long M_hint) {
  if (!cfg.family.empty()) {
    if (M_hint < 1) throw std::invalid_argument("precision M must be at least 1");
    return make_family(parse_family(cfg.family), static_cast<std::size_t>(M_hint));
  }
  return load_from_file(cfg.input_path, cfg.normalize);
}

nlohmann::ordered_json cmd_quantize(const RunConfig& cfg) {
  require_single_precision(cfg);
  const Target t = load_target(cfg, cfg.M);
  const MTypeApprox vd = quantize_vd(t, cfg.M);
  const auto [id, trace] = quantize_id(t, cfg.M);

  nlohmann::ordered_json methods;
  if (cfg.method != MethodChoice::id) methods["vd"] = method_block(vd, t, cfg.base);
  if (cfg.method != MethodChoice::vd) methods["id"] = method_block(id, t, cfg.base);

  nlohmann::ordered_json j;
  j["command"] = "quantize";
  j["input"] = input_echo(cfg, t);
  j["M"] = cfg.M;
  j["base"] = base_name(cfg.base);
  j["methods"] = methods;
  j["bounds"] = bounds_block(evaluate_bounds(t, vd, id, yule_rho_of(cfg)), cfg.base);
  return j;
}

std::string cmd_sweep(const RunConfig& cfg) {
  if (cfg.family.empty()) throw std::invalid_argument("sweep needs a --family input");
  if (cfg.M_start < 1 || cfg.M_end < cfg.M_start || cfg.M_step < 1) {
    throw std::invalid_argument("sweep range must satisfy 1 <= start <= end with step >= 1");
  }
  const Target t = load_target(cfg, cfg.M_end);
  return sweep_csv(run_sweep(t, cfg.M_start, cfg.M_end, cfg.M_step), cfg.base);
}

nlohmann::ordered_json cmd_bounds(const RunConfig& cfg) {
  require_single_precision(cfg);
  const Target t = load_target(cfg, cfg.M);
  const MTypeApprox vd = quantize_vd(t, cfg.M);
  const auto [id, trace] = quantize_id(t, cfg.M);

  nlohmann::ordered_json j;
  j["command"] = "bounds";
  j["input"] = input_echo(cfg, t);
  j["bounds"] = bounds_block(evaluate_bounds(t, vd, id, yule_rho_of(cfg)), cfg.base);
  return j;
}

nlohmann::ordered_json cmd_oracle(const RunConfig& cfg) {
  require_single_precision(cfg);
  const Target t = load_target(cfg, cfg.M);

  auto one = [&](Criterion criterion) {
    const auto [oracle, best] = oracle_min(t, cfg.M, criterion);
    nlohmann::ordered_json r;
    double oracle_value = 0.0;
    double achieved = 0.0;
    if (criterion == Criterion::vd) {
      const MTypeApprox algo = quantize_vd(t, cfg.M);
      oracle_value = best;
      achieved = variational_distance(algo, t);
      r["criterion"] = "vd";
      r["oracle_counts"] = expand_counts(oracle, t);
      r["algorithm_counts"] = expand_counts(algo, t);
    } else {
      const auto [algo, trace] = quantize_id(t, cfg.M);
      oracle_value = in_base(best, cfg.base);
      achieved = in_base(informational_divergence(algo, t).nats, cfg.base);
      r["criterion"] = "id";
      r["oracle_counts"] = expand_counts(oracle, t);
      r["algorithm_counts"] = expand_counts(algo, t);
    }
    r["oracle_value"] = oracle_value;
    r["achieved_value"] = achieved;
    r["equal"] = std::abs(oracle_value - achieved) <= 1e-12;
    return r;
  };

  nlohmann::ordered_json j;
  j["command"] = "oracle";
  j["input"] = input_echo(cfg, t);
  j["M"] = cfg.M;
  j["base"] = base_name(cfg.base);
  if (cfg.method != MethodChoice::id) j["vd"] = one(Criterion::vd);
  if (cfg.method != MethodChoice::vd) j["id"] = one(Criterion::id);
  return j;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Optimal fixed-precision (M-type) approximation of probability distributions"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string method = "both";
  std::string base = "bits";

  const char* const family_help =
      "Family shorthand name:param (uniform:N, geometric:R, yule-simon:RHO, adversarial:BLOCKS)";
  auto add_common = [&](CLI::App* sub, bool single_M, bool range_M) {
    if (range_M) {
      // Sweeps study parametric families; the materialized prefix length is
      // chosen from the largest precision in the range.
      sub->add_option("--family", cfg.family, family_help)->required();
    } else {
      auto* source = sub->add_option_group("source", "Where the target distribution comes from");
      source->add_option("--input", cfg.input_path,
                         "File with one probability per line ('#' starts a comment)");
      source->add_option("--family", cfg.family, family_help);
      source->require_option(1);
    }
    sub->add_option("--method", method, "vd | id | both")
        ->check(CLI::IsMember({"vd", "id", "both"}));
    sub->add_option("--base", base, "bits | nats")->check(CLI::IsMember({"bits", "nats"}));
    sub->add_flag("--normalize", cfg.normalize, "Rescale input values to sum to 1");
    sub->add_option("--output", cfg.output_path, "Write to this path instead of stdout");
    if (single_M) {
      sub->add_option("--M", cfg.M, "Precision: output probabilities are multiples of 1/M")
          ->required();
    }
    if (range_M) {
      sub->add_option("--M-start", cfg.M_start, "First precision in the sweep")->required();
      sub->add_option("--M-end", cfg.M_end, "Last precision in the sweep")->required();
      sub->add_option("--M-step", cfg.M_step, "Stride between precisions (default 1)");
    }
  };

  CLI::App* quantize = app.add_subcommand("quantize", "Approximate a target at one precision");
  add_common(quantize, true, false);
  CLI::App* sweep = app.add_subcommand("sweep", "Evaluate a family across a precision range");
  add_common(sweep, false, true);
  CLI::App* bounds = app.add_subcommand("bounds", "Evaluate every closed-form guarantee");
  add_common(bounds, true, false);
  CLI::App* oracle = app.add_subcommand("oracle", "Cross-check against exhaustive search");
  add_common(oracle, true, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  cfg.method = method == "vd" ? MethodChoice::vd
             : method == "id" ? MethodChoice::id
                              : MethodChoice::both;
  cfg.base = base == "nats" ? BaseUnit::nats : BaseUnit::bits;

  try {
    std::string text;
    if (quantize->parsed()) {
      cfg.command = Command::quantize;
      text = cmd_quantize(cfg).dump(2) + "\n";
    } else if (sweep->parsed()) {
      cfg.command = Command::sweep;
      text = cmd_sweep(cfg);
    } else if (bounds->parsed()) {
      cfg.command = Command::bounds;
      text = cmd_bounds(cfg).dump(2) + "\n";
    } else {
      cfg.command = Command::oracle;
      text = cmd_oracle(cfg).dump(2) + "\n";
    }
    write_output(cfg.output_path, text);
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GuardExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace mtype
