#include "experiment.hpp"

#include <ultradist/calculus.hpp>
#include <ultradist/format.hpp>
#include <ultradist/report.hpp>

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace ultradist::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config error: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<std::string, std::string> split_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return {spec, ""};
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

double spec_number(const std::string& text, const std::string& spec) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v))
    throw std::invalid_argument("bad number in '" + spec + "'");
  return v;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << body;
}

}  // namespace

WeightSequence parse_weights_spec(const std::string& spec, std::size_t horizon) {
  const auto [kind, arg] = split_spec(spec);
  if (kind == "gevrey") return gevrey(spec_number(arg, spec), horizon);
  if (kind == "file") return weights_from_json(read_file(arg), arg);
  throw std::invalid_argument("unknown weight spec '" + spec + "' (use gevrey:s or file:path)");
}

RSequence parse_rseq_spec(const std::string& spec, std::size_t horizon) {
  const auto [kind, arg] = split_spec(spec);
  if (kind == "linear") return linear_rsequence(spec_number(arg, spec), horizon);
  if (kind == "power") return power_rsequence(spec_number(arg, spec), horizon);
  if (kind == "list") {
    std::vector<double> v;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(spec_number(item, spec));
    return RSequence(std::move(v));
  }
  if (kind == "file") return rsequence_from_json(read_file(arg));
  throw std::invalid_argument("unknown r-sequence spec '" + spec + "' (use linear:c, power:e, list:... or file:path)");
}

Ultradistribution parse_distribution_spec(const std::string& spec) {
  if (spec == "gaussian") return density(parse_expr("exp(neg(pow(x,2)))"));
  if (spec == "constant") return density(Expr::constant(1.0));
  if (spec == "delta") return delta(0.0, 0);
  if (spec == "delta_prime") return delta(0.0, 1);
  if (spec.rfind("exploding:", 0) == 0) {
    const double j = spec_number(spec.substr(10), spec);
    if (j < 1 || j != std::floor(j) || j > 200) throw std::invalid_argument("exploding:J needs 1 <= J <= 200");
    return exploding_bumps(static_cast<std::size_t>(j));
  }
  return Ultradistribution::parse(spec);
}

Experiment load_experiment(const std::string& path, std::optional<std::uint64_t> seed_override) {
  ConfigFile cfg = ConfigFile::load(path);
  Experiment exp;
  HarnessConfig& h = exp.harness;
  exp.name = cfg.get_string("", "name", std::filesystem::path(path).stem().string());

  h.gevrey_s = cfg.get_double("weights", "gevrey", h.gevrey_s);
  if (!(h.gevrey_s > 0.0)) cfg.fail("weights", "gevrey", "must be > 0");
  h.k_max = cfg.get_size("weights", "k_max", h.k_max);
  if (h.k_max < 1 || h.k_max > 40) cfg.fail("weights", "k_max", "must lie in 1..40");

  const std::string r_spec = cfg.get_string("rseq", "r", "linear:3");
  try {
    h.r = parse_rseq_spec(r_spec, h.k_max);
  } catch (const std::exception& e) {
    cfg.fail("rseq", "r", e.what());
  }
  if (h.r.horizon() < h.k_max) cfg.fail("rseq", "r", "horizon shorter than k_max");

  h.grid.points = cfg.get_size("grid", "points", h.grid.points);
  if (h.grid.points < 3) cfg.fail("grid", "points", "need at least 3 points");
  h.grid.reference_width = cfg.get_double("grid", "reference_width", h.grid.reference_width);
  if (h.grid.reference_width < 0.0) cfg.fail("grid", "reference_width", "must be >= 0");

  h.seed = cfg.get_size("corpus", "seed", h.seed);
  if (seed_override) h.seed = *seed_override;
  {
    const auto ladder = cfg.get_doubles("corpus", "ladder", {8, 16, 32});
    h.corpus_ladder.clear();
    for (double v : ladder) {
      if (v < 1 || v != std::floor(v) || v > 4096) cfg.fail("corpus", "ladder", "sizes must be integers in 1..4096");
      h.corpus_ladder.push_back(static_cast<std::size_t>(v));
    }
  }
  h.witness_scales = cfg.get_doubles("corpus", "witness_scales", h.witness_scales);
  h.stability_factor = cfg.get_double("corpus", "stability_factor", h.stability_factor);
  h.growth_factor = cfg.get_double("corpus", "growth_factor", h.growth_factor);
  if (!(h.stability_factor >= 1.0)) cfg.fail("corpus", "stability_factor", "must be >= 1");
  if (!(h.growth_factor > 1.0)) cfg.fail("corpus", "growth_factor", "must be > 1");

  h.n_max = cfg.get_size("units", "n_max", h.n_max);
  if (h.n_max < 2) cfg.fail("units", "n_max", "must be >= 2");

  exp.distribution_spec = cfg.get_string("integrability", "distribution", "");
  if (exp.distribution_spec.empty()) cfg.fail("integrability", "distribution", "missing");
  try {
    exp.distribution = parse_distribution_spec(exp.distribution_spec);
  } catch (const std::exception& e) {
    cfg.fail("integrability", "distribution", e.what());
  }
  h.n0 = cfg.get_size("integrability", "n0", h.n0);
  if (h.n0 < 1 || h.n0 >= h.n_max) cfg.fail("integrability", "n0", "must satisfy 1 <= n0 < n_max");
  h.cauchy_epsilon = cfg.get_double("integrability", "epsilon", h.cauchy_epsilon);
  if (!(h.cauchy_epsilon > 0.0)) cfg.fail("integrability", "epsilon", "must be > 0");
  h.divergence_factor = cfg.get_double("integrability", "divergence_factor", h.divergence_factor);
  h.k_radius = cfg.get_double("integrability", "k_radius", h.k_radius);
  if (!(h.k_radius > 0.0)) cfg.fail("integrability", "k_radius", "must be > 0");
  h.epsilon_ladder = cfg.get_doubles("integrability", "epsilon_ladder", h.epsilon_ladder);
  h.radii = cfg.get_doubles("integrability", "radii", h.radii);
  h.perturbations = cfg.get_bool("integrability", "perturbations", h.perturbations);
  h.quadrature.abs_tol = cfg.get_double("integrability", "quadrature_tolerance", h.quadrature.abs_tol);
  if (!(h.quadrature.abs_tol > 0.0)) cfg.fail("integrability", "quadrature_tolerance", "must be > 0");

  exp.json_path = cfg.get_string("output", "json", exp.name + ".json");
  exp.csv_path = cfg.get_string("output", "csv", exp.name + ".csv");
  cfg.reject_unused();
  return exp;
}

int run_experiment(const Experiment& exp, const std::string& out_dir, bool quiet) {
  const ConditionReport rep = classify(exp.distribution, exp.harness, exp.distribution_spec);
  nlohmann::ordered_json doc;
  doc["experiment"] = exp.name;
  doc["seed"] = exp.harness.seed;
  doc["report"] = nlohmann::ordered_json::parse(to_json(rep));
  const std::string json = canonical_json(doc.dump());
  const std::filesystem::path dir(out_dir);
  write_file(dir / exp.json_path, json);
  write_file(dir / exp.csv_path, trajectories_csv(rep));
  if (!quiet) {
    std::cout << exp.name << ": a=" << to_string(rep.a.verdict) << " b=" << to_string(rep.b.verdict)
              << " c=" << to_string(rep.c.verdict) << " d=" << to_string(rep.d.verdict)
              << " e=" << to_string(rep.e.verdict) << " consistent=" << (rep.consistent ? "true" : "false") << "\n";
  }
  if (rep.numeric_failures > 0) {
    for (const auto& e : rep.errors) std::cerr << exp.name << ": " << e << "\n";
    return 3;
  }
  return 0;
}

}  // namespace ultradist::cli
