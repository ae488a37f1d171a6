// ultradist command line: weight sequences, r-sequences, seminorms,
// approximate units and the integrability harness.
//
// Exit status: 0 success (fail verdicts included), 2 bad arguments or
// configuration, 3 numeric failure such as non-converged quadrature.

#include "config.hpp"
#include "experiment.hpp"

#include <ultradist/calculus.hpp>
#include <ultradist/format.hpp>
#include <ultradist/report.hpp>
#include <ultradist/units.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace ultradist;
using Json = nlohmann::ordered_json;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

Json parsed(const std::string& text) { return Json::parse(text); }

void emit(const Json& doc, const std::string& path) {
  const std::string body = canonical_json(doc.dump());
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << body;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw std::invalid_argument("bad list element '" + item + "'");
    out.push_back(v);
  }
  return out;
}

// Komatsu witness inputs: "inverse-factorial", "geometric:q", "list:a0,a1,...".
std::vector<double> parse_sequence_spec(const std::string& spec, std::size_t horizon) {
  std::vector<double> a(horizon + 1);
  if (spec == "inverse-factorial") {
    for (std::size_t p = 0; p <= horizon; ++p) a[p] = std::exp(-std::lgamma(static_cast<double>(p) + 1.0));
    return a;
  }
  if (spec.rfind("geometric:", 0) == 0) {
    const double q = std::stod(spec.substr(10));
    for (std::size_t p = 0; p <= horizon; ++p) a[p] = std::pow(q, static_cast<double>(p));
    return a;
  }
  if (spec.rfind("list:", 0) == 0) return parse_list(spec.substr(5));
  throw std::invalid_argument("unknown sequence spec '" + spec + "'");
}

struct Options {
  std::optional<std::uint64_t> seed;
  std::string out = "-";

  // seq
  std::string weights = "gevrey:2";
  std::size_t horizon = 400;
  std::string h_grid = "1,2,4,8";
  double m3_constant = 4.0;
  std::vector<double> rho;

  // rseq
  std::string r = "linear:3";
  std::size_t r_horizon = 12;
  std::optional<double> lambda;
  std::optional<std::size_t> shift;
  std::optional<std::string> witness;

  // norm eval
  std::string expr;
  std::string grid;
  std::size_t k_max = kDefaultMaxOrder;
  std::optional<double> h;

  // units verify
  std::string family = "scaled:1,2";
  std::size_t n_max = kDefaultFamilySize;

  // integrability / run / all
  std::string dist;
  std::string config;
  std::vector<std::string> configs;
  std::string json_path;
  std::string csv_path;
  std::string out_dir = ".";
  bool quiet = false;
};

int cmd_seq(const Options& o) {
  const WeightSequence w = cli::parse_weights_spec(o.weights, o.horizon);
  const auto grid = parse_list(o.h_grid);
  Json doc;
  doc["weights"] = w.name();
  doc["horizon"] = w.horizon();
  doc["m1"] = parsed(to_json(check_m1(w)));
  doc["m2"] = parsed(to_json(check_m2(w, grid)));
  doc["m3"] = parsed(to_json(check_m3(w, o.m3_constant)));
  doc["submultiplicative"] = parsed(to_json(check_submultiplicative(w)));
  Json assoc = Json::array();
  for (double rho : o.rho) {
    const auto v = associated_function(w, rho);
    assoc.push_back({{"rho", rho}, {"value", v.value}, {"argmax_p", v.argmax_p}, {"truncated", v.truncated}});
  }
  doc["associated_function"] = assoc;
  emit(doc, o.out);
  return 0;
}

int cmd_rseq(const Options& o) {
  const RSequence r = cli::parse_rseq_spec(o.r, o.r_horizon);
  Json doc;
  doc["r"] = parsed(rsequence_to_json(r));
  doc["diverges_at_horizon"] = r.diverges_at_horizon();
  if (o.lambda) doc["scaled"] = parsed(rsequence_to_json(scale(r, *o.lambda)));
  if (o.shift) doc["shifted"] = parsed(rsequence_to_json(tail_shift(r, *o.shift)));
  if (o.witness) {
    const auto a = parse_sequence_spec(*o.witness, o.r_horizon);
    const auto w = komatsu_witness(a);
    Json wj = parsed(to_json(w));
    wj["r"] = parsed(rsequence_to_json(w.r));
    doc["witness"] = wj;
  }
  emit(doc, o.out);
  return 0;
}

int cmd_norm(const Options& o) {
  const Expr f = parse_expr(o.expr);
  const WeightSequence w = cli::parse_weights_spec(o.weights, std::max<std::size_t>(o.k_max, 4));
  const RSequence r = cli::parse_rseq_spec(o.r, o.k_max);
  Json doc;
  doc["expr"] = f.to_string();
  if (o.grid.empty()) {
    doc["r_norm"] = parsed(to_json(global_r_norm(f, r, w, o.k_max)));
    if (o.h) doc["q_norm"] = parsed(to_json(q_norm(f, support_grid(f), *o.h, w, o.k_max)));
  } else {
    const auto g = parse_list(o.grid);
    if (g.size() != 3 || g[2] < 2 || g[2] != std::floor(g[2]))
      throw std::invalid_argument("--grid expects a,b,n with n >= 2");
    const Grid grid = Grid::for_expr(f, g[0], g[1], static_cast<std::size_t>(g[2]));
    doc["r_norm"] = parsed(to_json(r_norm(f, grid, r, w, o.k_max)));
    if (o.h) doc["q_norm"] = parsed(to_json(q_norm(f, grid, *o.h, w, o.k_max)));
  }
  emit(doc, o.out);
  return 0;
}

ApproximateUnitFamily family_from_spec(const std::string& spec, std::size_t n_max) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const auto args = colon == std::string::npos ? std::vector<double>{} : parse_list(spec.substr(colon + 1));
  if (kind == "scaled" && args.size() == 2) return scaled_cutoff_family(cutoff(args[0], args[1]), n_max);
  if (kind == "modulated" && args.size() == 2) return modulated_family(cutoff(args[0], args[1]), n_max);
  if (kind == "widening" && args.size() == 1) return widening_cutoff_family(args[0], n_max);
  throw std::invalid_argument("unknown family '" + spec + "' (scaled:a,b, modulated:a,b or widening:w)");
}

int cmd_units(const Options& o) {
  const auto fam = family_from_spec(o.family, o.n_max);
  const WeightSequence w = cli::parse_weights_spec(o.weights, std::max<std::size_t>(o.k_max, 4));
  UnitCheckOptions opts;
  opts.r_samples = {cli::parse_rseq_spec(o.r, o.k_max), power_rsequence(1.5, o.k_max)};
  opts.compacts = {{-1.0, 1.0}, {-5.0, 5.0}};
  opts.h_samples = {0.5, 1.0, 2.0};
  opts.k_max = o.k_max;
  Json doc = parsed(to_json(verify_unit(fam, w, opts)));
  emit(doc, o.out);
  return 0;
}

int cmd_integrability(const Options& o) {
  cli::Experiment exp;
  if (!o.config.empty()) {
    exp = cli::load_experiment(o.config, o.seed);
  } else {
    if (o.seed) exp.harness.seed = *o.seed;
    exp.name = "integrability";
  }
  if (!o.dist.empty()) {
    exp.distribution_spec = o.dist;
    exp.distribution = cli::parse_distribution_spec(o.dist);
  }
  if (exp.distribution.empty()) throw cli::ConfigError("config error: no distribution given (--dist or config)");
  const ConditionReport rep = classify(exp.distribution, exp.harness, exp.distribution_spec);
  Json doc;
  doc["seed"] = exp.harness.seed;
  doc["report"] = parsed(to_json(rep));
  emit(doc, o.json_path.empty() ? o.out : o.json_path);
  if (!o.csv_path.empty()) {
    std::ofstream csv(o.csv_path, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write '" + o.csv_path + "'");
    csv << trajectories_csv(rep);
  }
  for (const auto& e : rep.errors) std::cerr << e << "\n";
  return rep.numeric_failures > 0 ? kExitNumeric : 0;
}

int cmd_run(const Options& o) {
  const auto exp = cli::load_experiment(o.config, o.seed);
  return cli::run_experiment(exp, o.out_dir, o.quiet);
}

int cmd_all(const Options& o) {
  // Load everything first so a bad file stops the batch before any work.
  std::vector<cli::Experiment> exps;
  for (const auto& path : o.configs) exps.push_back(cli::load_experiment(path, o.seed));
  int status = 0;
  for (const auto& exp : exps) status = std::max(status, cli::run_experiment(exp, o.out_dir, o.quiet));
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Roumieu weight sequences, seminorms, approximate units and integrability checks"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--seed", o.seed, "Seed for the randomized test-function corpus");

  auto* seq = app.add_subcommand("seq", "Check (M.1)-(M.3) and submultiplicativity of a weight sequence");
  seq->add_option("--weights", o.weights, "gevrey:s or file:path")->capture_default_str();
  seq->add_option("--horizon", o.horizon, "Prefix length P")->capture_default_str();
  seq->add_option("--hgrid", o.h_grid, "Comma separated H candidates for (M.2)")->capture_default_str();
  seq->add_option("--A", o.m3_constant, "Constant of the (M.3) check")->capture_default_str();
  seq->add_option("--rho", o.rho, "Evaluate the associated function at these points");
  seq->add_option("-o,--out", o.out, "Output file, - for stdout")->capture_default_str();

  auto* rseq = app.add_subcommand("rseq", "Scale, shift or build Komatsu witnesses for r-sequences");
  rseq->add_option("--r", o.r, "linear:c, power:e, list:r0,r1,... or file:path")->capture_default_str();
  rseq->add_option("--horizon", o.r_horizon, "Prefix length P")->capture_default_str();
  rseq->add_option("--scale", o.lambda, "Multiply r_p (p >= 1) by lambda");
  rseq->add_option("--shift", o.shift, "Tail shift by p0");
  rseq->add_option("--witness", o.witness, "Witness for a: inverse-factorial, geometric:q or list:...");
  rseq->add_option("-o,--out", o.out, "Output file, - for stdout")->capture_default_str();

  auto* norm = app.add_subcommand("norm", "Weighted seminorms of an expression");
  auto* norm_eval = norm->add_subcommand("eval", "Evaluate the r-norm (and optionally the q-norm)");
  norm->require_subcommand(1);
  norm_eval->add_option("--expr", o.expr, "Expression in prefix form")->required();
  norm_eval->add_option("--weights", o.weights, "gevrey:s or file:path")->capture_default_str();
  norm_eval->add_option("--r", o.r, "r-sequence spec")->capture_default_str();
  norm_eval->add_option("--grid", o.grid, "a,b,n; omitted means the support of the expression");
  norm_eval->add_option("--kmax", o.k_max, "Truncation order")->capture_default_str();
  norm_eval->add_option("--qnorm-h", o.h, "Also evaluate q_{K,h} with this h");
  norm_eval->add_option("-o,--out", o.out, "Output file, - for stdout")->capture_default_str();

  auto* units = app.add_subcommand("units", "Approximate units");
  auto* units_verify = units->add_subcommand("verify", "Boundedness, convergence and plateau checks");
  units->require_subcommand(1);
  units_verify->add_option("--family", o.family, "scaled:a,b, modulated:a,b or widening:w")->capture_default_str();
  units_verify->add_option("--nmax", o.n_max, "Family size")->capture_default_str();
  units_verify->add_option("--weights", o.weights, "gevrey:s or file:path")->capture_default_str();
  units_verify->add_option("--r", o.r, "r-sequence spec")->capture_default_str();
  units_verify->add_option("--kmax", o.k_max, "Truncation order")->capture_default_str();
  units_verify->add_option("-o,--out", o.out, "Output file, - for stdout")->capture_default_str();

  auto* integ = app.add_subcommand("integrability", "Integrability harness");
  auto* integ_run = integ->add_subcommand("run", "Evaluate conditions (a)-(e) for one distribution");
  integ->require_subcommand(1);
  integ_run->add_option("--dist", o.dist, "gaussian, constant, delta, delta_prime, exploding:J or atom/density sum");
  integ_run->add_option("--config", o.config, "Experiment config supplying the harness settings");
  integ_run->add_option("--json", o.json_path, "ConditionReport output (default stdout)");
  integ_run->add_option("--csv", o.csv_path, "Trajectory CSV output");

  auto* run = app.add_subcommand("run", "Run one experiment config and write its JSON and CSV");
  run->add_option("--config", o.config, "Experiment config")->required();
  run->add_option("--out-dir", o.out_dir, "Directory for the artifacts")->capture_default_str();
  run->add_flag("-q,--quiet", o.quiet, "No summary line");

  auto* all = app.add_subcommand("all", "Run several experiment configs");
  all->add_option("configs", o.configs, "Experiment configs")->required();
  all->add_option("--out-dir", o.out_dir, "Directory for the artifacts")->capture_default_str();
  all->add_flag("-q,--quiet", o.quiet, "No summary lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*seq) return cmd_seq(o);
    if (*rseq) return cmd_rseq(o);
    if (*norm) return cmd_norm(o);
    if (*units) return cmd_units(o);
    if (*integ) return cmd_integrability(o);
    if (*run) return cmd_run(o);
    if (*all) return cmd_all(o);
  } catch (const cli::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
