#include "ultradist/integrability.hpp"

#include "ultradist/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ultradist {

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Inconclusive:
      break;
  }
  return "inconclusive";
}

namespace {

WeightSequence harness_weights(const HarnessConfig& cfg) {
  return gevrey(cfg.gevrey_s, std::max<std::size_t>(cfg.k_max, 4));
}

// Norm and pairing context shared by the ratio-type tests.
class RatioEngine {
 public:
  RatioEngine(const Ultradistribution& T, const HarnessConfig& cfg)
      : T_(T), cfg_(cfg), denoms_(r_log_denominators(cfg.r, harness_weights(cfg), cfg.k_max)) {}

  double norm(const Expr& phi) const {
    return seminorm_from_sups(sup_derivatives(phi, support_grid(phi, cfg_.grid), cfg_.k_max), denoms_).value;
  }

  double pairing(const Expr& phi) const {
    const PairingResult p = pair(T_, phi, cfg_.quadrature);
    if (!p.converged)
      throw NumericError("quadrature did not converge pairing with " + phi.to_string() +
                         " (error estimate " + std::to_string(p.error) + ")");
    return std::abs(p.value);
  }

  // `norm_value` is the norm of phi, usually computed on an untranslated copy.
  RatioSample sample(double parameter, const Expr& phi, double norm_value) const {
    RatioSample s;
    s.parameter = parameter;
    s.norm = norm_value;
    s.pairing = pairing(phi);
    if (s.pairing == 0.0)
      s.ratio = 0.0;
    else
      s.ratio = s.norm > 0.0 ? s.pairing / s.norm : HUGE_VAL;
    return s;
  }

 private:
  const Ultradistribution& T_;
  const HarnessConfig& cfg_;
  std::vector<double> denoms_;
};

bool is_growing(const std::vector<RatioSample>& samples, double factor) {
  if (samples.size() < 3) return false;
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (samples[i].ratio < samples[i - 1].ratio * (1.0 - 1e-9)) return false;
  const double first = samples.front().ratio;
  const double last = samples.back().ratio;
  return first > 0.0 && last >= factor * first;
}

// Witness bumps placed either around the origin (radius < 0) or entirely
// beyond [-radius, radius].
std::vector<RatioSeries> witness_series(const RatioEngine& eng, const HarnessConfig& cfg, double radius) {
  std::vector<RatioSeries> out(2);
  out[0].name = radius < 0 ? "widening" : "widening-outside";
  out[1].name = radius < 0 ? "translated" : "translated-outside";
  const Expr small = cutoff(0.5, 1.0);
  const double small_norm = eng.norm(small);
  for (double s : cfg.witness_scales) {
    const Expr wide = cutoff(s, s + 1.0);
    const double wide_norm = eng.norm(wide);
    const double wide_shift = radius < 0 ? 0.0 : radius + s + 1.5;
    out[0].samples.push_back(eng.sample(s, translate(wide, wide_shift), wide_norm));
    const double small_shift = radius < 0 ? s : radius + s + 1.0;
    out[1].samples.push_back(eng.sample(s, translate(small, small_shift), small_norm));
  }
  for (auto& series : out) series.growing = is_growing(series.samples, cfg.growth_factor);
  return out;
}

std::vector<std::size_t> checked_ladder(const HarnessConfig& cfg, std::size_t corpus_size) {
  std::vector<std::size_t> ladder;
  for (std::size_t l : cfg.corpus_ladder)
    if (l > 0 && l <= corpus_size && (ladder.empty() || l > ladder.back())) ladder.push_back(l);
  if (ladder.empty() || ladder.back() != corpus_size) ladder.push_back(corpus_size);
  return ladder;
}

RatioTestResult ratio_test(const Ultradistribution& T, const std::vector<Expr>& corpus, const HarnessConfig& cfg,
                           std::optional<double> radius) {
  RatioTestResult res;
  res.radius = radius;
  if (corpus.empty()) {
    res.reason = "empty corpus";
    return res;
  }
  const RatioEngine eng(T, cfg);
  std::vector<double> ratios;
  ratios.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Expr& phi = corpus[i];
    const Expr placed = radius ? move_outside(phi, *radius, i) : phi;
    ratios.push_back(eng.sample(static_cast<double>(i), placed, eng.norm(phi)).ratio);
  }
  for (std::size_t level : checked_ladder(cfg, corpus.size())) {
    LadderLevel l;
    l.size = level;
    for (std::size_t i = 0; i < level; ++i)
      if (ratios[i] > l.sup_ratio) {
        l.sup_ratio = ratios[i];
        l.argmax = i;
      }
    res.ladder.push_back(l);
  }
  res.witnesses = witness_series(eng, cfg, radius.value_or(-1.0));

  res.constant = res.ladder.back().sup_ratio;
  for (const auto& s : res.witnesses)
    for (const auto& x : s.samples) res.constant = std::max(res.constant, x.ratio);

  for (const auto& s : res.witnesses)
    if (s.growing) {
      res.verdict = Verdict::Fail;
      res.reason = "ratio grows along witness family " + s.name;
      return res;
    }
  if (!std::isfinite(res.constant)) {
    res.verdict = Verdict::Fail;
    res.reason = "nonzero pairing with a function of zero norm";
    return res;
  }
  const double last = res.ladder.back().sup_ratio;
  const double prev = res.ladder.size() >= 2 ? res.ladder[res.ladder.size() - 2].sup_ratio : last;
  const bool stable = res.ladder.size() >= 2 && (last == 0.0 || (prev > 0.0 && last <= cfg.stability_factor * prev));
  if (stable) {
    res.verdict = Verdict::Pass;
    res.reason = "ratio bounded and stable along the corpus ladder";
  } else {
    res.reason = res.ladder.size() < 2 ? "corpus ladder has a single level" : "ratio still moving along the ladder";
  }
  return res;
}

double tail_gap(const std::vector<std::complex<double>>& v, std::size_t start) {
  double gap = 0.0;
  for (std::size_t i = start; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) gap = std::max(gap, std::abs(v[i] - v[j]));
  return gap;
}

bool tail_diverges(const std::vector<std::complex<double>>& v, std::size_t start, double gap,
                   const HarnessConfig& cfg) {
  if (v.size() < start + 3 || !(gap > cfg.divergence_factor * cfg.cauchy_epsilon)) return false;
  const std::complex<double> drift = v.back() - v[start];
  if (std::abs(drift) == 0.0) return false;
  const std::complex<double> dir = drift / std::abs(drift);
  // Monotone along the drift direction, with steps that do not decay.
  for (std::size_t i = start + 1; i < v.size(); ++i)
    if ((std::conj(dir) * (v[i] - v[i - 1])).real() <= 0.0) return false;
  const double first_step = std::abs(v[start + 1] - v[start]);
  const double last_step = std::abs(v.back() - v[v.size() - 2]);
  return last_step >= 0.5 * first_step;
}

std::vector<std::complex<double>> trajectory_values(const Ultradistribution& T, const ApproximateUnitFamily& fam,
                                                    const HarnessConfig& cfg) {
  std::vector<std::complex<double>> out;
  out.reserve(fam.n_max());
  for (std::size_t n = 1; n <= fam.n_max(); ++n) {
    const Expr pi = fam.member(n);
    const PairingResult p = pair(T, pi, cfg.quadrature);
    if (!p.converged)
      throw NumericError("quadrature did not converge on member " + std::to_string(n) + " of family " + fam.name());
    out.push_back(p.value);
  }
  return out;
}

void decide_trajectories(TrajectoryTestResult& res) {
  if (res.trajectories.empty()) {
    res.reason = "no families";
    return;
  }
  for (const auto& t : res.trajectories)
    if (t.diverging) {
      res.verdict = Verdict::Fail;
      res.reason = "trajectory of family " + t.family + " diverges";
      return;
    }
  for (const auto& t : res.trajectories)
    if (!t.cauchy) {
      res.reason = "trajectory of family " + t.family + " is neither Cauchy nor clearly divergent";
      return;
    }
  res.verdict = Verdict::Pass;
  res.reason = "every trajectory is Cauchy past N0";
}

UnitCheckOptions unit_options(const HarnessConfig& cfg) {
  UnitCheckOptions opts;
  opts.r_samples = {cfg.r, power_rsequence(1.5, cfg.k_max), power_rsequence(2.0, cfg.k_max)};
  opts.grid = cfg.grid;
  opts.compacts = {{-1.0, 1.0}, {-5.0, 5.0}};
  opts.h_samples = {0.5, 1.0, 2.0};
  opts.k_max = cfg.k_max;
  return opts;
}

std::vector<std::string> verify_families(const std::vector<ApproximateUnitFamily>& families,
                                         const HarnessConfig& cfg) {
  std::vector<std::string> ok;
  const WeightSequence w = harness_weights(cfg);
  const UnitCheckOptions opts = unit_options(cfg);
  for (const auto& fam : families)
    if (verify_unit(fam, w, opts).passes) ok.push_back(fam.name());
  return ok;
}

}  // namespace

std::vector<ApproximateUnitFamily> harness_families(const HarnessConfig& cfg) {
  const Expr theta = cutoff(1.0, 2.0);
  return {scaled_cutoff_family(theta, cfg.n_max), widening_cutoff_family(1.0, cfg.n_max),
          modulated_family(theta, cfg.n_max)};
}

RatioTestResult test_condition_a(const Ultradistribution& T, const std::vector<Expr>& corpus,
                                 const HarnessConfig& cfg) {
  return ratio_test(T, corpus, cfg, std::nullopt);
}

RatioTestResult test_condition_e(const Ultradistribution& T, const std::vector<Expr>& corpus,
                                 const HarnessConfig& cfg) {
  if (!(cfg.k_radius > 0.0)) throw std::invalid_argument("condition (e) needs a positive K radius");
  return ratio_test(T, corpus, cfg, cfg.k_radius);
}

RadiusTestResult test_condition_b(const Ultradistribution& T, const std::vector<Expr>& corpus,
                                  const HarnessConfig& cfg) {
  RadiusTestResult res;
  if (corpus.empty() || cfg.radii.empty() || cfg.epsilon_ladder.empty()) {
    res.reason = "empty corpus, radius scan or epsilon ladder";
    return res;
  }
  const RatioEngine eng(T, cfg);
  std::vector<double> norms;
  norms.reserve(corpus.size());
  for (const Expr& phi : corpus) norms.push_back(eng.norm(phi));

  res.radii = cfg.radii;
  std::sort(res.radii.begin(), res.radii.end());
  for (double rho : res.radii) {
    double sup = 0.0;
    for (std::size_t i = 0; i < corpus.size(); ++i)
      sup = std::max(sup, eng.sample(rho, move_outside(corpus[i], rho, i), norms[i]).ratio);
    const auto witnesses = witness_series(eng, cfg, rho);
    for (const auto& s : witnesses)
      for (const auto& x : s.samples) sup = std::max(sup, x.ratio);
    if (rho == res.radii.back())
      for (const auto& s : witnesses) res.growing_at_limit = res.growing_at_limit || s.growing;
    res.sup_ratio.push_back(sup);
  }

  bool all_found = true;
  for (double eps : cfg.epsilon_ladder) {
    RadiusRow row;
    row.epsilon = eps;
    for (std::size_t i = 0; i < res.radii.size(); ++i)
      if (res.sup_ratio[i] <= eps) {
        row.radius = res.radii[i];
        break;
      }
    all_found = all_found && row.radius.has_value();
    res.rows.push_back(row);
  }
  if (all_found) {
    res.verdict = Verdict::Pass;
    res.reason = "a radius was found for every epsilon";
  } else if (res.growing_at_limit) {
    res.verdict = Verdict::Fail;
    res.reason = "no radius for some epsilon and outside ratios grow at the scan limit";
  } else {
    res.reason = "no radius for some epsilon within the scan, without growth evidence";
  }
  return res;
}

Trajectory summarize_trajectory(std::string family, UnitKind kind, bool perturbed,
                                std::vector<std::complex<double>> values, const HarnessConfig& cfg) {
  Trajectory t;
  t.family = std::move(family);
  t.kind = kind;
  t.perturbed = perturbed;
  t.values = std::move(values);
  const std::size_t start = cfg.n0 >= 1 ? cfg.n0 - 1 : 0;
  if (start + 2 > t.values.size()) return t;
  t.tail_gap = tail_gap(t.values, start);
  t.cauchy = t.tail_gap < cfg.cauchy_epsilon;
  t.diverging = !t.cauchy && tail_diverges(t.values, start, t.tail_gap, cfg);
  return t;
}

TrajectoryTestResult test_condition_c(const Ultradistribution& T, const std::vector<ApproximateUnitFamily>& families,
                                      const HarnessConfig& cfg) {
  TrajectoryTestResult res;
  res.verified_families = verify_families(families, cfg);
  for (const auto& fam : families)
    res.trajectories.push_back(
        summarize_trajectory(fam.name(), fam.kind(), false, trajectory_values(T, fam, cfg), cfg));
  decide_trajectories(res);
  return res;
}

TrajectoryTestResult test_condition_d(const Ultradistribution& T, const std::vector<ApproximateUnitFamily>& families,
                                      const HarnessConfig& cfg) {
  TrajectoryTestResult res;
  std::vector<ApproximateUnitFamily> special;
  for (const auto& fam : families)
    if (fam.kind() == UnitKind::Special) special.push_back(fam);
  res.verified_families = verify_families(special, cfg);

  std::vector<ApproximateUnitFamily> all = special;
  if (cfg.perturbations && !special.empty()) {
    const WeightSequence w = harness_weights(cfg);
    std::size_t n_max = 0;
    for (const auto& fam : special) n_max = std::max(n_max, fam.n_max());
    std::vector<Expr> psi;
    bool dominated = true;
    for (std::size_t m = 1; m <= n_max; ++m) {
      const auto p = normalized_perturbation(m, w, cfg.k_max, 0.5, 1.0, cfg.grid);
      psi.push_back(p.psi);
      res.perturbation_norms.push_back(p.norm);
      dominated = dominated && precedes(chain_rsequence(m + 1, cfg.k_max), chain_rsequence(m, cfg.k_max), 1.0).dominated;
    }
    res.chain_dominated = dominated;
    for (const auto& fam : special) all.push_back(perturb_family(fam, psi));
  }
  for (const auto& fam : all)
    res.trajectories.push_back(summarize_trajectory(fam.name(), fam.kind(), fam.name().ends_with("+psi"),
                                                    trajectory_values(T, fam, cfg), cfg));
  decide_trajectories(res);
  return res;
}

ConditionReport classify(const Ultradistribution& T, const HarnessConfig& cfg, std::string label) {
  ConditionReport rep;
  rep.distribution = label.empty() ? T.to_string() : std::move(label);
  std::size_t corpus_size = 0;
  for (std::size_t l : cfg.corpus_ladder) corpus_size = std::max(corpus_size, l);
  const std::vector<Expr> corpus = corpus_exprs(standard_corpus(cfg.seed, corpus_size));
  const auto families = harness_families(cfg);

  auto guarded = [&](const char* name, auto& slot, auto&& run) {
    try {
      slot = run();
    } catch (const NumericError& e) {
      ++rep.numeric_failures;
      slot.verdict = Verdict::Inconclusive;
      slot.reason = std::string("numeric failure: ") + e.what();
      rep.errors.push_back(std::string(name) + ": " + e.what());
    } catch (const std::exception& e) {
      slot.verdict = Verdict::Inconclusive;
      slot.reason = std::string("error: ") + e.what();
      rep.errors.push_back(std::string(name) + ": " + e.what());
    }
  };
  guarded("a", rep.a, [&] { return test_condition_a(T, corpus, cfg); });
  guarded("b", rep.b, [&] { return test_condition_b(T, corpus, cfg); });
  guarded("c", rep.c, [&] { return test_condition_c(T, families, cfg); });
  guarded("d", rep.d, [&] { return test_condition_d(T, families, cfg); });
  guarded("e", rep.e, [&] { return test_condition_e(T, corpus, cfg); });

  std::optional<Verdict> seen;
  rep.consistent = true;
  for (Verdict v : {rep.a.verdict, rep.b.verdict, rep.c.verdict, rep.d.verdict, rep.e.verdict}) {
    if (v == Verdict::Inconclusive) continue;
    if (seen && *seen != v) rep.consistent = false;
    seen = v;
  }
  return rep;
}

}  // namespace ultradist
