// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.

#include "ultradist/calculus.hpp"
#include "ultradist/corpus.hpp"
#include "ultradist/distribution.hpp"
#include "ultradist/integrability.hpp"
#include "ultradist/rseq.hpp"
#include "ultradist/seminorms.hpp"
#include "ultradist/units.hpp"
#include "ultradist/weights.hpp"

#include <boost/math/special_functions/binomial.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#ifndef ULTRADIST_CLI_PATH
#error "ULTRADIST_CLI_PATH must name the command line tool"
#endif
#ifndef ULTRADIST_CONFIG_DIR
#error "ULTRADIST_CONFIG_DIR must name the shipped configs"
#endif

using namespace ultradist;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

int failures = 0;

void run(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0.0 && secs > limit_s) {
    out.ok = false;
    if (!out.detail.empty()) out.detail += "; ";
    out.detail += "runtime limit " + std::to_string(limit_s) + " s exceeded";
  }
  if (!out.ok) ++failures;
  std::printf("%s criterion %d (%s) %.2fs%s%s\n", out.ok ? "PASS" : "FAIL", id, title, secs,
              out.detail.empty() ? "" : ": ", out.detail.c_str());
  std::fflush(stdout);
}

std::uniform_real_distribution<double> unit01(0.0, 1.0);

// 1 -------------------------------------------------------------------------

Outcome weight_suite() {
  Outcome o;
  const WeightSequence g2 = gevrey(2.0, 400);
  const WeightSequence g1 = gevrey(1.0, 400);
  const std::vector<double> h_grid{1, 2, 3, 4, 5, 6, 7, 8};

  o.require(check_m1(g2).holds, "gevrey(2) (M.1)");
  const ConditionWitness m2 = check_m2(g2, h_grid);
  o.require(m2.holds && m2.A == 1.0 && m2.H == 4.0, "gevrey(2) (M.2) with (A,H) = (1,4)");
  o.require(check_m3(g2, 4.0).holds, "gevrey(2) truncated (M.3), A = 4");

  o.require(check_m1(g1).holds, "gevrey(1) (M.1)");
  o.require(check_m2(g1, h_grid).holds, "gevrey(1) (M.2)");
  const ConditionWitness m3 = check_m3(g1, 4.0);
  o.require(!m3.holds && m3.violation_count == 10, "gevrey(1) (M.3) violations (expected 10)");

  const ConditionWitness sub = check_submultiplicative(g2);
  o.require(sub.holds && sub.exact_arithmetic, "exact M_p M_q <= M_{p+q}, p + q <= 400");
  return o;
}

// 2 -------------------------------------------------------------------------

RSequence random_rsequence(std::mt19937_64& rng, std::size_t P) {
  std::vector<double> v(P + 1, 1.0);
  double cur = 1.0 + 2.0 * unit01(rng);
  for (std::size_t p = 1; p <= P; ++p) {
    v[p] = cur;
    cur += 3.0 * unit01(rng) * unit01(rng);
  }
  return RSequence(std::move(v));
}

bool superproduct(const RSequence& r) {
  const ProductSequence R(r);
  const std::size_t P = r.horizon();
  for (std::size_t p = 0; p <= P; ++p)
    for (std::size_t q = 0; p + q <= P; ++q) {
      const double lhs = R.log_value(p) + R.log_value(q);
      const double rhs = R.log_value(p + q);
      if (lhs > rhs + 1e-12 * std::max(1.0, std::abs(rhs))) return false;
    }
  return true;
}

bool valid_rsequence(const RSequence& r) {
  if (r[0] != 1.0) return false;
  for (std::size_t p = 1; p <= r.horizon(); ++p)
    if (r[p] < r[p - 1]) return false;
  return true;
}

Outcome rseq_suite() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::size_t bad = 0, bad_invariants = 0;
  for (int i = 0; i < 1000; ++i) {
    const RSequence r = random_rsequence(rng, 100);
    if (!superproduct(r)) ++bad;
    const RSequence s = scale(r, 2.0);
    const RSequence t = tail_shift(r, 1 + static_cast<std::size_t>(i % 10));
    if (!valid_rsequence(s) || !valid_rsequence(t) || !superproduct(s) || !superproduct(t)) ++bad_invariants;
  }
  o.require(bad == 0, std::to_string(bad) + " sequences violate R_p R_q <= R_{p+q}");
  o.require(bad_invariants == 0, std::to_string(bad_invariants) + " scaled or shifted sequences break invariants");

  std::vector<double> inv_fact(101), geometric(101);
  for (std::size_t p = 0; p <= 100; ++p) {
    inv_fact[p] = std::exp(-std::lgamma(static_cast<double>(p) + 1.0));
    geometric[p] = std::pow(0.5, static_cast<double>(p));
  }
  const KomatsuWitness w1 = komatsu_witness(inv_fact);
  const KomatsuWitness w2 = komatsu_witness(geometric);
  o.require(w1.supremum.value <= 1.0, "komatsu_witness(1/p!) sup > 1");
  o.require(w2.supremum.value <= 1.0, "komatsu_witness(0.5^p) sup > 1");
  return o;
}

// 3 -------------------------------------------------------------------------

using Big = boost::multiprecision::cpp_bin_float_100;

Big eval_big(const Expr& f, const Big& x) {
  const auto& n = f.node();
  switch (n.op) {
    case Expr::Op::Constant: return Big(n.value);
    case Expr::Op::Variable: return x;
    case Expr::Op::Add: return eval_big(n.args[0], x) + eval_big(n.args[1], x);
    case Expr::Op::Mul: return eval_big(n.args[0], x) * eval_big(n.args[1], x);
    case Expr::Op::Neg: return -eval_big(n.args[0], x);
    case Expr::Op::Pow: return boost::multiprecision::pow(eval_big(n.args[0], x), n.exponent);
    case Expr::Op::Exp: return boost::multiprecision::exp(eval_big(n.args[0], x));
    case Expr::Op::Sin: return boost::multiprecision::sin(eval_big(n.args[0], x));
    case Expr::Op::Cos: return boost::multiprecision::cos(eval_big(n.args[0], x));
    case Expr::Op::Recip: return Big(1) / eval_big(n.args[0], x);
    case Expr::Op::Affine: return eval_big(n.args[0], (x - Big(n.value)) / Big(n.scale));
    default: throw std::logic_error("random expressions avoid flat and piecewise nodes");
  }
}

Expr random_expr(std::mt19937_64& rng, int depth) {
  const double pick = unit01(rng);
  if (depth == 0 || pick < 0.15) {
    if (unit01(rng) < 0.6) return Expr::variable();
    return Expr::constant(std::round((3.0 * unit01(rng) - 1.5) * 8.0) / 8.0);
  }
  const Expr a = random_expr(rng, depth - 1);
  switch (static_cast<int>(unit01(rng) * 9.0)) {
    case 0: return a + random_expr(rng, depth - 1);
    case 1: return a * random_expr(rng, depth - 1);
    case 2: return -a;
    case 3: return Expr::pow(a, 2 + static_cast<unsigned>(unit01(rng) * 2.0));
    case 4: return Expr::exp(Expr::constant(0.5) * a);
    case 5: return Expr::sin(a);
    case 6: return Expr::cos(a);
    case 7: return Expr::recip(Expr::constant(2.0) + Expr::sin(a));
    default: return Expr::affine(a, 0.25, 1.5);
  }
}

// k-th central difference, step h, in 100-digit arithmetic.
Big central_difference(const Expr& f, const Big& x, unsigned k, const Big& h) {
  Big acc = 0;
  for (unsigned j = 0; j <= k; ++j) {
    const Big node = x + (Big(k) / 2 - Big(j)) * h;
    const Big term = Big(boost::math::binomial_coefficient<double>(k, j)) * eval_big(f, node);
    acc += (j % 2 == 0) ? term : Big(-term);
  }
  return acc / boost::multiprecision::pow(h, k);
}

Outcome jet_suite() {
  Outcome o;
  std::mt19937_64 rng(11);
  const Big h("1e-9");
  std::size_t mismatches = 0, leibniz_bad = 0, rescale_bad = 0;
  for (int i = 0; i < 100; ++i) {
    const Expr f = random_expr(rng, 4);
    const double x0 = 2.0 * unit01(rng) - 1.0;
    const Jet j = jet_eval(f, x0, 8);
    for (unsigned k = 0; k <= 8; ++k) {
      const double ref = static_cast<double>(central_difference(f, Big(x0), k, h));
      const double got = j.derivative(k);
      if (!(std::abs(got - ref) <= std::max(1e-6, 1e-8 * std::abs(ref)))) {
        if (mismatches == 0)
          o.require(false, "first mismatch: " + f.to_string() + " k=" + std::to_string(k) + " got " +
                               std::to_string(got) + " want " + std::to_string(ref));
        ++mismatches;
      }
    }

    // Leibniz rule for the product with a second random expression.
    const Expr g = random_expr(rng, 3);
    const Jet jg = jet_eval(g, x0, 8);
    const Jet jfg = jet_eval(f * g, x0, 8);
    for (unsigned k = 0; k <= 8; ++k) {
      double sum = 0.0, mag = 0.0;
      for (unsigned m = 0; m <= k; ++m) {
        const double t = boost::math::binomial_coefficient<double>(k, m) * j.derivative(m) * jg.derivative(k - m);
        sum += t;
        mag += std::abs(t);
      }
      if (std::abs(jfg.derivative(k) - sum) > 1e-12 * std::max(1.0, mag)) ++leibniz_bad;
    }

    // Rescale law with power-of-two factors: exact.
    const double s = (i % 2 == 0) ? 2.0 : 0.25;
    const Jet jr = jet_eval(rescale(f, s), x0 * s, 8);
    for (unsigned k = 0; k <= 8; ++k)
      if (jr.coeffs[k] != j.coeffs[k] * std::pow(s, -static_cast<double>(k))) ++rescale_bad;
  }
  if (mismatches > 1) o.require(false, std::to_string(mismatches) + " derivative mismatches");
  o.require(leibniz_bad == 0, std::to_string(leibniz_bad) + " Leibniz mismatches");
  o.require(rescale_bad == 0, std::to_string(rescale_bad) + " rescale mismatches");
  return o;
}

// 4 -------------------------------------------------------------------------

Outcome product_suite() {
  Outcome o;
  const WeightSequence w = gevrey(2.0, 40);
  const RSequence r = linear_rsequence(3.0, 40);
  const auto corpus = corpus_exprs(standard_corpus(kDefaultSeed, 100));
  std::size_t bad = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < 50; ++i) {
    const Expr& f1 = corpus[2 * i];
    const Expr& f2 = corpus[2 * i + 1];
    const Interval span = hull(f1.support(), f2.support());
    std::vector<double> knots = f1.knots();
    const auto k2 = f2.knots();
    knots.insert(knots.end(), k2.begin(), k2.end());
    const Grid grid = Grid::uniform(span.lo, span.hi, 401, knots);
    const ProductInequalityReport rep = check_product_inequality(f1, f2, r, w, grid, 12);
    if (!rep.holds) ++bad;
    if (rep.rhs > 0.0) worst = std::max(worst, rep.lhs / rep.rhs);
  }
  o.require(bad == 0, std::to_string(bad) + " of 50 pairs violate the product inequality");
  bool rejected = false;
  try {
    const Expr& f = corpus[0];
    check_product_inequality(f, f, linear_rsequence(2.0, 40), w, Grid::covering(f, 401), 12);
  } catch (const std::invalid_argument&) {
    rejected = true;
  }
  o.require(rejected, "r_1 = 2 was not rejected");
  if (o.ok) o.detail = "max lhs/rhs = " + std::to_string(worst);
  return o;
}

// 5 -------------------------------------------------------------------------

Outcome cutoff_suite() {
  Outcome o;
  const WeightSequence w = gevrey(2.0, 40);
  const RSequence r = linear_rsequence(3.0, 40);
  const Expr theta = cutoff(1.0, 2.0);
  const std::vector<double> ls{1, 2, 4, 8};
  const GridPolicy policy{kDefaultGridPoints, 4.0};
  std::vector<double> constants;
  for (std::size_t n : {8u, 16u, 32u}) {
    const auto corpus = corpus_exprs(standard_corpus(kDefaultSeed, n));
    constants.push_back(cutoff_constant_estimate(theta, r, corpus, ls, w, 12, policy).constant);
  }
  std::ostringstream msg;
  msg << "C(8, 16, 32) = " << constants[0] << ", " << constants[1] << ", " << constants[2];
  o.require(std::all_of(constants.begin(), constants.end(), [](double c) { return std::isfinite(c) && c > 0.0; }),
            "constant not finite and positive");
  const double change = std::abs(constants[2] - constants[1]) / constants[1];
  o.require(change < 0.10, "last doubling changes the constant by " + std::to_string(100.0 * change) + "%");
  o.detail = o.detail.empty() ? msg.str() : o.detail + " (" + msg.str() + ")";
  return o;
}

// 6 -------------------------------------------------------------------------

Outcome units_suite() {
  Outcome o;
  const WeightSequence w = gevrey(2.0, 40);
  UnitCheckOptions opts;
  opts.r_samples = {linear_rsequence(3.0, 40), power_rsequence(1.5, 40), power_rsequence(2.0, 40)};
  opts.compacts = {{-1.0, 1.0}, {-5.0, 5.0}};
  opts.h_samples = {0.5, 1.0, 2.0};
  opts.grid = {kDefaultGridPoints, 4.0};
  const UnitReport rep = verify_unit(scaled_cutoff_family(cutoff(1.0, 2.0)), w, opts);
  o.require(rep.passes, "scaled cutoff family fails verify_unit");
  for (const auto& b : rep.boundedness)
    o.require(b.argmax_n == 1, "sup of norms for r sample " + std::to_string(b.r_index) + " at n = " +
                                   std::to_string(b.argmax_n));
  for (const auto& s : rep.special) o.require(s.exact_from_cover, "defect not exactly 0 once the plateau covers K");
  return o;
}

// 7 -------------------------------------------------------------------------

bool all_verdicts(const ConditionReport& r, Verdict v) {
  return r.a.verdict == v && r.b.verdict == v && r.c.verdict == v && r.d.verdict == v && r.e.verdict == v;
}

std::string verdict_line(const ConditionReport& r) {
  return std::string(to_string(r.a.verdict)) + "/" + to_string(r.b.verdict) + "/" + to_string(r.c.verdict) + "/" +
         to_string(r.d.verdict) + "/" + to_string(r.e.verdict);
}

Outcome harness_suite() {
  Outcome o;
  const HarnessConfig cfg;
  const ConditionReport gauss = classify(density(parse_expr("exp(neg(pow(x,2)))")), cfg, "gaussian");
  const ConditionReport one = classify(density(Expr::constant(1.0)), cfg, "constant_one");
  const ConditionReport dprime = classify(delta(0.0, 1), cfg, "delta_prime");

  o.require(all_verdicts(gauss, Verdict::Pass) && gauss.consistent, "gaussian " + verdict_line(gauss));
  o.require(all_verdicts(one, Verdict::Fail) && one.consistent, "constant 1 " + verdict_line(one));
  o.require(all_verdicts(dprime, Verdict::Pass) && dprime.consistent, "delta' " + verdict_line(dprime));

  const double sqrt_pi = 1.7724538509055160;
  for (const auto* res : {&gauss.c, &gauss.d})
    for (const Trajectory& t : res->trajectories)
      for (std::size_t n = 20; n <= t.values.size(); ++n)
        if (std::abs(t.values[n - 1] - sqrt_pi) >= 1e-6)
          o.require(false, "gaussian trajectory " + t.family + " at n = " + std::to_string(n));

  for (const auto* res : {&dprime.c, &dprime.d})
    for (const Trajectory& t : res->trajectories) {
      if (t.kind != UnitKind::Special) continue;
      for (std::size_t n = cfg.n0; n <= t.values.size(); ++n)
        if (t.values[n - 1] != std::complex<double>(0.0, 0.0))
          o.require(false, "delta' trajectory " + t.family + " nonzero at n = " + std::to_string(n));
    }
  return o;
}

// 8 -------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism_suite() {
  Outcome o;
  const fs::path base = fs::temp_directory_path() / ("ultradist_acceptance_" + std::to_string(::getpid()));
  std::vector<fs::path> configs;
  for (const auto& e : fs::directory_iterator(ULTRADIST_CONFIG_DIR))
    if (e.path().extension() == ".cfg") configs.push_back(e.path());
  std::sort(configs.begin(), configs.end());
  o.require(!configs.empty(), "no shipped configs found");

  for (const char* run_name : {"first", "second"}) {
    for (const fs::path& cfg : configs) {
      const fs::path out = base / run_name;
      fs::create_directories(out);
      const std::string cmd = std::string("\"") + ULTRADIST_CLI_PATH + "\" run --config \"" + cfg.string() +
                              "\" --out-dir \"" + out.string() + "\" -q";
      const int rc = std::system(cmd.c_str());
      o.require(rc == 0, cfg.filename().string() + " exited with status " + std::to_string(rc));
    }
  }
  std::size_t compared = 0;
  for (const auto& e : fs::directory_iterator(base / "first")) {
    const fs::path twin = base / "second" / e.path().filename();
    o.require(fs::exists(twin), "missing second output " + twin.filename().string());
    if (!fs::exists(twin)) continue;
    o.require(slurp(e.path()) == slurp(twin), e.path().filename().string() + " differs between runs");
    ++compared;
  }
  o.require(compared == 2 * configs.size(), "expected one JSON and one CSV per config");
  fs::remove_all(base);
  if (o.ok) o.detail = std::to_string(compared) + " files identical";
  return o;
}

}  // namespace

int main() {
  run(1, "weight sequences", 5.0, weight_suite);
  run(2, "r-sequences", 10.0, rseq_suite);
  run(3, "jets", 30.0, jet_suite);
  run(4, "product inequality", 60.0, product_suite);
  run(5, "cutoff estimate", 0.0, cutoff_suite);
  run(6, "approximate units", 0.0, units_suite);
  run(7, "integrability harness", 300.0, harness_suite);
  run(8, "determinism", 0.0, determinism_suite);
  return failures == 0 ? 0 : 1;
}
