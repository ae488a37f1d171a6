#pragma once

#include "ultradist/corpus.hpp"
#include "ultradist/distribution.hpp"
#include "ultradist/rseq.hpp"
#include "ultradist/seminorms.hpp"
#include "ultradist/units.hpp"
#include "ultradist/weights.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ultradist {

/// The harness gathers evidence about infinitely quantified statements from
/// finitely many samples, so every verdict can also be "inconclusive".
enum class Verdict { Pass, Fail, Inconclusive };

const char* to_string(Verdict v) noexcept;

struct HarnessConfig {
  double gevrey_s = 2.0;
  /// r-sequence of the single-norm bound; horizon must reach k_max.
  RSequence r = linear_rsequence(3.0, kDefaultMaxOrder);
  std::size_t k_max = kDefaultMaxOrder;
  /// Global norms use 100 points per unit length by default.
  GridPolicy grid{kDefaultGridPoints, 4.0};
  QuadratureOptions quadrature;

  std::uint64_t seed = kDefaultSeed;
  /// Nested corpus sizes; the verdict compares the last two levels.
  std::vector<std::size_t> corpus_ladder{8, 16, 32};
  /// Parameters s of the witness subfamilies: widening bumps cutoff(s, s+1)
  /// and translated bumps centred at s.
  std::vector<double> witness_scales{1, 2, 4, 8, 16, 32, 64};
  /// Ladder sups may grow by at most this factor between the last levels.
  double stability_factor = 2.0;
  /// A witness series counts as unbounded when it never decreases and its
  /// last ratio is at least this multiple of its first.
  double growth_factor = 4.0;

  double k_radius = 1.0;
  std::vector<double> epsilon_ladder{1e-2, 1e-4, 1e-6};
  std::vector<double> radii{1, 2, 4, 8, 16, 32, 64};

  std::size_t n_max = kDefaultFamilySize;
  std::size_t n0 = 20;
  double cauchy_epsilon = 1e-6;
  /// A monotone tail whose spread exceeds divergence_factor * cauchy_epsilon
  /// and whose steps do not shrink counts as divergent.
  double divergence_factor = 10.0;
  bool perturbations = true;
};

/// One evaluated pairing ratio |<T, phi>| / ||phi||_{(r_p)}.
struct RatioSample {
  double parameter = 0.0;
  double pairing = 0.0;  ///< |<T, phi>|
  double norm = 0.0;
  double ratio = 0.0;
};

struct RatioSeries {
  std::string name;
  std::vector<RatioSample> samples;
  bool growing = false;
};

struct LadderLevel {
  std::size_t size = 0;
  double sup_ratio = 0.0;
  std::size_t argmax = 0;
};

/// Evidence for (a) and for (e).
struct RatioTestResult {
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
  /// Largest ratio seen: the empirical constant C.
  double constant = 0.0;
  /// Only used by (e): the excluded compact is [-radius, radius].
  std::optional<double> radius;
  std::vector<LadderLevel> ladder;
  std::vector<RatioSeries> witnesses;
};

struct RadiusRow {
  double epsilon = 0.0;
  /// Smallest scanned rho with outside ratio <= epsilon.
  std::optional<double> radius;
};

/// Evidence for (b).
struct RadiusTestResult {
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
  std::vector<double> radii;
  /// Largest outside ratio for each scanned radius.
  std::vector<double> sup_ratio;
  std::vector<RadiusRow> rows;
  /// Some outside witness series grows at the largest radius.
  bool growing_at_limit = false;
};

struct Trajectory {
  std::string family;
  UnitKind kind = UnitKind::Plain;
  bool perturbed = false;
  std::vector<std::complex<double>> values;  ///< <T, pi_n>, n = 1..N_max
  /// max |t_n - t_m| over N0 <= n, m <= N_max.
  double tail_gap = 0.0;
  bool cauchy = false;
  bool diverging = false;
};

/// Evidence for (c) and (d).
struct TrajectoryTestResult {
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
  std::vector<Trajectory> trajectories;
  /// Families that passed verify_unit before being used.
  std::vector<std::string> verified_families;
  /// (d) only: ||psi_m||_{(r^m_p)} after normalisation, m = 1..N_max.
  std::vector<double> perturbation_norms;
  /// (d) only: r^{m+1}_p <= r^m_p on the horizon for every sampled m.
  std::optional<bool> chain_dominated;
};

struct ConditionReport {
  std::string distribution;
  RatioTestResult a;
  RadiusTestResult b;
  TrajectoryTestResult c;
  TrajectoryTestResult d;
  RatioTestResult e;
  /// Every verdict that is not inconclusive agrees.
  bool consistent = false;
  /// Sub-tests that stopped on a numeric failure (quadrature).
  std::size_t numeric_failures = 0;
  std::vector<std::string> errors;
};

/// Families used by (c); the special ones also feed (d).
std::vector<ApproximateUnitFamily> harness_families(const HarnessConfig& cfg);

/// Throws NumericError when a pairing does not converge.
RatioTestResult test_condition_a(const Ultradistribution& T, const std::vector<Expr>& corpus,
                                 const HarnessConfig& cfg);
RatioTestResult test_condition_e(const Ultradistribution& T, const std::vector<Expr>& corpus,
                                 const HarnessConfig& cfg);
RadiusTestResult test_condition_b(const Ultradistribution& T, const std::vector<Expr>& corpus,
                                  const HarnessConfig& cfg);
TrajectoryTestResult test_condition_c(const Ultradistribution& T, const std::vector<ApproximateUnitFamily>& families,
                                      const HarnessConfig& cfg);
/// Uses only the special families; adds perturbed copies when
/// cfg.perturbations is set.
TrajectoryTestResult test_condition_d(const Ultradistribution& T, const std::vector<ApproximateUnitFamily>& families,
                                      const HarnessConfig& cfg);

/// Trajectory statistics for a tail starting at n0 (1-based).
Trajectory summarize_trajectory(std::string family, UnitKind kind, bool perturbed,
                                std::vector<std::complex<double>> values, const HarnessConfig& cfg);

/// Runs all five tests. Sub-test exceptions become inconclusive entries.
ConditionReport classify(const Ultradistribution& T, const HarnessConfig& cfg, std::string label = {});

}  // namespace ultradist
