#pragma once

#include "ultradist/calculus.hpp"
#include "ultradist/expr.hpp"
#include "ultradist/rseq.hpp"
#include "ultradist/seminorms.hpp"
#include "ultradist/weights.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ultradist {

enum class UnitKind { Plain, Special };

const char* to_string(UnitKind kind) noexcept;

/// A finite family pi_1..pi_{N_max} of compactly supported test functions
/// meant to converge to 1.
///
/// Special families also know, for every n, an interval on which pi_n is
/// identically 1; verify_unit checks that these intervals eventually cover
/// every compact set it is given.
class ApproximateUnitFamily {
 public:
  using Generator = std::function<Expr(std::size_t)>;
  using PlateauFn = std::function<Interval(std::size_t)>;

  ApproximateUnitFamily(std::string name, UnitKind kind, std::size_t n_max, Generator generator,
                        PlateauFn plateau = {}, std::string provenance = {});

  const std::string& name() const noexcept { return name_; }
  UnitKind kind() const noexcept { return kind_; }
  std::size_t n_max() const noexcept { return n_max_; }
  const std::string& provenance() const noexcept { return provenance_; }

  /// pi_n for 1 <= n <= n_max.
  Expr member(std::size_t n) const;
  /// Interval where pi_n == 1; empty for plain families.
  Interval plateau(std::size_t n) const;

 private:
  std::string name_;
  UnitKind kind_;
  std::size_t n_max_;
  Generator generator_;
  PlateauFn plateau_;
  std::string provenance_;
};

inline constexpr std::size_t kDefaultFamilySize = 30;

/// pi_n = theta(x / n); special, plateau n * plateau(theta).
ApproximateUnitFamily scaled_cutoff_family(const Expr& theta, std::size_t n_max = kDefaultFamilySize);
/// pi_n = cutoff(n, n + width); special with plateau [-n, n].
ApproximateUnitFamily widening_cutoff_family(double width, std::size_t n_max = kDefaultFamilySize);
/// pi_n = theta(x / n) (1 + 4^{-n} sin x): converges to 1 but is never
/// identically 1 on a neighbourhood of a compact set; plain.
ApproximateUnitFamily modulated_family(const Expr& theta, std::size_t n_max = kDefaultFamilySize);

struct UnitCheckOptions {
  std::vector<RSequence> r_samples;
  /// Compact sets K; each is sampled with `compact_points` points avoiding
  /// the knots of the member under test.
  std::vector<Interval> compacts;
  std::vector<double> h_samples;
  std::size_t compact_points = kDefaultGridPoints;
  std::size_t k_max = kDefaultMaxOrder;
  GridPolicy grid;
  /// q_{K,h}(pi_n - 1) must stay below this from some n on.
  double convergence_tolerance = 1e-9;
  /// Boundedness proxy: max over the second half of the family may exceed
  /// the max over the first half by at most this factor.
  double boundedness_factor = 1.1;
};

struct BoundednessEvidence {
  std::size_t r_index = 0;
  std::vector<double> norms;  ///< ||pi_n||_{(r_p)}, n = 1..N_max
  double sup = 0.0;
  std::size_t argmax_n = 1;
  bool bounded = false;
};

struct ConvergenceEvidence {
  Interval compact;
  double h = 0.0;
  std::vector<double> q_values;  ///< q_{K,h}(pi_n - 1), n = 1..N_max
  /// First n from which every value is below tolerance; 0 when none.
  std::size_t settled_from = 0;
  /// First n from which every value is exactly 0; 0 when none.
  std::size_t exact_zero_from = 0;
  bool converges = false;
};

struct SpecialEvidence {
  Interval compact;
  /// First n from which every plateau contains the compact; 0 when none.
  std::size_t cover_index = 0;
  /// q_{K,h}(pi_n - 1) == 0 exactly for all n >= cover_index and every h.
  bool exact_from_cover = false;
};

struct UnitReport {
  std::string family;
  UnitKind kind = UnitKind::Plain;
  std::vector<BoundednessEvidence> boundedness;
  std::vector<ConvergenceEvidence> convergence;
  std::vector<SpecialEvidence> special;
  bool bounded = false;    ///< (i)
  bool converges = false;  ///< (ii)
  /// (iii); std::nullopt for plain families.
  std::optional<bool> special_verified;
  bool passes = false;
  static constexpr const char* scope = "sampled, at horizon";
};

UnitReport verify_unit(const ApproximateUnitFamily& family, const WeightSequence& w, const UnitCheckOptions& opts);

/// Sum of pairwise disjointly supported parts. Throws when two declared
/// supports meet (closed intervals) or a part is not compactly supported.
Expr disjoint_sum(std::span<const Expr> parts);

/// pi~_n = pi_n + psi_n. Throws when psi_n is not compactly supported or its
/// support meets [-n, n]. A zero psi_n leaves pi_n untouched.
ApproximateUnitFamily perturb_family(const ApproximateUnitFamily& family, std::vector<Expr> psi);

/// r^m_p = (p + 1)^{1 + 1/m}: a decreasing chain in the class.
RSequence chain_rsequence(std::size_t m, std::size_t horizon);

struct NormalizedPerturbation {
  Expr psi;
  double raw_norm = 0.0;  ///< ||phi_m||_{(r^m_p)} before normalisation
  double norm = 0.0;      ///< ||psi_m||_{(r^m_p)}, should equal 1/m
};

/// psi_m = phi_m / (m ||phi_m||_{(r^m_p)}) with phi_m a bump centred at
/// 2m + 3 (plateau half-width a, support half-width b <= 2m + 3 - m).
NormalizedPerturbation normalized_perturbation(std::size_t m, const WeightSequence& w, std::size_t k_max,
                                               double a = 0.5, double b = 1.0, GridPolicy policy = {});

}  // namespace ultradist
