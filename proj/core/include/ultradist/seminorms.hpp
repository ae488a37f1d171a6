#pragma once

#include "ultradist/calculus.hpp"
#include "ultradist/expr.hpp"
#include "ultradist/rseq.hpp"
#include "ultradist/weights.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ultradist {

/// A weighted seminorm evaluated at truncation order K_max on a grid.
///
/// value = max_k s_k / D_k where s_k is the grid sup of |f^(k)| and D_k is
/// h^k M_k (q-norm) or R_k M_k (r-norm). Ties resolve to the smallest k.
struct SeminormReport {
  double value = 0.0;
  std::size_t argmax_k = 0;
  double argmax_x = 0.0;
  std::size_t k_max = 0;
  /// argmax_k == k_max with a nonzero value: higher orders might dominate.
  bool truncation_active = false;
  /// s_k / D_k for k = 0..k_max.
  std::vector<double> ratios;
  std::string weights;
  std::size_t grid_points = 0;
  double grid_lo = 0.0;
  double grid_hi = 0.0;
};

/// Grid resolution for norms taken over the whole line. With a positive
/// reference width the point count grows with the support width
/// (points per reference width); otherwise it is fixed.
struct GridPolicy {
  std::size_t points = kDefaultGridPoints;
  double reference_width = 0.0;
};

/// Combine precomputed derivative sups with log-denominators log D_k.
SeminormReport seminorm_from_sups(const DerivativeSups& sups, std::span<const double> log_denominators);

/// q_{K,h}(f) = max_{k <= K_max} ||f^(k)||_K / (h^k M_k).
SeminormReport q_norm(const Expr& f, const Grid& K, double h, const WeightSequence& w, std::size_t k_max);

/// ||f||_{K,(r_p)} = max_{k <= K_max} ||f^(k)||_K / (R_k M_k).
SeminormReport r_norm(const Expr& f, const Grid& K, const RSequence& r, const WeightSequence& w,
                      std::size_t k_max);

/// ||f||_{(r_p)} over the whole line, realised on a grid covering the
/// declared support. Throws std::invalid_argument when f has no compact
/// support (there is no finite grid that stands in for the line then).
SeminormReport global_r_norm(const Expr& f, const RSequence& r, const WeightSequence& w, std::size_t k_max,
                             GridPolicy policy = {});

/// The grid used by global_r_norm.
Grid support_grid(const Expr& f, GridPolicy policy = {});

/// log(R_k M_k) for k = 0..k_max; throws when k_max exceeds either horizon.
std::vector<double> r_log_denominators(const RSequence& r, const WeightSequence& w, std::size_t k_max);
std::vector<double> q_log_denominators(double h, const WeightSequence& w, std::size_t k_max);

/// (r_p)/2. Uses scale(r, 1/2) when r_1 > 2; for r_1 == 2 the halved
/// sequence starts (1, 1, ...) and is built directly.
RSequence halve(const RSequence& r);

struct ProductInequalityReport {
  double lhs = 0.0;  ///< ||f1 f2||_{(r_p)}
  double rhs = 0.0;  ///< ||f1||_{(r_p)/2} ||f2||_{(r_p)/2}
  bool holds = false;
  SeminormReport product;
  SeminormReport first;
  SeminormReport second;
};

inline constexpr double kProductSlack = 1e-9;

/// Both sides on the same grid and order, so termwise Leibniz applies
/// pointwise and lhs <= rhs must hold up to rounding. Requires r_1 > 2.
ProductInequalityReport check_product_inequality(const Expr& f1, const Expr& f2, const RSequence& r,
                                                 const WeightSequence& w, const Grid& grid, std::size_t k_max);

struct CutoffEstimate {
  /// sup over corpus x l_list of ||(1 - theta_l) phi||_{(r_p)} / ||phi||_{(r_p)/2}.
  double constant = 0.0;
  std::size_t argmax_corpus = 0;
  double argmax_l = 0.0;
  /// ratios[i * l_list.size() + j] for corpus entry i and dilation l_j.
  std::vector<double> ratios;
};

/// Empirical constant of the cutoff estimate. Requires r_1 >= 2 and a
/// nonempty, compactly supported corpus. 0/0 counts as 0.
CutoffEstimate cutoff_constant_estimate(const Expr& theta, const RSequence& r, std::span<const Expr> corpus,
                                        std::span<const double> l_list, const WeightSequence& w,
                                        std::size_t k_max, GridPolicy policy = {});

}  // namespace ultradist
