#pragma once

#include "ultradist/expr.hpp"
#include "ultradist/jet.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ultradist {

inline constexpr std::size_t kDefaultMaxOrder = 12;
inline constexpr std::size_t kDefaultGridPoints = 401;

/// Exact truncated Taylor jet of f at x0 up to order K.
///
/// At a knot both one-sided pieces are expanded and must agree (to 1e-7,
/// relative to the coefficient size); the result carries at_knot. The flat
/// exponential yields the zero jet wherever its argument is <= 0, and also
/// when exp(-1/t) underflows (t < 1/700), where every Taylor coefficient up
/// to the orders used here is below 1e-100. Throws std::domain_error when a
/// reciprocal leaves its declared interval or the pieces disagree.
Jet jet_eval(const Expr& f, double x0, std::size_t order);

/// Smooth cutoff: 1 on [-a, a], 0 outside (-b, b), values in [0, 1].
/// Transition F(t) = G(t) / (G(t) + G(1 - t)) with G the flat exponential
/// and t = (b - |x|) / (b - a). Requires 0 < a < b.
Expr cutoff(double a, double b);

/// x -> f(x / j), j > 0.
Expr rescale(const Expr& f, double j);

/// x -> f(x - c).
Expr translate(const Expr& f, double c);

/// The constant-one plateau [lo, hi] around 0 of a top-level piecewise node
/// (as produced by cutoff, possibly under rescale). Throws when absent.
Interval plateau_of(const Expr& f);

/// Finite set of sample points standing in for a compact interval.
class Grid {
 public:
  /// n equally spaced points on [a, b], dropping any that coincide with a
  /// knot in `avoid` (within 1e-12 of the interval width).
  static Grid uniform(double a, double b, std::size_t n, std::span<const double> avoid = {});
  /// Uniform grid on [a, b] that avoids the knots of f.
  static Grid for_expr(const Expr& f, double a, double b, std::size_t n);
  /// Uniform grid over the declared support of f with n points per unit of
  /// `reference_width` (at least n points overall). Throws when the support
  /// is unbounded.
  static Grid covering(const Expr& f, std::size_t n, double reference_width = 0.0);
  /// Union of both point sets on the hull of both intervals.
  static Grid merge(const Grid& a, const Grid& b);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  std::span<const double> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::vector<double> points_;
};

/// s_k = max over grid points of |f^(k)|, together with the maximising point
/// (first one on ties).
struct DerivativeSups {
  std::vector<double> sup;
  std::vector<double> argmax_x;
};

DerivativeSups sup_derivatives(const Expr& f, const Grid& grid, std::size_t order);

}  // namespace ultradist
