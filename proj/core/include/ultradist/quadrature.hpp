#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>

namespace ultradist {

/// Raised when a computation cannot deliver a trustworthy number, for
/// instance when adaptive quadrature does not reach its tolerance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  /// Relative to the L1 norm of the integrand; lets large-amplitude
  /// integrands converge where an absolute target is below rounding.
  double rel_tol = 1e-10;
  unsigned max_depth = 18;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
  std::size_t panels = 0;
  bool converged = false;
};

/// Adaptive 15-point Gauss-Kronrod integration of f over [a, b], split at
/// every breakpoint strictly inside (a, b). Converged when the summed error
/// estimate is at most max(abs_tol, rel_tol * L1).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> breakpoints = {}, const QuadratureOptions& opts = {});

}  // namespace ultradist
