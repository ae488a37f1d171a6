#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ultradist {

/// Truncated Taylor expansion of a function at x0: coeffs[k] is f^(k)(x0)/k!.
struct Jet {
  double x0 = 0.0;
  std::vector<double> coeffs;
  /// x0 sits on a knot of a piecewise node or on the zero of a flat
  /// exponential; the jet is the common one-sided value there.
  bool at_knot = false;

  std::size_t order() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  /// f^(k)(x0) = k! coeffs[k].
  double derivative(std::size_t k) const;
  std::vector<double> derivatives() const;
};

/// Truncated power-series arithmetic on coefficient vectors of equal length.
/// These are the recurrences behind jet_eval; exposed for tests.
namespace series {

using Coeffs = std::vector<double>;

Coeffs add(std::span<const double> a, std::span<const double> b);
Coeffs negate(std::span<const double> a);
/// Cauchy product c_n = sum_j a_j b_{n-j}.
Coeffs multiply(std::span<const double> a, std::span<const double> b);
/// 1/a, requires a_0 != 0.
Coeffs reciprocal(std::span<const double> a);
/// exp(a): n e_n = sum_{j=1}^n j a_j e_{n-j}.
Coeffs exp(std::span<const double> a);
/// sin(a) and cos(a) together.
void sin_cos(std::span<const double> a, Coeffs& s, Coeffs& c);
/// a^n for n >= 0 by repeated squaring.
Coeffs power(std::span<const double> a, unsigned n);

}  // namespace series

}  // namespace ultradist
