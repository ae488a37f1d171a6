#pragma once

#include "ultradist/expr.hpp"
#include "ultradist/quadrature.hpp"

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace ultradist {

/// c (-1)^m delta^{(m)}_{x0}: pairs with phi as c (-1)^m phi^{(m)}(x0).
///
/// Derivatives are real derivatives. The convention D = (1/i) d/dx differs
/// from this by a factor of modulus one, which no seminorm or bound on
/// |<T, phi>| can see.
struct Atom {
  double x0 = 0.0;
  unsigned order = 0;
  std::complex<double> coeff{1.0, 0.0};
};

/// Regular part rho(x) dx restricted to `domain`.
struct Density {
  Expr rho;
  Interval domain = Interval::whole_line();
};

/// Densities plus finitely many derivatives of point masses.
///
/// Text form: a '+'-separated sum of
///   atom(x0, m, re[, im])
///   density(expr[, lo, hi])
/// where expr uses the expression grammar of parse_expr and lo/hi accept
/// -inf and inf.
class Ultradistribution {
 public:
  Ultradistribution() = default;
  Ultradistribution(std::vector<Density> densities, std::vector<Atom> atoms);

  static Ultradistribution parse(std::string_view text);

  const std::vector<Density>& densities() const noexcept { return densities_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  bool empty() const noexcept { return densities_.empty() && atoms_.empty(); }

  Ultradistribution operator+(const Ultradistribution& other) const;
  std::string to_string() const;

 private:
  std::vector<Density> densities_;
  std::vector<Atom> atoms_;
};

Ultradistribution delta(double x0 = 0.0, unsigned order = 0, std::complex<double> coeff = 1.0);
Ultradistribution density(const Expr& rho, Interval domain = Interval::whole_line());
/// sum_{j=1}^{count} base^j bump_j(x) with bump_j = cutoff(a, b)(x - j).
Ultradistribution exploding_bumps(std::size_t count, double base = 3.0, double a = 0.2, double b = 0.4);

struct PairingResult {
  std::complex<double> value{0.0, 0.0};
  /// Summed quadrature error estimate of the density part.
  double error = 0.0;
  bool converged = true;
};

/// <T, phi>. Each density is integrated over domain ∩ supp rho ∩ supp phi,
/// split at the knots of rho and phi; an unbounded integration range is
/// reported as not converged.
PairingResult pair(const Ultradistribution& T, const Expr& phi, const QuadratureOptions& opts = {});

}  // namespace ultradist
