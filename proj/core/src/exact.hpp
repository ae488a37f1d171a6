#pragma once

// Big-rational helpers shared by the sequence checkers. Private to the core
// library so that installed headers stay free of GMP.

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace ultradist::detail {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// M_p = powered[p]^(1/root). root is 1 for rational sequences and 2 for
/// half-integer Gevrey exponents, where M_p itself is irrational.
struct ExactWeights {
  std::vector<Rational> powered;
  unsigned root = 1;
};

/// Exact value of a double (every finite double is a dyadic rational).
Rational rational_from_double(double x);

/// Parses "12", "-3.25", "1e-3", "7/9". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string rational_to_string(const Rational& r);

/// Natural logarithm of a positive rational without overflowing a double.
double log_of(const Rational& r);

double to_double(const Rational& r);

BigInt factorial(unsigned n);

}  // namespace ultradist::detail
