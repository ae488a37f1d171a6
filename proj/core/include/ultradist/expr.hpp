#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ultradist {

/// Closed interval [lo, hi]; empty when lo > hi. Infinite ends are allowed.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  static Interval whole_line() { return {}; }
  static Interval empty() { return {1.0, 0.0}; }

  bool is_empty() const noexcept { return lo > hi; }
  bool is_bounded() const noexcept;
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  double width() const noexcept { return is_empty() ? 0.0 : hi - lo; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

Interval intersect(const Interval& a, const Interval& b);
Interval hull(const Interval& a, const Interval& b);

/// Immutable expression tree for a real function of one real variable.
///
/// Nodes: constant, the variable x, add, multiply, negate, power with a
/// nonnegative integer exponent, exp, sin, cos, reciprocal (carrying the
/// interval on which its argument is declared nonvanishing), the flat
/// exponential t -> exp(-1/t) for t > 0 and 0 otherwise, affine substitution
/// f((x - shift) / scale), and piecewise functions of the current argument
/// with explicit knots. Subtrees are shared, so copies are cheap.
class Expr {
 public:
  enum class Op { Constant, Variable, Add, Mul, Neg, Pow, Exp, Sin, Cos, Recip, Flat, Affine, Piecewise };

  struct Node;

  Expr();  // the constant 0

  static Expr constant(double c);
  static Expr variable();
  static Expr pow(Expr base, unsigned exponent);
  static Expr exp(Expr arg);
  static Expr sin(Expr arg);
  static Expr cos(Expr arg);
  /// 1 / arg; evaluation outside `nonvanishing` is an error.
  static Expr recip(Expr arg, Interval nonvanishing = Interval::whole_line());
  static Expr flat(Expr arg);
  /// x -> inner((x - shift) / scale), scale != 0.
  static Expr affine(Expr inner, double shift, double scale);
  /// pieces.size() == knots.size() + 1, knots strictly increasing. Piece i
  /// lives on (knots[i-1], knots[i]) with the outer pieces unbounded.
  static Expr piecewise(std::vector<double> knots, std::vector<Expr> pieces);

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

  Op op() const noexcept;
  const Node& node() const noexcept { return *node_; }
  std::span<const Expr> args() const noexcept;

  /// Value at x (order-0 jet).
  double operator()(double x) const;

  /// Support as declared by the structure of the tree: zero constants and
  /// zero pieces are known to vanish, everything else is assumed not to.
  Interval support() const;
  bool has_compact_support() const { return support().is_bounded(); }

  /// Knots of piecewise nodes mapped back to x through affine substitutions,
  /// sorted and deduplicated. Piecewise nodes under non-affine arguments
  /// are not reported.
  std::vector<double> knots() const;

  /// Prefix text form; parse_expr(to_string()) reproduces the tree.
  std::string to_string() const;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr make(Node node);

  std::shared_ptr<const Node> node_;
};

struct Expr::Node {
  Op op = Op::Constant;
  double value = 0.0;  // constant value, affine shift
  double scale = 1.0;  // affine scale
  unsigned exponent = 0;
  Interval domain;  // reciprocal nonvanishing interval
  std::vector<double> knots;
  std::vector<Expr> args;
};

/// Parses the prefix text form. Grammar:
///
///   expr := 'x' | number | 'const(' number ')'
///         | 'add(' expr ',' expr ')' | 'sub(' expr ',' expr ')'
///         | 'mul(' expr ',' expr ')' | 'neg(' expr ')'
///         | 'pow(' expr ',' integer ')'
///         | 'exp(' expr ')' | 'sin(' expr ')' | 'cos(' expr ')'
///         | 'recip(' expr [',' number ',' number] ')'
///         | 'flat(' expr ')'
///         | 'affine(' expr ',' shift ',' scale ')'
///         | 'piecewise([' number {',' number} ']' {',' expr} ')'
///         | 'cutoff(' a ',' b ')'
///         | 'bump(' center ',' a ',' b ')'
///
/// Numbers accept "inf" and "-inf". `sub`, `cutoff` and `bump` are
/// shorthands that expand into core nodes.
Expr parse_expr(std::string_view text);

}  // namespace ultradist
