#include "ultradist/expr.hpp"

#include "ultradist/calculus.hpp"
#include "ultradist/format.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ultradist {

bool Interval::is_bounded() const noexcept {
  return is_empty() || (std::isfinite(lo) && std::isfinite(hi));
}

Interval intersect(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

Interval hull(const Interval& a, const Interval& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Expr Expr::make(Node node) { return Expr(std::make_shared<const Node>(std::move(node))); }

Expr::Expr() : node_(std::make_shared<const Node>()) {}

Expr Expr::constant(double c) {
  if (!std::isfinite(c)) throw std::invalid_argument("Expr::constant: value must be finite");
  Node n;
  n.op = Op::Constant;
  n.value = c;
  return make(std::move(n));
}

Expr Expr::variable() {
  Node n;
  n.op = Op::Variable;
  return make(std::move(n));
}

namespace {
Expr::Node unary(Expr::Op op, Expr arg) {
  Expr::Node n;
  n.op = op;
  n.args.push_back(std::move(arg));
  return n;
}
}  // namespace

Expr Expr::pow(Expr base, unsigned exponent) {
  Node n = unary(Op::Pow, std::move(base));
  n.exponent = exponent;
  return make(std::move(n));
}

Expr Expr::exp(Expr arg) { return make(unary(Op::Exp, std::move(arg))); }
Expr Expr::sin(Expr arg) { return make(unary(Op::Sin, std::move(arg))); }
Expr Expr::cos(Expr arg) { return make(unary(Op::Cos, std::move(arg))); }
Expr Expr::flat(Expr arg) { return make(unary(Op::Flat, std::move(arg))); }

Expr Expr::recip(Expr arg, Interval nonvanishing) {
  if (nonvanishing.is_empty()) throw std::invalid_argument("Expr::recip: empty nonvanishing interval");
  Node n = unary(Op::Recip, std::move(arg));
  n.domain = nonvanishing;
  return make(std::move(n));
}

Expr Expr::affine(Expr inner, double shift, double scale) {
  if (!(scale != 0.0) || !std::isfinite(scale) || !std::isfinite(shift))
    throw std::invalid_argument("Expr::affine: need finite shift and nonzero finite scale");
  Node n = unary(Op::Affine, std::move(inner));
  n.value = shift;
  n.scale = scale;
  return make(std::move(n));
}

Expr Expr::piecewise(std::vector<double> knots, std::vector<Expr> pieces) {
  if (knots.empty()) throw std::invalid_argument("Expr::piecewise: need at least one knot");
  if (pieces.size() != knots.size() + 1)
    throw std::invalid_argument("Expr::piecewise: need exactly one more piece than knots");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i])) throw std::invalid_argument("Expr::piecewise: knots must be finite");
    if (i > 0 && !(knots[i] > knots[i - 1]))
      throw std::invalid_argument("Expr::piecewise: knots must be strictly increasing");
  }
  Node n;
  n.op = Op::Piecewise;
  n.knots = std::move(knots);
  n.args = std::move(pieces);
  return make(std::move(n));
}

Expr operator+(const Expr& a, const Expr& b) {
  Expr::Node n;
  n.op = Expr::Op::Add;
  n.args = {a, b};
  return Expr::make(std::move(n));
}

Expr operator*(const Expr& a, const Expr& b) {
  Expr::Node n;
  n.op = Expr::Op::Mul;
  n.args = {a, b};
  return Expr::make(std::move(n));
}

Expr operator-(const Expr& a) { return Expr::make(unary(Expr::Op::Neg, a)); }
Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr::Op Expr::op() const noexcept { return node_->op; }
std::span<const Expr> Expr::args() const noexcept { return node_->args; }

double Expr::operator()(double x) const { return jet_eval(*this, x, 0).coeffs[0]; }

namespace {

bool is_zero_constant(const Expr& e) { return e.op() == Expr::Op::Constant && e.node().value == 0.0; }

}  // namespace

Interval Expr::support() const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Constant:
      return n.value == 0.0 ? Interval::empty() : Interval::whole_line();
    case Op::Variable:
    case Op::Exp:
    case Op::Cos:
    case Op::Recip:
    case Op::Sin:
    case Op::Flat:
      return Interval::whole_line();
    case Op::Add:
      return hull(n.args[0].support(), n.args[1].support());
    case Op::Mul:
      return intersect(n.args[0].support(), n.args[1].support());
    case Op::Neg:
      return n.args[0].support();
    case Op::Pow:
      return n.exponent == 0 ? Interval::whole_line() : n.args[0].support();
    case Op::Affine: {
      const Interval in = n.args[0].support();
      if (in.is_empty()) return in;
      const double a = n.value + n.scale * in.lo;
      const double b = n.value + n.scale * in.hi;
      return {std::min(a, b), std::max(a, b)};
    }
    case Op::Piecewise: {
      Interval out = Interval::empty();
      const auto inf = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (is_zero_constant(n.args[i])) continue;
        const Interval cell{i == 0 ? -inf : n.knots[i - 1], i == n.knots.size() ? inf : n.knots[i]};
        out = hull(out, intersect(cell, n.args[i].support()));
      }
      return out;
    }
  }
  return Interval::whole_line();
}

namespace {

// x = offset + slope * (current argument)
void collect_knots(const Expr& e, double offset, double slope, bool affine_chain, std::vector<double>& out) {
  const Expr::Node& n = e.node();
  switch (n.op) {
    case Expr::Op::Affine:
      collect_knots(n.args[0], offset + slope * n.value, slope * n.scale, affine_chain, out);
      return;
    case Expr::Op::Piecewise:
      if (affine_chain)
        for (double k : n.knots) out.push_back(offset + slope * k);
      for (const auto& piece : n.args) collect_knots(piece, offset, slope, affine_chain, out);
      return;
    case Expr::Op::Add:
    case Expr::Op::Mul:
    case Expr::Op::Neg:
      for (const auto& a : n.args) collect_knots(a, offset, slope, affine_chain, out);
      return;
    case Expr::Op::Pow:
    case Expr::Op::Exp:
    case Expr::Op::Sin:
    case Expr::Op::Cos:
    case Expr::Op::Recip:
    case Expr::Op::Flat:
      // The argument is no longer the variable itself.
      for (const auto& a : n.args) collect_knots(a, offset, slope, false, out);
      return;
    case Expr::Op::Constant:
    case Expr::Op::Variable:
      return;
  }
}

}  // namespace

std::vector<double> Expr::knots() const {
  std::vector<double> out;
  collect_knots(*this, 0.0, 1.0, true, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string Expr::to_string() const {
  const Node& n = *node_;
  auto wrap = [](const char* name, std::initializer_list<std::string> parts) {
    std::string s = name;
    s += '(';
    bool first = true;
    for (const auto& p : parts) {
      if (!first) s += ',';
      s += p;
      first = false;
    }
    s += ')';
    return s;
  };
  switch (n.op) {
    case Op::Constant:
      return wrap("const", {format_double(n.value)});
    case Op::Variable:
      return "x";
    case Op::Add:
      return wrap("add", {n.args[0].to_string(), n.args[1].to_string()});
    case Op::Mul:
      return wrap("mul", {n.args[0].to_string(), n.args[1].to_string()});
    case Op::Neg:
      return wrap("neg", {n.args[0].to_string()});
    case Op::Pow:
      return wrap("pow", {n.args[0].to_string(), std::to_string(n.exponent)});
    case Op::Exp:
      return wrap("exp", {n.args[0].to_string()});
    case Op::Sin:
      return wrap("sin", {n.args[0].to_string()});
    case Op::Cos:
      return wrap("cos", {n.args[0].to_string()});
    case Op::Recip:
      return wrap("recip", {n.args[0].to_string(), format_double(n.domain.lo), format_double(n.domain.hi)});
    case Op::Flat:
      return wrap("flat", {n.args[0].to_string()});
    case Op::Affine:
      return wrap("affine", {n.args[0].to_string(), format_double(n.value), format_double(n.scale)});
    case Op::Piecewise: {
      std::string s = "piecewise([";
      for (std::size_t i = 0; i < n.knots.size(); ++i) {
        if (i) s += ',';
        s += format_double(n.knots[i]);
      }
      s += ']';
      for (const auto& piece : n.args) {
        s += ',';
        s += piece.to_string();
      }
      s += ')';
      return s;
    }
  }
  return {};
}

}  // namespace ultradist
