#include "ultradist/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ultradist {

namespace {

using series::Coeffs;

// Below this argument exp(-1/t) is under 1e-304; the coefficients of the
// flat exponential up to order ~30 stay below 1e-100 there.
constexpr double kFlatUnderflow = 1.0 / 700.0;
constexpr double kKnotAgreement = 1e-7;

struct Evaluator {
  std::size_t n;  // number of coefficients
  bool at_knot = false;

  Coeffs constant(double c) const {
    Coeffs out(n, 0.0);
    out[0] = c;
    return out;
  }

  Coeffs eval(const Expr& e, const Coeffs& in) {
    const Expr::Node& node = e.node();
    switch (node.op) {
      case Expr::Op::Constant:
        return constant(node.value);
      case Expr::Op::Variable:
        return in;
      case Expr::Op::Add:
        return series::add(eval(node.args[0], in), eval(node.args[1], in));
      case Expr::Op::Mul:
        return series::multiply(eval(node.args[0], in), eval(node.args[1], in));
      case Expr::Op::Neg:
        return series::negate(eval(node.args[0], in));
      case Expr::Op::Pow:
        return series::power(eval(node.args[0], in), node.exponent);
      case Expr::Op::Exp:
        return series::exp(eval(node.args[0], in));
      case Expr::Op::Sin:
      case Expr::Op::Cos: {
        Coeffs s, c;
        series::sin_cos(eval(node.args[0], in), s, c);
        return node.op == Expr::Op::Sin ? s : c;
      }
      case Expr::Op::Recip: {
        Coeffs a = eval(node.args[0], in);
        if (!node.domain.contains(in[0]))
          throw std::domain_error("reciprocal evaluated outside its declared nonvanishing interval");
        return series::reciprocal(a);
      }
      case Expr::Op::Flat: {
        Coeffs u = eval(node.args[0], in);
        if (u[0] == 0.0) at_knot = true;
        if (!(u[0] > kFlatUnderflow)) return constant(0.0);
        return series::exp(series::negate(series::reciprocal(u)));
      }
      case Expr::Op::Affine: {
        Coeffs y(n);
        const double inv = 1.0 / node.scale;
        y[0] = (in[0] - node.value) / node.scale;
        for (std::size_t k = 1; k < n; ++k) y[k] = in[k] * inv;
        return eval(node.args[0], y);
      }
      case Expr::Op::Piecewise:
        return eval_piecewise(node, in);
    }
    throw std::logic_error("unhandled expression node");
  }

  Coeffs eval_piecewise(const Expr::Node& node, const Coeffs& in) {
    const double u = in[0];
    const auto& knots = node.knots;
    const auto it = std::lower_bound(knots.begin(), knots.end(), u);
    const auto idx = static_cast<std::size_t>(it - knots.begin());
    if (it == knots.end() || *it != u) return eval(node.args[idx], in);

    // On a knot: both neighbouring pieces must extend smoothly to it.
    at_knot = true;
    Coeffs left = eval(node.args[idx], in);
    Coeffs right = eval(node.args[idx + 1], in);
    for (std::size_t k = 0; k < n; ++k) {
      const double scale = std::max({1.0, std::fabs(left[k]), std::fabs(right[k])});
      if (std::fabs(left[k] - right[k]) > kKnotAgreement * scale)
        throw std::domain_error("piecewise expression is not smooth at knot " + std::to_string(*it));
    }
    auto roughness = [](const Coeffs& c) {
      double s = 0.0;
      for (std::size_t k = 1; k < c.size(); ++k) s += std::fabs(c[k]);
      return s;
    };
    return roughness(right) < roughness(left) ? right : left;
  }
};

}  // namespace

Jet jet_eval(const Expr& f, double x0, std::size_t order) {
  if (!std::isfinite(x0)) throw std::invalid_argument("jet_eval: point must be finite");
  Evaluator ev{order + 1};
  Coeffs identity(order + 1, 0.0);
  identity[0] = x0;
  if (order >= 1) identity[1] = 1.0;
  Jet out;
  out.x0 = x0;
  out.coeffs = ev.eval(f, identity);
  out.at_knot = ev.at_knot;
  return out;
}

Expr cutoff(double a, double b) {
  if (!(a > 0.0) || !(a < b) || !std::isfinite(b))
    throw std::invalid_argument("cutoff: need 0 < a < b");
  const Expr t = Expr::variable();
  const Expr g = Expr::flat(t);
  const Expr g_mirror = Expr::flat(Expr::constant(1.0) - t);
  // F(t) = G(t) / (G(t) + G(1 - t)); the denominator never vanishes.
  const Expr transition = g * Expr::recip(g + g_mirror);
  const double w = b - a;
  return Expr::piecewise({-b, -a, a, b},
                         {Expr::constant(0.0), Expr::affine(transition, -b, w), Expr::constant(1.0),
                          Expr::affine(transition, b, -w), Expr::constant(0.0)});
}

Expr rescale(const Expr& f, double j) {
  if (!(j > 0.0) || !std::isfinite(j)) throw std::invalid_argument("rescale: j must be > 0");
  return Expr::affine(f, 0.0, j);
}

Expr translate(const Expr& f, double c) { return Expr::affine(f, c, 1.0); }

Interval plateau_of(const Expr& f) {
  // Peel affine substitutions, tracking x = offset + slope * argument.
  double offset = 0.0, slope = 1.0;
  const Expr* cur = &f;
  while (cur->op() == Expr::Op::Affine) {
    offset += slope * cur->node().value;
    slope *= cur->node().scale;
    cur = &cur->args()[0];
  }
  if (cur->op() != Expr::Op::Piecewise) throw std::invalid_argument("plateau_of: not a piecewise cutoff");
  const auto& node = cur->node();
  for (std::size_t i = 1; i + 1 < node.args.size(); ++i) {
    const Expr& piece = node.args[i];
    if (piece.op() != Expr::Op::Constant || piece.node().value != 1.0) continue;
    const double a = offset + slope * node.knots[i - 1];
    const double b = offset + slope * node.knots[i];
    Interval plateau{std::min(a, b), std::max(a, b)};
    if (plateau.lo < 0.0 && plateau.hi > 0.0) return plateau;
  }
  throw std::invalid_argument("plateau_of: no constant-one piece around 0");
}

Grid Grid::uniform(double a, double b, std::size_t n, std::span<const double> avoid) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("Grid: need finite a < b");
  if (n < 2) throw std::invalid_argument("Grid: need at least two points");
  Grid g;
  g.lo_ = a;
  g.hi_ = b;
  const double tol = 1e-12 * (b - a);
  g.points_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i + 1 == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    const bool on_knot = std::any_of(avoid.begin(), avoid.end(), [&](double k) { return std::fabs(x - k) <= tol; });
    if (!on_knot) g.points_.push_back(x);
  }
  return g;
}

Grid Grid::for_expr(const Expr& f, double a, double b, std::size_t n) {
  const auto knots = f.knots();
  return uniform(a, b, n, knots);
}

Grid Grid::covering(const Expr& f, std::size_t n, double reference_width) {
  const Interval s = f.support();
  if (!s.is_bounded()) throw std::invalid_argument("Grid::covering: expression has no compact support");
  Interval span = s;
  if (s.is_empty() || !(s.width() > 0.0)) {
    const double c = s.is_empty() ? 0.0 : s.lo;
    span = {c - 1.0, c + 1.0};
  }
  std::size_t count = n;
  if (reference_width > 0.0) {
    const double scaled = std::ceil(static_cast<double>(n - 1) * span.width() / reference_width) + 1.0;
    count = std::max(n, static_cast<std::size_t>(scaled));
  }
  return for_expr(f, span.lo, span.hi, count);
}

Grid Grid::merge(const Grid& a, const Grid& b) {
  Grid g;
  g.lo_ = std::min(a.lo_, b.lo_);
  g.hi_ = std::max(a.hi_, b.hi_);
  g.points_.reserve(a.size() + b.size());
  std::merge(a.points_.begin(), a.points_.end(), b.points_.begin(), b.points_.end(), std::back_inserter(g.points_));
  g.points_.erase(std::unique(g.points_.begin(), g.points_.end()), g.points_.end());
  return g;
}

DerivativeSups sup_derivatives(const Expr& f, const Grid& grid, std::size_t order) {
  DerivativeSups out;
  out.sup.assign(order + 1, 0.0);
  out.argmax_x.assign(order + 1, grid.points().empty() ? grid.lo() : grid.points().front());
  for (double x : grid.points()) {
    const auto d = jet_eval(f, x, order).derivatives();
    for (std::size_t k = 0; k <= order; ++k) {
      const double v = std::fabs(d[k]);
      if (v > out.sup[k]) {
        out.sup[k] = v;
        out.argmax_x[k] = x;
      }
    }
  }
  return out;
}

}  // namespace ultradist
