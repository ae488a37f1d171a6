#include "ultradist/seminorms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ultradist {

namespace {

// exp(700) is comfortably inside the double range; beyond it the ratio is
// formed in the log domain.
constexpr double kDirectLogLimit = 700.0;

double ratio_of(double s, double log_denominator) {
  if (s == 0.0) return 0.0;
  if (log_denominator <= kDirectLogLimit) return s / std::exp(log_denominator);
  return std::exp(std::log(s) - log_denominator);
}

void require_orders(const WeightSequence& w, std::size_t k_max) {
  if (k_max > w.horizon())
    throw std::invalid_argument("seminorm: K_max " + std::to_string(k_max) + " exceeds the weight horizon " +
                                std::to_string(w.horizon()));
}

SeminormReport stamp(SeminormReport rep, const Grid& grid, const WeightSequence& w) {
  rep.weights = w.name();
  rep.grid_points = grid.size();
  rep.grid_lo = grid.lo();
  rep.grid_hi = grid.hi();
  return rep;
}

}  // namespace

SeminormReport seminorm_from_sups(const DerivativeSups& sups, std::span<const double> log_denominators) {
  if (sups.sup.size() != log_denominators.size())
    throw std::invalid_argument("seminorm: derivative sups and denominators differ in length");
  SeminormReport rep;
  rep.k_max = sups.sup.size() - 1;
  rep.ratios.resize(sups.sup.size());
  for (std::size_t k = 0; k < sups.sup.size(); ++k) {
    const double r = ratio_of(sups.sup[k], log_denominators[k]);
    rep.ratios[k] = r;
    if (r > rep.value) {
      rep.value = r;
      rep.argmax_k = k;
    }
  }
  rep.argmax_x = sups.argmax_x.empty() ? 0.0 : sups.argmax_x[rep.argmax_k];
  rep.truncation_active = rep.value > 0.0 && rep.argmax_k == rep.k_max;
  return rep;
}

std::vector<double> r_log_denominators(const RSequence& r, const WeightSequence& w, std::size_t k_max) {
  require_orders(w, k_max);
  if (k_max > r.horizon())
    throw std::invalid_argument("seminorm: K_max exceeds the horizon of the r-sequence");
  const ProductSequence R(r);
  std::vector<double> out(k_max + 1);
  for (std::size_t k = 0; k <= k_max; ++k) out[k] = R.log_value(k) + w.log_value(k);
  return out;
}

std::vector<double> q_log_denominators(double h, const WeightSequence& w, std::size_t k_max) {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("q_norm: h must be > 0");
  require_orders(w, k_max);
  std::vector<double> out(k_max + 1);
  const double log_h = std::log(h);
  for (std::size_t k = 0; k <= k_max; ++k) out[k] = static_cast<double>(k) * log_h + w.log_value(k);
  return out;
}

SeminormReport q_norm(const Expr& f, const Grid& K, double h, const WeightSequence& w, std::size_t k_max) {
  const auto denominators = q_log_denominators(h, w, k_max);
  return stamp(seminorm_from_sups(sup_derivatives(f, K, k_max), denominators), K, w);
}

SeminormReport r_norm(const Expr& f, const Grid& K, const RSequence& r, const WeightSequence& w,
                      std::size_t k_max) {
  const auto denominators = r_log_denominators(r, w, k_max);
  return stamp(seminorm_from_sups(sup_derivatives(f, K, k_max), denominators), K, w);
}

Grid support_grid(const Expr& f, GridPolicy policy) {
  if (!f.has_compact_support())
    throw std::invalid_argument("global norm needs a compactly supported expression (got " + f.to_string() + ")");
  return Grid::covering(f, policy.points, policy.reference_width);
}

SeminormReport global_r_norm(const Expr& f, const RSequence& r, const WeightSequence& w, std::size_t k_max,
                             GridPolicy policy) {
  return r_norm(f, support_grid(f, policy), r, w, k_max);
}

RSequence halve(const RSequence& r) {
  if (r.horizon() >= 1 && r[1] == 2.0) {
    std::vector<double> v(r.values().begin(), r.values().end());
    for (std::size_t p = 1; p < v.size(); ++p) v[p] *= 0.5;
    return RSequence(std::move(v));
  }
  return scale(r, 0.5);
}

ProductInequalityReport check_product_inequality(const Expr& f1, const Expr& f2, const RSequence& r,
                                                 const WeightSequence& w, const Grid& grid, std::size_t k_max) {
  if (r.horizon() < 1 || !(r[1] > 2.0))
    throw std::invalid_argument("product inequality requires r_1 > 2");
  const RSequence half = halve(r);
  ProductInequalityReport out;
  out.product = r_norm(f1 * f2, grid, r, w, k_max);
  out.first = r_norm(f1, grid, half, w, k_max);
  out.second = r_norm(f2, grid, half, w, k_max);
  out.lhs = out.product.value;
  out.rhs = out.first.value * out.second.value;
  out.holds = out.lhs <= out.rhs * (1.0 + kProductSlack);
  return out;
}

CutoffEstimate cutoff_constant_estimate(const Expr& theta, const RSequence& r, std::span<const Expr> corpus,
                                        std::span<const double> l_list, const WeightSequence& w,
                                        std::size_t k_max, GridPolicy policy) {
  if (r.horizon() < 1 || !(r[1] >= 2.0)) throw std::invalid_argument("cutoff estimate requires r_1 >= 2");
  if (corpus.empty()) throw std::invalid_argument("cutoff estimate needs a nonempty corpus");
  if (l_list.empty()) throw std::invalid_argument("cutoff estimate needs at least one dilation");
  const RSequence half = halve(r);
  const auto num_denoms = r_log_denominators(r, w, k_max);
  const auto den_denoms = r_log_denominators(half, w, k_max);

  CutoffEstimate out;
  out.ratios.reserve(corpus.size() * l_list.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Expr& phi = corpus[i];
    const Grid grid = support_grid(phi, policy);
    const double denominator = seminorm_from_sups(sup_derivatives(phi, grid, k_max), den_denoms).value;
    for (double l : l_list) {
      const Expr tail = (Expr::constant(1.0) - rescale(theta, l)) * phi;
      const Grid g = Grid::for_expr(tail, grid.lo(), grid.hi(), grid.size());
      const double numerator = seminorm_from_sups(sup_derivatives(tail, g, k_max), num_denoms).value;
      double ratio = 0.0;
      if (numerator > 0.0) {
        ratio = denominator > 0.0 ? numerator / denominator : HUGE_VAL;
      }
      out.ratios.push_back(ratio);
      if (ratio > out.constant) {
        out.constant = ratio;
        out.argmax_corpus = i;
        out.argmax_l = l;
      }
    }
  }
  return out;
}

}  // namespace ultradist
