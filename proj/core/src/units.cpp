#include "ultradist/units.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace ultradist {

const char* to_string(UnitKind kind) noexcept { return kind == UnitKind::Special ? "special" : "plain"; }

ApproximateUnitFamily::ApproximateUnitFamily(std::string name, UnitKind kind, std::size_t n_max,
                                             Generator generator, PlateauFn plateau, std::string provenance)
    : name_(std::move(name)),
      kind_(kind),
      n_max_(n_max),
      generator_(std::move(generator)),
      plateau_(std::move(plateau)),
      provenance_(std::move(provenance)) {
  if (n_max_ < 2) throw std::invalid_argument("approximate unit family needs N_max >= 2");
  if (!generator_) throw std::invalid_argument("approximate unit family needs a generator");
}

Expr ApproximateUnitFamily::member(std::size_t n) const {
  if (n < 1 || n > n_max_) throw std::out_of_range("family member index out of range");
  return generator_(n);
}

Interval ApproximateUnitFamily::plateau(std::size_t n) const {
  if (!plateau_) return Interval::empty();
  return plateau_(n);
}

ApproximateUnitFamily scaled_cutoff_family(const Expr& theta, std::size_t n_max) {
  const Interval base = plateau_of(theta);
  return ApproximateUnitFamily(
      "scaled", UnitKind::Special, n_max, [theta](std::size_t n) { return rescale(theta, static_cast<double>(n)); },
      [base](std::size_t n) {
        const double s = static_cast<double>(n);
        return Interval{s * base.lo, s * base.hi};
      },
      "theta(x/n) for theta = " + theta.to_string());
}

ApproximateUnitFamily widening_cutoff_family(double width, std::size_t n_max) {
  if (!(width > 0.0)) throw std::invalid_argument("widening family needs a positive transition width");
  return ApproximateUnitFamily(
      "widening", UnitKind::Special, n_max,
      [width](std::size_t n) {
        const double a = static_cast<double>(n);
        return cutoff(a, a + width);
      },
      [](std::size_t n) {
        const double a = static_cast<double>(n);
        return Interval{-a, a};
      },
      "cutoff(n, n + " + std::to_string(width) + ")");
}

ApproximateUnitFamily modulated_family(const Expr& theta, std::size_t n_max) {
  return ApproximateUnitFamily(
      "modulated", UnitKind::Plain, n_max,
      [theta](std::size_t n) {
        const double amp = std::ldexp(1.0, -2 * static_cast<int>(n));
        return rescale(theta, static_cast<double>(n)) *
               (Expr::constant(1.0) + Expr::constant(amp) * Expr::sin(Expr::variable()));
      },
      {}, "theta(x/n) (1 + 4^-n sin x) for theta = " + theta.to_string());
}

namespace {

std::size_t first_settled(const std::vector<double>& values, const auto& ok) {
  std::size_t from = 0;
  for (std::size_t i = values.size(); i-- > 0;) {
    if (!ok(values[i])) break;
    from = i + 1;
  }
  return from;
}

bool contains(const Interval& outer, const Interval& inner) {
  return !outer.is_empty() && outer.lo <= inner.lo && inner.hi <= outer.hi;
}

}  // namespace

UnitReport verify_unit(const ApproximateUnitFamily& family, const WeightSequence& w, const UnitCheckOptions& opts) {
  const std::size_t N = family.n_max();
  UnitReport rep;
  rep.family = family.name();
  rep.kind = family.kind();

  std::vector<Expr> members;
  members.reserve(N);
  for (std::size_t n = 1; n <= N; ++n) members.push_back(family.member(n));

  // (i) boundedness of the global norms; derivative sups do not depend on r.
  std::vector<DerivativeSups> sups;
  sups.reserve(N);
  for (const Expr& m : members) sups.push_back(sup_derivatives(m, support_grid(m, opts.grid), opts.k_max));
  rep.bounded = !opts.r_samples.empty();
  for (std::size_t i = 0; i < opts.r_samples.size(); ++i) {
    const auto denoms = r_log_denominators(opts.r_samples[i], w, opts.k_max);
    BoundednessEvidence ev;
    ev.r_index = i;
    double first_half = 0.0, second_half = 0.0;
    for (std::size_t n = 1; n <= N; ++n) {
      const double v = seminorm_from_sups(sups[n - 1], denoms).value;
      ev.norms.push_back(v);
      if (v > ev.sup) {
        ev.sup = v;
        ev.argmax_n = n;
      }
      double& half = n <= N / 2 ? first_half : second_half;
      half = std::max(half, v);
    }
    ev.bounded = std::isfinite(ev.sup) && second_half <= opts.boundedness_factor * first_half;
    rep.bounded = rep.bounded && ev.bounded;
    rep.boundedness.push_back(std::move(ev));
  }

  // (ii) q_{K,h}(pi_n - 1) -> 0 on every sampled (K, h).
  const Expr one = Expr::constant(1.0);
  rep.converges = !opts.compacts.empty() && !opts.h_samples.empty();
  for (const Interval& K : opts.compacts) {
    std::vector<DerivativeSups> defect;
    defect.reserve(N);
    for (const Expr& m : members) {
      const Expr d = m - one;
      defect.push_back(sup_derivatives(d, Grid::for_expr(d, K.lo, K.hi, opts.compact_points), opts.k_max));
    }
    for (double h : opts.h_samples) {
      const auto denoms = q_log_denominators(h, w, opts.k_max);
      ConvergenceEvidence ev;
      ev.compact = K;
      ev.h = h;
      for (const auto& s : defect) ev.q_values.push_back(seminorm_from_sups(s, denoms).value);
      ev.settled_from = first_settled(ev.q_values, [&](double q) { return q <= opts.convergence_tolerance; });
      ev.exact_zero_from = first_settled(ev.q_values, [](double q) { return q == 0.0; });
      ev.converges = ev.settled_from != 0;
      rep.converges = rep.converges && ev.converges;
      rep.convergence.push_back(std::move(ev));
    }
  }

  // (iii) special: plateaus eventually cover K and the defect vanishes there.
  if (family.kind() == UnitKind::Special) {
    bool ok = !opts.compacts.empty();
    for (const Interval& K : opts.compacts) {
      SpecialEvidence ev;
      ev.compact = K;
      std::vector<double> covered(N);
      for (std::size_t n = 1; n <= N; ++n) covered[n - 1] = contains(family.plateau(n), K) ? 1.0 : 0.0;
      ev.cover_index = first_settled(covered, [](double c) { return c == 1.0; });
      ev.exact_from_cover = ev.cover_index != 0;
      for (const auto& c : rep.convergence) {
        if (c.compact.lo != K.lo || c.compact.hi != K.hi) continue;
        if (c.exact_zero_from == 0 || c.exact_zero_from > ev.cover_index) ev.exact_from_cover = false;
      }
      ok = ok && ev.exact_from_cover;
      rep.special.push_back(ev);
    }
    rep.special_verified = ok;
  }

  rep.passes = rep.bounded && rep.converges && rep.special_verified.value_or(true);
  return rep;
}

Expr disjoint_sum(std::span<const Expr> parts) {
  if (parts.empty()) throw std::invalid_argument("disjoint_sum: no parts");
  std::vector<std::pair<Interval, std::size_t>> supports;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Interval s = parts[i].support();
    if (!s.is_bounded()) throw std::invalid_argument("disjoint_sum: every part must be compactly supported");
    if (!s.is_empty()) supports.emplace_back(s, i);
  }
  std::sort(supports.begin(), supports.end(), [](const auto& a, const auto& b) { return a.first.lo < b.first.lo; });
  for (std::size_t i = 1; i < supports.size(); ++i)
    if (!(supports[i - 1].first.hi < supports[i].first.lo))
      throw std::invalid_argument("disjoint_sum: supports of parts " + std::to_string(supports[i - 1].second) +
                                  " and " + std::to_string(supports[i].second) + " overlap");
  Expr out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out = out + parts[i];
  return out;
}

ApproximateUnitFamily perturb_family(const ApproximateUnitFamily& family, std::vector<Expr> psi) {
  if (psi.size() < family.n_max()) throw std::invalid_argument("perturb_family: need one perturbation per member");
  for (std::size_t n = 1; n <= family.n_max(); ++n) {
    const Interval s = psi[n - 1].support();
    if (s.is_empty()) continue;
    if (!s.is_bounded())
      throw std::invalid_argument("perturb_family: psi_" + std::to_string(n) + " is not compactly supported");
    const double reach = static_cast<double>(n);
    if (!(s.lo > reach || s.hi < -reach))
      throw std::invalid_argument("perturb_family: support of psi_" + std::to_string(n) + " meets [-n, n]");
  }
  auto shared = std::make_shared<std::vector<Expr>>(std::move(psi));
  auto base = std::make_shared<ApproximateUnitFamily>(family);
  return ApproximateUnitFamily(
      family.name() + "+psi", family.kind(), family.n_max(),
      [base, shared](std::size_t n) {
        const Expr& p = (*shared)[n - 1];
        if (p.support().is_empty()) return base->member(n);
        return base->member(n) + p;
      },
      [base, shared](std::size_t n) {
        Interval plateau = base->plateau(n);
        const Interval s = (*shared)[n - 1].support();
        if (plateau.is_empty() || s.is_empty() || intersect(plateau, s).is_empty()) return plateau;
        if (s.lo > 0.0) plateau.hi = std::min(plateau.hi, s.lo);
        if (s.hi < 0.0) plateau.lo = std::max(plateau.lo, s.hi);
        return plateau;
      },
      family.provenance() + " plus perturbations");
}

RSequence chain_rsequence(std::size_t m, std::size_t horizon) {
  if (m == 0) throw std::invalid_argument("chain_rsequence: m must be >= 1");
  return power_rsequence(1.0 + 1.0 / static_cast<double>(m), horizon);
}

NormalizedPerturbation normalized_perturbation(std::size_t m, const WeightSequence& w, std::size_t k_max, double a,
                                               double b, GridPolicy policy) {
  if (m == 0) throw std::invalid_argument("normalized_perturbation: m must be >= 1");
  const double md = static_cast<double>(m);
  if (!(b < md + 3.0)) throw std::invalid_argument("normalized_perturbation: bump would meet [-m, m]");
  const Expr phi = translate(cutoff(a, b), 2.0 * md + 3.0);
  const RSequence r = chain_rsequence(m, k_max);
  NormalizedPerturbation out;
  out.raw_norm = global_r_norm(phi, r, w, k_max, policy).value;
  out.psi = Expr::constant(1.0 / (md * out.raw_norm)) * phi;
  out.norm = global_r_norm(out.psi, r, w, k_max, policy).value;
  return out;
}

}  // namespace ultradist
