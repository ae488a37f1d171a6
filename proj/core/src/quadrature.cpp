#include "ultradist/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace ultradist {

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> breakpoints, const QuadratureOptions& opts) {
  QuadratureResult out;
  if (!(a < b)) {
    out.converged = a == b;
    return out;
  }
  if (!std::isfinite(a) || !std::isfinite(b)) return out;

  std::vector<double> cuts{a};
  for (double k : breakpoints)
    if (k > a && k < b) cuts.push_back(k);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double err = 0.0, l1 = 0.0;
    out.value += GK::integrate(f, cuts[i], cuts[i + 1], opts.max_depth, opts.rel_tol, &err, &l1);
    out.error += err;
    out.l1 += l1;
    ++out.panels;
  }
  out.converged = std::isfinite(out.value) && out.error <= std::max(opts.abs_tol, opts.rel_tol * out.l1);
  return out;
}

}  // namespace ultradist
