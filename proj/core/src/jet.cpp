#include "ultradist/jet.hpp"

#include <cmath>
#include <stdexcept>

namespace ultradist {

double Jet::derivative(std::size_t k) const {
  double f = 1.0;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return f * coeffs.at(k);
}

std::vector<double> Jet::derivatives() const {
  std::vector<double> out(coeffs.size());
  double f = 1.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k > 1) f *= static_cast<double>(k);
    out[k] = f * coeffs[k];
  }
  return out;
}

namespace series {

Coeffs add(std::span<const double> a, std::span<const double> b) {
  Coeffs c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

Coeffs negate(std::span<const double> a) {
  Coeffs c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  return c;
}

Coeffs multiply(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  Coeffs c(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= k; ++j) acc += a[j] * b[k - j];
    c[k] = acc;
  }
  return c;
}

Coeffs reciprocal(std::span<const double> a) {
  if (a[0] == 0.0) throw std::domain_error("reciprocal of a series with zero constant term");
  const std::size_t n = a.size();
  Coeffs c(n, 0.0);
  const double inv = 1.0 / a[0];
  c[0] = inv;
  for (std::size_t k = 1; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += a[j] * c[k - j];
    c[k] = -inv * acc;
  }
  return c;
}

Coeffs exp(std::span<const double> a) {
  const std::size_t n = a.size();
  Coeffs e(n, 0.0);
  e[0] = std::exp(a[0]);
  for (std::size_t k = 1; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * a[j] * e[k - j];
    e[k] = acc / static_cast<double>(k);
  }
  return e;
}

void sin_cos(std::span<const double> a, Coeffs& s, Coeffs& c) {
  const std::size_t n = a.size();
  s.assign(n, 0.0);
  c.assign(n, 0.0);
  s[0] = std::sin(a[0]);
  c[0] = std::cos(a[0]);
  for (std::size_t k = 1; k < n; ++k) {
    double as = 0.0, ac = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      const double ja = static_cast<double>(j) * a[j];
      as += ja * c[k - j];
      ac += ja * s[k - j];
    }
    s[k] = as / static_cast<double>(k);
    c[k] = -ac / static_cast<double>(k);
  }
}

Coeffs power(std::span<const double> a, unsigned n) {
  Coeffs result(a.size(), 0.0);
  result[0] = 1.0;
  Coeffs base(a.begin(), a.end());
  while (n > 0) {
    if (n & 1u) result = multiply(result, base);
    n >>= 1u;
    if (n > 0) base = multiply(base, base);
  }
  return result;
}

}  // namespace series

}  // namespace ultradist
