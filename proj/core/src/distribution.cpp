#include "ultradist/distribution.hpp"

#include "ultradist/calculus.hpp"
#include "ultradist/format.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace ultradist {

Ultradistribution::Ultradistribution(std::vector<Density> densities, std::vector<Atom> atoms)
    : densities_(std::move(densities)), atoms_(std::move(atoms)) {
  for (const auto& a : atoms_)
    if (!std::isfinite(a.x0) || !std::isfinite(a.coeff.real()) || !std::isfinite(a.coeff.imag()))
      throw std::invalid_argument("atom location and coefficient must be finite");
  for (const auto& d : densities_)
    if (d.domain.is_empty()) throw std::invalid_argument("density domain must be nonempty");
}

Ultradistribution Ultradistribution::operator+(const Ultradistribution& other) const {
  Ultradistribution out = *this;
  out.densities_.insert(out.densities_.end(), other.densities_.begin(), other.densities_.end());
  out.atoms_.insert(out.atoms_.end(), other.atoms_.begin(), other.atoms_.end());
  return out;
}

std::string Ultradistribution::to_string() const {
  std::string s;
  auto sep = [&] {
    if (!s.empty()) s += " + ";
  };
  for (const auto& d : densities_) {
    sep();
    s += "density(" + d.rho.to_string();
    if (d.domain.lo != -HUGE_VAL || d.domain.hi != HUGE_VAL)
      s += "," + format_double(d.domain.lo) + "," + format_double(d.domain.hi);
    s += ")";
  }
  for (const auto& a : atoms_) {
    sep();
    s += "atom(" + format_double(a.x0) + "," + std::to_string(a.order) + "," + format_double(a.coeff.real());
    if (a.coeff.imag() != 0.0) s += "," + format_double(a.coeff.imag());
    s += ")";
  }
  return s.empty() ? "0" : s;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Split on separator characters at parenthesis depth 0.
std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (depth < 0) throw std::invalid_argument("distribution: unbalanced parentheses");
    if (c == sep && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  if (depth != 0) throw std::invalid_argument("distribution: unbalanced parentheses");
  parts.push_back(s.substr(start));
  return parts;
}

double parse_real(std::string_view s) {
  const std::string token(trim(s));
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size() || std::isnan(v))
    throw std::invalid_argument("distribution: bad number '" + token + "'");
  return v;
}

}  // namespace

Ultradistribution Ultradistribution::parse(std::string_view text) {
  std::vector<Density> densities;
  std::vector<Atom> atoms;
  for (std::string_view term : split_top(text, '+')) {
    term = trim(term);
    const auto open = term.find('(');
    if (open == std::string_view::npos || term.back() != ')')
      throw std::invalid_argument("distribution: expected atom(...) or density(...), got '" + std::string(term) + "'");
    const std::string_view head = trim(term.substr(0, open));
    const auto args = split_top(term.substr(open + 1, term.size() - open - 2), ',');
    if (head == "atom") {
      if (args.size() != 3 && args.size() != 4)
        throw std::invalid_argument("distribution: atom takes (x0, m, re[, im])");
      Atom a;
      a.x0 = parse_real(args[0]);
      const double m = parse_real(args[1]);
      if (m < 0 || m != std::floor(m) || m > 64) throw std::invalid_argument("distribution: atom order must be 0..64");
      a.order = static_cast<unsigned>(m);
      a.coeff = {parse_real(args[2]), args.size() == 4 ? parse_real(args[3]) : 0.0};
      atoms.push_back(a);
    } else if (head == "density") {
      if (args.size() != 1 && args.size() != 3)
        throw std::invalid_argument("distribution: density takes (expr[, lo, hi])");
      Density d{parse_expr(trim(args[0]))};
      if (args.size() == 3) {
        d.domain = {parse_real(args[1]), parse_real(args[2])};
        if (!(d.domain.lo < d.domain.hi)) throw std::invalid_argument("distribution: density domain needs lo < hi");
      }
      densities.push_back(std::move(d));
    } else {
      throw std::invalid_argument("distribution: unknown term '" + std::string(head) + "'");
    }
  }
  return Ultradistribution(std::move(densities), std::move(atoms));
}

Ultradistribution delta(double x0, unsigned order, std::complex<double> coeff) {
  return Ultradistribution({}, {Atom{x0, order, coeff}});
}

Ultradistribution density(const Expr& rho, Interval domain) { return Ultradistribution({Density{rho, domain}}, {}); }

Ultradistribution exploding_bumps(std::size_t count, double base, double a, double b) {
  if (count == 0) throw std::invalid_argument("exploding_bumps: need at least one bump");
  if (!(b < 0.5)) throw std::invalid_argument("exploding_bumps: bumps at consecutive integers need b < 1/2");
  const Expr bump = cutoff(a, b);
  std::vector<Density> parts;
  double weight = 1.0;
  for (std::size_t j = 1; j <= count; ++j) {
    weight *= base;
    const double c = static_cast<double>(j);
    parts.push_back({Expr::constant(weight) * translate(bump, c), Interval{c - b, c + b}});
  }
  return Ultradistribution(std::move(parts), {});
}

PairingResult pair(const Ultradistribution& T, const Expr& phi, const QuadratureOptions& opts) {
  PairingResult out;
  for (const Atom& a : T.atoms()) {
    const Jet j = jet_eval(phi, a.x0, a.order);
    const double sign = a.order % 2 == 0 ? 1.0 : -1.0;
    out.value += a.coeff * (sign * j.derivative(a.order));
  }
  const Interval phi_support = phi.support();
  for (const Density& d : T.densities()) {
    const Interval range = intersect(intersect(d.domain, d.rho.support()), phi_support);
    if (range.is_empty() || range.lo == range.hi) continue;
    if (!range.is_bounded()) {
      out.converged = false;
      out.error = HUGE_VAL;
      continue;
    }
    std::vector<double> cuts = phi.knots();
    const auto rho_knots = d.rho.knots();
    cuts.insert(cuts.end(), rho_knots.begin(), rho_knots.end());
    const Expr& rho = d.rho;
    const auto q = integrate([&](double x) { return rho(x) * phi(x); }, range.lo, range.hi, cuts, opts);
    out.value += q.value;
    out.error += q.error;
    out.converged = out.converged && q.converged;
  }
  return out;
}

}  // namespace ultradist
