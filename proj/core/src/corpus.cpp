#include "ultradist/corpus.hpp"

#include "ultradist/calculus.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace ultradist {

namespace {

// Uniform on [lo, hi) from the raw 64-bit engine output, so the corpus does
// not depend on the standard library's distribution implementation.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}
  double operator()(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

std::vector<CorpusEntry> standard_corpus(std::uint64_t seed, std::size_t size) {
  Uniform u(seed);
  std::vector<CorpusEntry> out;
  out.reserve(size);
  const Expr x = Expr::variable();
  for (std::size_t i = 0; i < size; ++i) {
    // Every entry draws the same number of variates, keeping prefixes stable.
    const double c = u(-3.0, 3.0);
    const double a = u(0.25, 1.5);
    const double b = a + u(0.25, 1.5);
    const double p1 = u(0.0, 1.0);
    const double p2 = u(0.0, 1.0);
    const double p3 = u(0.0, 1.0);
    const Expr bump = translate(cutoff(a, b), c);
    Expr modulator;
    std::string label;
    switch (i % 5) {
      case 0:
        modulator = Expr::constant(1.0);
        label = "bump";
        break;
      case 1:
      case 2: {
        const double omega = 0.5 + 2.5 * p1;
        const double phase = std::numbers::pi * (2.0 * p2 - 1.0);
        // sin(omega x + phase) = sin((x - s) / sigma)
        const Expr arg = Expr::affine(x, -phase / omega, 1.0 / omega);
        modulator = i % 5 == 1 ? Expr::sin(arg) : Expr::cos(arg);
        label = i % 5 == 1 ? "bump*sin" : "bump*cos";
        break;
      }
      case 3:
        modulator = Expr::constant(0.5 + p1) + Expr::constant(2.0 * p2 - 1.0) * x +
                    Expr::constant(2.0 * p3 - 1.0) * Expr::pow(x, 2);
        label = "bump*quadratic";
        break;
      default:
        modulator = Expr::exp(Expr::constant(2.0 * p1 - 1.0) * x);
        label = "bump*exp";
        break;
    }
    out.push_back({bump * modulator, label});
  }
  return out;
}

std::vector<Expr> corpus_exprs(const std::vector<CorpusEntry>& corpus) {
  std::vector<Expr> out;
  out.reserve(corpus.size());
  for (const auto& e : corpus) out.push_back(e.f);
  return out;
}

Expr move_outside(const Expr& phi, double radius, std::size_t index, double gap) {
  const Interval s = phi.support();
  if (s.is_empty()) return phi;
  if (!s.is_bounded()) throw std::invalid_argument("move_outside: expression is not compactly supported");
  const double shift = index % 2 == 0 ? radius + gap - s.lo : -(radius + gap) - s.hi;
  return translate(phi, shift);
}

}  // namespace ultradist
