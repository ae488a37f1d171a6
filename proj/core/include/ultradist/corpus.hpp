#pragma once

#include "ultradist/expr.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ultradist {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct CorpusEntry {
  Expr f;
  /// Short human label, e.g. "bump*sin".
  std::string label;
};

/// Seeded corpus of compactly supported test functions: a bump
/// cutoff(a, b)(x - c) times one of {1, sin, cos, quadratic, exp},
/// cycling through the modulators. The first k entries of a corpus of size
/// n >= k equal the corpus of size k for the same seed, so ladders of
/// growing corpora are nested.
std::vector<CorpusEntry> standard_corpus(std::uint64_t seed, std::size_t size);

/// Plain expressions of standard_corpus.
std::vector<Expr> corpus_exprs(const std::vector<CorpusEntry>& corpus);

/// phi(x - c) with c chosen so that the support starts at `gap` beyond
/// `radius`. Even indices go to the right, odd indices to the left.
Expr move_outside(const Expr& phi, double radius, std::size_t index, double gap = 0.5);

}  // namespace ultradist
