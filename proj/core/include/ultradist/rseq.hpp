#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ultradist {

/// A finite prefix r_0..r_P of a sequence in the class of sequences that
/// increase to infinity, with r_0 = 1.
///
/// Construction enforces r_0 = 1 and r_p <= r_{p+1}. Divergence cannot be
/// observed on a prefix; diverges_at_horizon() is the r_P >= 2 proxy and is
/// surfaced by reports rather than enforced.
class RSequence {
 public:
  explicit RSequence(std::vector<double> values);

  std::size_t horizon() const noexcept { return values_.size() - 1; }
  double operator[](std::size_t p) const { return values_.at(p); }
  std::span<const double> values() const noexcept { return values_; }
  bool diverges_at_horizon() const noexcept { return values_.back() >= 2.0; }

  friend bool operator==(const RSequence&, const RSequence&) = default;

 private:
  std::vector<double> values_;
};

/// r_p = c p for p >= 1 (c >= 1).
RSequence linear_rsequence(double c, std::size_t horizon);
/// r_p = (p + 1)^e (e > 0).
RSequence power_rsequence(double e, std::size_t horizon);

/// R_p = r_0 r_1 ... r_p, kept in the log domain; value(p) is +inf once the
/// product leaves the double range.
class ProductSequence {
 public:
  explicit ProductSequence(const RSequence& r);

  std::size_t horizon() const noexcept { return log_values_.size() - 1; }
  double value(std::size_t p) const;
  double log_value(std::size_t p) const { return log_values_.at(p); }
  bool overflows(std::size_t p) const { return log_values_.at(p) > 709.0; }
  std::span<const double> log_values() const noexcept { return log_values_; }

 private:
  std::vector<double> log_values_;
};

ProductSequence product_sequence(const RSequence& r);

/// lambda (r_p) = (1, lambda r_1, lambda r_2, ...). For lambda < 1 the
/// result stays in the class only when r_1 > 1/lambda; otherwise throws.
RSequence scale(const RSequence& r, double lambda);

struct PrecedesReport {
  bool holds = false;
  /// s_p <= r_p for every p on the prefix.
  bool dominated = false;
  double ratio_at_horizon = 0.0;
  /// The limsup is replaced by r_P / s_P >= threshold, so the verdict is
  /// always a statement about the prefix.
  static constexpr const char* scope = "at horizon";
};

/// (s_p) precedes (r_p): s_p <= r_p everywhere and r_P / s_P >= threshold.
PrecedesReport precedes(const RSequence& s, const RSequence& r, double threshold);

/// (1, r_{1+p0}, r_{2+p0}, ...) of horizon P - p0.
RSequence tail_shift(const RSequence& r, std::size_t p0);

/// Smallest p0 such that every shifted entry r_{p+p0}, p >= 1, exceeds c.
/// Throws when even the last entry does not exceed c.
std::size_t minimal_tail_shift(const RSequence& r, double c);

struct KomatsuSupremum {
  double value = 0.0;
  std::size_t argmax_p = 0;
  /// The maximiser lies strictly before the horizon.
  bool interior = true;
};

struct KomatsuL1Report {
  /// sup_p a_p / h^p.
  double growth_constant = 0.0;
  std::size_t growth_argmax = 0;
  /// sup_p a_p / R_p, one per sampled sequence.
  std::vector<KomatsuSupremum> samples;
};

/// Given a with sup_p a_p / h^p finite for one h, reports sup_p a_p / R_p for
/// every sampled sequence; all should be finite and eventually decreasing.
KomatsuL1Report komatsu_check_l1(std::span<const double> a, double h,
                                 std::span<const RSequence> r_samples);

struct KomatsuWitness {
  RSequence r;
  KomatsuSupremum supremum;
  /// a_P^{1/P} > 1: the every-h hypothesis looks doubtful at the horizon.
  bool hypothesis_warning = false;
};

/// For a with sup_p a_p / h^p finite for every h > 0, builds r in the class
/// with sup_p a_p / R_p bounded. With s_p = max_{q in [p,P]} a_q^{1/q},
/// r_p = max(r_{p-1}, sqrt(p), p s_p). Then R_p >= p! s_p^p >= a_p, so
/// sup_p a_p / R_p <= max(a_0, 1).
KomatsuWitness komatsu_witness(std::span<const double> a);

/// JSON array of decimal strings (17 significant digits).
std::string rsequence_to_json(const RSequence& r);
RSequence rsequence_from_json(std::string_view json_text);

}  // namespace ultradist
