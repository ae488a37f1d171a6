#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ultradist {

namespace detail {
struct ExactWeights;
}

/// A finite prefix M_0..M_P of a weight sequence.
///
/// Values are kept in the log domain because Gevrey sequences overflow a
/// double long before the horizons used here (400! is ~1e868). Sequences
/// built from integers, rationals or Gevrey exponents with 2s integral also
/// carry an exact big-rational form that the condition checkers prefer.
class WeightSequence {
 public:
  /// Floating-point sequence. Requires values[0] == 1, all finite and > 0.
  static WeightSequence from_values(std::vector<double> values, std::string name = "custom");
  /// Floating-point sequence given by log M_p. Requires log_values[0] == 0.
  static WeightSequence from_log_values(std::vector<double> log_values, std::string name = "custom");
  /// Exact sequence from decimal or "p/q" strings; "1.5" parses as 3/2.
  static WeightSequence from_decimal_strings(std::span<const std::string> values,
                                             std::string name = "custom");

  std::size_t horizon() const noexcept { return log_values_.size() - 1; }
  std::size_t size() const noexcept { return log_values_.size(); }
  const std::string& name() const noexcept { return name_; }

  /// M_p as a double; +inf when it does not fit.
  double value(std::size_t p) const;
  double log_value(std::size_t p) const { return log_values_.at(p); }
  std::span<const double> log_values() const noexcept { return log_values_; }

  bool is_exact() const noexcept { return exact_ != nullptr; }
  const detail::ExactWeights* exact() const noexcept { return exact_.get(); }

  /// Exact values as decimal strings ("p/q" when not an integer); floats are
  /// written with 17 significant digits.
  std::vector<std::string> to_strings() const;

 private:
  friend WeightSequence gevrey(double s, std::size_t horizon);
  WeightSequence() = default;

  std::vector<double> log_values_;
  std::shared_ptr<const detail::ExactWeights> exact_;
  std::string name_;
};

/// M_p = (p!)^s for p = 0..horizon. Exact when 2s is an integer.
WeightSequence gevrey(double s, std::size_t horizon);

struct Violation {
  std::size_t p = 0;
  std::optional<std::size_t> q;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Outcome of one of the (M.1)-(M.3) checks at the sequence horizon.
struct ConditionWitness {
  bool holds = true;
  /// First violations found, capped at kMaxRecordedViolations.
  std::vector<Violation> violations;
  std::size_t violation_count = 0;
  std::optional<double> A;
  std::optional<double> H;
  bool exact_arithmetic = false;
  /// Strength of the verdict, e.g. "exact at horizon" or "necessary only".
  std::string scope;

  static constexpr std::size_t kMaxRecordedViolations = 32;
};

/// Relative slack used by floating-point checks.
inline constexpr double kWeightCheckSlack = 1e-12;

/// Logarithmic convexity M_p^2 <= M_{p-1} M_{p+1} for 1 <= p <= P-1.
ConditionWitness check_m1(const WeightSequence& w);

/// Stability under ultradifferential operators: M_p <= A H^p M_q M_{p-q}.
///
/// Scans h_grid in increasing order and accepts the first H whose ratio
/// supremum has stopped growing, i.e. the supremum over p <= P equals the
/// supremum over p <= P/2. A is that supremum.
ConditionWitness check_m2(const WeightSequence& w, std::span<const double> h_grid);

/// Strong non-quasianalyticity with the series truncated at the horizon:
/// sum_{p=q+1}^{P} M_{p-1}/M_p <= A q M_q / M_{q+1} for 1 <= q <= P/2.
/// A pass is only a necessary check; a violation is conclusive.
ConditionWitness check_m3(const WeightSequence& w, double A);

/// Every pair p + q <= P satisfies M_p M_q <= M_{p+q}. Exact when possible.
ConditionWitness check_submultiplicative(const WeightSequence& w);

struct AssociatedValue {
  double value = 0.0;
  std::size_t argmax_p = 0;
  /// The maximiser sits on the horizon, so the true supremum may be larger.
  bool truncated = false;
};

/// M(rho) = sup_p log+(rho^p / M_p) over the stored prefix.
AssociatedValue associated_function(const WeightSequence& w, double rho);

/// M_k := M_{|k|} for a multi-index k.
double multi_index_value(const WeightSequence& w, std::span<const std::size_t> k);

/// JSON array of decimal strings.
std::string weights_to_json(const WeightSequence& w);
WeightSequence weights_from_json(std::string_view json_text, std::string name = "file");

}  // namespace ultradist
