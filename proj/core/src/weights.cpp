#include "ultradist/weights.hpp"

#include "exact.hpp"
#include "ultradist/format.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace ultradist {

namespace detail {

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational form");
  return Rational(x);
}

Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return num / den;
  }

  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    auto exp_text = text.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc{} || ptr != exp_text.data() + exp_text.size())
      throw std::invalid_argument("bad exponent in '" + std::string(text) + "'");
  }

  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long fraction_digits = 0;
  bool seen_point = false;
  for (char c : mantissa) {
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++fraction_digits;
    } else {
      throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
    }
  }
  if (digits.empty()) throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");

  BigInt n(digits);
  long scale = exponent - fraction_digits;
  BigInt ten_pow = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::labs(scale)));
  Rational value = scale >= 0 ? Rational(n * ten_pow) : Rational(n, ten_pow);
  return negative ? Rational(-value) : value;
}

std::string rational_to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace {
double log_of_int(const BigInt& n) {
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, n.backend().data());
  return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}
}  // namespace

double log_of(const Rational& r) {
  if (r <= 0) throw std::domain_error("log of non-positive rational");
  return log_of_int(numerator(r)) - log_of_int(denominator(r));
}

double to_double(const Rational& r) {
  double lg = log_of(abs(r));
  if (lg > 709.0) return r > 0 ? HUGE_VAL : -HUGE_VAL;
  return r.convert_to<double>();
}

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace detail

using detail::Rational;

namespace {

void require_normalized(std::span<const double> log_values) {
  if (log_values.size() < 2) throw std::invalid_argument("weight sequence needs at least M_0 and M_1");
  if (log_values.front() != 0.0) throw std::invalid_argument("weight sequence must satisfy M_0 = 1");
  for (double v : log_values)
    if (!std::isfinite(v)) throw std::invalid_argument("weight sequence values must be positive and finite");
}

void record(ConditionWitness& w, Violation v) {
  w.holds = false;
  ++w.violation_count;
  if (w.violations.size() < ConditionWitness::kMaxRecordedViolations) w.violations.push_back(v);
}

double exp_or_inf(double lg) { return lg > 709.0 ? HUGE_VAL : std::exp(lg); }

}  // namespace

WeightSequence WeightSequence::from_values(std::vector<double> values, std::string name) {
  std::vector<double> logs;
  logs.reserve(values.size());
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument("weight sequence values must be positive and finite");
    logs.push_back(std::log(v));
  }
  return from_log_values(std::move(logs), std::move(name));
}

WeightSequence WeightSequence::from_log_values(std::vector<double> log_values, std::string name) {
  require_normalized(log_values);
  WeightSequence w;
  w.log_values_ = std::move(log_values);
  w.name_ = std::move(name);
  return w;
}

WeightSequence WeightSequence::from_decimal_strings(std::span<const std::string> values,
                                                    std::string name) {
  auto exact = std::make_shared<detail::ExactWeights>();
  exact->root = 1;
  std::vector<double> logs;
  for (const auto& text : values) {
    Rational r = detail::parse_rational(text);
    if (r <= 0) throw std::invalid_argument("weight sequence values must be positive: '" + text + "'");
    logs.push_back(detail::log_of(r));
    exact->powered.push_back(std::move(r));
  }
  if (!exact->powered.empty() && exact->powered.front() != 1)
    throw std::invalid_argument("weight sequence must satisfy M_0 = 1");
  if (!logs.empty()) logs.front() = 0.0;
  require_normalized(logs);
  WeightSequence w;
  w.log_values_ = std::move(logs);
  w.exact_ = std::move(exact);
  w.name_ = std::move(name);
  return w;
}

double WeightSequence::value(std::size_t p) const { return exp_or_inf(log_values_.at(p)); }

std::vector<std::string> WeightSequence::to_strings() const {
  std::vector<std::string> out;
  out.reserve(size());
  for (std::size_t p = 0; p < size(); ++p) {
    if (exact_ && exact_->root == 1)
      out.push_back(detail::rational_to_string(exact_->powered[p]));
    else
      out.push_back(format_double(value(p)));
  }
  return out;
}

WeightSequence gevrey(double s, std::size_t horizon) {
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("gevrey: exponent s must be > 0");
  if (horizon < 4) throw std::invalid_argument("gevrey: horizon must be >= 4");

  WeightSequence w;
  w.name_ = "gevrey:" + format_double(s);
  w.log_values_.resize(horizon + 1);
  for (std::size_t p = 0; p <= horizon; ++p)
    w.log_values_[p] = s * std::lgamma(static_cast<double>(p) + 1.0);

  const double twice = 2.0 * s;
  if (twice == std::round(twice) && twice <= 64.0) {
    auto exact = std::make_shared<detail::ExactWeights>();
    const auto two_s = static_cast<unsigned>(twice);
    exact->root = (two_s % 2 == 0) ? 1 : 2;
    const unsigned power = exact->root == 1 ? two_s / 2 : two_s;
    detail::BigInt fact = 1;
    exact->powered.reserve(horizon + 1);
    for (std::size_t p = 0; p <= horizon; ++p) {
      if (p > 1) fact *= static_cast<unsigned>(p);
      exact->powered.emplace_back(boost::multiprecision::pow(fact, power));
    }
    w.exact_ = std::move(exact);
  }
  return w;
}

ConditionWitness check_m1(const WeightSequence& w) {
  ConditionWitness out;
  out.scope = "exact at horizon";
  const std::size_t P = w.horizon();
  if (const auto* ex = w.exact()) {
    out.exact_arithmetic = true;
    const auto& Q = ex->powered;
    for (std::size_t p = 1; p + 1 <= P; ++p) {
      if (Q[p] * Q[p] > Q[p - 1] * Q[p + 1])
        record(out, {p, std::nullopt, exp_or_inf(2.0 * w.log_value(p)),
                     exp_or_inf(w.log_value(p - 1) + w.log_value(p + 1))});
    }
    return out;
  }
  const double slack = std::log1p(kWeightCheckSlack);
  for (std::size_t p = 1; p + 1 <= P; ++p) {
    const double lhs = 2.0 * w.log_value(p);
    const double rhs = w.log_value(p - 1) + w.log_value(p + 1);
    if (lhs > rhs + slack) record(out, {p, std::nullopt, exp_or_inf(lhs), exp_or_inf(rhs)});
  }
  return out;
}

ConditionWitness check_m2(const WeightSequence& w, std::span<const double> h_grid) {
  if (h_grid.empty()) throw std::invalid_argument("check_m2: H grid must be nonempty");
  std::vector<double> grid(h_grid.begin(), h_grid.end());
  for (double h : grid)
    if (!(h >= 1.0) || !std::isfinite(h)) throw std::invalid_argument("check_m2: H grid entries must be >= 1");
  std::sort(grid.begin(), grid.end());

  const std::size_t P = w.horizon();
  const std::size_t half = P / 2;
  ConditionWitness out;
  out.scope = "at horizon: supremum over p <= P equals supremum over p <= P/2";

  if (const auto* ex = w.exact()) {
    out.exact_arithmetic = true;
    const auto& Q = ex->powered;
    // min_q Q_q Q_{p-q} does not depend on H.
    std::vector<Rational> inner(P + 1);
    for (std::size_t p = 0; p <= P; ++p) {
      Rational best = Q[0] * Q[p];
      for (std::size_t q = 1; q <= p / 2; ++q) {
        Rational cand = Q[q] * Q[p - q];
        if (cand < best) best = std::move(cand);
      }
      inner[p] = Q[p] / best;
    }
    for (double h : grid) {
      const Rational hr = detail::rational_from_double(h);
      Rational h_pow = 1;
      Rational h_step = 1;
      for (unsigned i = 0; i < ex->root; ++i) h_step *= hr;
      Rational sup_half = 0, sup_full = 0;
      for (std::size_t p = 0; p <= P; ++p) {
        Rational ratio = inner[p] / h_pow;
        if (ratio > sup_full) sup_full = ratio;
        if (p <= half && ratio > sup_half) sup_half = ratio;
        h_pow *= h_step;
      }
      if (sup_full == sup_half) {
        out.holds = true;
        out.H = h;
        out.A = std::exp(detail::log_of(sup_full) / ex->root);
        return out;
      }
    }
    out.holds = false;
    return out;
  }

  const double slack = std::log1p(kWeightCheckSlack);
  for (double h : grid) {
    const double log_h = std::log(h);
    double sup_half = -HUGE_VAL, sup_full = -HUGE_VAL;
    for (std::size_t p = 0; p <= P; ++p) {
      double best = -HUGE_VAL;
      for (std::size_t q = 0; q <= p; ++q)
        best = std::max(best, w.log_value(p) - w.log_value(q) - w.log_value(p - q));
      const double ratio = best - static_cast<double>(p) * log_h;
      sup_full = std::max(sup_full, ratio);
      if (p <= half) sup_half = std::max(sup_half, ratio);
    }
    if (sup_full <= sup_half + slack) {
      out.holds = true;
      out.H = h;
      out.A = std::exp(sup_full);
      return out;
    }
  }
  out.holds = false;
  return out;
}

ConditionWitness check_m3(const WeightSequence& w, double A) {
  if (!(A > 0.0) || !std::isfinite(A)) throw std::invalid_argument("check_m3: A must be > 0");
  const std::size_t P = w.horizon();
  ConditionWitness out;
  out.A = A;

  const auto* ex = w.exact();
  if (ex && ex->root == 1) {
    out.exact_arithmetic = true;
    const auto& Q = ex->powered;
    const Rational a = detail::rational_from_double(A);
    // suffix[q] = sum_{p=q+1}^{P} Q_{p-1}/Q_p
    std::vector<Rational> suffix(P + 1);
    suffix[P] = 0;
    for (std::size_t q = P; q-- > 0;) suffix[q] = suffix[q + 1] + Q[q] / Q[q + 1];
    for (std::size_t q = 1; q <= P / 2; ++q) {
      Rational rhs = a * static_cast<unsigned>(q) * Q[q] / Q[q + 1];
      if (suffix[q] > rhs) record(out, {q, std::nullopt, detail::to_double(suffix[q]), detail::to_double(rhs)});
    }
  } else {
    std::vector<double> suffix(P + 1, 0.0);
    for (std::size_t q = P; q-- > 0;)
      suffix[q] = suffix[q + 1] + std::exp(w.log_value(q) - w.log_value(q + 1));
    for (std::size_t q = 1; q <= P / 2; ++q) {
      const double rhs = A * static_cast<double>(q) * std::exp(w.log_value(q) - w.log_value(q + 1));
      if (suffix[q] > rhs * (1.0 + kWeightCheckSlack)) record(out, {q, std::nullopt, suffix[q], rhs});
    }
  }
  out.scope = out.holds ? "necessary only: truncated sums at horizon" : "conclusive violation";
  return out;
}

ConditionWitness check_submultiplicative(const WeightSequence& w) {
  ConditionWitness out;
  out.scope = "exact at horizon";
  const std::size_t P = w.horizon();
  if (const auto* ex = w.exact()) {
    out.exact_arithmetic = true;
    const auto& Q = ex->powered;
    for (std::size_t p = 0; p <= P; ++p)
      for (std::size_t q = 0; p + q <= P; ++q)
        if (Q[p] * Q[q] > Q[p + q])
          record(out, {p, q, exp_or_inf(w.log_value(p) + w.log_value(q)), w.value(p + q)});
    return out;
  }
  const double slack = std::log1p(kWeightCheckSlack);
  for (std::size_t p = 0; p <= P; ++p)
    for (std::size_t q = 0; p + q <= P; ++q) {
      const double lhs = w.log_value(p) + w.log_value(q);
      if (lhs > w.log_value(p + q) + slack)
        record(out, {p, q, exp_or_inf(lhs), w.value(p + q)});
    }
  return out;
}

AssociatedValue associated_function(const WeightSequence& w, double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("associated_function: rho must be > 0");
  const double log_rho = std::log(rho);
  AssociatedValue out;
  double best = 0.0;  // p = 0 contributes log+(1) = 0
  for (std::size_t p = 1; p <= w.horizon(); ++p) {
    const double v = static_cast<double>(p) * log_rho - w.log_value(p);
    if (v > best) {
      best = v;
      out.argmax_p = p;
    }
  }
  out.value = best;
  out.truncated = out.argmax_p == w.horizon();
  return out;
}

double multi_index_value(const WeightSequence& w, std::span<const std::size_t> k) {
  std::size_t order = 0;
  for (auto ki : k) order += ki;
  if (order > w.horizon()) throw std::out_of_range("multi_index_value: |k| exceeds the horizon");
  return w.value(order);
}

std::string weights_to_json(const WeightSequence& w) {
  nlohmann::json arr = nlohmann::json::array();
  for (auto& s : w.to_strings()) arr.push_back(s);
  return arr.dump();
}

WeightSequence weights_from_json(std::string_view json_text, std::string name) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("weights JSON: ") + e.what());
  }
  if (!arr.is_array()) throw std::invalid_argument("weights JSON must be an array");
  std::vector<std::string> values;
  for (const auto& v : arr) {
    if (v.is_string())
      values.push_back(v.get<std::string>());
    else if (v.is_number_integer())
      values.push_back(std::to_string(v.get<long long>()));
    else if (v.is_number())
      values.push_back(format_double(v.get<double>()));
    else
      throw std::invalid_argument("weights JSON entries must be decimal strings or numbers");
  }
  return WeightSequence::from_decimal_strings(values, std::move(name));
}

}  // namespace ultradist
