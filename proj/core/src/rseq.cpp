#include "ultradist/rseq.hpp"

#include "ultradist/format.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ultradist {

RSequence::RSequence(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("RSequence: empty sequence");
  if (values_.front() != 1.0) throw std::invalid_argument("RSequence: r_0 must equal 1");
  for (std::size_t p = 0; p < values_.size(); ++p) {
    if (!std::isfinite(values_[p])) throw std::invalid_argument("RSequence: entries must be finite");
    if (p > 0 && values_[p] < values_[p - 1])
      throw std::invalid_argument("RSequence: entries must be nondecreasing (r_" + std::to_string(p) +
                                  " < r_" + std::to_string(p - 1) + ")");
  }
}

RSequence linear_rsequence(double c, std::size_t horizon) {
  if (!(c >= 1.0)) throw std::invalid_argument("linear_rsequence: slope must be >= 1");
  std::vector<double> v(horizon + 1);
  v[0] = 1.0;
  for (std::size_t p = 1; p <= horizon; ++p) v[p] = c * static_cast<double>(p);
  return RSequence(std::move(v));
}

RSequence power_rsequence(double e, std::size_t horizon) {
  if (!(e > 0.0)) throw std::invalid_argument("power_rsequence: exponent must be > 0");
  std::vector<double> v(horizon + 1);
  v[0] = 1.0;
  for (std::size_t p = 1; p <= horizon; ++p) v[p] = std::pow(static_cast<double>(p) + 1.0, e);
  return RSequence(std::move(v));
}

ProductSequence::ProductSequence(const RSequence& r) : log_values_(r.horizon() + 1) {
  double acc = 0.0;  // log r_0 = 0
  log_values_[0] = 0.0;
  for (std::size_t p = 1; p <= r.horizon(); ++p) {
    acc += std::log(r[p]);
    log_values_[p] = acc;
  }
}

double ProductSequence::value(std::size_t p) const {
  const double lg = log_values_.at(p);
  return lg > 709.0 ? HUGE_VAL : std::exp(lg);
}

ProductSequence product_sequence(const RSequence& r) { return ProductSequence(r); }

RSequence scale(const RSequence& r, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("scale: lambda must be > 0");
  if (lambda < 1.0 && r.horizon() >= 1 && !(r[1] > 1.0 / lambda))
    throw std::invalid_argument("scale: lambda < 1 requires r_1 > 1/lambda");
  std::vector<double> v(r.values().begin(), r.values().end());
  for (std::size_t p = 1; p < v.size(); ++p) v[p] *= lambda;
  return RSequence(std::move(v));
}

PrecedesReport precedes(const RSequence& s, const RSequence& r, double threshold) {
  if (s.horizon() != r.horizon()) throw std::invalid_argument("precedes: sequences must share the horizon");
  PrecedesReport out;
  out.dominated = true;
  for (std::size_t p = 0; p <= s.horizon(); ++p)
    if (s[p] > r[p]) out.dominated = false;
  out.ratio_at_horizon = r[r.horizon()] / s[s.horizon()];
  out.holds = out.dominated && out.ratio_at_horizon >= threshold;
  return out;
}

RSequence tail_shift(const RSequence& r, std::size_t p0) {
  if (p0 >= r.horizon()) throw std::invalid_argument("tail_shift: p0 must be below the horizon");
  std::vector<double> v;
  v.reserve(r.horizon() - p0 + 1);
  v.push_back(1.0);
  for (std::size_t p = 1 + p0; p <= r.horizon(); ++p) v.push_back(r[p]);
  return RSequence(std::move(v));
}

std::size_t minimal_tail_shift(const RSequence& r, double c) {
  // Nondecreasing, so the shifted tail exceeds c iff its first entry does.
  for (std::size_t p0 = 0; p0 < r.horizon(); ++p0)
    if (r[p0 + 1] > c) return p0;
  throw std::invalid_argument("minimal_tail_shift: no entry exceeds the bound on this prefix");
}

namespace {

KomatsuSupremum sup_over_products(std::span<const double> a, const ProductSequence& R) {
  KomatsuSupremum out;
  double best = -HUGE_VAL;
  bool any = false;
  for (std::size_t p = 0; p < a.size(); ++p) {
    if (a[p] == 0.0) continue;
    const double lg = std::log(a[p]) - R.log_value(p);
    if (!any || lg > best) {
      best = lg;
      out.argmax_p = p;
      any = true;
    }
  }
  out.value = any ? std::exp(best) : 0.0;
  out.interior = !any || out.argmax_p + 1 < a.size();
  return out;
}

void require_nonnegative(std::span<const double> a) {
  if (a.empty()) throw std::invalid_argument("Komatsu checks need a nonempty sequence");
  for (double x : a)
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("Komatsu checks need finite a_p >= 0");
}

}  // namespace

KomatsuL1Report komatsu_check_l1(std::span<const double> a, double h, std::span<const RSequence> r_samples) {
  require_nonnegative(a);
  if (!(h > 0.0)) throw std::invalid_argument("komatsu_check_l1: h must be > 0");
  KomatsuL1Report out;
  double best = -HUGE_VAL;
  bool any = false;
  for (std::size_t p = 0; p < a.size(); ++p) {
    if (a[p] == 0.0) continue;
    const double lg = std::log(a[p]) - static_cast<double>(p) * std::log(h);
    if (!any || lg > best) {
      best = lg;
      out.growth_argmax = p;
      any = true;
    }
  }
  out.growth_constant = any ? std::exp(best) : 0.0;
  for (const auto& r : r_samples) {
    if (r.horizon() + 1 != a.size()) throw std::invalid_argument("komatsu_check_l1: horizons differ");
    out.samples.push_back(sup_over_products(a, ProductSequence(r)));
  }
  return out;
}

KomatsuWitness komatsu_witness(std::span<const double> a) {
  require_nonnegative(a);
  const std::size_t P = a.size() - 1;

  // log s_p = max_{q in [p, P]} log(a_q) / q, -inf when all those a_q vanish.
  std::vector<double> log_s(P + 1, -HUGE_VAL);
  for (std::size_t p = P; p >= 1; --p) {
    const double here = a[p] > 0.0 ? std::log(a[p]) / static_cast<double>(p) : -HUGE_VAL;
    log_s[p] = p == P ? here : std::max(here, log_s[p + 1]);
  }

  std::vector<double> r(P + 1);
  r[0] = 1.0;
  for (std::size_t p = 1; p <= P; ++p) {
    const double dp = static_cast<double>(p);
    const double grow = std::isfinite(log_s[p]) ? dp * std::exp(log_s[p]) : 0.0;
    r[p] = std::max({r[p - 1], std::sqrt(dp), grow});
  }

  RSequence seq(std::move(r));
  KomatsuWitness out{seq, sup_over_products(a, ProductSequence(seq)), false};
  out.hypothesis_warning = P >= 1 && a[P] > 0.0 && std::log(a[P]) / static_cast<double>(P) > 0.0;
  return out;
}

std::string rsequence_to_json(const RSequence& r) {
  nlohmann::json arr = nlohmann::json::array();
  for (double v : r.values()) arr.push_back(format_double(v));
  return arr.dump();
}

RSequence rsequence_from_json(std::string_view json_text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("r-sequence JSON: ") + e.what());
  }
  if (!arr.is_array()) throw std::invalid_argument("r-sequence JSON must be an array");
  std::vector<double> v;
  for (const auto& x : arr) {
    if (x.is_string()) {
      const auto s = x.get<std::string>();
      std::size_t used = 0;
      double d = 0.0;
      try {
        d = std::stod(s, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != s.size()) throw std::invalid_argument("r-sequence JSON: bad number '" + s + "'");
      v.push_back(d);
    } else if (x.is_number()) {
      v.push_back(x.get<double>());
    } else {
      throw std::invalid_argument("r-sequence JSON entries must be numbers or decimal strings");
    }
  }
  return RSequence(std::move(v));
}

}  // namespace ultradist
