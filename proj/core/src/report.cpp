#include "ultradist/report.hpp"

#include "ultradist/format.hpp"

#include <json.hpp>

#include <cmath>
#include <set>

namespace ultradist {

using Json = nlohmann::ordered_json;

namespace {

// Non-finite doubles have no JSON literal; they are written as strings.
Json num(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

Json nums(std::span<const double> xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(num(x));
  return a;
}

Json interval(const Interval& i) { return Json::array({num(i.lo), num(i.hi)}); }

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

void render(const Json& j, int level, std::string& out) {
  const std::string pad(2 * static_cast<std::size_t>(level + 1), ' ');
  const std::string close(2 * static_cast<std::size_t>(level), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += ": ";
        render(it.value(), level + 1, out);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), is_scalar);
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          render(j[i], level + 1, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        render(j[i], level + 1, out);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

std::string finish(const Json& j) {
  std::string out;
  render(j, 0, out);
  out += '\n';
  return out;
}

Json witness_json(const ConditionWitness& w) {
  Json j;
  j["holds"] = w.holds;
  j["scope"] = w.scope;
  j["exact_arithmetic"] = w.exact_arithmetic;
  j["A"] = w.A ? num(*w.A) : Json();
  j["H"] = w.H ? num(*w.H) : Json();
  j["violation_count"] = w.violation_count;
  Json v = Json::array();
  for (const auto& x : w.violations) {
    Json e;
    e["p"] = x.p;
    e["q"] = x.q ? Json(*x.q) : Json();
    e["lhs"] = num(x.lhs);
    e["rhs"] = num(x.rhs);
    v.push_back(e);
  }
  j["violations"] = v;
  return j;
}

Json seminorm_json(const SeminormReport& r) {
  Json j;
  j["value"] = num(r.value);
  j["argmax_k"] = r.argmax_k;
  j["argmax_x"] = num(r.argmax_x);
  j["k_max"] = r.k_max;
  j["truncation_active"] = r.truncation_active;
  j["weights"] = r.weights;
  j["grid"] = {{"lo", num(r.grid_lo)}, {"hi", num(r.grid_hi)}, {"points", r.grid_points}};
  j["ratios"] = nums(r.ratios);
  return j;
}

Json unit_json(const UnitReport& r) {
  Json j;
  j["family"] = r.family;
  j["kind"] = to_string(r.kind);
  j["scope"] = UnitReport::scope;
  j["passes"] = r.passes;
  j["bounded"] = r.bounded;
  j["converges"] = r.converges;
  j["special_verified"] = r.special_verified ? Json(*r.special_verified) : Json();
  Json b = Json::array();
  for (const auto& e : r.boundedness) {
    Json x;
    x["r_index"] = e.r_index;
    x["sup"] = num(e.sup);
    x["argmax_n"] = e.argmax_n;
    x["bounded"] = e.bounded;
    x["norms"] = nums(e.norms);
    b.push_back(x);
  }
  j["boundedness"] = b;
  Json c = Json::array();
  for (const auto& e : r.convergence) {
    Json x;
    x["compact"] = interval(e.compact);
    x["h"] = num(e.h);
    x["converges"] = e.converges;
    x["settled_from"] = e.settled_from;
    x["exact_zero_from"] = e.exact_zero_from;
    x["q_values"] = nums(e.q_values);
    c.push_back(x);
  }
  j["convergence"] = c;
  Json s = Json::array();
  for (const auto& e : r.special) {
    Json x;
    x["compact"] = interval(e.compact);
    x["cover_index"] = e.cover_index;
    x["exact_from_cover"] = e.exact_from_cover;
    s.push_back(x);
  }
  j["special"] = s;
  return j;
}

Json series_json(const RatioSeries& s) {
  Json j;
  j["name"] = s.name;
  j["growing"] = s.growing;
  Json samples = Json::array();
  for (const auto& x : s.samples)
    samples.push_back(
        {{"parameter", num(x.parameter)}, {"pairing", num(x.pairing)}, {"norm", num(x.norm)}, {"ratio", num(x.ratio)}});
  j["samples"] = samples;
  return j;
}

Json ratio_json(const RatioTestResult& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["reason"] = r.reason;
  j["constant"] = num(r.constant);
  if (r.radius) j["radius"] = num(*r.radius);
  Json ladder = Json::array();
  for (const auto& l : r.ladder)
    ladder.push_back({{"size", l.size}, {"sup_ratio", num(l.sup_ratio)}, {"argmax", l.argmax}});
  j["ladder"] = ladder;
  Json w = Json::array();
  for (const auto& s : r.witnesses) w.push_back(series_json(s));
  j["witnesses"] = w;
  return j;
}

Json radius_json(const RadiusTestResult& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["reason"] = r.reason;
  j["radii"] = nums(r.radii);
  j["sup_ratio"] = nums(r.sup_ratio);
  j["growing_at_limit"] = r.growing_at_limit;
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"epsilon", num(row.epsilon)}, {"radius", row.radius ? num(*row.radius) : Json()}});
  j["K_of_epsilon"] = rows;
  return j;
}

Json trajectory_test_json(const TrajectoryTestResult& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["reason"] = r.reason;
  j["verified_families"] = r.verified_families;
  if (r.chain_dominated) j["chain_dominated"] = *r.chain_dominated;
  if (!r.perturbation_norms.empty()) j["perturbation_norms"] = nums(r.perturbation_norms);
  Json t = Json::array();
  for (const auto& x : r.trajectories) {
    Json e;
    e["family"] = x.family;
    e["kind"] = to_string(x.kind);
    e["perturbed"] = x.perturbed;
    e["tail_gap"] = num(x.tail_gap);
    e["cauchy"] = x.cauchy;
    e["diverging"] = x.diverging;
    e["last_value"] = x.values.empty() ? Json()
                                       : Json::array({num(x.values.back().real()), num(x.values.back().imag())});
    t.push_back(e);
  }
  j["trajectories"] = t;
  return j;
}

void csv_rows(const TrajectoryTestResult& r, std::set<std::string>& seen, std::string& out) {
  for (const auto& t : r.trajectories) {
    if (!seen.insert(t.family).second) continue;
    for (std::size_t n = 0; n < t.values.size(); ++n) {
      out += t.family;
      out += ',';
      out += std::to_string(n + 1);
      out += ',';
      out += format_double(t.values[n].real());
      out += ',';
      out += format_double(t.values[n].imag());
      out += '\n';
    }
  }
}

}  // namespace

std::string canonical_json(std::string_view json_text) { return finish(Json::parse(json_text)); }

std::string to_json(const ConditionWitness& w) { return finish(witness_json(w)); }
std::string to_json(const SeminormReport& r) { return finish(seminorm_json(r)); }

std::string to_json(const ProductInequalityReport& r) {
  Json j;
  j["holds"] = r.holds;
  j["lhs"] = num(r.lhs);
  j["rhs"] = num(r.rhs);
  j["product"] = seminorm_json(r.product);
  j["first_halved"] = seminorm_json(r.first);
  j["second_halved"] = seminorm_json(r.second);
  return finish(j);
}

std::string to_json(const CutoffEstimate& r) {
  Json j;
  j["constant"] = num(r.constant);
  j["argmax_corpus"] = r.argmax_corpus;
  j["argmax_l"] = num(r.argmax_l);
  j["ratios"] = nums(r.ratios);
  return finish(j);
}

std::string to_json(const UnitReport& r) { return finish(unit_json(r)); }

std::string to_json(const ConditionReport& r) {
  Json j;
  j["distribution"] = r.distribution;
  j["consistent"] = r.consistent;
  j["numeric_failures"] = r.numeric_failures;
  j["verdicts"] = {{"a", to_string(r.a.verdict)},
                   {"b", to_string(r.b.verdict)},
                   {"c", to_string(r.c.verdict)},
                   {"d", to_string(r.d.verdict)},
                   {"e", to_string(r.e.verdict)}};
  j["a"] = ratio_json(r.a);
  j["b"] = radius_json(r.b);
  j["c"] = trajectory_test_json(r.c);
  j["d"] = trajectory_test_json(r.d);
  j["e"] = ratio_json(r.e);
  j["errors"] = r.errors;
  return finish(j);
}

std::string to_json(const KomatsuWitness& w) {
  Json j;
  j["r"] = nums(w.r.values());
  j["sup_ratio"] = num(w.supremum.value);
  j["argmax_p"] = w.supremum.argmax_p;
  j["interior"] = w.supremum.interior;
  j["hypothesis_warning"] = w.hypothesis_warning;
  return finish(j);
}

std::string to_json(const PrecedesReport& r) {
  Json j;
  j["holds"] = r.holds;
  j["dominated"] = r.dominated;
  j["ratio_at_horizon"] = num(r.ratio_at_horizon);
  j["scope"] = PrecedesReport::scope;
  return finish(j);
}

std::string trajectories_csv(const ConditionReport& r) {
  std::string out = "family,n,value_re,value_im\n";
  std::set<std::string> seen;
  csv_rows(r.c, seen, out);
  csv_rows(r.d, seen, out);
  return out;
}

}  // namespace ultradist
