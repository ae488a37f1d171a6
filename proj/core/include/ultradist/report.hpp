#pragma once

#include "ultradist/integrability.hpp"
#include "ultradist/rseq.hpp"
#include "ultradist/seminorms.hpp"
#include "ultradist/units.hpp"
#include "ultradist/weights.hpp"

#include <string>
#include <string_view>

namespace ultradist {

/// Re-render any JSON text in the fixed report layout: members in their
/// given order, two-space indentation, scalar arrays on one line, numbers
/// with 17 significant digits. Identical input values give identical bytes.
std::string canonical_json(std::string_view json_text);

// Every to_json below returns canonical JSON for one report object.
std::string to_json(const ConditionWitness& w);
std::string to_json(const SeminormReport& r);
std::string to_json(const ProductInequalityReport& r);
std::string to_json(const CutoffEstimate& r);
std::string to_json(const UnitReport& r);
std::string to_json(const ConditionReport& r);
std::string to_json(const KomatsuWitness& w);
std::string to_json(const PrecedesReport& r);

/// One row per trajectory value of (c) and (d): family,n,value_re,value_im.
/// Perturbed families carry their "+psi" suffix.
std::string trajectories_csv(const ConditionReport& r);

}  // namespace ultradist
