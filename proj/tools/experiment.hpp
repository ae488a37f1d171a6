#pragma once

#include "config.hpp"

#include <ultradist/integrability.hpp>
#include <ultradist/weights.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace ultradist::cli {

/// "gevrey:s" or "file:path" (JSON array of decimal strings).
WeightSequence parse_weights_spec(const std::string& spec, std::size_t horizon);
/// "linear:c", "power:e", "list:1,2,3" or "file:path" (JSON array).
RSequence parse_rseq_spec(const std::string& spec, std::size_t horizon);
/// Preset names gaussian, constant, delta, delta_prime, exploding:J, or the
/// atom/density grammar.
Ultradistribution parse_distribution_spec(const std::string& spec);

struct Experiment {
  std::string name;
  std::string distribution_spec;
  Ultradistribution distribution;
  HarnessConfig harness;
  std::string json_path;
  std::string csv_path;
};

/// Reads every section of an experiment config; throws ConfigError with the
/// offending line on any problem.
Experiment load_experiment(const std::string& path, std::optional<std::uint64_t> seed_override);

/// Runs the harness and writes both artifacts under out_dir. Returns the
/// process exit status (0, or 3 after a numeric failure).
int run_experiment(const Experiment& exp, const std::string& out_dir, bool quiet);

}  // namespace ultradist::cli
