#pragma once

// Experiment configuration: a flat, sectioned key = value text format.
//
//   # comment            (also "; comment")
//   [sieve]
//   limit = 2000000
//   [arithmetic]
//   rational_mode = true
//   lcm_budget = 1000000
//   stabilization_threshold = 1e-12
//   [run]
//   seed = 20170905
//   output_dir = .
//   delta = 0.25
//   [tolerance]
//   exact = 1e-09
//   sieve = 0.001
//   [baselines]
//   <check-name> = <real>
//
// Keys are case-sensitive; unknown sections or keys are errors.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "reefkit/arith_core.hpp"

namespace reefkit {

struct ExperimentConfig {
  natural sieve_limit = 2'000'000;
  bool rational_mode = true;
  natural lcm_budget = 1'000'000;
  double stabilization_threshold = 1e-12;
  std::uint64_t random_seed = 20170905;
  std::filesystem::path output_dir = ".";
  double delta = 0.25;
  double exact_tolerance = 1e-9;   // relative, for reals derived from exact-mode sums
  double sieve_tolerance = 1e-3;   // relative, for sieve statistics
  std::map<std::string, double> pinned_baselines;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

std::string serialize_config(const ExperimentConfig& c);

/// Throws ConfigError with the offending line number.
ExperimentConfig parse_config(std::string_view text);

/// Throws ConfigError if unreadable.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Writes only the [baselines] section.
std::string serialize_baselines(const std::map<std::string, double>& baselines);

}  // namespace reefkit
