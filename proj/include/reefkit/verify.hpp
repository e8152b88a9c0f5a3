#pragma once

// Batch self-checks behind `reefkit verify`.
//
// The identities suite runs exact (rational-mode) checks and a failure there
// is a bug. The statistics suite measures sieve-scale quantities: the fixed
// bands are asserted, and each named value is compared against a pinned
// baseline when one exists (report-only otherwise).

#include <map>
#include <string>

#include "reefkit/config.hpp"
#include "reefkit/report.hpp"

namespace reefkit {

class SieveTables;

DiagnosticsReport verify_identities(const ExperimentConfig& config);

/// Sieve size the statistics suite needs.
natural statistics_sieve_limit();

/// Named sieve statistics (lambda_hat.*, pnt.*, hl.*, singular.*).
std::map<std::string, double> collect_statistics(const SieveTables& sieve);

/// Bands plus comparison of collect_statistics() against baselines:
/// config.exact_tolerance for the plain fixed-order sums (lambda_hat.*,
/// singular.*), config.sieve_tolerance for the rest.
DiagnosticsReport verify_statistics(const ExperimentConfig& config, const SieveTables& sieve,
                                    const std::map<std::string, double>& baselines);

}  // namespace reefkit
