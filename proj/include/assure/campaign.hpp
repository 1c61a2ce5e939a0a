/* Copyright 2026 The Assure Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Monte Carlo fault-injection campaigns over the ledger simulator and the
// evidence reports that assurance cases link to.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "assure/eov_sim.hpp"
#include "assure/policy_analysis.hpp"

namespace assure {

inline constexpr const char* kToolVersion = "assure 1.0.0";

/// Per-endorser probability of each faulty mode; the remainder is Honest.
using FaultProbabilities = std::map<Fault, double>;

/// Throws Error(BadProbability) for Honest entries, values outside [0, 1] or
/// a total above 1.
void validate_probabilities(const FaultProbabilities& probabilities);

/// Behavior of every registered endorser in run `run`, drawn from the
/// counter-based stream (seed, run) in sorted identity order.
FaultLabeling draw_labeling(const std::set<std::string>& endorsers, const FaultProbabilities& probabilities,
                            std::uint64_t seed, std::uint64_t run);

/// Scenario with one valid and one invalid proposal submitted at step 0 to
/// the policy's identities, three orderers and two correct peers.
sim::ScenarioConfig default_campaign_scenario(const EndorsementPolicy& policy);

struct CampaignReport {
  std::string policy;
  std::string policy_digest;
  std::string config_digest;
  std::int64_t n_runs = 0;
  std::uint64_t seed = 0;
  FaultProbabilities fault_probabilities;
  std::int64_t fraud_successes = 0;
  std::int64_t censorship_successes = 0;
  double fraud_success_rate = 0.0;
  double censorship_success_rate = 0.0;
  double fraud_ci95_halfwidth = 0.0;
  double censorship_ci95_halfwidth = 0.0;

  bool operator==(const CampaignReport&) const = default;
};

/// 1.96 * sqrt(r (1 - r) / n).
double ci95_halfwidth(double rate, std::int64_t n_runs);

/// Run i draws every endorser's behavior from (seed, i), simulates, and
/// counts a fraud success when an invalid transaction got registered and a
/// censorship success when a valid one was stopped at endorsement. Runs are
/// spread over OpenMP threads; the result does not depend on the schedule.
/// Throws Error(ConfigInvalid) or Error(BadProbability).
CampaignReport monte_carlo_campaign(const sim::ScenarioConfig& base, const FaultProbabilities& probabilities,
                                    std::int64_t n_runs, std::uint64_t seed);

/// Single-threaded reference for monte_carlo_campaign.
CampaignReport monte_carlo_campaign_serial(const sim::ScenarioConfig& base, const FaultProbabilities& probabilities,
                                           std::int64_t n_runs, std::uint64_t seed);

struct ToleranceAnalysis {
  std::string policy;
  std::string policy_digest;
  int fraud_tolerance = 0;
  int censorship_tolerance = 0;
  std::vector<SignerSet> min_satisfying;
  std::vector<SignerSet> min_blocking;
};

ToleranceAnalysis analyze_tolerance(const EndorsementPolicy& policy);

/// Canonical sorted-key documents.
std::string to_text(const CampaignReport& report);
std::string to_text(const ToleranceAnalysis& analysis);

struct EmittedReport {
  std::size_t bytes = 0;
  std::string digest;
};

/// Writes the canonical document and returns its size and SHA-256.
/// Throws Error(IoFailure).
EmittedReport emit_evidence_report(const CampaignReport& report, const std::string& path);
EmittedReport emit_evidence_report(const ToleranceAnalysis& analysis, const std::string& path);

}  // namespace assure
