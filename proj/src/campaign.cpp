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

#include "assure/campaign.hpp"

#include <cmath>

#include <json.hpp>

#include "assure/digest.hpp"
#include "assure/error.hpp"
#include "assure/rng.hpp"
#include "assure/scenario_io.hpp"

namespace assure {

using nlohmann::json;

void validate_probabilities(const FaultProbabilities& probabilities) {
  double total = 0.0;
  for (const auto& [fault, p] : probabilities) {
    if (fault == Fault::Honest) throw Error(ErrorCode::BadProbability, "Honest is the implicit remainder");
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::BadProbability, std::string(to_string(fault)) + " probability outside [0, 1]");
    }
    total += p;
  }
  if (total > 1.0 + 1e-12) throw Error(ErrorCode::BadProbability, "fault probabilities sum above 1");
}

FaultLabeling draw_labeling(const std::set<std::string>& endorsers, const FaultProbabilities& probabilities,
                            std::uint64_t seed, std::uint64_t run) {
  auto prob = [&](Fault f) {
    auto it = probabilities.find(f);
    return it == probabilities.end() ? 0.0 : it->second;
  };
  const double fraud = prob(Fault::Fraudulent);
  const double censor = fraud + prob(Fault::Censoring);
  const double crash = censor + prob(Fault::Crashed);

  CounterRng rng(seed, run);
  FaultLabeling labeling;
  for (const auto& id : endorsers) {
    const double u = rng.uniform();
    Fault f = Fault::Honest;
    if (u < fraud) f = Fault::Fraudulent;
    else if (u < censor) f = Fault::Censoring;
    else if (u < crash) f = Fault::Crashed;
    labeling[id] = f;
  }
  return labeling;
}

sim::ScenarioConfig default_campaign_scenario(const EndorsementPolicy& policy) {
  sim::ScenarioConfig config;
  config.policy = policy;
  config.msp_endorsers = identities(policy);
  config.msp_emitters = {"client"};
  config.orderers = 3;
  config.batch_size = 10;
  config.peers = {sim::PeerSpec{}, sim::PeerSpec{}};
  config.horizon = 4;
  config.workload.push_back({0, {"valid-tx", "client", 1, {sim::SetOp{"asset", 1}, true}}});
  config.workload.push_back({0, {"invalid-tx", "client", 2, {sim::SetOp{"forged", 1}, false}}});
  return config;
}

double ci95_halfwidth(double rate, std::int64_t n_runs) {
  if (n_runs <= 0) return 0.0;
  return 1.96 * std::sqrt(rate * (1.0 - rate) / static_cast<double>(n_runs));
}

namespace {

sim::BehaviorMode mode_for(Fault f) {
  switch (f) {
    case Fault::Fraudulent: return sim::BehaviorMode::Fraudulent;
    case Fault::Censoring: return sim::BehaviorMode::Censoring;
    case Fault::Crashed: return sim::BehaviorMode::Crashed;
    default: return sim::BehaviorMode::Honest;
  }
}

struct RunOutcome {
  bool fraud = false;
  bool censorship = false;
};

RunOutcome run_once(sim::ScenarioConfig config, const FaultProbabilities& probabilities, std::uint64_t seed,
                    std::uint64_t run) {
  config.endorser_behaviors.clear();
  for (const auto& [id, fault] : draw_labeling(config.msp_endorsers, probabilities, seed, run)) {
    if (fault != Fault::Honest) config.endorser_behaviors[id] = sim::EndorserBehavior{mode_for(fault), 0, 0};
  }
  const auto result = sim::simulate(config);
  RunOutcome outcome;
  outcome.fraud = result.report.feared_event_counts.at(FearedEvent::InvalidAccepted) > 0;
  for (std::size_t i = 0; i < result.report.outcomes.size(); ++i) {
    const auto o = result.report.outcomes[i].second;
    const bool stopped = o == sim::TxOutcome::EndorsementFailed || o == sim::TxOutcome::AwaitingEndorsement;
    if (stopped && result.trace.ground_truth[i].second) outcome.censorship = true;
  }
  return outcome;
}

CampaignReport prepare(const sim::ScenarioConfig& base, const FaultProbabilities& probabilities,
                       std::int64_t n_runs, std::uint64_t seed) {
  validate_probabilities(probabilities);
  if (n_runs < 1) throw Error(ErrorCode::ConfigInvalid, "n_runs must be >= 1");
  sim::validate_config(base);
  CampaignReport report;
  report.policy = to_string(base.policy);
  report.policy_digest = policy_digest(base.policy);
  report.config_digest = sha256_hex(scenario_to_text(base));
  report.n_runs = n_runs;
  report.seed = seed;
  for (auto f : {Fault::Fraudulent, Fault::Censoring, Fault::Crashed}) {
    auto it = probabilities.find(f);
    report.fault_probabilities[f] = it == probabilities.end() ? 0.0 : it->second;
  }
  return report;
}

void finish(CampaignReport& report, std::int64_t fraud, std::int64_t censorship) {
  report.fraud_successes = fraud;
  report.censorship_successes = censorship;
  const auto n = static_cast<double>(report.n_runs);
  report.fraud_success_rate = static_cast<double>(fraud) / n;
  report.censorship_success_rate = static_cast<double>(censorship) / n;
  report.fraud_ci95_halfwidth = ci95_halfwidth(report.fraud_success_rate, report.n_runs);
  report.censorship_ci95_halfwidth = ci95_halfwidth(report.censorship_success_rate, report.n_runs);
}

}  // namespace

CampaignReport monte_carlo_campaign(const sim::ScenarioConfig& base, const FaultProbabilities& probabilities,
                                    std::int64_t n_runs, std::uint64_t seed) {
  CampaignReport report = prepare(base, probabilities, n_runs, seed);
  std::int64_t fraud = 0;
  std::int64_t censorship = 0;
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : fraud, censorship)
  for (std::int64_t i = 0; i < n_runs; ++i) {
    const auto outcome = run_once(base, probabilities, seed, static_cast<std::uint64_t>(i));
    fraud += outcome.fraud ? 1 : 0;
    censorship += outcome.censorship ? 1 : 0;
  }
  finish(report, fraud, censorship);
  return report;
}

CampaignReport monte_carlo_campaign_serial(const sim::ScenarioConfig& base, const FaultProbabilities& probabilities,
                                           std::int64_t n_runs, std::uint64_t seed) {
  CampaignReport report = prepare(base, probabilities, n_runs, seed);
  std::int64_t fraud = 0;
  std::int64_t censorship = 0;
  for (std::int64_t i = 0; i < n_runs; ++i) {
    const auto outcome = run_once(base, probabilities, seed, static_cast<std::uint64_t>(i));
    fraud += outcome.fraud ? 1 : 0;
    censorship += outcome.censorship ? 1 : 0;
  }
  finish(report, fraud, censorship);
  return report;
}

ToleranceAnalysis analyze_tolerance(const EndorsementPolicy& policy) {
  ToleranceAnalysis a;
  a.policy = to_string(policy);
  a.policy_digest = policy_digest(policy);
  a.fraud_tolerance = fraud_tolerance(policy);
  a.censorship_tolerance = censorship_tolerance(policy);
  a.min_satisfying = min_satisfying_sets(policy);
  a.min_blocking = min_blocking_sets(policy);
  return a;
}

std::string to_text(const CampaignReport& report) {
  json j;
  j["censorship_ci95_halfwidth"] = report.censorship_ci95_halfwidth;
  j["censorship_success_rate"] = report.censorship_success_rate;
  j["censorship_successes"] = report.censorship_successes;
  j["config_digest"] = report.config_digest;
  j["fault_probabilities"] = json::object();
  for (const auto& [fault, p] : report.fault_probabilities) {
    j["fault_probabilities"][std::string(to_string(fault))] = p;
  }
  j["fraud_ci95_halfwidth"] = report.fraud_ci95_halfwidth;
  j["fraud_success_rate"] = report.fraud_success_rate;
  j["fraud_successes"] = report.fraud_successes;
  j["kind"] = "campaign";
  j["n_runs"] = report.n_runs;
  j["policy"] = report.policy;
  j["policy_digest"] = report.policy_digest;
  j["seed"] = report.seed;
  j["tool_version"] = kToolVersion;
  return j.dump(2) + "\n";
}

std::string to_text(const ToleranceAnalysis& analysis) {
  json j;
  j["censorship_tolerance"] = analysis.censorship_tolerance;
  j["fraud_tolerance"] = analysis.fraud_tolerance;
  j["kind"] = "tolerance";
  j["min_blocking_sets"] = analysis.min_blocking;
  j["min_satisfying_sets"] = analysis.min_satisfying;
  j["policy"] = analysis.policy;
  j["policy_digest"] = analysis.policy_digest;
  j["tool_version"] = kToolVersion;
  return j.dump(2) + "\n";
}

namespace {

EmittedReport emit(const std::string& bytes, const std::string& path) {
  write_file(path, bytes);
  return {bytes.size(), sha256_hex(bytes)};
}

}  // namespace

EmittedReport emit_evidence_report(const CampaignReport& report, const std::string& path) {
  return emit(to_text(report), path);
}

EmittedReport emit_evidence_report(const ToleranceAnalysis& analysis, const std::string& path) {
  return emit(to_text(analysis), path);
}

}  // namespace assure
