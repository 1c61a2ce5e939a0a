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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "assure/cae_dsl.hpp"
#include "assure/campaign.hpp"
#include "assure/digest.hpp"
#include "assure/policy_analysis.hpp"
#include "assure/risk_ledger.hpp"
#include "assure/scenario_io.hpp"
#include "cli.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace assure;
using namespace assure::sim;

namespace {

// Tolerances and sample sizes.
constexpr int kAgreementCases = 240;
constexpr int kConsistencyScenarios = 120;
constexpr int kMvccWorkloads = 120;
constexpr std::int64_t kCampaignRuns = 10000;
constexpr int kCampaignSeeds = 20;
constexpr int kCampaignSeedsRequired = 19;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Check {
  Outcome& o;
  void operator()(bool ok, const std::string& what) {
    if (!ok && o.pass) {
      o.pass = false;
      o.detail = what;
    }
  }
};

struct CliResult {
  int code;
  std::string out;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "assure");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str() + err.str()};
}

std::vector<std::string> ids(int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back("E" + std::to_string(i));
  return out;
}

BehaviorMode mode_of(Fault f) {
  switch (f) {
    case Fault::Fraudulent: return BehaviorMode::Fraudulent;
    case Fault::Censoring: return BehaviorMode::Censoring;
    case Fault::Crashed: return BehaviorMode::Crashed;
    default: return BehaviorMode::Honest;
  }
}

ScenarioConfig single_tx(const EndorsementPolicy& policy, const FaultLabeling& labeling, bool valid) {
  ScenarioConfig c;
  c.policy = policy;
  c.msp_endorsers = identities(policy);
  c.msp_emitters = {"client"};
  for (const auto& [id, f] : labeling) {
    if (f != Fault::Honest) c.endorser_behaviors[id] = EndorserBehavior{mode_of(f), 0, 0};
  }
  c.peers = {PeerSpec{}, PeerSpec{}};
  c.horizon = 4;
  c.workload.push_back({0, {"t", "client", 1, {SetOp{"asset", 1}, valid}}});
  return c;
}

Outcome corpus_fidelity() {
  Outcome o;
  Check check{o};
  std::set<std::string> seen;
  for (const char* name : {"fig2.cae", "fig3.cae", "fig4.cae", "fig5.cae", "fig6.cae"}) {
    auto r = parse(support::corpus_text(name));
    if (!std::holds_alternative<CaeTree>(r)) {
      check(false, std::string(name) + " does not parse");
      continue;
    }
    const auto& t = std::get<CaeTree>(r);
    check(check_well_formed(t).empty(), std::string(name) + " has violations");
    for (const auto& [id, node] : t.nodes()) seen.insert(id);
  }
  for (const char* id : {"C1c", "C1c.1", "C1c.2", "C1c.3", "C1c.4", "C2c", "C2c.1", "C2c.2", "C2c.3", "C2c.2s",
                         "C2c.2s.1", "C2c.2s.2", "H1c'", "H2c'", "H2c.2s'", "P1c.1.1", "P1c.1.2", "P1c.1.3",
                         "P2c.2s.1", "P2c.2s.2"}) {
    check(seen.count(id) == 1, std::string("missing node ") + id);
  }
  const auto fig5 = support::corpus_tree("fig5.cae");
  const auto& c1c1 = std::get<ClaimNode>(fig5.at("C1c.1"));
  int leaves = 0;
  for (const auto& id : fig5.preorder(c1c1.children.at(0))) leaves += is_evidence(fig5.at(id)) ? 1 : 0;
  const auto dot = to_dot(fig5);
  std::size_t green = 0;
  for (std::size_t at = 0; (at = dot.find("fillcolor=palegreen", at)) != std::string::npos; ++at) ++green;
  check(leaves == 3 && green == 3, "fig5 evidence leaves: " + std::to_string(leaves) + ", green " + std::to_string(green));
  if (o.pass) o.detail = "5 files, 20 named ids, fig5 has 3 green leaves";
  return o;
}

Outcome extreme_policies() {
  Outcome o;
  Check check{o};
  for (int n = 2; n <= 8; ++n) {
    check(censorship_tolerance(all_of(ids(n))) == 0, "censorship_tolerance(ALL-of-" + std::to_string(n) + ")");
    check(fraud_tolerance(any_of(ids(n))) == 0, "fraud_tolerance(ANY-of-" + std::to_string(n) + ")");
  }
  const auto censored = run_scenario(scenario_from_text(support::corpus_text("scenarios/censoring_all_of_3.json")));
  const auto frauded = run_scenario(scenario_from_text(support::corpus_text("scenarios/fraud_any_of_3.json")));
  const auto vr = censored.feared_event_counts.at(FearedEvent::ValidRejected);
  const auto ia = frauded.feared_event_counts.at(FearedEvent::InvalidAccepted);
  check(vr >= 1, "censoring scenario ValidRejected = " + std::to_string(vr));
  check(ia >= 1, "fraud scenario InvalidAccepted = " + std::to_string(ia));
  if (o.pass) o.detail = "n=2..8 exact; simulator ValidRejected=" + std::to_string(vr) + ", InvalidAccepted=" +
                         std::to_string(ia);
  return o;
}

Outcome threshold_duality() {
  Outcome o;
  Check check{o};
  int cases = 0;
  for (int n = 1; n <= 8; ++n) {
    for (int k = 1; k <= n; ++k) {
      const auto p = out_of(k, ids(n));
      const auto tag = "OutOf(" + std::to_string(k) + "," + std::to_string(n) + ")";
      check(fraud_tolerance(p) == k - 1 && oracle::fraud_tolerance(p) == k - 1, tag + " fraud");
      check(censorship_tolerance(p) == n - k && oracle::censorship_tolerance(p) == n - k, tag + " censorship");
      ++cases;
    }
  }
  if (o.pass) o.detail = std::to_string(cases) + " (k, n) pairs exact";
  return o;
}

Outcome analyzer_simulator_agreement() {
  Outcome o;
  Check check{o};
  CounterRng rng(0xa11ce, 0);
  for (int i = 0; i < kAgreementCases; ++i) {
    const auto p = support::random_policy(rng, 6);
    FaultLabeling l;
    for (const auto& id : identities(p)) l[id] = static_cast<Fault>(rng.below(4));
    const bool fraud_sim =
        run_scenario(single_tx(p, l, false)).feared_event_counts.at(FearedEvent::InvalidAccepted) >= 1;
    const bool censor_sim =
        run_scenario(single_tx(p, l, true)).feared_event_counts.at(FearedEvent::ValidRejected) >= 1;
    check(fraud_sim == fraud_possible(p, l), "fraud disagreement on " + to_string(p));
    check(censor_sim == censorship_possible(p, l), "censorship disagreement on " + to_string(p));
  }
  if (o.pass) o.detail = std::to_string(kAgreementCases) + "/" + std::to_string(kAgreementCases) + " pairs agree";
  return o;
}

Outcome consistency() {
  Outcome o;
  Check check{o};
  CounterRng rng(0xc0ffee, 0);
  for (int i = 0; i < kConsistencyScenarios; ++i) {
    const auto c = support::random_scenario(rng, {false, true, 5});
    const auto r = simulate(c);
    check(r.report.feared_event_counts.at(FearedEvent::InconsistentRead) == 0, "InconsistentRead in scenario " +
                                                                                    std::to_string(i));
    for (std::size_t p = 1; p < r.trace.peer_digests.size(); ++p) {
      check(r.trace.peer_digests[p] == r.trace.peer_digests[0], "digest mismatch in scenario " + std::to_string(i));
    }
  }
  const auto injected = run_scenario(scenario_from_text(support::corpus_text("scenarios/skip_v7_conflict.json")));
  const auto ir = injected.feared_event_counts.at(FearedEvent::InconsistentRead);
  check(ir >= 1, "skip_v7 injection InconsistentRead = " + std::to_string(ir));
  if (o.pass) {
    o.detail = std::to_string(kConsistencyScenarios) + " crash-only scenarios at 0; skip_v7 injection gives " +
               std::to_string(ir);
  }
  return o;
}

Outcome mvcc_equivalence() {
  Outcome o;
  Check check{o};
  CounterRng rng(0x6d766363, 0);
  int committed = 0;
  for (int i = 0; i < kMvccWorkloads; ++i) {
    const auto c = support::random_scenario(rng, {true, true, 5, i % 2 == 1});
    const auto r = simulate(c);
    const auto expected = oracle::mvcc_replay(c, r.trace.committed);
    for (std::size_t p = 0; p < c.peers.size(); ++p) {
      check(r.final_states[p] == expected, "peer " + std::to_string(p) + " differs in workload " + std::to_string(i));
    }
    for (const auto& rec : r.trace.committed) committed += rec.valid ? 1 : 0;
  }
  if (o.pass) {
    o.detail = std::to_string(kMvccWorkloads) + " workloads, " + std::to_string(committed) + " valid commits replayed";
  }
  return o;
}

Outcome cft_ordering() {
  Outcome o;
  Check check{o};
  auto c = scenario_from_text(support::corpus_text("scenarios/orderer_crashes.json"));
  check(c.orderers == 5 && c.orderer_crashes.size() == 2, "scenario shape");
  const auto two = run_scenario(c);
  for (const auto& [tx, outcome] : two.outcomes) check(outcome == TxOutcome::CommittedValid, tx + " not committed");
  check(!two.liveness_lost_at, "liveness lost with 2 crashes");

  c.orderer_crashes.push_back({6, 2});
  const auto three = run_scenario(c);
  check(three.liveness_lost_at.has_value(), "liveness_lost_at unset with 3 crashes");
  check(three.feared_event_counts.at(FearedEvent::InvalidAccepted) == 0 &&
            three.feared_event_counts.at(FearedEvent::InconsistentRead) == 0,
        "safety event under 3 crashes");
  std::int64_t last_block = 0;
  for (const auto& rec : three.committed) last_block = std::max(last_block, rec.block_no);
  if (o.pass) {
    o.detail = "2 crashes: " + std::to_string(two.outcomes.size()) + " txs committed; 3 crashes: halted at step " +
               std::to_string(*three.liveness_lost_at) + " after block " + std::to_string(last_block);
  }
  return o;
}

Outcome bft_bound() {
  Outcome o;
  Check check{o};
  check(max_byzantine(3) == 0, "max_byzantine(3)");
  check(max_byzantine(4) == 1, "max_byzantine(4)");
  for (int n = 1; n <= 100; ++n) {
    const int b = max_byzantine(n);
    check(3 * b < n && n <= 3 * (b + 1), "bound fails at n=" + std::to_string(n));
  }
  if (o.pass) o.detail = "n=1..100";
  return o;
}

Outcome campaign_statistics() {
  Outcome o;
  Check check{o};
  const auto policy = out_of(2, ids(3));
  const auto base = default_campaign_scenario(policy);
  std::ostringstream detail;
  for (double p : {0.1, 0.3}) {
    const double truth = 3 * p * p * (1 - p) + p * p * p;
    int covered = 0;
    for (int seed = 1; seed <= kCampaignSeeds; ++seed) {
      const auto r = monte_carlo_campaign(base, {{Fault::Fraudulent, p}}, kCampaignRuns, static_cast<std::uint64_t>(seed));
      if (std::abs(r.fraud_success_rate - truth) <= r.fraud_ci95_halfwidth) ++covered;
    }
    check(covered >= kCampaignSeedsRequired, "p=" + std::to_string(p) + ": only " + std::to_string(covered) + "/" +
                                                 std::to_string(kCampaignSeeds) + " seeds covered");
    detail << (p == 0.1 ? "" : "; ") << "p=" << p << ": " << covered << "/" << kCampaignSeeds << " seeds";
  }
  o.detail = o.pass ? detail.str() : o.detail + " (" + detail.str() + ")";
  return o;
}

Outcome determinism(const fs::path& tmp) {
  Outcome o;
  Check check{o};
  const auto scenario = support::corpus_path("scenarios/fault_free.json");
  const auto r1 = (tmp / "run1.json").string();
  const auto r2 = (tmp / "run2.json").string();
  cli({"sim", "run", scenario, "--seed", "42", "--out", r1});
  cli({"sim", "run", scenario, "--seed", "42", "--out", r2});
  check(read_file(r1) == read_file(r2), "sim run outputs differ");

  const auto policy = support::corpus_path("policies/two_of_3.pol");
  const auto c1 = (tmp / "c1.json").string();
  const auto c2 = (tmp / "c2.json").string();
  const std::vector<std::string> flags = {"--runs", "2000", "--seed", "9", "--p-fraud", "0.2", "--p-crash", "0.1"};
  auto a = std::vector<std::string>{"policy", "campaign", policy, "--out", c1};
  auto b = std::vector<std::string>{"policy", "campaign", policy, "--out", c2};
  a.insert(a.end(), flags.begin(), flags.end());
  b.insert(b.end(), flags.begin(), flags.end());
  cli(a);
  cli(b);
  check(read_file(c1) == read_file(c2), "campaign reports differ");

  const auto d1 = (tmp / "a.dot").string();
  const auto d2 = (tmp / "b.dot").string();
  cli({"cae", "render", support::corpus_path("case_study.cae"), "--out", d1});
  cli({"cae", "render", support::corpus_path("case_study.cae"), "--out", d2});
  check(read_file(d1) == read_file(d2), "renders differ");
  const auto text = support::corpus_text("case_study.cae");
  const auto t = std::get<CaeTree>(parse(text));
  check(serialize(t) == serialize(std::get<CaeTree>(parse(text))) && serialize(t) == text, "serialize differs");
  if (o.pass) o.detail = "sim run, policy campaign, cae render and serialize are byte-identical";
  return o;
}

Outcome justification_loop(const fs::path& tmp) {
  Outcome o;
  Check check{o};
  const auto cae = (tmp / "fig5.cae").string();
  const auto registry = (tmp / "endorsers.risk").string();
  const auto report = (tmp / "reports" / "campaign.json").string();
  fs::create_directories(tmp / "reports");
  fs::copy_file(support::corpus_path("fig5.cae"), cae, fs::copy_options::overwrite_existing);
  fs::copy_file(support::corpus_path("endorsers.risk"), registry, fs::copy_options::overwrite_existing);

  const auto campaign = cli({"policy", "campaign", support::corpus_path("policies/two_of_3.pol"), "--runs", "2000",
                             "--p-fraud", "0.1", "--p-censor", "0.05", "--out", report, "--link",
                             cae + ":P1c.1.3"});
  check(campaign.code == 0, "campaign failed: " + campaign.out);
  const auto linked = std::get<CaeTree>(parse(read_file(cae)));
  const auto ev = std::get<EvidenceNode>(linked.at("P1c.1.3"));
  check(ev.reference == "reports/campaign.json", "reference is " + ev.reference.value_or("<none>"));
  check(ev.digest == sha256_hex(read_file(report)), "digest does not match the report");

  auto coverage = cli({"risk", "coverage", registry, cae});
  check(coverage.code == 0 && coverage.out.find("covered: 6,") != std::string::npos,
        "coverage after linking: " + coverage.out);

  const auto bytes = read_file(report);
  fs::remove(report);
  const auto missing = cli({"risk", "coverage", registry, cae});
  check(missing.code == 1 && missing.out.find("dangling: 4") != std::string::npos,
        "deleting the report did not flip coverage");

  write_file(report, bytes + " ");
  const auto corrupted = cli({"risk", "coverage", registry, cae});
  check(corrupted.code == 1, "a modified report still verified");

  write_file(report, bytes);
  auto text = read_file(cae);
  const auto at = text.find(*ev.digest);
  text[at] = text[at] == '0' ? '1' : '0';
  write_file(cae, text);
  const auto bad_digest = cli({"risk", "coverage", registry, cae});
  check(bad_digest.code == 1, "a corrupted digest still verified");
  if (o.pass) o.detail = "6 Covered with code 0; deleted report and corrupted digest give code 1";
  return o;
}

}  // namespace

int main() {
  const auto tmp = fs::temp_directory_path() / "assure_acceptance";
  fs::remove_all(tmp);
  fs::create_directories(tmp);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"corpus fidelity", corpus_fidelity},
      {"extreme-policy reproduction", extreme_policies},
      {"threshold duality", threshold_duality},
      {"analyzer/simulator agreement", analyzer_simulator_agreement},
      {"consistency criterion", consistency},
      {"MVCC oracle equivalence", mvcc_equivalence},
      {"CFT ordering", cft_ordering},
      {"BFT bound helper", bft_bound},
      {"campaign statistics", campaign_statistics},
      {"determinism", [&] { return determinism(tmp); }},
      {"end-to-end justification loop", [&] { return justification_loop(tmp); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " AC" << i + 1 << " " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  fs::remove_all(tmp);
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size()
            << " acceptance criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
