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

// Discrete-step model of an Execute-Order-Validate ledger: endorsers execute
// proposals against their view of the state, a crash-fault-tolerant ordering
// cluster batches submissions into blocks, and every peer validates blocks
// and applies the valid transactions to its own versioned key-value store.

#include <compare>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "assure/feared_event.hpp"
#include "assure/policy.hpp"

namespace assure::sim {

using Step = std::int64_t;

struct Version {
  std::int64_t block_no = 0;
  std::int64_t tx_index = 0;

  auto operator<=>(const Version&) const = default;
};

struct VersionedValue {
  std::int64_t value = 0;
  Version version;

  bool operator==(const VersionedValue&) const = default;
};

using KvStore = std::map<std::string, VersionedValue, std::less<>>;

/// Hash of the canonical `key=value@block.tx` listing.
std::string state_digest(const KvStore& store);

struct SetOp {
  std::string key;
  std::int64_t value = 0;
  bool operator==(const SetOp&) const = default;
};

struct TransferOp {
  std::string from;
  std::string to;
  std::int64_t amount = 0;
  bool operator==(const TransferOp&) const = default;
};

struct NoopOp {
  bool operator==(const NoopOp&) const = default;
};

struct ChaincodeOp {
  std::variant<SetOp, TransferOp, NoopOp> action = NoopOp{};
  /// Oracle flag: whether the op respects the business logic for the
  /// submitting client. The chaincode rejects ops marked false.
  bool ground_truth_valid = true;

  bool operator==(const ChaincodeOp&) const = default;
};

struct TxProposal {
  std::string tx_id;
  std::string client_id;
  std::uint64_t nonce = 0;
  ChaincodeOp op;

  bool operator==(const TxProposal&) const = default;
};

struct ReadWriteSet {
  std::map<std::string, Version> reads;
  std::map<std::string, std::int64_t> writes;

  bool operator==(const ReadWriteSet&) const = default;
};

struct AppFailure {
  std::string reason;
};

/// Computes the effects of `op` against `state` without applying them.
std::variant<ReadWriteSet, AppFailure> execute_chaincode(const KvStore& state, const ChaincodeOp& op);

/// Same effects with every business guard bypassed (what a fraudulent
/// endorser signs).
ReadWriteSet execute_unchecked(const KvStore& state, const ChaincodeOp& op);

enum class Criterion { V1, V2, V3, V4, V5, V6, V7 };

std::string_view to_string(Criterion c);
std::optional<Criterion> criterion_from_string(std::string_view s);

struct Endorsement {
  std::string endorser_id;
  ReadWriteSet rwset;
  bool signature_valid = true;

  bool operator==(const Endorsement&) const = default;
};

struct Refusal {
  std::string endorser_id;
  std::optional<Criterion> criterion;
  std::string reason;
};

struct NoResponse {
  std::string endorser_id;
};

using EndorseResult = std::variant<Endorsement, Refusal, NoResponse>;

enum class BehaviorMode { Honest, Fraudulent, Censoring, Crashed, DoSed };

std::string_view to_string(BehaviorMode m);
std::optional<BehaviorMode> behavior_from_string(std::string_view s);

struct EndorserBehavior {
  BehaviorMode mode = BehaviorMode::Honest;
  Step dos_from = 0;  // DoSed window, inclusive
  Step dos_to = 0;

  bool operator==(const EndorserBehavior&) const = default;
};

struct Msp {
  std::set<std::string> emitters;
  std::set<std::string> endorsers;
};

using NonceKey = std::pair<std::string, std::uint64_t>;

/// One endorser's answer to a proposal. Honest endorsers check V1, V3, V2 in
/// that order and refuse on the first failure. Fraudulent endorsers skip V2
/// and sign invalid proposals, but withhold their signature from valid ones.
EndorseResult endorse(std::string_view endorser_id, const EndorserBehavior& behavior, const TxProposal& proposal,
                      const KvStore& state, const std::set<NonceKey>& seen_nonces, const Msp& msp, Step step);

struct Submission {
  TxProposal proposal;
  std::vector<Endorsement> endorsements;
};

struct PolicyUnsatisfied {
  std::set<std::string> signers;
};

std::variant<Submission, PolicyUnsatisfied> assemble_submission(const TxProposal& proposal,
                                                                std::vector<Endorsement> endorsements,
                                                                const EndorsementPolicy& policy);

struct Block {
  std::int64_t block_no = 0;
  std::vector<Submission> txs;
};

struct CrashEvent {
  Step step = 0;
  int index = 0;

  bool operator==(const CrashEvent&) const = default;
};

/// Raft-shaped ordering service: one leader, majority quorum, FIFO batches.
struct OrdererCluster {
  int n = 1;
  std::set<int> crashed;
  std::optional<int> leader = 0;
  int last_leader = 0;
  int batch_size = 1;
  std::int64_t next_block_no = 1;
  std::optional<Step> election_at;
  std::optional<Step> liveness_lost_at;

  int quorum() const noexcept { return n / 2 + 1; }
  int alive() const noexcept { return n - static_cast<int>(crashed.size()); }
  bool has_quorum() const noexcept { return alive() >= quorum(); }
};

OrdererCluster make_cluster(int n, int batch_size);

/// Applies crashes scheduled at `step`, re-elects the next alive orderer one
/// step after a leader crash, and cuts at most one block of up to batch_size
/// pending submissions while a quorum is alive. Consumes cut submissions
/// from `pending`.
std::vector<Block> ordering_step(OrdererCluster& cluster, std::deque<Submission>& pending, Step step,
                                 std::span<const CrashEvent> crash_schedule);

struct TxFlag {
  std::string tx_id;
  bool valid = false;
  std::optional<Criterion> failed;

  bool operator==(const TxFlag&) const = default;
};

/// Checks V4, V5, V6 and (unless skip_v7) V7 per transaction in block order,
/// applying each valid transaction's writes before looking at the next.
std::vector<TxFlag> validate_block(KvStore& peer_state, const Block& block, const Msp& msp,
                                   const EndorsementPolicy& policy, bool skip_v7);

struct PeerSpec {
  bool skip_v7 = false;  // fault-injected peer; correct iff false

  bool operator==(const PeerSpec&) const = default;
};

struct WorkloadItem {
  Step step = 0;
  TxProposal proposal;

  bool operator==(const WorkloadItem&) const = default;
};

/// Seeded synthetic workload appended after the explicit one.
struct WorkloadGenerator {
  int count = 0;
  int keys = 4;
  int clients = 2;
  Step last_step = 0;
  double transfer_fraction = 0.5;
  double invalid_fraction = 0.0;
  std::int64_t max_amount = 5;

  bool operator==(const WorkloadGenerator&) const = default;
};

struct ScenarioConfig {
  std::set<std::string> msp_emitters;
  std::set<std::string> msp_endorsers;
  std::map<std::string, EndorserBehavior> endorser_behaviors;  // missing = Honest
  EndorsementPolicy policy;
  int orderers = 3;
  int batch_size = 10;
  std::vector<CrashEvent> orderer_crashes;
  std::vector<PeerSpec> peers{PeerSpec{}};
  std::map<std::string, std::int64_t> initial_state;
  std::vector<WorkloadItem> workload;
  std::optional<WorkloadGenerator> generated_workload;
  Step horizon = 10;
  std::uint64_t seed = 0;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Explicit workload followed by the generated one, stable-sorted by step.
std::vector<WorkloadItem> expand_workload(const ScenarioConfig& config);

/// Throws Error(ConfigInvalid) naming the first broken invariant.
void validate_config(const ScenarioConfig& config);

struct CommitRecord {
  std::int64_t block_no = 0;
  std::string tx_id;
  bool valid = false;
  std::optional<Criterion> failed;

  bool operator==(const CommitRecord&) const = default;
};

struct RefusalRecord {
  std::string tx_id;
  std::string endorser_id;
  std::optional<Criterion> criterion;
  std::string reason;

  bool operator==(const RefusalRecord&) const = default;
};

struct PeerDigest {
  int peer = 0;
  std::int64_t height = 0;
  std::string digest;

  bool operator==(const PeerDigest&) const = default;
};

enum class TxOutcome {
  CommittedValid,
  CommittedInvalid,
  EndorsementFailed,     // refusals left the policy unsatisfiable
  AwaitingEndorsement,   // still missing responses at the horizon
  AwaitingOrdering,      // submitted but not in a block by the horizon
};

std::string_view to_string(TxOutcome o);

using FearedEventCounts = std::map<FearedEvent, std::int64_t>;

struct RunReport {
  std::vector<CommitRecord> committed;
  std::vector<RefusalRecord> endorsement_refusals;
  FearedEventCounts feared_event_counts;
  std::vector<PeerDigest> per_peer_state_digest;
  std::optional<Step> liveness_lost_at;
  std::uint64_t seed = 0;
  std::string config_digest;
  std::vector<std::pair<std::string, TxOutcome>> outcomes;  // workload order

  bool operator==(const RunReport&) const = default;
};

/// What the detectors look at.
struct Trace {
  std::vector<CommitRecord> committed;  // as flagged by the reference peer
  std::vector<std::pair<std::string, bool>> ground_truth;  // workload order
  std::vector<std::vector<std::string>> peer_digests;      // [peer][height-1]
  std::vector<bool> peer_correct;
};

FearedEventCounts detect_feared_events(const Trace& trace);

struct SimulationResult {
  RunReport report;
  Trace trace;
  std::vector<KvStore> final_states;  // per peer
};

/// Full run including the trace and final stores. Throws Error(ConfigInvalid).
SimulationResult simulate(const ScenarioConfig& config);

inline RunReport run_scenario(const ScenarioConfig& config) { return simulate(config).report; }

}  // namespace assure::sim
