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

#include "assure/eov_sim.hpp"

#include <algorithm>

#include "assure/digest.hpp"
#include "assure/error.hpp"
#include "assure/rng.hpp"
#include "assure/scenario_io.hpp"

namespace assure::sim {

std::string state_digest(const KvStore& store) {
  std::string canonical;
  for (const auto& [key, entry] : store) {
    canonical += key;
    canonical += '=';
    canonical += std::to_string(entry.value);
    canonical += '@';
    canonical += std::to_string(entry.version.block_no);
    canonical += '.';
    canonical += std::to_string(entry.version.tx_index);
    canonical += '\n';
  }
  return sha256_hex(canonical);
}

std::string_view to_string(Criterion c) {
  static constexpr std::string_view kNames[] = {"V1", "V2", "V3", "V4", "V5", "V6", "V7"};
  return kNames[static_cast<int>(c)];
}

std::optional<Criterion> criterion_from_string(std::string_view s) {
  for (int i = 0; i < 7; ++i) {
    if (to_string(static_cast<Criterion>(i)) == s) return static_cast<Criterion>(i);
  }
  return std::nullopt;
}

std::string_view to_string(BehaviorMode m) {
  switch (m) {
    case BehaviorMode::Honest: return "Honest";
    case BehaviorMode::Fraudulent: return "Fraudulent";
    case BehaviorMode::Censoring: return "Censoring";
    case BehaviorMode::Crashed: return "Crashed";
    case BehaviorMode::DoSed: return "DoSed";
  }
  return "?";
}

std::optional<BehaviorMode> behavior_from_string(std::string_view s) {
  for (auto m : {BehaviorMode::Honest, BehaviorMode::Fraudulent, BehaviorMode::Censoring, BehaviorMode::Crashed,
                 BehaviorMode::DoSed}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

std::string_view to_string(TxOutcome o) {
  switch (o) {
    case TxOutcome::CommittedValid: return "CommittedValid";
    case TxOutcome::CommittedInvalid: return "CommittedInvalid";
    case TxOutcome::EndorsementFailed: return "EndorsementFailed";
    case TxOutcome::AwaitingEndorsement: return "AwaitingEndorsement";
    case TxOutcome::AwaitingOrdering: return "AwaitingOrdering";
  }
  return "?";
}

namespace {

struct Balance {
  std::int64_t value;
  Version version;
};

Balance lookup(const KvStore& state, const std::string& key) {
  auto it = state.find(key);
  if (it == state.end()) return {0, Version{}};
  return {it->second.value, it->second.version};
}

}  // namespace

ReadWriteSet execute_unchecked(const KvStore& state, const ChaincodeOp& op) {
  ReadWriteSet rw;
  if (const auto* set = std::get_if<SetOp>(&op.action)) {
    rw.reads[set->key] = lookup(state, set->key).version;
    rw.writes[set->key] = set->value;
  } else if (const auto* tr = std::get_if<TransferOp>(&op.action)) {
    const auto from = lookup(state, tr->from);
    const auto to = lookup(state, tr->to);
    rw.reads[tr->from] = from.version;
    rw.reads[tr->to] = to.version;
    rw.writes[tr->from] = from.value - tr->amount;
    rw.writes[tr->to] = (tr->from == tr->to ? from.value - tr->amount : to.value) + tr->amount;
  }
  return rw;
}

std::variant<ReadWriteSet, AppFailure> execute_chaincode(const KvStore& state, const ChaincodeOp& op) {
  if (!op.ground_truth_valid) return AppFailure{"operation violates the business rules"};
  if (const auto* tr = std::get_if<TransferOp>(&op.action)) {
    if (tr->amount <= 0) return AppFailure{"transfer amount must be positive"};
    if (tr->from == tr->to) return AppFailure{"transfer to the same account"};
    if (lookup(state, tr->from).value < tr->amount) {
      return AppFailure{"insufficient balance in " + tr->from};
    }
  }
  return execute_unchecked(state, op);
}

EndorseResult endorse(std::string_view endorser_id, const EndorserBehavior& behavior, const TxProposal& proposal,
                      const KvStore& state, const std::set<NonceKey>& seen_nonces, const Msp& msp, Step step) {
  const std::string id(endorser_id);
  switch (behavior.mode) {
    case BehaviorMode::Crashed:
      return NoResponse{id};
    case BehaviorMode::DoSed:
      if (step >= behavior.dos_from && step <= behavior.dos_to) return NoResponse{id};
      break;
    case BehaviorMode::Censoring:
      return Refusal{id, std::nullopt, "censorship"};
    default:
      break;
  }

  if (!msp.emitters.count(proposal.client_id)) {
    return Refusal{id, Criterion::V1, "client " + proposal.client_id + " is not a registered emitter"};
  }
  if (seen_nonces.count({proposal.client_id, proposal.nonce})) {
    return Refusal{id, Criterion::V3, "nonce " + std::to_string(proposal.nonce) + " already acknowledged"};
  }
  if (behavior.mode == BehaviorMode::Fraudulent) {
    if (proposal.op.ground_truth_valid) return Refusal{id, std::nullopt, "withheld"};
    return Endorsement{id, execute_unchecked(state, proposal.op), true};
  }
  auto result = execute_chaincode(state, proposal.op);
  if (const auto* failure = std::get_if<AppFailure>(&result)) return Refusal{id, Criterion::V2, failure->reason};
  return Endorsement{id, std::get<ReadWriteSet>(std::move(result)), true};
}

std::variant<Submission, PolicyUnsatisfied> assemble_submission(const TxProposal& proposal,
                                                                std::vector<Endorsement> endorsements,
                                                                const EndorsementPolicy& policy) {
  std::set<std::string> signers;
  for (const auto& e : endorsements) signers.insert(e.endorser_id);
  if (!eval_policy(policy, signers)) return PolicyUnsatisfied{std::move(signers)};
  return Submission{proposal, std::move(endorsements)};
}

OrdererCluster make_cluster(int n, int batch_size) {
  OrdererCluster c;
  c.n = n;
  c.batch_size = batch_size;
  c.leader = 0;
  return c;
}

std::vector<Block> ordering_step(OrdererCluster& cluster, std::deque<Submission>& pending, Step step,
                                 std::span<const CrashEvent> crash_schedule) {
  for (const auto& crash : crash_schedule) {
    if (crash.step != step) continue;
    cluster.crashed.insert(crash.index);
    if (cluster.leader && *cluster.leader == crash.index) {
      cluster.leader.reset();
      cluster.election_at = step + 1;
    }
  }
  if (!cluster.has_quorum()) {
    cluster.leader.reset();
    cluster.election_at.reset();
    if (!cluster.liveness_lost_at) cluster.liveness_lost_at = step;
    return {};
  }
  if (!cluster.leader) {
    if (!cluster.election_at || step < *cluster.election_at) return {};
    // Next alive index after the last leader, wrapping.
    const int last = cluster.last_leader;
    for (int offset = 1; offset <= cluster.n; ++offset) {
      const int candidate = (last + offset) % cluster.n;
      if (!cluster.crashed.count(candidate)) {
        cluster.leader = candidate;
        cluster.last_leader = candidate;
        break;
      }
    }
    cluster.election_at.reset();
  }
  if (pending.empty()) return {};

  Block block;
  block.block_no = cluster.next_block_no++;
  while (!pending.empty() && static_cast<int>(block.txs.size()) < cluster.batch_size) {
    block.txs.push_back(std::move(pending.front()));
    pending.pop_front();
  }
  std::vector<Block> out;
  out.push_back(std::move(block));
  return out;
}

std::vector<TxFlag> validate_block(KvStore& peer_state, const Block& block, const Msp& msp,
                                   const EndorsementPolicy& policy, bool skip_v7) {
  std::vector<TxFlag> flags;
  flags.reserve(block.txs.size());
  for (std::size_t index = 0; index < block.txs.size(); ++index) {
    const auto& tx = block.txs[index];
    TxFlag flag{tx.proposal.tx_id, false, std::nullopt};

    std::set<std::string> signers;
    for (const auto& e : tx.endorsements) signers.insert(e.endorser_id);
    const bool legit = std::all_of(tx.endorsements.begin(), tx.endorsements.end(), [&](const Endorsement& e) {
      return e.signature_valid && msp.endorsers.count(e.endorser_id) > 0;
    });
    const bool consistent =
        !tx.endorsements.empty() &&
        std::all_of(tx.endorsements.begin(), tx.endorsements.end(),
                    [&](const Endorsement& e) { return e.rwset == tx.endorsements.front().rwset; });

    if (!eval_policy(policy, signers)) {
      flag.failed = Criterion::V4;
    } else if (!legit) {
      flag.failed = Criterion::V5;
    } else if (!consistent) {
      flag.failed = Criterion::V6;
    } else if (!skip_v7) {
      for (const auto& [key, version] : tx.endorsements.front().rwset.reads) {
        if (lookup(peer_state, key).version != version) {
          flag.failed = Criterion::V7;
          break;
        }
      }
    }

    if (!flag.failed) {
      flag.valid = true;
      const Version version{block.block_no, static_cast<std::int64_t>(index)};
      for (const auto& [key, value] : tx.endorsements.front().rwset.writes) {
        peer_state[key] = VersionedValue{value, version};
      }
    }
    flags.push_back(std::move(flag));
  }
  return flags;
}

std::vector<WorkloadItem> expand_workload(const ScenarioConfig& config) {
  std::vector<WorkloadItem> items = config.workload;
  if (const auto& gen = config.generated_workload; gen && gen->count > 0) {
    CounterRng rng(config.seed, 0x776f726b6c6f6164ULL);
    for (int i = 0; i < gen->count; ++i) {
      WorkloadItem item;
      item.step = static_cast<Step>(rng.below(static_cast<std::uint64_t>(gen->last_step) + 1));
      item.proposal.tx_id = "g" + std::to_string(i);
      item.proposal.client_id = "client" + std::to_string(rng.below(static_cast<std::uint64_t>(gen->clients)));
      item.proposal.nonce = (std::uint64_t{1} << 32) + static_cast<std::uint64_t>(i);
      const bool transfer = gen->keys >= 2 && rng.uniform() < gen->transfer_fraction;
      if (transfer) {
        const auto a = rng.below(static_cast<std::uint64_t>(gen->keys));
        auto b = rng.below(static_cast<std::uint64_t>(gen->keys - 1));
        if (b >= a) ++b;
        const auto amount = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(gen->max_amount)));
        item.proposal.op.action = TransferOp{"k" + std::to_string(a), "k" + std::to_string(b), amount};
      } else {
        const auto key = rng.below(static_cast<std::uint64_t>(gen->keys));
        item.proposal.op.action = SetOp{"k" + std::to_string(key), static_cast<std::int64_t>(rng.below(100))};
      }
      item.proposal.op.ground_truth_valid = rng.uniform() >= gen->invalid_fraction;
      items.push_back(std::move(item));
    }
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const WorkloadItem& a, const WorkloadItem& b) { return a.step < b.step; });
  return items;
}

void validate_config(const ScenarioConfig& config) {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::ConfigInvalid, why); };
  if (config.orderers < 1) fail("orderers must be >= 1");
  if (config.batch_size < 1) fail("batch_size must be >= 1");
  if (config.peers.empty()) fail("at least one peer is required");
  if (config.horizon < 0) fail("horizon must be >= 0");
  try {
    validate(config.policy);
  } catch (const Error& e) {
    fail(std::string("policy: ") + e.what());
  }
  for (const auto& id : identities(config.policy)) {
    if (!config.msp_endorsers.count(id)) fail("policy identity " + id + " is not a registered endorser");
  }
  for (const auto& [id, behavior] : config.endorser_behaviors) {
    if (!config.msp_endorsers.count(id)) fail("behavior for unregistered endorser " + id);
    if (behavior.mode == BehaviorMode::DoSed && behavior.dos_from > behavior.dos_to) {
      fail("DoS window of " + id + " is not ordered");
    }
  }
  for (const auto& crash : config.orderer_crashes) {
    if (crash.index < 0 || crash.index >= config.orderers) fail("crash of unknown orderer");
    if (crash.step < 0) fail("crash step must be >= 0");
  }
  std::set<std::string> tx_ids;
  for (const auto& item : config.workload) {
    if (item.step < 0 || item.step > config.horizon) fail("workload step outside [0, horizon] for " + item.proposal.tx_id);
    if (item.proposal.tx_id.empty()) fail("empty tx_id");
    if (!tx_ids.insert(item.proposal.tx_id).second) fail("duplicate tx_id " + item.proposal.tx_id);
    if (const auto* tr = std::get_if<TransferOp>(&item.proposal.op.action); tr && tr->amount <= 0) {
      fail("transfer amount must be positive in " + item.proposal.tx_id);
    }
  }
  if (const auto& gen = config.generated_workload) {
    if (gen->count < 0 || gen->keys < 1 || gen->clients < 1 || gen->max_amount < 1) fail("bad generated_workload sizes");
    if (gen->last_step < 0 || gen->last_step > config.horizon) fail("generated_workload last_step outside horizon");
    if (gen->transfer_fraction < 0 || gen->transfer_fraction > 1 || gen->invalid_fraction < 0 ||
        gen->invalid_fraction > 1) {
      fail("generated_workload fractions must lie in [0, 1]");
    }
    for (int i = 0; i < gen->count; ++i) {
      if (tx_ids.count("g" + std::to_string(i))) fail("explicit tx_id clashes with generated g" + std::to_string(i));
    }
  }
}

FearedEventCounts detect_feared_events(const Trace& trace) {
  FearedEventCounts counts;
  for (auto e : kFearedEvents) counts[e] = 0;

  std::set<std::string> committed_valid;
  for (const auto& c : trace.committed) {
    if (c.valid) committed_valid.insert(c.tx_id);
  }
  std::map<std::string, bool> truth(trace.ground_truth.begin(), trace.ground_truth.end());
  for (const auto& c : trace.committed) {
    auto it = truth.find(c.tx_id);
    if (c.valid && it != truth.end() && !it->second) ++counts[FearedEvent::InvalidAccepted];
  }
  for (const auto& [tx_id, valid] : trace.ground_truth) {
    if (valid && !committed_valid.count(tx_id)) ++counts[FearedEvent::ValidRejected];
  }

  const std::size_t peers = trace.peer_digests.size();
  for (std::size_t i = 0; i < peers; ++i) {
    for (std::size_t j = i + 1; j < peers; ++j) {
      const bool involves_correct = (i < trace.peer_correct.size() && trace.peer_correct[i]) ||
                                    (j < trace.peer_correct.size() && trace.peer_correct[j]);
      if (!involves_correct) continue;
      const auto common = std::min(trace.peer_digests[i].size(), trace.peer_digests[j].size());
      for (std::size_t h = 0; h < common; ++h) {
        if (trace.peer_digests[i][h] != trace.peer_digests[j][h]) ++counts[FearedEvent::InconsistentRead];
      }
    }
  }
  return counts;
}

namespace {

struct InFlight {
  std::size_t index;
  std::vector<Endorsement> endorsements;
  std::set<std::string> responded;
};

KvStore initial_store(const std::map<std::string, std::int64_t>& initial) {
  KvStore store;
  for (const auto& [key, value] : initial) store.emplace(key, VersionedValue{value, Version{}});
  return store;
}

}  // namespace

SimulationResult simulate(const ScenarioConfig& config) {
  validate_config(config);
  const auto workload = expand_workload(config);
  const Msp msp{config.msp_emitters, config.msp_endorsers};

  SimulationResult result;
  RunReport& report = result.report;
  Trace& trace = result.trace;
  report.seed = config.seed;
  report.config_digest = sha256_hex(scenario_to_text(config));

  const std::size_t peer_count = config.peers.size();
  std::vector<KvStore> states(peer_count, initial_store(config.initial_state));
  KvStore endorser_view = initial_store(config.initial_state);
  trace.peer_digests.resize(peer_count);
  for (const auto& p : config.peers) trace.peer_correct.push_back(!p.skip_v7);
  std::size_t reference = 0;
  for (std::size_t i = 0; i < peer_count; ++i) {
    if (!config.peers[i].skip_v7) {
      reference = i;
      break;
    }
  }

  std::map<std::string, std::set<NonceKey>> seen;
  std::map<std::string, std::size_t> index_of;
  std::vector<TxOutcome> outcomes(workload.size(), TxOutcome::AwaitingEndorsement);
  for (std::size_t i = 0; i < workload.size(); ++i) {
    index_of[workload[i].proposal.tx_id] = i;
    trace.ground_truth.emplace_back(workload[i].proposal.tx_id, workload[i].proposal.op.ground_truth_valid);
  }

  OrdererCluster cluster = make_cluster(config.orderers, config.batch_size);
  std::deque<Submission> pending;
  std::vector<InFlight> active;
  std::size_t next = 0;
  const EndorserBehavior honest{};

  for (Step step = 0; step <= config.horizon; ++step) {
    while (next < workload.size() && workload[next].step == step) active.push_back({next++, {}, {}});

    std::vector<InFlight> waiting;
    for (auto& tx : active) {
      const TxProposal& proposal = workload[tx.index].proposal;
      for (const auto& endorser : msp.endorsers) {
        if (tx.responded.count(endorser)) continue;
        auto behavior_it = config.endorser_behaviors.find(endorser);
        const auto& behavior = behavior_it == config.endorser_behaviors.end() ? honest : behavior_it->second;
        auto answer = endorse(endorser, behavior, proposal, endorser_view, seen[endorser], msp, step);
        if (auto* e = std::get_if<Endorsement>(&answer)) {
          seen[endorser].insert({proposal.client_id, proposal.nonce});
          tx.responded.insert(endorser);
          tx.endorsements.push_back(std::move(*e));
        } else if (auto* r = std::get_if<Refusal>(&answer)) {
          if (r->criterion == Criterion::V2) seen[endorser].insert({proposal.client_id, proposal.nonce});
          tx.responded.insert(endorser);
          report.endorsement_refusals.push_back({proposal.tx_id, endorser, r->criterion, r->reason});
        }
      }

      auto submission = assemble_submission(proposal, tx.endorsements, config.policy);
      if (auto* s = std::get_if<Submission>(&submission)) {
        pending.push_back(std::move(*s));
        outcomes[tx.index] = TxOutcome::AwaitingOrdering;
        continue;
      }
      // Give up once even the silent endorsers could not complete the policy.
      std::set<std::string> reachable = std::get<PolicyUnsatisfied>(submission).signers;
      for (const auto& endorser : msp.endorsers) {
        if (!tx.responded.count(endorser)) reachable.insert(endorser);
      }
      if (!eval_policy(config.policy, reachable)) {
        outcomes[tx.index] = TxOutcome::EndorsementFailed;
      } else {
        waiting.push_back(std::move(tx));
      }
    }
    active = std::move(waiting);

    for (const auto& block : ordering_step(cluster, pending, step, config.orderer_crashes)) {
      for (std::size_t p = 0; p < peer_count; ++p) {
        auto flags = validate_block(states[p], block, msp, config.policy, config.peers[p].skip_v7);
        trace.peer_digests[p].push_back(state_digest(states[p]));
        if (p != reference) continue;
        for (auto& flag : flags) {
          outcomes[index_of.at(flag.tx_id)] = flag.valid ? TxOutcome::CommittedValid : TxOutcome::CommittedInvalid;
          report.committed.push_back({block.block_no, std::move(flag.tx_id), flag.valid, flag.failed});
        }
      }
      validate_block(endorser_view, block, msp, config.policy, false);
    }
  }

  trace.committed = report.committed;
  report.feared_event_counts = detect_feared_events(trace);
  report.liveness_lost_at = cluster.liveness_lost_at;
  for (std::size_t p = 0; p < peer_count; ++p) {
    report.per_peer_state_digest.push_back(
        {static_cast<int>(p), static_cast<std::int64_t>(trace.peer_digests[p].size()), state_digest(states[p])});
  }
  for (std::size_t i = 0; i < workload.size(); ++i) {
    report.outcomes.emplace_back(workload[i].proposal.tx_id, outcomes[i]);
  }
  result.final_states = std::move(states);
  return result;
}

}  // namespace assure::sim
