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

// Shared helpers for the test binaries: corpus access and random generators.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "assure/cae_dsl.hpp"
#include "assure/digest.hpp"
#include "assure/eov_sim.hpp"
#include "assure/policy.hpp"
#include "assure/rng.hpp"

namespace support {

inline std::string corpus_path(const std::string& name) { return std::string(ASSURE_CORPUS_DIR) + "/" + name; }

inline std::string corpus_text(const std::string& name) { return assure::read_file(corpus_path(name)); }

inline assure::CaeTree corpus_tree(const std::string& name) {
  auto r = assure::parse(corpus_text(name));
  if (auto* errors = std::get_if<std::vector<assure::ParseError>>(&r)) {
    throw std::runtime_error(name + ": " + assure::format(errors->front()));
  }
  return std::get<assure::CaeTree>(std::move(r));
}

/// Random well-formed tree of bounded depth; every claim gets either nothing,
/// evidence leaves, or one argument with enough child claims.
inline assure::CaeTree random_tree(assure::CounterRng& rng) {
  using namespace assure;
  std::vector<NodeEntry> entries;
  int next = 0;
  auto fresh = [&](const char* prefix) { return std::string(prefix) + std::to_string(next++); };
  auto evidence = [&](const std::string& parent) {
    const auto kind = rng.below(2) ? EvidenceKind::Proof : EvidenceKind::Hypothesis;
    entries.push_back({parent, EvidenceNode{fresh(kind == EvidenceKind::Proof ? "P" : "H"), kind, "e", {}, {}, {}}});
  };
  auto grow = [&](auto&& self, const std::string& id, int depth) -> void {
    const auto choice = depth >= 3 ? rng.below(2) : rng.below(4);
    if (choice == 0) return;
    if (choice == 1) {
      for (std::uint64_t i = 0, n = 1 + rng.below(2); i < n; ++i) evidence(id);
      return;
    }
    const auto kind = static_cast<ArgumentKind>(rng.below(3));
    const auto a = fresh("A");
    entries.push_back({id, ArgumentNode{a, kind, "a", {}, {}}});
    const std::uint64_t claims = (kind == ArgumentKind::Decomposition ? 2 : 1) + rng.below(2);
    for (std::uint64_t i = 0; i < claims; ++i) {
      const auto c = fresh("C");
      entries.push_back({a, ClaimNode{c, "c", {}, {}}});
      self(self, c, depth + 1);
    }
    if (kind != ArgumentKind::Concretization && rng.below(3) == 0) {
      const auto s = fresh("S");
      entries.push_back({a, ClaimNode{s, "side", {}, {}}, true});
      self(self, s, depth + 1);
    }
    if (rng.below(3) == 0) evidence(a);
  };
  const std::string root = fresh("C");
  grow(grow, root, 0);
  return build_tree(ClaimNode{root, "root", {}, {}}, entries);
}

/// Random policy over identities E1..En (n <= max_ids), with random nesting.
inline assure::EndorsementPolicy random_policy(assure::CounterRng& rng, int max_ids) {
  using assure::EndorsementPolicy;
  const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_ids)));
  std::vector<EndorsementPolicy> leaves;
  for (int i = 1; i <= n; ++i) leaves.push_back(EndorsementPolicy::sig("E" + std::to_string(i)));
  // Merge random groups until one expression remains.
  while (leaves.size() > 1) {
    const auto take = 2 + rng.below(std::min<std::uint64_t>(leaves.size() - 1, 3));
    std::vector<EndorsementPolicy> group;
    for (std::uint64_t i = 0; i < take; ++i) {
      const auto at = rng.below(leaves.size());
      group.push_back(leaves[at]);
      leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(at));
    }
    switch (rng.below(3)) {
      case 0: leaves.push_back(EndorsementPolicy::all(std::move(group))); break;
      case 1: leaves.push_back(EndorsementPolicy::any(std::move(group))); break;
      default: {
        const int k = 1 + static_cast<int>(rng.below(group.size()));
        leaves.push_back(EndorsementPolicy::out_of(k, std::move(group)));
      }
    }
  }
  return leaves.front();
}

struct ScenarioOptions {
  bool byzantine_endorsers = false;  // allow Fraudulent and Censoring
  bool orderer_crashes = true;
  int max_identities = 5;
  bool endorser_faults = true;
};

/// Random scenario with correct peers and a generated workload.
inline assure::sim::ScenarioConfig random_scenario(assure::CounterRng& rng, const ScenarioOptions& options = {}) {
  using namespace assure::sim;
  ScenarioConfig c;
  c.policy = random_policy(rng, options.max_identities);
  c.msp_endorsers = assure::identities(c.policy);
  c.msp_emitters = {"client0", "client1"};
  for (const auto& id : c.msp_endorsers) {
    const auto pick = options.endorser_faults ? rng.below(options.byzantine_endorsers ? 5 : 3) : 0;
    EndorserBehavior b;
    switch (pick) {
      case 0: b.mode = BehaviorMode::Honest; break;
      case 1: b.mode = BehaviorMode::Crashed; break;
      case 2:
        b.mode = BehaviorMode::DoSed;
        b.dos_from = static_cast<Step>(rng.below(4));
        b.dos_to = b.dos_from + static_cast<Step>(rng.below(4));
        break;
      case 3: b.mode = BehaviorMode::Fraudulent; break;
      default: b.mode = BehaviorMode::Censoring; break;
    }
    if (b.mode != BehaviorMode::Honest) c.endorser_behaviors[id] = b;
  }
  c.orderers = 1 + 2 * static_cast<int>(rng.below(3));
  c.batch_size = 1 + static_cast<int>(rng.below(5));
  c.peers.assign(1 + rng.below(4), PeerSpec{});
  for (int k = 0; k < 4; ++k) c.initial_state["k" + std::to_string(k)] = static_cast<std::int64_t>(rng.below(20));
  WorkloadGenerator gen;
  gen.count = 5 + static_cast<int>(rng.below(20));
  gen.keys = 4 + static_cast<int>(rng.below(3));
  gen.clients = 3;  // client2 is not a registered emitter
  gen.last_step = static_cast<Step>(rng.below(7));
  gen.transfer_fraction = 0.5;
  gen.invalid_fraction = 0.2;
  gen.max_amount = 8;
  c.generated_workload = gen;
  c.horizon = gen.last_step + 2 + static_cast<Step>(rng.below(6));
  if (options.orderer_crashes) {
    for (std::uint64_t i = 0, n = rng.below(static_cast<std::uint64_t>(c.orderers)); i < n; ++i) {
      c.orderer_crashes.push_back(
          {static_cast<Step>(rng.below(static_cast<std::uint64_t>(c.horizon) + 1)),
           static_cast<int>(rng.below(static_cast<std::uint64_t>(c.orderers)))});
    }
  }
  // A replayed nonce exercises V3.
  if (rng.below(2)) {
    c.workload.push_back({0, {"r1", "client0", 77, {SetOp{"k0", 1}, true}}});
    c.workload.push_back({1, {"r2", "client0", 77, {SetOp{"k1", 1}, true}}});
  }
  c.seed = rng.next();
  return c;
}

}  // namespace support
