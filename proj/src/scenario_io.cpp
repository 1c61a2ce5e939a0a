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

#include "assure/scenario_io.hpp"

#include <json.hpp>

#include "assure/error.hpp"

namespace assure {

using nlohmann::json;
using namespace sim;

namespace {

[[noreturn]] void bad(const std::string& why) { throw Error(ErrorCode::ConfigInvalid, why); }

json op_to_json(const ChaincodeOp& op) {
  json j;
  if (const auto* s = std::get_if<SetOp>(&op.action)) {
    j = {{"kind", "Set"}, {"key", s->key}, {"value", s->value}};
  } else if (const auto* t = std::get_if<TransferOp>(&op.action)) {
    j = {{"kind", "Transfer"}, {"from", t->from}, {"to", t->to}, {"amount", t->amount}};
  } else {
    j = {{"kind", "Noop"}};
  }
  return j;
}

void check_keys(const json& j, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!j.is_object()) bad(where + " must be an object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) bad("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T get(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) bad("missing '" + std::string(key) + "' in " + where);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    bad("wrong type for '" + std::string(key) + "' in " + where);
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  return j.contains(key) ? get<T>(j, key, where) : fallback;
}

ChaincodeOp op_from_json(const json& j, bool valid, const std::string& where) {
  ChaincodeOp op;
  op.ground_truth_valid = valid;
  const auto kind = get<std::string>(j, "kind", where);
  if (kind == "Set") {
    check_keys(j, {"kind", "key", "value"}, where);
    op.action = SetOp{get<std::string>(j, "key", where), get<std::int64_t>(j, "value", where)};
  } else if (kind == "Transfer") {
    check_keys(j, {"kind", "from", "to", "amount"}, where);
    op.action = TransferOp{get<std::string>(j, "from", where), get<std::string>(j, "to", where),
                           get<std::int64_t>(j, "amount", where)};
  } else if (kind == "Noop") {
    check_keys(j, {"kind"}, where);
    op.action = NoopOp{};
  } else {
    bad("unknown op kind '" + kind + "' in " + where);
  }
  return op;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json criterion_json(const std::optional<Criterion>& c) {
  return c ? json(std::string(to_string(*c))) : json(nullptr);
}

}  // namespace

std::string scenario_to_text(const ScenarioConfig& config) {
  json j;
  j["batch_size"] = config.batch_size;
  json behaviors = json::object();
  for (const auto& [id, b] : config.endorser_behaviors) {
    json entry = {{"mode", std::string(to_string(b.mode))}};
    if (b.mode == BehaviorMode::DoSed) {
      entry["from"] = b.dos_from;
      entry["to"] = b.dos_to;
    }
    behaviors[id] = entry;
  }
  j["endorser_behaviors"] = behaviors;
  if (const auto& g = config.generated_workload) {
    j["generated_workload"] = {{"count", g->count},
                               {"keys", g->keys},
                               {"clients", g->clients},
                               {"last_step", g->last_step},
                               {"transfer_fraction", g->transfer_fraction},
                               {"invalid_fraction", g->invalid_fraction},
                               {"max_amount", g->max_amount}};
  }
  j["horizon"] = config.horizon;
  j["initial_state"] = json::object();
  for (const auto& [k, v] : config.initial_state) j["initial_state"][k] = v;
  j["msp_emitters"] = config.msp_emitters;
  j["msp_endorsers"] = config.msp_endorsers;
  j["orderer_crashes"] = json::array();
  for (const auto& c : config.orderer_crashes) j["orderer_crashes"].push_back({{"step", c.step}, {"index", c.index}});
  j["orderers"] = config.orderers;
  j["peers"] = json::array();
  for (const auto& p : config.peers) j["peers"].push_back({{"skip_v7", p.skip_v7}});
  j["policy"] = to_string(config.policy);
  j["seed"] = config.seed;
  j["workload"] = json::array();
  for (const auto& item : config.workload) {
    j["workload"].push_back({{"step", item.step},
                             {"tx_id", item.proposal.tx_id},
                             {"client", item.proposal.client_id},
                             {"nonce", item.proposal.nonce},
                             {"valid", item.proposal.op.ground_truth_valid},
                             {"op", op_to_json(item.proposal.op)}});
  }
  return dump(j);
}

ScenarioConfig scenario_from_text(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  const std::string top = "scenario";
  check_keys(j,
             {"batch_size", "endorser_behaviors", "generated_workload", "horizon", "initial_state", "msp_emitters",
              "msp_endorsers", "orderer_crashes", "orderers", "peers", "policy", "seed", "workload"},
             top);
  ScenarioConfig config;
  config.batch_size = get_or<int>(j, "batch_size", 10, top);
  config.orderers = get_or<int>(j, "orderers", 3, top);
  config.horizon = get<Step>(j, "horizon", top);
  config.seed = get_or<std::uint64_t>(j, "seed", 0, top);
  config.msp_emitters = get<std::set<std::string>>(j, "msp_emitters", top);
  config.msp_endorsers = get<std::set<std::string>>(j, "msp_endorsers", top);
  try {
    config.policy = parse_policy(get<std::string>(j, "policy", top));
  } catch (const Error& e) {
    bad(std::string("policy: ") + e.what());
  }
  if (j.contains("initial_state")) {
    config.initial_state = get<std::map<std::string, std::int64_t>>(j, "initial_state", top);
  }
  if (j.contains("endorser_behaviors")) {
    const auto& behaviors = j.at("endorser_behaviors");
    if (!behaviors.is_object()) bad("endorser_behaviors must be an object");
    for (const auto& [id, entry] : behaviors.items()) {
      const std::string where = "endorser_behaviors." + id;
      check_keys(entry, {"mode", "from", "to"}, where);
      auto mode = behavior_from_string(get<std::string>(entry, "mode", where));
      if (!mode) bad("unknown mode in " + where);
      EndorserBehavior b{*mode, 0, 0};
      if (*mode == BehaviorMode::DoSed) {
        b.dos_from = get<Step>(entry, "from", where);
        b.dos_to = get<Step>(entry, "to", where);
      }
      config.endorser_behaviors[id] = b;
    }
  }
  if (j.contains("orderer_crashes")) {
    for (const auto& c : j.at("orderer_crashes")) {
      check_keys(c, {"step", "index"}, "orderer_crashes");
      config.orderer_crashes.push_back({get<Step>(c, "step", "orderer_crashes"), get<int>(c, "index", "orderer_crashes")});
    }
  }
  if (j.contains("peers")) {
    config.peers.clear();
    for (const auto& p : j.at("peers")) {
      check_keys(p, {"skip_v7"}, "peers");
      config.peers.push_back({get_or<bool>(p, "skip_v7", false, "peers")});
    }
  }
  if (j.contains("workload")) {
    for (const auto& w : j.at("workload")) {
      const std::string where = "workload";
      check_keys(w, {"step", "tx_id", "client", "nonce", "valid", "op"}, where);
      WorkloadItem item;
      item.step = get<Step>(w, "step", where);
      item.proposal.tx_id = get<std::string>(w, "tx_id", where);
      item.proposal.client_id = get<std::string>(w, "client", where);
      item.proposal.nonce = get<std::uint64_t>(w, "nonce", where);
      if (!w.contains("op")) bad("missing 'op' in workload item " + item.proposal.tx_id);
      item.proposal.op = op_from_json(w.at("op"), get_or<bool>(w, "valid", true, where), where + "." + item.proposal.tx_id);
      config.workload.push_back(std::move(item));
    }
  }
  if (j.contains("generated_workload")) {
    const auto& g = j.at("generated_workload");
    const std::string where = "generated_workload";
    check_keys(g, {"count", "keys", "clients", "last_step", "transfer_fraction", "invalid_fraction", "max_amount"}, where);
    WorkloadGenerator gen;
    gen.count = get<int>(g, "count", where);
    gen.keys = get_or<int>(g, "keys", gen.keys, where);
    gen.clients = get_or<int>(g, "clients", gen.clients, where);
    gen.last_step = get_or<Step>(g, "last_step", gen.last_step, where);
    gen.transfer_fraction = get_or<double>(g, "transfer_fraction", gen.transfer_fraction, where);
    gen.invalid_fraction = get_or<double>(g, "invalid_fraction", gen.invalid_fraction, where);
    gen.max_amount = get_or<std::int64_t>(g, "max_amount", gen.max_amount, where);
    config.generated_workload = gen;
  }
  validate_config(config);
  return config;
}

std::string report_to_text(const RunReport& report) {
  json j;
  j["committed"] = json::array();
  for (const auto& c : report.committed) {
    j["committed"].push_back({{"block_no", c.block_no},
                              {"tx_id", c.tx_id},
                              {"valid", c.valid},
                              {"failed_criterion", criterion_json(c.failed)}});
  }
  j["config_digest"] = report.config_digest;
  j["endorsement_refusals"] = json::array();
  for (const auto& r : report.endorsement_refusals) {
    j["endorsement_refusals"].push_back({{"tx_id", r.tx_id},
                                         {"endorser_id", r.endorser_id},
                                         {"failed_criterion", criterion_json(r.criterion)},
                                         {"reason", r.reason}});
  }
  j["feared_event_counts"] = json::object();
  for (const auto& [event, count] : report.feared_event_counts) {
    j["feared_event_counts"][std::string(to_string(event))] = count;
  }
  j["liveness_lost_at"] = report.liveness_lost_at ? json(*report.liveness_lost_at) : json(nullptr);
  j["outcomes"] = json::array();
  for (const auto& [tx_id, outcome] : report.outcomes) {
    j["outcomes"].push_back({{"tx_id", tx_id}, {"outcome", std::string(to_string(outcome))}});
  }
  j["per_peer_state_digest"] = json::array();
  for (const auto& d : report.per_peer_state_digest) {
    j["per_peer_state_digest"].push_back({{"peer", d.peer}, {"height", d.height}, {"digest", d.digest}});
  }
  j["seed"] = report.seed;
  return dump(j);
}

}  // namespace assure
