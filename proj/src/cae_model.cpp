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

#include "assure/cae_model.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "assure/digest.hpp"
#include "assure/error.hpp"

namespace assure {

std::string_view to_string(ArgumentKind kind) {
  switch (kind) {
    case ArgumentKind::Decomposition: return "decomposition";
    case ArgumentKind::Substitution: return "substitution";
    case ArgumentKind::Concretization: return "concretization";
  }
  return "?";
}

std::string_view to_string(EvidenceKind kind) {
  return kind == EvidenceKind::Hypothesis ? "hypothesis" : "proof";
}

std::string_view to_string(Status status) {
  switch (status) {
    case Status::Undeveloped: return "Undeveloped";
    case Status::Assumed: return "Assumed";
    case Status::Supported: return "Supported";
  }
  return "?";
}

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::InvalidId: return "InvalidId";
    case Rule::RootNotClaim: return "RootNotClaim";
    case Rule::DanglingChild: return "DanglingChild";
    case Rule::MultipleParents: return "MultipleParents";
    case Rule::Unreachable: return "Unreachable";
    case Rule::ChildRuleViolation: return "ChildRuleViolation";
    case Rule::MultipleArguments: return "MultipleArguments";
    case Rule::ArityViolation: return "ArityViolation";
    case Rule::SideFlagViolation: return "SideFlagViolation";
    case Rule::DigestWithoutReference: return "DigestWithoutReference";
  }
  return "?";
}

const std::string& node_id(const Node& node) {
  return std::visit([](const auto& n) -> const std::string& { return n.id; }, node);
}

std::span<const std::string> node_children(const Node& node) {
  if (const auto* c = std::get_if<ClaimNode>(&node)) return c->children;
  if (const auto* a = std::get_if<ArgumentNode>(&node)) return a->children;
  return {};
}

bool is_claim(const Node& node) { return std::holds_alternative<ClaimNode>(node); }
bool is_argument(const Node& node) { return std::holds_alternative<ArgumentNode>(node); }
bool is_evidence(const Node& node) { return std::holds_alternative<EvidenceNode>(node); }

bool is_valid_node_id(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char ch) {
    const auto c = static_cast<unsigned char>(ch);
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '.' || c == '\'' || c == '-' || c == '_';
  });
}

CaeTree CaeTree::assemble(std::string root, NodeMap nodes,
                          std::set<std::string, std::less<>> side_flags) {
  CaeTree tree;
  tree.root_ = std::move(root);
  tree.nodes_ = std::move(nodes);
  tree.side_flags_ = std::move(side_flags);
  return tree;
}

bool CaeTree::contains(std::string_view id) const { return nodes_.find(id) != nodes_.end(); }

const Node* CaeTree::find(std::string_view id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : &it->second;
}

const Node& CaeTree::at(std::string_view id) const {
  if (const Node* n = find(id)) return *n;
  throw Error(ErrorCode::UnknownNode, std::string(id));
}

bool CaeTree::is_side(std::string_view id) const {
  return side_flags_.find(id) != side_flags_.end();
}

std::vector<std::string> CaeTree::preorder(std::string_view from) const {
  std::vector<std::string> order;
  std::unordered_set<std::string> seen;
  std::vector<std::string> stack;
  if (contains(from)) stack.emplace_back(from);
  while (!stack.empty()) {
    std::string id = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    const Node& node = nodes_.find(id)->second;
    auto children = node_children(node);
    for (auto it = children.rbegin(); it != children.rend(); ++it) {
      if (contains(*it) && !seen.count(*it)) stack.push_back(*it);
    }
    order.push_back(std::move(id));
  }
  return order;
}

CaeTree CaeTree::with_node(Node replacement) const {
  CaeTree copy = *this;
  auto it = copy.nodes_.find(node_id(replacement));
  if (it == copy.nodes_.end()) throw Error(ErrorCode::UnknownNode, node_id(replacement));
  it->second = std::move(replacement);
  return copy;
}

namespace {

ErrorCode error_for(Rule rule) {
  switch (rule) {
    case Rule::InvalidId: return ErrorCode::InvalidId;
    case Rule::RootNotClaim: return ErrorCode::ChildRuleViolation;
    case Rule::DanglingChild: return ErrorCode::UnknownParent;
    case Rule::MultipleParents: return ErrorCode::DuplicateId;
    case Rule::Unreachable: return ErrorCode::CycleDetected;
    case Rule::ChildRuleViolation: return ErrorCode::ChildRuleViolation;
    case Rule::MultipleArguments: return ErrorCode::MultipleArguments;
    case Rule::ArityViolation: return ErrorCode::ArityViolation;
    case Rule::SideFlagViolation: return ErrorCode::SideFlagViolation;
    case Rule::DigestWithoutReference: return ErrorCode::BadDigest;
  }
  return ErrorCode::ChildRuleViolation;
}

}  // namespace

CaeTree build_tree(ClaimNode root, const std::vector<NodeEntry>& entries) {
  if (!is_valid_node_id(root.id)) throw Error(ErrorCode::InvalidId, root.id);
  root.children.clear();

  CaeTree::NodeMap nodes;
  std::set<std::string, std::less<>> side;
  const std::string root_id = root.id;
  nodes.emplace(root_id, std::move(root));

  for (const auto& entry : entries) {
    const std::string& id = node_id(entry.node);
    if (!is_valid_node_id(id)) throw Error(ErrorCode::InvalidId, id);
    Node copy = entry.node;
    if (auto* c = std::get_if<ClaimNode>(&copy)) c->children.clear();
    if (auto* a = std::get_if<ArgumentNode>(&copy)) a->children.clear();
    if (!nodes.emplace(id, std::move(copy)).second) throw Error(ErrorCode::DuplicateId, id);
    if (entry.side) side.insert(id);
  }

  for (const auto& entry : entries) {
    const std::string& id = node_id(entry.node);
    auto parent = nodes.find(entry.parent);
    if (parent == nodes.end()) {
      throw Error(ErrorCode::UnknownParent, entry.parent + " (parent of " + id + ")");
    }
    if (auto* c = std::get_if<ClaimNode>(&parent->second)) {
      c->children.push_back(id);
    } else if (auto* a = std::get_if<ArgumentNode>(&parent->second)) {
      a->children.push_back(id);
    } else {
      throw Error(ErrorCode::ChildRuleViolation, "evidence " + entry.parent + " cannot have child " + id);
    }
  }

  CaeTree tree = CaeTree::assemble(root_id, std::move(nodes), std::move(side));
  // Every entry has exactly one parent, so anything unreachable sits on a cycle.
  if (tree.preorder().size() != tree.size()) {
    throw Error(ErrorCode::CycleDetected, "nodes not reachable from " + root_id);
  }
  auto violations = check_well_formed(tree);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw Error(error_for(v.rule), v.node_id + ": " + v.detail);
  }
  return tree;
}

std::vector<Violation> check_well_formed(const CaeTree& tree) {
  std::vector<Violation> out;
  auto report = [&](const std::string& id, Rule rule, std::string detail) {
    out.push_back({id, rule, std::move(detail)});
  };

  const Node* root = tree.find(tree.root());
  if (root == nullptr || !is_claim(*root)) {
    report(tree.root(), Rule::RootNotClaim, "root must be an existing claim");
  }

  std::unordered_map<std::string, std::vector<std::string>> parents;
  for (const auto& [key, node] : tree.nodes()) {
    for (const auto& child : node_children(node)) parents[child].push_back(key);
  }
  std::unordered_set<std::string> reachable;
  for (auto& id : tree.preorder()) reachable.insert(std::move(id));

  for (const auto& [key, node] : tree.nodes()) {
    if (!is_valid_node_id(key) || key != node_id(node)) {
      report(key, Rule::InvalidId, "malformed or mismatched id");
    }
    auto found = parents.find(key);
    const std::size_t parent_count = found == parents.end() ? 0 : found->second.size();
    if (key == tree.root() && parent_count > 0) {
      report(key, Rule::Unreachable, "root appears as a child (cycle)");
    } else if (parent_count > 1) {
      report(key, Rule::MultipleParents, "node has " + std::to_string(parent_count) + " parents");
    }
    if (key != tree.root() && !reachable.count(key)) {
      report(key, Rule::Unreachable, "not reachable from root " + tree.root());
    }

    std::size_t arguments = 0;
    std::size_t plain_claims = 0;
    for (const auto& child_id : node_children(node)) {
      const Node* child = tree.find(child_id);
      if (child == nullptr) {
        report(key, Rule::DanglingChild, "unknown child " + child_id);
        continue;
      }
      if (is_claim(node) && is_claim(*child)) {
        report(key, Rule::ChildRuleViolation, "claim " + child_id + " directly under claim");
      }
      if (is_argument(node) && is_argument(*child)) {
        report(key, Rule::ChildRuleViolation, "argument " + child_id + " directly under argument");
      }
      if (is_argument(*child)) ++arguments;
      if (is_claim(*child) && !tree.is_side(child_id)) ++plain_claims;
    }
    if (is_claim(node) && arguments > 1) {
      report(key, Rule::MultipleArguments, "claim refined by " + std::to_string(arguments) + " arguments");
    }
    if (const auto* arg = std::get_if<ArgumentNode>(&node)) {
      const std::size_t needed = arg->kind == ArgumentKind::Decomposition ? 2 : 1;
      if (plain_claims < needed) {
        report(key, Rule::ArityViolation,
               std::string(to_string(arg->kind)) + " needs at least " + std::to_string(needed) +
                   " subclaim(s), has " + std::to_string(plain_claims));
      }
    }
    if (const auto* ev = std::get_if<EvidenceNode>(&node)) {
      if (ev->digest && !ev->reference) {
        report(key, Rule::DigestWithoutReference, "digest present without reference");
      }
      if (ev->digest && !is_hex_digest(*ev->digest)) {
        report(key, Rule::DigestWithoutReference, "digest is not 64 lowercase hex characters");
      }
    }
  }

  for (const auto& id : tree.side_flags()) {
    const Node* node = tree.find(id);
    if (node == nullptr || !is_claim(*node)) {
      report(id, Rule::SideFlagViolation, "side flag on a non-claim");
      continue;
    }
    auto found = parents.find(id);
    const bool under_argument = found != parents.end() && !found->second.empty() &&
                                std::all_of(found->second.begin(), found->second.end(), [&](const std::string& p) {
                                  const Node* parent = tree.find(p);
                                  return parent != nullptr && is_argument(*parent);
                                });
    if (!under_argument) report(id, Rule::SideFlagViolation, "side-claim must sit under an argument");
  }

  std::stable_sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
    if (a.node_id != b.node_id) return a.node_id < b.node_id;
    return static_cast<int>(a.rule) < static_cast<int>(b.rule);
  });
  return out;
}

namespace {

Status status_of(const CaeTree& tree, const std::string& id, std::unordered_set<std::string>& visiting) {
  const Node* node = tree.find(id);
  if (node == nullptr || !visiting.insert(id).second) return Status::Undeveloped;

  Status result = Status::Supported;
  if (const auto* ev = std::get_if<EvidenceNode>(node)) {
    result = ev->kind == EvidenceKind::Proof ? Status::Supported : Status::Assumed;
  } else {
    auto children = node_children(*node);
    if (children.empty()) {
      result = Status::Undeveloped;
    } else {
      for (const auto& child : children) result = std::min(result, status_of(tree, child, visiting));
    }
  }
  visiting.erase(id);
  return result;
}

}  // namespace

Status node_status(const CaeTree& tree, std::string_view id) {
  tree.at(id);
  std::unordered_set<std::string> visiting;
  return status_of(tree, std::string(id), visiting);
}

std::vector<std::string> assumptions_of(const CaeTree& tree, std::string_view id) {
  tree.at(id);
  std::vector<std::string> out;
  for (auto& visited : tree.preorder(id)) {
    const auto* ev = std::get_if<EvidenceNode>(&tree.at(visited));
    if (ev != nullptr && ev->kind == EvidenceKind::Hypothesis) out.push_back(std::move(visited));
  }
  return out;
}

namespace {

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

CaeTree instantiate_template(std::string_view app_name,
                             const std::vector<std::string>& validity_criteria,
                             const std::vector<std::string>& consistency_criteria,
                             bool include_liveness) {
  if (validity_criteria.empty()) throw Error(ErrorCode::EmptyCriteria, "validity criteria");
  if (consistency_criteria.empty()) throw Error(ErrorCode::EmptyCriteria, "consistency criteria");
  const std::string app(app_name);

  std::vector<NodeEntry> entries;
  entries.push_back({"C", ArgumentNode{"A", ArgumentKind::Decomposition,
                                       "Functional analysis of a distributed ledger: registration of valid "
                                       "transactions and consistent reads",
                                       {}, std::nullopt}});
  entries.push_back({"A", ClaimNode{"C1", app + " registers only valid transactions", {}, std::string("FE2")}});
  entries.push_back({"C1", ArgumentNode{"A1", ArgumentKind::Concretization,
                                        "Validity is defined by the criteria: " + join(validity_criteria, "; "),
                                        {}, std::nullopt}});
  entries.push_back({"A1", ClaimNode{"C1c",
                                     app + " registers only transactions satisfying " +
                                         join(validity_criteria, "; "),
                                     {}, std::nullopt}});
  entries.push_back({"A", ClaimNode{"C2", app + " answers consistently to read requests", {}, std::string("FE3")}});
  entries.push_back({"C2", ArgumentNode{"A2", ArgumentKind::Concretization,
                                        "Consistency is defined by the criteria: " +
                                            join(consistency_criteria, "; "),
                                        {}, std::nullopt}});
  entries.push_back({"A2", ClaimNode{"C2c",
                                     app + " satisfies " + join(consistency_criteria, "; "),
                                     {}, std::nullopt}});
  if (include_liveness) {
    entries.push_back({"A", ClaimNode{"C3", app + " registers any valid transaction eventually", {},
                                      std::string("FE1")}});
  }
  return build_tree(ClaimNode{"C", app + " is dependable and secure", {}, std::nullopt}, entries);
}

}  // namespace assure
