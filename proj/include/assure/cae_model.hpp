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

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace assure {

enum class ArgumentKind { Decomposition, Substitution, Concretization };
enum class EvidenceKind { Hypothesis, Proof };

// Aggregation order: a parent is only as strong as its weakest required child.
enum class Status { Undeveloped = 0, Assumed = 1, Supported = 2 };

std::string_view to_string(ArgumentKind kind);
std::string_view to_string(EvidenceKind kind);
std::string_view to_string(Status status);

struct ClaimNode {
  std::string id;
  std::string text;
  std::vector<std::string> children;
  std::optional<std::string> tag;

  bool operator==(const ClaimNode&) const = default;
};

struct ArgumentNode {
  std::string id;
  ArgumentKind kind = ArgumentKind::Decomposition;
  std::string text;
  std::vector<std::string> children;
  std::optional<std::string> tag;

  bool operator==(const ArgumentNode&) const = default;
};

/// Leaf node. `reference` locates an external report and `digest` is the
/// 64-hex-char hash of that report's bytes.
struct EvidenceNode {
  std::string id;
  EvidenceKind kind = EvidenceKind::Proof;
  std::string text;
  std::optional<std::string> reference;
  std::optional<std::string> digest;
  std::optional<std::string> tag;

  bool operator==(const EvidenceNode&) const = default;
};

using Node = std::variant<ClaimNode, ArgumentNode, EvidenceNode>;

const std::string& node_id(const Node& node);
std::span<const std::string> node_children(const Node& node);
bool is_claim(const Node& node);
bool is_argument(const Node& node);
bool is_evidence(const Node& node);

/// Letters, digits and `.`, `'`, `-`, `_`; nonempty.
bool is_valid_node_id(std::string_view id);

/// Immutable claim/argument/evidence tree. Instances produced by build_tree
/// are guaranteed well-formed; `assemble` performs no checks so that
/// check_well_formed can report on arbitrary input (e.g. a parsed document).
class CaeTree {
 public:
  using NodeMap = std::map<std::string, Node, std::less<>>;

  CaeTree() = default;

  static CaeTree assemble(std::string root, NodeMap nodes,
                          std::set<std::string, std::less<>> side_flags = {});

  const std::string& root() const noexcept { return root_; }
  const NodeMap& nodes() const noexcept { return nodes_; }
  const std::set<std::string, std::less<>>& side_flags() const noexcept { return side_flags_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  bool contains(std::string_view id) const;
  const Node* find(std::string_view id) const;
  /// Throws Error(UnknownNode).
  const Node& at(std::string_view id) const;
  bool is_side(std::string_view id) const;

  /// Nodes reachable from `from` in document (preorder, child order) order.
  /// Each node is visited at most once even if the edge relation is cyclic.
  std::vector<std::string> preorder(std::string_view from) const;
  std::vector<std::string> preorder() const { return preorder(root_); }

  /// Copy of this tree with the node of the same id replaced.
  CaeTree with_node(Node replacement) const;

  bool operator==(const CaeTree&) const = default;

 private:
  std::string root_;
  NodeMap nodes_;
  std::set<std::string, std::less<>> side_flags_;
};

struct NodeEntry {
  std::string parent;
  Node node;
  bool side = false;
};

/// Builds a tree from a root claim and (parent, node) entries. Children are
/// attached in entry order; any `children` already present on the supplied
/// nodes are ignored. Throws Error with one of DuplicateId, UnknownParent,
/// ChildRuleViolation, MultipleArguments, CycleDetected, ArityViolation,
/// SideFlagViolation or InvalidId.
CaeTree build_tree(ClaimNode root, const std::vector<NodeEntry>& entries);

enum class Rule {
  InvalidId,
  RootNotClaim,
  DanglingChild,
  MultipleParents,
  Unreachable,
  ChildRuleViolation,
  MultipleArguments,
  ArityViolation,
  SideFlagViolation,
  DigestWithoutReference,
};

std::string_view to_string(Rule rule);

struct Violation {
  std::string node_id;
  Rule rule;
  std::string detail;

  bool operator==(const Violation&) const = default;
};

/// Violations are reported in node-id order, then rule order.
std::vector<Violation> check_well_formed(const CaeTree& tree);

/// Throws Error(UnknownNode).
Status node_status(const CaeTree& tree, std::string_view id);

/// Hypothesis leaves in the subtree of `id`, in document order.
std::vector<std::string> assumptions_of(const CaeTree& tree, std::string_view id);

/// Top of an assurance case for a blockchain-based application: one
/// decomposition over the functional elements, each safety element
/// concretized by the supplied criteria into an undeveloped placeholder.
CaeTree instantiate_template(std::string_view app_name,
                             const std::vector<std::string>& validity_criteria,
                             const std::vector<std::string>& consistency_criteria,
                             bool include_liveness);

}  // namespace assure
