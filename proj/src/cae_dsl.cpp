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

#include "assure/cae_dsl.hpp"

#include <algorithm>
#include <set>

#include "assure/digest.hpp"
#include "assure/error.hpp"

namespace assure {

namespace {

enum class LineKind { Claim, SideClaim, Argument, Evidence, Broken };

struct Frame {
  LineKind kind;
  std::string id;
  int line;
  int arguments = 0;
};

struct NodeKindInfo {
  LineKind line_kind;
  ArgumentKind argument = ArgumentKind::Decomposition;
  EvidenceKind evidence = EvidenceKind::Proof;
};

std::optional<NodeKindInfo> classify(std::string_view word) {
  if (word == "claim") return NodeKindInfo{LineKind::Claim};
  if (word == "side-claim") return NodeKindInfo{LineKind::SideClaim};
  if (word == "decomposition") return NodeKindInfo{LineKind::Argument, ArgumentKind::Decomposition};
  if (word == "substitution") return NodeKindInfo{LineKind::Argument, ArgumentKind::Substitution};
  if (word == "concretization") return NodeKindInfo{LineKind::Argument, ArgumentKind::Concretization};
  if (word == "hypothesis") return NodeKindInfo{LineKind::Evidence, {}, EvidenceKind::Hypothesis};
  if (word == "proof") return NodeKindInfo{LineKind::Evidence, {}, EvidenceKind::Proof};
  return std::nullopt;
}

bool is_claim_kind(LineKind k) { return k == LineKind::Claim || k == LineKind::SideClaim; }

void append_child(CaeTree::NodeMap& nodes, const std::string& parent, const std::string& child) {
  auto it = nodes.find(parent);
  if (it == nodes.end()) return;
  if (auto* c = std::get_if<ClaimNode>(&it->second)) c->children.push_back(child);
  if (auto* a = std::get_if<ArgumentNode>(&it->second)) a->children.push_back(child);
}

bool by_position(const ParseError& a, const ParseError& b) {
  if (a.span.line != b.span.line) return a.span.line < b.span.line;
  return a.span.column < b.span.column;
}

}  // namespace

CaeDocument read_cae(std::string_view text) {
  CaeDocument doc;
  auto lexed = text::lex(text);
  doc.errors = std::move(lexed.errors);

  CaeTree::NodeMap nodes;
  std::set<std::string, std::less<>> side;
  std::optional<std::string> root;
  std::vector<Frame> stack;
  std::vector<std::pair<std::string, SourceSpan>> arguments;
  auto error = [&](SourceSpan span, ParseErrorCode code, std::string detail) {
    doc.errors.push_back(make_parse_error(span, code, detail));
  };
  auto structural = [&](SourceSpan span, ParseErrorCode code, std::string detail) {
    doc.structural.push_back(make_parse_error(span, code, detail));
  };

  for (const auto& line : lexed.lines) {
    const SourceSpan line_span{line.number, line.level * 2 + 1};
    if (line.level > static_cast<int>(stack.size())) {
      error(line_span, ParseErrorCode::BadIndent, "indented more than one level below its parent");
      continue;
    }
    stack.resize(static_cast<std::size_t>(line.level));
    if (line.level == 0 && root) {
      error(line_span, ParseErrorCode::BadIndent, "a document has exactly one top-level claim");
      continue;
    }
    if (line.broken) {
      stack.push_back({LineKind::Broken, {}, line.number});
      if (line.level == 0) root = std::string();
      continue;
    }

    const auto& tokens = line.tokens;
    auto broken_frame = [&] {
      stack.push_back({LineKind::Broken, {}, line.number});
      if (line.level == 0) root = std::string();
    };
    if (tokens.size() < 3 || tokens[0].type != text::TokenType::Word ||
        tokens[1].type != text::TokenType::Word || tokens[2].type != text::TokenType::String) {
      error(line_span, ParseErrorCode::BadKind, "expected <kind> <id> \"<text>\"");
      broken_frame();
      continue;
    }
    auto info = classify(tokens[0].value);
    if (!info) {
      error(tokens[0].span, ParseErrorCode::BadKind, "unknown kind '" + tokens[0].value + "'");
      broken_frame();
      continue;
    }
    const std::string& id = tokens[1].value;
    if (!is_valid_node_id(id)) {
      error(tokens[1].span, ParseErrorCode::BadKind, "invalid node id '" + id + "'");
      broken_frame();
      continue;
    }

    std::optional<std::string> ref, digest, tag;
    bool attrs_ok = true;
    for (std::size_t i = 3; i < tokens.size(); ++i) {
      const auto& tok = tokens[i];
      if (tok.type != text::TokenType::Attribute) {
        error(tok.span, ParseErrorCode::BadAttribute, "expected key=\"value\"");
        attrs_ok = false;
        continue;
      }
      std::optional<std::string>* slot = nullptr;
      if (tok.key == "ref") slot = &ref;
      else if (tok.key == "digest") slot = &digest;
      else if (tok.key == "tag") slot = &tag;
      if (slot == nullptr) {
        error(tok.span, ParseErrorCode::BadAttribute, "unknown key '" + tok.key + "'");
        attrs_ok = false;
        continue;
      }
      if (*slot) {
        error(tok.span, ParseErrorCode::BadAttribute, "repeated key '" + tok.key + "'");
        attrs_ok = false;
        continue;
      }
      if (tok.key != "tag" && info->line_kind != LineKind::Evidence) {
        error(tok.span, ParseErrorCode::BadAttribute, "'" + tok.key + "' is only allowed on evidence");
        attrs_ok = false;
        continue;
      }
      if (tok.key == "digest" && !is_hex_digest(tok.value)) {
        error(tok.span, ParseErrorCode::BadAttribute, "digest must be 64 lowercase hex characters");
        attrs_ok = false;
        continue;
      }
      *slot = tok.value;
    }
    if (attrs_ok && digest && !ref) {
      error(line_span, ParseErrorCode::BadAttribute, "digest requires ref");
    }

    if (nodes.count(id)) {
      error(tokens[1].span, ParseErrorCode::DuplicateId, "'" + id + "' already defined on line " +
                                                             std::to_string(doc.spans.at(id).line));
      broken_frame();
      continue;
    }

    const std::string& text_value = tokens[2].value;
    Node node;
    switch (info->line_kind) {
      case LineKind::Claim:
      case LineKind::SideClaim:
        node = ClaimNode{id, text_value, {}, tag};
        break;
      case LineKind::Argument:
        node = ArgumentNode{id, info->argument, text_value, {}, tag};
        break;
      default:
        node = EvidenceNode{id, info->evidence, text_value, ref, digest, tag};
        break;
    }

    if (stack.empty()) {
      root = id;
      if (info->line_kind != LineKind::Claim) {
        structural(tokens[0].span, ParseErrorCode::ChildRuleViolation, "the top-level node must be a claim");
      }
    } else {
      Frame& parent = stack.back();
      const LineKind kind = info->line_kind;
      if (parent.kind == LineKind::Evidence) {
        error(line_span, ParseErrorCode::ChildRuleViolation,
              "evidence '" + parent.id + "' is a leaf and cannot have children");
        broken_frame();
        continue;
      }
      if (parent.kind != LineKind::Broken) {
        if (is_claim_kind(parent.kind) && is_claim_kind(kind)) {
          structural(line_span, ParseErrorCode::ChildRuleViolation,
                     "claim '" + id + "' needs an argument between it and claim '" + parent.id + "'");
        } else if (parent.kind == LineKind::Argument && kind == LineKind::Argument) {
          structural(line_span, ParseErrorCode::ChildRuleViolation,
                     "argument '" + id + "' directly under argument '" + parent.id + "'");
        } else if (kind == LineKind::SideClaim && parent.kind != LineKind::Argument) {
          structural(line_span, ParseErrorCode::ChildRuleViolation,
                     "side-claim '" + id + "' must sit under an argument");
        }
        if (kind == LineKind::Argument && is_claim_kind(parent.kind) && ++parent.arguments > 1) {
          structural(line_span, ParseErrorCode::ChildRuleViolation,
                     "claim '" + parent.id + "' already has an argument");
        }
        append_child(nodes, parent.id, id);
      }
    }

    if (info->line_kind == LineKind::SideClaim) side.insert(id);
    if (info->line_kind == LineKind::Argument) arguments.emplace_back(id, line_span);
    doc.spans.emplace(id, line_span);
    nodes.emplace(id, std::move(node));
    stack.push_back({info->line_kind, id, line.number});
  }

  if (!root && doc.errors.empty()) {
    doc.errors.push_back(make_parse_error({1, 1}, ParseErrorCode::BadKind, "document has no root claim"));
  }

  for (const auto& [id, span] : arguments) {
    const auto& arg = std::get<ArgumentNode>(nodes.at(id));
    const std::size_t needed = arg.kind == ArgumentKind::Decomposition ? 2 : 1;
    std::size_t claims = 0;
    for (const auto& child : arg.children) {
      if (is_claim(nodes.at(child)) && !side.count(child)) ++claims;
    }
    if (claims < needed) {
      structural(span, ParseErrorCode::ArityViolation,
                 std::string(to_string(arg.kind)) + " '" + id + "' needs at least " + std::to_string(needed) +
                     " subclaim(s), has " + std::to_string(claims));
    }
  }

  std::stable_sort(doc.errors.begin(), doc.errors.end(), by_position);
  std::stable_sort(doc.structural.begin(), doc.structural.end(), by_position);
  if (doc.errors.empty()) doc.tree = CaeTree::assemble(*root, std::move(nodes), std::move(side));
  return doc;
}

ParseResult parse(std::string_view text) {
  auto doc = read_cae(text);
  if (doc.errors.empty() && doc.structural.empty()) return std::move(*doc.tree);
  auto errors = std::move(doc.errors);
  errors.insert(errors.end(), doc.structural.begin(), doc.structural.end());
  std::stable_sort(errors.begin(), errors.end(), by_position);
  return errors;
}

namespace {

std::string line_kind_word(const CaeTree& tree, const Node& node) {
  if (std::holds_alternative<ClaimNode>(node)) return tree.is_side(node_id(node)) ? "side-claim" : "claim";
  if (const auto* a = std::get_if<ArgumentNode>(&node)) return std::string(to_string(a->kind));
  return std::string(to_string(std::get<EvidenceNode>(node).kind));
}

void emit(const CaeTree& tree, const std::string& id, int level, std::string& out) {
  const Node& node = tree.at(id);
  out += text::indent(level);
  out += line_kind_word(tree, node);
  out += ' ';
  out += id;
  out += ' ';
  std::visit([&](const auto& n) { out += text::quote(n.text); }, node);
  // keys in sorted order: digest, ref, tag
  if (const auto* ev = std::get_if<EvidenceNode>(&node)) {
    if (ev->digest) out += " digest=" + text::quote(*ev->digest);
    if (ev->reference) out += " ref=" + text::quote(*ev->reference);
  }
  std::visit([&](const auto& n) {
    if (n.tag) out += " tag=" + text::quote(*n.tag);
  }, node);
  out += '\n';
  for (const auto& child : node_children(node)) emit(tree, child, level + 1, out);
}

std::string dot_escape(std::string_view raw) {
  std::string out;
  for (char c : raw) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string serialize(const CaeTree& tree) {
  std::string out;
  emit(tree, tree.root(), 0, out);
  return out;
}

std::string to_dot(const CaeTree& tree) {
  std::string out = "digraph cae {\n  node [shape=box];\n";
  const auto order = tree.preorder();
  for (const auto& id : order) {
    const Node& node = tree.at(id);
    std::string label = id + "\n";
    std::string color;
    if (const auto* c = std::get_if<ClaimNode>(&node)) {
      if (tree.is_side(id)) label += "Side-claim: ";
      label += c->text;
      color = "lightblue";
    } else if (const auto* a = std::get_if<ArgumentNode>(&node)) {
      std::string kind(to_string(a->kind));
      kind[0] = static_cast<char>(kind[0] - 'a' + 'A');
      label += kind + ": " + a->text;
      color = "gold";
    } else {
      const auto& e = std::get<EvidenceNode>(node);
      label += (e.kind == EvidenceKind::Hypothesis ? "Hypothesis: " : "Proof: ") + e.text;
      color = "palegreen";
    }
    out += "  \"" + dot_escape(id) + "\" [label=\"" + dot_escape(label) +
           "\", style=filled, fillcolor=" + color + "];\n";
  }
  for (const auto& id : order) {
    for (const auto& child : node_children(tree.at(id))) {
      out += "  \"" + dot_escape(id) + "\" -> \"" + dot_escape(child) + "\";\n";
    }
  }
  out += "}\n";
  return out;
}

CaeTree link_evidence(const CaeTree& tree, std::string_view id, std::string reference, std::string digest) {
  const Node& node = tree.at(id);
  const auto* ev = std::get_if<EvidenceNode>(&node);
  if (ev == nullptr) throw Error(ErrorCode::NotEvidence, std::string(id));
  if (!is_hex_digest(digest)) throw Error(ErrorCode::BadDigest, digest);
  if (reference.empty()) throw Error(ErrorCode::BadDigest, "empty reference for " + std::string(id));
  EvidenceNode updated = *ev;
  updated.reference = std::move(reference);
  updated.digest = std::move(digest);
  return tree.with_node(std::move(updated));
}

}  // namespace assure
