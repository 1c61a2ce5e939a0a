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

#include "assure/policy.hpp"

#include <algorithm>
#include <cctype>

#include "assure/digest.hpp"
#include "assure/error.hpp"

namespace assure {

EndorsementPolicy EndorsementPolicy::sig(std::string identity) {
  EndorsementPolicy p;
  p.op = Op::Sig;
  p.identity = std::move(identity);
  return p;
}

EndorsementPolicy EndorsementPolicy::all(std::vector<EndorsementPolicy> children) {
  EndorsementPolicy p;
  p.op = Op::And;
  p.children = std::move(children);
  return p;
}

EndorsementPolicy EndorsementPolicy::any(std::vector<EndorsementPolicy> children) {
  EndorsementPolicy p;
  p.op = Op::Or;
  p.children = std::move(children);
  return p;
}

EndorsementPolicy EndorsementPolicy::out_of(int k, std::vector<EndorsementPolicy> children) {
  EndorsementPolicy p;
  p.op = Op::OutOf;
  p.threshold = k;
  p.children = std::move(children);
  return p;
}

namespace {

std::vector<EndorsementPolicy> sigs(const std::vector<std::string>& ids) {
  std::vector<EndorsementPolicy> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(EndorsementPolicy::sig(id));
  return out;
}

}  // namespace

EndorsementPolicy all_of(const std::vector<std::string>& ids) {
  if (ids.size() == 1) return EndorsementPolicy::sig(ids.front());
  return EndorsementPolicy::all(sigs(ids));
}

EndorsementPolicy any_of(const std::vector<std::string>& ids) {
  if (ids.size() == 1) return EndorsementPolicy::sig(ids.front());
  return EndorsementPolicy::any(sigs(ids));
}

EndorsementPolicy out_of(int k, const std::vector<std::string>& ids) {
  return EndorsementPolicy::out_of(k, sigs(ids));
}

void validate(const EndorsementPolicy& policy) {
  using Op = EndorsementPolicy::Op;
  switch (policy.op) {
    case Op::Sig:
      if (policy.identity.empty()) throw Error(ErrorCode::BadPolicy, "empty identity");
      if (!policy.children.empty()) throw Error(ErrorCode::BadPolicy, "signature leaf with children");
      return;
    case Op::And:
    case Op::Or:
      if (policy.children.size() < 2) {
        throw Error(ErrorCode::BadPolicy, "AND/OR need at least two operands");
      }
      break;
    case Op::OutOf:
      if (policy.threshold < 1 || policy.threshold > static_cast<int>(policy.children.size())) {
        throw Error(ErrorCode::BadPolicy, "OutOf threshold " + std::to_string(policy.threshold) +
                                              " outside [1, " + std::to_string(policy.children.size()) + "]");
      }
      break;
  }
  for (const auto& child : policy.children) validate(child);
}

namespace {

void collect(const EndorsementPolicy& p, std::set<std::string>& out) {
  if (p.op == EndorsementPolicy::Op::Sig) out.insert(p.identity);
  for (const auto& c : p.children) collect(c, out);
}

}  // namespace

std::set<std::string> identities(const EndorsementPolicy& policy) {
  std::set<std::string> out;
  collect(policy, out);
  return out;
}

bool eval_policy(const EndorsementPolicy& policy, const std::set<std::string>& signers) {
  using Op = EndorsementPolicy::Op;
  switch (policy.op) {
    case Op::Sig:
      return signers.count(policy.identity) > 0;
    case Op::And:
      return std::all_of(policy.children.begin(), policy.children.end(),
                         [&](const auto& c) { return eval_policy(c, signers); });
    case Op::Or:
      return std::any_of(policy.children.begin(), policy.children.end(),
                         [&](const auto& c) { return eval_policy(c, signers); });
    case Op::OutOf: {
      int satisfied = 0;
      for (const auto& c : policy.children) {
        if (eval_policy(c, signers) && ++satisfied >= policy.threshold) return true;
      }
      return false;
    }
  }
  return false;
}

std::string to_string(const EndorsementPolicy& policy) {
  using Op = EndorsementPolicy::Op;
  if (policy.op == Op::Sig) return "'" + policy.identity + "'";
  std::string out;
  if (policy.op == Op::And) out = "AND(";
  else if (policy.op == Op::Or) out = "OR(";
  else out = "OutOf(" + std::to_string(policy.threshold) + ",";
  for (std::size_t i = 0; i < policy.children.size(); ++i) {
    if (i) out += ',';
    out += to_string(policy.children[i]);
  }
  out += ')';
  return out;
}

namespace {

class PolicyParser {
 public:
  explicit PolicyParser(std::string_view text) : text_(text) {}

  EndorsementPolicy parse() {
    auto p = expression();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    validate(p);
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::BadPolicy, what + " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string word() {
    skip_space();
    if (pos_ < text_.size() && (text_[pos_] == '\'' || text_[pos_] == '"')) {
      const char q = text_[pos_++];
      auto end = text_.find(q, pos_);
      if (end == std::string_view::npos) fail("unterminated identity");
      std::string w(text_.substr(pos_, end - pos_));
      pos_ = end + 1;
      if (w.empty()) fail("empty identity");
      return w;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',') break;
      ++pos_;
    }
    if (start == pos_) fail("expected identity or operator");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::vector<EndorsementPolicy> operands() {
    std::vector<EndorsementPolicy> out;
    do {
      out.push_back(expression());
    } while (consume(','));
    if (!consume(')')) fail("expected ')'");
    return out;
  }

  EndorsementPolicy expression() {
    skip_space();
    const bool quoted = pos_ < text_.size() && (text_[pos_] == '\'' || text_[pos_] == '"');
    std::string w = word();
    if (quoted || !consume('(')) return EndorsementPolicy::sig(std::move(w));
    std::string upper = w;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (upper == "AND") return EndorsementPolicy::all(operands());
    if (upper == "OR") return EndorsementPolicy::any(operands());
    if (upper == "OUTOF") {
      std::string k = word();
      int threshold = 0;
      try {
        std::size_t used = 0;
        threshold = std::stoi(k, &used);
        if (used != k.size()) fail("bad threshold '" + k + "'");
      } catch (const std::logic_error&) {
        fail("bad threshold '" + k + "'");
      }
      if (!consume(',')) fail("expected ','");
      return EndorsementPolicy::out_of(threshold, operands());
    }
    fail("unknown operator '" + w + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

EndorsementPolicy parse_policy(std::string_view text) { return PolicyParser(text).parse(); }

std::string policy_digest(const EndorsementPolicy& policy) { return sha256_hex(to_string(policy)); }

CompiledPolicy::CompiledPolicy(const EndorsementPolicy& policy) {
  validate(policy);
  auto ids = assure::identities(policy);
  identities_.assign(ids.begin(), ids.end());
  if (identities_.size() > 32) throw Error(ErrorCode::TooManyIdentities, std::to_string(identities_.size()));

  auto emit = [&](auto&& self, const EndorsementPolicy& p) -> void {
    if (p.op == EndorsementPolicy::Op::Sig) {
      auto it = std::lower_bound(identities_.begin(), identities_.end(), p.identity);
      program_.push_back({p.op, static_cast<int>(it - identities_.begin()), 0});
      return;
    }
    for (const auto& c : p.children) self(self, c);
    program_.push_back({p.op, p.threshold, static_cast<int>(p.children.size())});
  };
  emit(emit, policy);
}

std::uint32_t CompiledPolicy::full_mask() const noexcept {
  return identities_.size() >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << identities_.size()) - 1;
}

bool CompiledPolicy::eval(std::uint32_t signers) const {
  thread_local std::vector<char> stack;
  stack.clear();
  for (const auto& ins : program_) {
    if (ins.op == EndorsementPolicy::Op::Sig) {
      stack.push_back(static_cast<char>((signers >> ins.arg) & 1u));
      continue;
    }
    int count = 0;
    for (int i = 0; i < ins.arity; ++i) {
      count += stack.back();
      stack.pop_back();
    }
    bool value = false;
    switch (ins.op) {
      case EndorsementPolicy::Op::And: value = count == ins.arity; break;
      case EndorsementPolicy::Op::Or: value = count > 0; break;
      default: value = count >= ins.arg; break;
    }
    stack.push_back(static_cast<char>(value));
  }
  return !stack.empty() && stack.back();
}

std::uint32_t CompiledPolicy::mask_of(const std::set<std::string>& ids) const {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < identities_.size(); ++i) {
    if (ids.count(identities_[i])) mask |= std::uint32_t{1} << i;
  }
  return mask;
}

std::vector<std::string> CompiledPolicy::ids_of(std::uint32_t mask) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < identities_.size(); ++i) {
    if ((mask >> i) & 1u) out.push_back(identities_[i]);
  }
  return out;
}

}  // namespace assure
