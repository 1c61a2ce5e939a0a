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

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace assure {

/// Boolean expression over endorser signatures.
struct EndorsementPolicy {
  enum class Op { Sig, And, Or, OutOf };

  Op op = Op::Sig;
  std::string identity;  // Sig only
  int threshold = 0;     // OutOf only
  std::vector<EndorsementPolicy> children;

  static EndorsementPolicy sig(std::string identity);
  static EndorsementPolicy all(std::vector<EndorsementPolicy> children);
  static EndorsementPolicy any(std::vector<EndorsementPolicy> children);
  static EndorsementPolicy out_of(int k, std::vector<EndorsementPolicy> children);

  bool operator==(const EndorsementPolicy&) const = default;
};

/// Convenience constructors over plain identities. A single identity yields
/// a bare signature (And/Or need two children).
EndorsementPolicy all_of(const std::vector<std::string>& ids);
EndorsementPolicy any_of(const std::vector<std::string>& ids);
EndorsementPolicy out_of(int k, const std::vector<std::string>& ids);

/// Throws Error(BadPolicy) when an And/Or has fewer than two children, an
/// OutOf threshold is outside [1, children], or a leaf identity is empty.
void validate(const EndorsementPolicy& policy);

std::set<std::string> identities(const EndorsementPolicy& policy);

bool eval_policy(const EndorsementPolicy& policy, const std::set<std::string>& signers);

/// Canonical text, e.g. `OutOf(2,'E1',AND('E2','E3'))`.
std::string to_string(const EndorsementPolicy& policy);

/// Accepts AND(...), OR(...), OutOf(k, ...) (keywords case-insensitive) over
/// quoted or bare identities. Throws Error(BadPolicy).
EndorsementPolicy parse_policy(std::string_view text);

std::string policy_digest(const EndorsementPolicy& policy);

/// Index-based form of a policy for evaluation over subset bitmasks. Bit i of
/// a mask stands for identities()[i] (sorted order).
class CompiledPolicy {
 public:
  explicit CompiledPolicy(const EndorsementPolicy& policy);

  const std::vector<std::string>& identities() const noexcept { return identities_; }
  std::size_t width() const noexcept { return identities_.size(); }
  std::uint32_t full_mask() const noexcept;

  bool eval(std::uint32_t signers) const;

  std::uint32_t mask_of(const std::set<std::string>& ids) const;
  std::vector<std::string> ids_of(std::uint32_t mask) const;

 private:
  struct Instr {
    EndorsementPolicy::Op op;
    int arg;    // leaf index, or threshold for OutOf
    int arity;  // number of operands popped
  };

  std::vector<std::string> identities_;
  std::vector<Instr> program_;  // postfix
};

}  // namespace assure
