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

#include "assure/policy_analysis.hpp"

#include "assure/error.hpp"
#include "assure/kernels.hpp"

namespace assure {

std::string_view to_string(Fault f) {
  switch (f) {
    case Fault::Honest: return "Honest";
    case Fault::Fraudulent: return "Fraudulent";
    case Fault::Censoring: return "Censoring";
    case Fault::Crashed: return "Crashed";
  }
  return "?";
}

std::optional<Fault> fault_from_string(std::string_view s) {
  for (auto f : {Fault::Honest, Fault::Fraudulent, Fault::Censoring, Fault::Crashed}) {
    if (to_string(f) == s) return f;
  }
  return std::nullopt;
}

namespace {

CompiledPolicy compile_bounded(const EndorsementPolicy& policy) {
  validate(policy);
  const auto n = identities(policy).size();
  if (n > kMaxAnalysisIdentities) {
    throw Error(ErrorCode::TooManyIdentities,
                std::to_string(n) + " identities exceed the limit of " + std::to_string(kMaxAnalysisIdentities));
  }
  return CompiledPolicy(policy);
}

std::vector<SignerSet> to_sets(const CompiledPolicy& compiled, const std::vector<std::uint32_t>& masks) {
  std::vector<SignerSet> out;
  out.reserve(masks.size());
  for (auto m : masks) out.push_back(compiled.ids_of(m));
  return out;
}

std::set<std::string> labeled(const CompiledPolicy& compiled, const FaultLabeling& labeling, Fault wanted) {
  if (labeling.size() != compiled.width()) {
    throw Error(ErrorCode::BadLabeling, "labeling must cover exactly the policy identities");
  }
  std::set<std::string> out;
  for (const auto& id : compiled.identities()) {
    auto it = labeling.find(id);
    if (it == labeling.end()) throw Error(ErrorCode::BadLabeling, "no label for " + id);
    if (it->second == wanted) out.insert(id);
  }
  return out;
}

}  // namespace

std::vector<SignerSet> min_satisfying_sets(const EndorsementPolicy& policy) {
  const auto compiled = compile_bounded(policy);
  return to_sets(compiled, kernels::omp::minimal_satisfying_masks(compiled));
}

std::vector<SignerSet> min_blocking_sets(const EndorsementPolicy& policy) {
  const auto compiled = compile_bounded(policy);
  return to_sets(compiled, kernels::omp::minimal_blocking_masks(compiled));
}

// Policies are monotone, so "some satisfying set lies inside S" is the same
// as "S itself satisfies".
bool fraud_possible(const EndorsementPolicy& policy, const FaultLabeling& labeling) {
  const auto compiled = compile_bounded(policy);
  return compiled.eval(compiled.mask_of(labeled(compiled, labeling, Fault::Fraudulent)));
}

bool censorship_possible(const EndorsementPolicy& policy, const FaultLabeling& labeling) {
  const auto compiled = compile_bounded(policy);
  return !compiled.eval(compiled.mask_of(labeled(compiled, labeling, Fault::Honest)));
}

int fraud_tolerance(const EndorsementPolicy& policy) {
  const auto compiled = compile_bounded(policy);
  return kernels::omp::min_satisfying_size(compiled) - 1;
}

int censorship_tolerance(const EndorsementPolicy& policy) {
  const auto compiled = compile_bounded(policy);
  return kernels::omp::min_blocking_size(compiled) - 1;
}

int max_byzantine(int n) {
  if (n < 1) throw Error(ErrorCode::ConfigInvalid, "max_byzantine needs n >= 1");
  return (n + 2) / 3 - 1;
}

}  // namespace assure
