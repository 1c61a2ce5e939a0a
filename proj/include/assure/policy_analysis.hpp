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
#include <string>
#include <string_view>
#include <vector>

#include "assure/policy.hpp"

namespace assure {

/// Upper bound on distinct identities for exhaustive (2^n) analysis.
inline constexpr std::size_t kMaxAnalysisIdentities = 20;

enum class Fault { Honest, Fraudulent, Censoring, Crashed };

std::string_view to_string(Fault f);
std::optional<Fault> fault_from_string(std::string_view s);

using FaultLabeling = std::map<std::string, Fault>;
using SignerSet = std::vector<std::string>;  // sorted identities

/// All inclusion-minimal satisfying sets, ordered by size then by identity
/// bitmask. Throws Error(TooManyIdentities) above the enumeration bound.
std::vector<SignerSet> min_satisfying_sets(const EndorsementPolicy& policy);

/// All inclusion-minimal sets whose absence makes the policy unsatisfiable
/// (the minimal hitting sets of min_satisfying_sets).
std::vector<SignerSet> min_blocking_sets(const EndorsementPolicy& policy);

/// Some satisfying set is made only of Fraudulent identities. The labeling
/// must cover exactly the policy's identities (Error(BadLabeling)).
bool fraud_possible(const EndorsementPolicy& policy, const FaultLabeling& labeling);

/// No satisfying set is made only of Honest identities: Censoring, Crashed
/// and Fraudulent endorsers all withhold their signature from a valid
/// transaction.
bool censorship_possible(const EndorsementPolicy& policy, const FaultLabeling& labeling);

/// Largest f such that no f fraudulent identities can satisfy the policy.
int fraud_tolerance(const EndorsementPolicy& policy);

/// Largest c such that removing any c identities leaves a satisfying set.
int censorship_tolerance(const EndorsementPolicy& policy);

/// Largest b with b/n < 1/3.
int max_byzantine(int n);

}  // namespace assure
