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

#include "assure/error.hpp"

namespace assure {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::UnknownParent: return "UnknownParent";
    case ErrorCode::ChildRuleViolation: return "ChildRuleViolation";
    case ErrorCode::MultipleArguments: return "MultipleArguments";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::ArityViolation: return "ArityViolation";
    case ErrorCode::SideFlagViolation: return "SideFlagViolation";
    case ErrorCode::InvalidId: return "InvalidId";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::NotEvidence: return "NotEvidence";
    case ErrorCode::EmptyCriteria: return "EmptyCriteria";
    case ErrorCode::BadDigest: return "BadDigest";
    case ErrorCode::BadPolicy: return "BadPolicy";
    case ErrorCode::BadLabeling: return "BadLabeling";
    case ErrorCode::TooManyIdentities: return "TooManyIdentities";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::BadProbability: return "BadProbability";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

}  // namespace assure
