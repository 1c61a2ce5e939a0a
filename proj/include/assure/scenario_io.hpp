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

// Canonical JSON documents for scenarios and run reports. Object keys are
// always emitted in sorted order with 2-space indentation and a trailing
// newline, so equal values serialize to equal bytes.

#include <string>
#include <string_view>

#include "assure/eov_sim.hpp"

namespace assure {

std::string scenario_to_text(const sim::ScenarioConfig& config);

/// Throws Error(ConfigInvalid) on malformed JSON, unknown keys or wrong types.
sim::ScenarioConfig scenario_from_text(std::string_view text);

std::string report_to_text(const sim::RunReport& report);

}  // namespace assure
