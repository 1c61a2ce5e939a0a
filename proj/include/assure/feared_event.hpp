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

#include <array>
#include <optional>
#include <string_view>

namespace assure {

/// System-level failures an assurance case must rule out.
enum class FearedEvent {
  InvalidAccepted,   // an invalid transaction gets registered
  ValidRejected,     // a valid transaction is rejected, dropped or never registered
  InconsistentRead,  // two peers at the same height answer reads differently
};

inline constexpr std::array<FearedEvent, 3> kFearedEvents = {
    FearedEvent::InvalidAccepted, FearedEvent::ValidRejected, FearedEvent::InconsistentRead};

constexpr std::string_view to_string(FearedEvent e) {
  switch (e) {
    case FearedEvent::InvalidAccepted: return "InvalidAccepted";
    case FearedEvent::ValidRejected: return "ValidRejected";
    case FearedEvent::InconsistentRead: return "InconsistentRead";
  }
  return "?";
}

constexpr std::optional<FearedEvent> feared_event_from_string(std::string_view s) {
  for (auto e : kFearedEvents) {
    if (to_string(e) == s) return e;
  }
  return std::nullopt;
}

}  // namespace assure
