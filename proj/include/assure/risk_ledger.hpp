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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "assure/cae_model.hpp"
#include "assure/feared_event.hpp"
#include "assure/text_format.hpp"

namespace assure {

enum class MitigationCategory { Prevention, Elimination, Tolerance, Forecasting };
enum class Criticality { Low, Medium, High };
enum class Likelihood { Rare, Possible, Frequent };

inline constexpr std::array<MitigationCategory, 4> kMitigationCategories = {
    MitigationCategory::Prevention, MitigationCategory::Elimination, MitigationCategory::Tolerance,
    MitigationCategory::Forecasting};

std::string_view to_string(MitigationCategory c);  // lowercase, as written in registries
std::string_view to_string(Criticality c);
std::string_view to_string(Likelihood l);

struct Mitigation {
  MitigationCategory category;
  std::string evidence_id;

  bool operator==(const Mitigation&) const = default;
};

struct Risk {
  std::string id;
  std::string description;
  std::set<FearedEvent> feared_events;
  Criticality criticality = Criticality::Medium;
  Likelihood likelihood = Likelihood::Possible;
  std::vector<Mitigation> mitigations;
  std::optional<std::string> accepted_as_is;

  bool operator==(const Risk&) const = default;
};

struct RiskRegistry {
  std::vector<Risk> risks;

  bool operator==(const RiskRegistry&) const = default;
};

using RegistryParseResult = std::variant<RiskRegistry, std::vector<ParseError>>;

/// Registry grammar (same line conventions as `.cae`):
///   risk R3 "Crashes of endorser peers" events="ValidRejected" criticality="Medium" likelihood="Possible"
///     mitigation tolerance evidence="P1c.1.3"
///     accept "residual risk argued acceptable"
RegistryParseResult parse_registry(std::string_view text);

std::string serialize_registry(const RiskRegistry& registry);

enum class Coverage { Covered, AcceptedAsIs, Uncovered, Dangling };

std::string_view to_string(Coverage c);

struct RiskCoverage {
  std::string risk_id;
  Coverage bucket;
  std::vector<std::string> missing_evidence;  // only for Dangling
};

struct CoverageReport {
  std::vector<RiskCoverage> risks;  // registry order
  std::map<Coverage, std::size_t> counts;

  /// No Uncovered and no Dangling risk.
  bool clean() const;
};

/// `unusable_evidence` lists evidence ids whose linked report failed
/// verification; citing them counts as citing missing evidence.
CoverageReport coverage_check(const RiskRegistry& registry, const CaeTree& tree,
                              const std::set<std::string, std::less<>>& unusable_evidence = {});

std::map<MitigationCategory, std::size_t> category_profile(const RiskRegistry& registry);

}  // namespace assure
