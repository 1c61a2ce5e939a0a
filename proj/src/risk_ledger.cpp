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

#include "assure/risk_ledger.hpp"

#include <algorithm>

namespace assure {

std::string_view to_string(MitigationCategory c) {
  switch (c) {
    case MitigationCategory::Prevention: return "prevention";
    case MitigationCategory::Elimination: return "elimination";
    case MitigationCategory::Tolerance: return "tolerance";
    case MitigationCategory::Forecasting: return "forecasting";
  }
  return "?";
}

std::string_view to_string(Criticality c) {
  switch (c) {
    case Criticality::Low: return "Low";
    case Criticality::Medium: return "Medium";
    case Criticality::High: return "High";
  }
  return "?";
}

std::string_view to_string(Likelihood l) {
  switch (l) {
    case Likelihood::Rare: return "Rare";
    case Likelihood::Possible: return "Possible";
    case Likelihood::Frequent: return "Frequent";
  }
  return "?";
}

std::string_view to_string(Coverage c) {
  switch (c) {
    case Coverage::Covered: return "Covered";
    case Coverage::AcceptedAsIs: return "AcceptedAsIs";
    case Coverage::Uncovered: return "Uncovered";
    case Coverage::Dangling: return "Dangling";
  }
  return "?";
}

namespace {

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(std::string_view word, const std::array<Enum, N>& values) {
  for (auto v : values) {
    if (to_string(v) == word) return v;
  }
  return std::nullopt;
}

constexpr std::array<Criticality, 3> kCriticalities = {Criticality::Low, Criticality::Medium, Criticality::High};
constexpr std::array<Likelihood, 3> kLikelihoods = {Likelihood::Rare, Likelihood::Possible, Likelihood::Frequent};

}  // namespace

RegistryParseResult parse_registry(std::string_view text) {
  auto lexed = text::lex(text);
  std::vector<ParseError> errors = std::move(lexed.errors);
  auto error = [&](SourceSpan span, ParseErrorCode code, std::string detail) {
    errors.push_back(make_parse_error(span, code, detail));
  };

  RiskRegistry registry;
  std::set<std::string, std::less<>> ids;
  // Index into registry.risks of the risk currently receiving children; -1 when
  // the last top-level line was rejected.
  long current = -1;
  bool have_parent_line = false;

  for (const auto& line : lexed.lines) {
    const SourceSpan line_span{line.number, line.level * 2 + 1};
    const auto& tokens = line.tokens;
    if (line.level > 1 || (line.level == 1 && !have_parent_line)) {
      error(line_span, ParseErrorCode::BadIndent, "unexpected indentation");
      continue;
    }
    if (line.level == 0) {
      have_parent_line = true;
      current = -1;
      if (line.broken) continue;
      if (tokens.size() < 3 || tokens[0].type != text::TokenType::Word || tokens[0].value != "risk" ||
          tokens[1].type != text::TokenType::Word || tokens[2].type != text::TokenType::String) {
        error(line_span, ParseErrorCode::BadKind, "expected risk <id> \"<description>\" attributes...");
        continue;
      }
      Risk risk;
      risk.id = tokens[1].value;
      risk.description = tokens[2].value;
      bool ok = true;
      if (!is_valid_node_id(risk.id)) {
        error(tokens[1].span, ParseErrorCode::BadKind, "invalid risk id '" + risk.id + "'");
        ok = false;
      }
      bool have_events = false, have_crit = false, have_like = false;
      for (std::size_t i = 3; i < tokens.size(); ++i) {
        const auto& tok = tokens[i];
        if (tok.type != text::TokenType::Attribute) {
          error(tok.span, ParseErrorCode::BadAttribute, "expected key=\"value\"");
          ok = false;
        } else if (tok.key == "events" && !have_events) {
          have_events = true;
          std::string_view rest = tok.value;
          while (true) {
            auto comma = rest.find(',');
            auto name = rest.substr(0, comma);
            if (auto e = feared_event_from_string(name)) {
              risk.feared_events.insert(*e);
            } else {
              error(tok.span, ParseErrorCode::BadFearedEvent, "'" + std::string(name) + "'");
              ok = false;
            }
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
          }
        } else if (tok.key == "criticality" && !have_crit) {
          have_crit = true;
          if (auto c = lookup(tok.value, kCriticalities)) risk.criticality = *c;
          else {
            error(tok.span, ParseErrorCode::BadAttribute, "criticality must be Low, Medium or High");
            ok = false;
          }
        } else if (tok.key == "likelihood" && !have_like) {
          have_like = true;
          if (auto l = lookup(tok.value, kLikelihoods)) risk.likelihood = *l;
          else {
            error(tok.span, ParseErrorCode::BadAttribute, "likelihood must be Rare, Possible or Frequent");
            ok = false;
          }
        } else {
          error(tok.span, ParseErrorCode::BadAttribute, "unknown or repeated key '" + tok.key + "'");
          ok = false;
        }
      }
      if (!have_events || !have_crit || !have_like) {
        error(line_span, ParseErrorCode::BadAttribute, "risk needs events, criticality and likelihood");
        ok = false;
      }
      if (!ids.insert(risk.id).second) {
        error(tokens[1].span, ParseErrorCode::DuplicateId, "'" + risk.id + "'");
        ok = false;
      }
      if (ok) {
        registry.risks.push_back(std::move(risk));
        current = static_cast<long>(registry.risks.size()) - 1;
      }
      continue;
    }

    if (line.broken) continue;
    if (tokens.empty() || tokens[0].type != text::TokenType::Word) {
      error(line_span, ParseErrorCode::BadKind, "expected mitigation or accept");
      continue;
    }
    if (tokens[0].value == "mitigation") {
      if (tokens.size() != 3 || tokens[1].type != text::TokenType::Word ||
          tokens[2].type != text::TokenType::Attribute) {
        error(line_span, ParseErrorCode::BadKind, "expected mitigation <category> evidence=\"<id>\"");
        continue;
      }
      auto category = lookup(tokens[1].value, kMitigationCategories);
      if (!category) {
        error(tokens[1].span, ParseErrorCode::BadCategory, "'" + tokens[1].value + "'");
        continue;
      }
      if (tokens[2].key != "evidence" || !is_valid_node_id(tokens[2].value)) {
        error(tokens[2].span, ParseErrorCode::BadAttribute, "expected evidence=\"<node id>\"");
        continue;
      }
      if (current >= 0) registry.risks[static_cast<std::size_t>(current)].mitigations.push_back({*category, tokens[2].value});
    } else if (tokens[0].value == "accept") {
      if (tokens.size() != 2 || tokens[1].type != text::TokenType::String) {
        error(line_span, ParseErrorCode::BadKind, "expected accept \"<justification>\"");
        continue;
      }
      if (current >= 0) {
        auto& risk = registry.risks[static_cast<std::size_t>(current)];
        if (risk.accepted_as_is) {
          error(line_span, ParseErrorCode::BadAttribute, "risk already has an acceptance justification");
          continue;
        }
        risk.accepted_as_is = tokens[1].value;
      }
    } else {
      error(tokens[0].span, ParseErrorCode::BadKind, "unknown kind '" + tokens[0].value + "'");
    }
  }

  if (!errors.empty()) {
    std::stable_sort(errors.begin(), errors.end(), [](const ParseError& a, const ParseError& b) {
      return a.span.line != b.span.line ? a.span.line < b.span.line : a.span.column < b.span.column;
    });
    return errors;
  }
  return registry;
}

std::string serialize_registry(const RiskRegistry& registry) {
  std::string out;
  for (const auto& risk : registry.risks) {
    std::string events;
    for (auto e : risk.feared_events) {
      if (!events.empty()) events += ',';
      events += to_string(e);
    }
    out += "risk " + risk.id + " " + text::quote(risk.description) +
           " criticality=" + text::quote(to_string(risk.criticality)) + " events=" + text::quote(events) +
           " likelihood=" + text::quote(to_string(risk.likelihood)) + "\n";
    for (const auto& m : risk.mitigations) {
      out += text::indent(1) + "mitigation " + std::string(to_string(m.category)) +
             " evidence=" + text::quote(m.evidence_id) + "\n";
    }
    if (risk.accepted_as_is) out += text::indent(1) + "accept " + text::quote(*risk.accepted_as_is) + "\n";
  }
  return out;
}

bool CoverageReport::clean() const {
  auto count = [&](Coverage c) {
    auto it = counts.find(c);
    return it == counts.end() ? std::size_t{0} : it->second;
  };
  return count(Coverage::Uncovered) == 0 && count(Coverage::Dangling) == 0;
}

CoverageReport coverage_check(const RiskRegistry& registry, const CaeTree& tree,
                              const std::set<std::string, std::less<>>& unusable_evidence) {
  CoverageReport report;
  for (auto c : {Coverage::Covered, Coverage::AcceptedAsIs, Coverage::Uncovered, Coverage::Dangling}) {
    report.counts[c] = 0;
  }
  for (const auto& risk : registry.risks) {
    RiskCoverage entry{risk.id, Coverage::Uncovered, {}};
    for (const auto& m : risk.mitigations) {
      const Node* node = tree.find(m.evidence_id);
      const bool usable = node != nullptr && is_evidence(*node) && !unusable_evidence.count(m.evidence_id);
      if (!usable && std::find(entry.missing_evidence.begin(), entry.missing_evidence.end(), m.evidence_id) ==
                         entry.missing_evidence.end()) {
        entry.missing_evidence.push_back(m.evidence_id);
      }
    }
    if (!entry.missing_evidence.empty()) entry.bucket = Coverage::Dangling;
    else if (!risk.mitigations.empty()) entry.bucket = Coverage::Covered;
    else if (risk.accepted_as_is) entry.bucket = Coverage::AcceptedAsIs;
    ++report.counts[entry.bucket];
    report.risks.push_back(std::move(entry));
  }
  return report;
}

std::map<MitigationCategory, std::size_t> category_profile(const RiskRegistry& registry) {
  std::map<MitigationCategory, std::size_t> profile;
  for (auto c : kMitigationCategories) profile[c] = 0;
  for (const auto& risk : registry.risks) {
    for (const auto& m : risk.mitigations) ++profile[m.category];
  }
  return profile;
}

}  // namespace assure
