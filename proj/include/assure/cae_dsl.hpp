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
#include <variant>
#include <vector>

#include "assure/cae_model.hpp"
#include "assure/text_format.hpp"

namespace assure {

/// Result of reading a `.cae` document without enforcing tree rules that the
/// in-memory model can represent (arity, multiple arguments, claim-under-claim,
/// side flags). `tree` is set iff `errors` is empty.
struct CaeDocument {
  std::optional<CaeTree> tree;
  std::vector<ParseError> errors;
  /// Structural problems found while reading; reported by parse() as errors.
  std::vector<ParseError> structural;
  std::map<std::string, SourceSpan, std::less<>> spans;
};

CaeDocument read_cae(std::string_view text);

using ParseResult = std::variant<CaeTree, std::vector<ParseError>>;

/// Strict parse: any lexical or structural problem yields the full error list
/// (sorted by position) and no tree.
ParseResult parse(std::string_view text);

/// Canonical text: 2-space indentation, attributes sorted by key, LF endings.
std::string serialize(const CaeTree& tree);

/// Graphviz rendering; claims lightblue, arguments gold, evidences palegreen.
std::string to_dot(const CaeTree& tree);

/// Throws Error with UnknownNode, NotEvidence or BadDigest.
CaeTree link_evidence(const CaeTree& tree, std::string_view id, std::string reference,
                      std::string digest);

}  // namespace assure
