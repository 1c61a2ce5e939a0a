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

// Shared line-oriented, indentation-nested text format used by `.cae`
// documents and risk registries.

#include <string>
#include <string_view>
#include <vector>

namespace assure {

struct SourceSpan {
  int line = 1;
  int column = 1;

  bool operator==(const SourceSpan&) const = default;
};

enum class ParseErrorCode {
  BadIndent,
  BadKind,
  DuplicateId,
  UnterminatedString,
  BadAttribute,
  ChildRuleViolation,
  ArityViolation,
  BadCategory,
  BadFearedEvent,
};

std::string_view to_string(ParseErrorCode code);

struct ParseError {
  SourceSpan span;
  ParseErrorCode code;
  std::string message;

  bool operator==(const ParseError&) const = default;
};

ParseError make_parse_error(SourceSpan span, ParseErrorCode code, std::string_view detail);

/// "line:col: Code: message"
std::string format(const ParseError& error);

namespace text {

enum class TokenType { Word, String, Attribute };

struct Token {
  TokenType type;
  std::string value;  // word, unescaped string, or attribute value
  std::string key;    // attribute key
  SourceSpan span;
};

struct Line {
  int number = 0;
  int level = 0;
  std::vector<Token> tokens;
  bool broken = false;  // lexical error already reported; keeps nesting intact
};

struct LexResult {
  std::vector<Line> lines;
  std::vector<ParseError> errors;
};

/// Splits a document into nonblank, non-comment lines. Lines whose
/// indentation cannot be determined are reported and dropped.
LexResult lex(std::string_view document);

/// Double-quoted with `\\`, `\"`, `\n`, `\r` and `\t` escapes.
std::string quote(std::string_view raw);

std::string indent(int level);

}  // namespace text
}  // namespace assure
