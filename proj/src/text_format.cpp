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

#include "assure/text_format.hpp"

#include <optional>

namespace assure {

std::string_view to_string(ParseErrorCode code) {
  switch (code) {
    case ParseErrorCode::BadIndent: return "BadIndent";
    case ParseErrorCode::BadKind: return "BadKind";
    case ParseErrorCode::DuplicateId: return "DuplicateId";
    case ParseErrorCode::UnterminatedString: return "UnterminatedString";
    case ParseErrorCode::BadAttribute: return "BadAttribute";
    case ParseErrorCode::ChildRuleViolation: return "ChildRuleViolation";
    case ParseErrorCode::ArityViolation: return "ArityViolation";
    case ParseErrorCode::BadCategory: return "BadCategory";
    case ParseErrorCode::BadFearedEvent: return "BadFearedEvent";
  }
  return "?";
}

namespace {

std::string_view message_template(ParseErrorCode code) {
  switch (code) {
    case ParseErrorCode::BadIndent: return "bad indentation";
    case ParseErrorCode::BadKind: return "malformed line";
    case ParseErrorCode::DuplicateId: return "duplicate id";
    case ParseErrorCode::UnterminatedString: return "bad string literal";
    case ParseErrorCode::BadAttribute: return "bad attribute";
    case ParseErrorCode::ChildRuleViolation: return "child not allowed here";
    case ParseErrorCode::ArityViolation: return "wrong number of subclaims";
    case ParseErrorCode::BadCategory: return "unknown mitigation category";
    case ParseErrorCode::BadFearedEvent: return "unknown feared event";
  }
  return "error";
}

}  // namespace

ParseError make_parse_error(SourceSpan span, ParseErrorCode code, std::string_view detail) {
  std::string message(message_template(code));
  if (!detail.empty()) {
    message += ": ";
    message += detail;
  }
  return {span, code, std::move(message)};
}

std::string format(const ParseError& error) {
  return std::to_string(error.span.line) + ":" + std::to_string(error.span.column) + ": " +
         std::string(to_string(error.code)) + ": " + error.message;
}

namespace text {

namespace {

bool is_word_char(char c) {
  return c != ' ' && c != '"' && c != '=' && c != '\t' && c != '\r';
}

// Reads a quoted string starting at `pos` (which must hold '"'). Returns the
// unescaped value and advances `pos` past the closing quote.
std::optional<std::string> read_string(std::string_view s, std::size_t& pos, std::string& why) {
  std::string out;
  ++pos;
  while (pos < s.size()) {
    char c = s[pos];
    if (c == '"') {
      ++pos;
      return out;
    }
    if (c == '\\') {
      if (pos + 1 >= s.size()) break;
      switch (s[pos + 1]) {
        case '\\': out += '\\'; break;
        case '"': out += '"'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 't': out += '\t'; break;
        default:
          why = std::string("invalid escape \\") + s[pos + 1];
          return std::nullopt;
      }
      pos += 2;
      continue;
    }
    out += c;
    ++pos;
  }
  why = "missing closing quote";
  return std::nullopt;
}

}  // namespace

LexResult lex(std::string_view document) {
  LexResult result;
  int number = 0;
  std::size_t start = 0;
  while (start <= document.size()) {
    std::size_t end = document.find('\n', start);
    if (end == std::string_view::npos) end = document.size();
    std::string_view raw = document.substr(start, end - start);
    ++number;
    const bool last = end == document.size();
    start = end + 1;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    std::size_t spaces = 0;
    while (spaces < raw.size() && (raw[spaces] == ' ' || raw[spaces] == '\t')) ++spaces;
    if (spaces == raw.size() || raw[spaces] == '#') {
      if (last) break;
      continue;
    }
    const auto col = [](std::size_t i) { return static_cast<int>(i) + 1; };
    if (raw.substr(0, spaces).find('\t') != std::string_view::npos) {
      result.errors.push_back(make_parse_error({number, col(raw.find('\t'))}, ParseErrorCode::BadIndent,
                                               "tabs are not allowed"));
      if (last) break;
      continue;
    }
    if (spaces % 2 != 0) {
      result.errors.push_back(make_parse_error({number, 1}, ParseErrorCode::BadIndent,
                                               "indentation must be a multiple of 2 spaces"));
      if (last) break;
      continue;
    }

    Line line{number, static_cast<int>(spaces / 2), {}};
    std::size_t pos = spaces;
    bool ok = true;
    while (pos < raw.size() && ok) {
      if (raw[pos] == ' ') {
        ++pos;
        continue;
      }
      if (raw[pos] == '\t') {
        result.errors.push_back(make_parse_error({number, col(pos)}, ParseErrorCode::BadIndent,
                                                 "tabs are not allowed"));
        ok = false;
        break;
      }
      const SourceSpan span{number, col(pos)};
      if (raw[pos] == '"') {
        std::string why;
        auto value = read_string(raw, pos, why);
        if (!value) {
          result.errors.push_back(make_parse_error(span, ParseErrorCode::UnterminatedString, why));
          ok = false;
          break;
        }
        line.tokens.push_back({TokenType::String, std::move(*value), {}, span});
        continue;
      }
      std::size_t word_end = pos;
      while (word_end < raw.size() && is_word_char(raw[word_end])) ++word_end;
      std::string word(raw.substr(pos, word_end - pos));
      pos = word_end;
      if (pos < raw.size() && raw[pos] == '=') {
        ++pos;
        if (word.empty() || pos >= raw.size() || raw[pos] != '"') {
          result.errors.push_back(make_parse_error(span, ParseErrorCode::BadAttribute,
                                                   "expected key=\"value\""));
          ok = false;
          break;
        }
        std::string why;
        const SourceSpan value_span{number, col(pos)};
        auto value = read_string(raw, pos, why);
        if (!value) {
          result.errors.push_back(make_parse_error(value_span, ParseErrorCode::UnterminatedString, why));
          ok = false;
          break;
        }
        line.tokens.push_back({TokenType::Attribute, std::move(*value), std::move(word), span});
        continue;
      }
      if (word.empty()) {
        result.errors.push_back(make_parse_error(span, ParseErrorCode::BadAttribute,
                                                 std::string("unexpected character '") + raw[pos] + "'"));
        ok = false;
        break;
      }
      line.tokens.push_back({TokenType::Word, std::move(word), {}, span});
    }
    line.broken = !ok;
    result.lines.push_back(std::move(line));
    if (last) break;
  }
  return result;
}

std::string quote(std::string_view raw) {
  std::string out = "\"";
  for (char c : raw) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string indent(int level) { return std::string(static_cast<std::size_t>(level) * 2, ' '); }

}  // namespace text
}  // namespace assure
