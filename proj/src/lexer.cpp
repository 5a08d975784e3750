//------------------------------------------------------------------------------
//
//   Copyright 2026 pricescan authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "pricescan/lexer.hpp"

#include <array>
#include <cctype>
#include <set>
#include <sstream>

namespace pricescan {

std::size_t line_of_offset(const std::string &text, std::size_t offset) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

std::string render_diagnostic(const Diagnostic &d, const std::string &text,
                              const std::string &path) {
  std::ostringstream os;
  os << path << ":" << line_of_offset(text, d.span.begin) << ": "
     << severity_name(d.severity) << ": " << d.message << " [" << d.code << "]";
  return os.str();
}

namespace {

const std::set<std::string> &keywords() {
  static const std::set<std::string> kw = {
      "pragma",     "solidity",  "contract", "interface", "library",
      "function",   "modifier",  "event",    "struct",    "enum",
      "mapping",    "returns",   "return",   "if",        "else",
      "for",        "while",     "do",       "break",     "continue",
      "require",    "assert",    "revert",   "emit",      "new",
      "public",     "external",  "internal", "private",   "view",
      "pure",       "payable",   "constant", "immutable", "memory",
      "storage",    "calldata",  "true",     "false",     "is",
      "using",      "assembly",  "try",      "catch",     "constructor",
      "this",       "delete",    "override", "virtual",   "abstract",
      "receive",    "fallback",  "indexed",  "unchecked", "type",
  };
  return kw;
}

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c == '$'; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '$'; }

// Longest-match table for operators; probed from longest to shortest.
const std::array<const char *, 36> kPuncts = {
    ">>=", "<<=", "**",  "+=", "-=", "*=", "/=", "%=", "==", "!=", "<=",
    ">=",  "&&",  "||",  "=>", "->", "++", "--", "<<", ">>", "+",  "-",
    "*",   "/",   "%",   "=",  "<",  ">",  "!",  "&",  "|",  "^",  "~",
    "?",   ":",   ";",
};

}  // namespace

bool is_elementary_type_name(const std::string &t) {
  if (t == "address" || t == "bool" || t == "string" || t == "bytes") return true;
  if (t.rfind("uint", 0) == 0 || t.rfind("int", 0) == 0) {
    std::string rest = t.substr(t[0] == 'u' ? 4 : 3);
    if (rest.empty()) return true;
    for (char c : rest)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  }
  if (t.rfind("bytes", 0) == 0) {
    std::string rest = t.substr(5);
    if (rest.empty()) return false;
    for (char c : rest)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  }
  return false;
}

bool is_solidity_keyword(const std::string &word) {
  return keywords().count(word) > 0 || is_elementary_type_name(word);
}

std::vector<Token> lex(const std::string &text, std::vector<Diagnostic> &diags) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  bool bad_byte_run = false;

  while (i < n) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    // comments
    if (c == '/' && i + 1 < n && text[i + 1] == '/') {
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && text[i + 1] == '*') {
      std::size_t start = i;
      i += 2;
      while (i + 1 < n && !(text[i] == '*' && text[i + 1] == '/')) ++i;
      if (i + 1 < n) {
        i += 2;
      } else {
        diags.push_back({Severity::Warning,
                         {start, n},
                         "unterminated block comment",
                         "unterminated-comment"});
        i = n;
      }
      continue;
    }
    if (ident_start(c)) {
      std::size_t start = i;
      while (i < n && ident_char(static_cast<unsigned char>(text[i]))) ++i;
      std::string word = text.substr(start, i - start);
      Token::Kind k = is_solidity_keyword(word) ? Token::Kind::Keyword
                                                : Token::Kind::Identifier;
      out.push_back({k, std::move(word), {start, i}});
      bad_byte_run = false;
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t start = i;
      if (c == '0' && i + 1 < n && (text[i + 1] == 'x' || text[i + 1] == 'X')) {
        i += 2;
        while (i < n && (std::isxdigit(static_cast<unsigned char>(text[i])) ||
                         text[i] == '_'))
          ++i;
      } else {
        while (i < n && (std::isdigit(static_cast<unsigned char>(text[i])) ||
                         text[i] == '_'))
          ++i;
        if (i < n && (text[i] == 'e' || text[i] == 'E') && i + 1 < n &&
            std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
          ++i;
          while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        }
      }
      out.push_back({Token::Kind::Number, text.substr(start, i - start), {start, i}});
      bad_byte_run = false;
      continue;
    }
    if (c == '"' || c == '\'') {
      char quote = static_cast<char>(c);
      std::size_t start = i;
      ++i;
      std::string value;
      bool closed = false;
      while (i < n) {
        char ch = text[i];
        if (ch == '\\' && i + 1 < n) {
          value += text[i + 1];
          i += 2;
          continue;
        }
        if (ch == quote) {
          ++i;
          closed = true;
          break;
        }
        if (ch == '\n') break;
        value += ch;
        ++i;
      }
      if (!closed)
        diags.push_back({Severity::Error,
                         {start, i},
                         "unterminated string literal",
                         "unterminated-string"});
      out.push_back({Token::Kind::String, std::move(value), {start, i}});
      bad_byte_run = false;
      continue;
    }
    if (c == '(' || c == ')' || c == '{' || c == '}' || c == '[' || c == ']' ||
        c == ',' || c == '.') {
      out.push_back({Token::Kind::Punct, std::string(1, static_cast<char>(c)), {i, i + 1}});
      ++i;
      bad_byte_run = false;
      continue;
    }
    {
      bool matched = false;
      for (const char *p : kPuncts) {
        std::size_t len = std::char_traits<char>::length(p);
        if (text.compare(i, len, p) == 0) {
          out.push_back({Token::Kind::Punct, p, {i, i + len}});
          i += len;
          matched = true;
          break;
        }
      }
      if (matched) {
        bad_byte_run = false;
        continue;
      }
    }
    // Not a recognizable byte. Report once per run of garbage.
    if (!bad_byte_run)
      diags.push_back({Severity::Error,
                       {i, i + 1},
                       "unrecognized byte in input",
                       "bad-byte"});
    bad_byte_run = true;
    ++i;
  }

  out.push_back({Token::Kind::End, "", {n, n}});
  return out;
}

}  // namespace pricescan
