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

#pragma once

#include <string>
#include <vector>

#include "pricescan/source.hpp"

namespace pricescan {

struct Token {
  enum class Kind {
    Identifier,
    Keyword,
    Number,
    String,
    Punct,  // operators and punctuation, text holds the exact lexeme
    End,
  };
  Kind kind = Kind::End;
  std::string text;
  SourceSpan span;

  bool is(Kind k, const char *t) const { return kind == k && text == t; }
  bool is_punct(const char *t) const { return is(Kind::Punct, t); }
  bool is_keyword(const char *t) const { return is(Kind::Keyword, t); }
};

// Total: any byte string yields a token stream terminated by End; bytes that
// form no token are reported and skipped.
std::vector<Token> lex(const std::string &text, std::vector<Diagnostic> &diags);

bool is_solidity_keyword(const std::string &word);

// uint*/int*/bytes*/address/bool/string; these lex as keywords so that casts
// and declarations can be told apart from calls.
bool is_elementary_type_name(const std::string &word);

}  // namespace pricescan
