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

#include <optional>
#include <string>
#include <vector>

#include "pricescan/ast.hpp"

namespace pricescan {

// Total on arbitrary byte strings: every failure is a Diagnostic on the
// returned unit, unsupported constructs exclude only the enclosing function.
ast::SourceUnit parse_source(const std::string &text, const std::string &path);

// Test/tooling entry points for parsing isolated fragments.
ast::ExprPtr parse_expression_fragment(const std::string &text,
                                       std::vector<Diagnostic> &diags);
ast::StmtPtr parse_statement_fragment(const std::string &text,
                                      std::vector<Diagnostic> &diags);

struct GrammarEntry {
  std::string construct;  // canonical construct name, e.g. "mapping declaration"
  std::string category;   // "declaration" | "statement" | "expression" | "directive"
  bool supported = true;
};

struct SubsetGrammar {
  std::vector<GrammarEntry> entries;
  // Unknown constructs are unsupported by definition.
  bool supports(const std::string &construct) const;
};

const SubsetGrammar &subset_grammar();

}  // namespace pricescan
