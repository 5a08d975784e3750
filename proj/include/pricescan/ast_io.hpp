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

#include "json.hpp"
#include "pricescan/ast.hpp"

namespace pricescan {

// Debug AST dump: node kind, span, children. `with_spans=false` yields the
// structural skeleton used for round-trip comparison.
nlohmann::ordered_json ast_to_json(const ast::SourceUnit &unit,
                                   bool with_spans = true);

// Emits subset Solidity that re-parses to a structurally identical unit.
std::string pretty_print(const ast::SourceUnit &unit);

// Structural equality, ignoring spans and diagnostics.
bool ast_equal(const ast::SourceUnit &a, const ast::SourceUnit &b);

}  // namespace pricescan
