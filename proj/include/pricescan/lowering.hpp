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

#include "pricescan/ast.hpp"
#include "pricescan/ir.hpp"

namespace pricescan {

// Declared external surface of the other contracts/interfaces in a unit, used
// to classify member calls and recover declared mutability.
struct UnitIndex {
  struct FnSig {
    std::string mutability = "default";
    int returns = 1;
  };
  std::map<std::string, std::map<std::string, FnSig>> interfaces;

  static UnitIndex build(const ast::SourceUnit &unit);
  const FnSig *lookup(const std::string &iface, const std::string &fn) const;
  bool has_interface(const std::string &name) const {
    return interfaces.count(name) > 0;
  }
};

// Lowers one contract to instruction-level IR. Excluded and bodyless
// functions are skipped; modifier bodies are lowered as pseudo-functions
// (is_modifier) so defense checks can scan their guards.
ContractIR lower_contract(const ast::ContractDecl &decl, const UnitIndex &index,
                          const std::string &source_text,
                          const std::string &source_path);

}  // namespace pricescan
