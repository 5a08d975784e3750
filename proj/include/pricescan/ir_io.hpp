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

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "pricescan/ir.hpp"

namespace pricescan {

// Violations carry the JSON path of the offending field.
struct SchemaViolation : std::runtime_error {
  explicit SchemaViolation(const std::string &path, const std::string &what)
      : std::runtime_error("schema-violation at " + path + ": " + what) {}
};

inline constexpr int kIrVersion = 1;

nlohmann::ordered_json export_ir_json(const ContractIR &ir);

// Accepts documents produced by export_ir_json or written externally.
// Unknown fields are tolerated; missing/ill-typed required fields throw
// SchemaViolation. The result is indistinguishable to downstream passes from
// natively lowered IR.
ContractIR import_ir_json(const nlohmann::json &doc);

}  // namespace pricescan
