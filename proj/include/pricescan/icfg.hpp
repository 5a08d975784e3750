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

#include "pricescan/ir.hpp"

namespace pricescan {

// Lifts per-function successor lists into the inter-procedural graph and
// links internal calls to callee entries/exits. External calls stay frontier
// nodes. Unresolvable internal callees produce `unresolved-internal-call`
// warnings and are treated as opaque.
ICFG build_icfg(const ContractIR &ir);

}  // namespace pricescan
