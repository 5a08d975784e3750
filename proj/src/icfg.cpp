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

#include "pricescan/icfg.hpp"

namespace pricescan {

ICFG build_icfg(const ContractIR &ir) {
  ICFG g;
  for (std::size_t fi = 0; fi < ir.functions.size(); ++fi) {
    const FunctionIR &fn = ir.functions[fi];
    int f = static_cast<int>(fi);
    for (std::size_t ii = 0; ii < fn.instructions.size(); ++ii) {
      int i = static_cast<int>(ii);
      if (ii < fn.successors.size())
        for (int succ : fn.successors[ii])
          if (succ >= 0)
            g.intra_edges.push_back({InstrId{f, i}, InstrId{f, succ}});
      const Instruction &in = fn.instructions[ii];
      if (in.kind == InstrKind::InternalCall) {
        int callee = ir.function_index(in.callee);
        if (callee < 0) {
          g.diagnostics.push_back(
              {Severity::Warning, in.span,
               "internal call to unknown function '" + in.callee +
                   "' treated as opaque",
               "unresolved-internal-call"});
          continue;
        }
        const FunctionIR &target = ir.functions[callee];
        if (target.instructions.empty()) continue;
        InstrId cs{f, i};
        g.call_edges.push_back({cs, InstrId{callee, 0}});
        // canonical exit: the function's final Return
        int exit_idx = static_cast<int>(target.instructions.size()) - 1;
        g.return_edges.push_back({InstrId{callee, exit_idx}, cs});
        g.resolved_calls[cs] = callee;
      }
    }
    if (fn.is_public() && !fn.instructions.empty())
      g.entry_points.push_back(InstrId{f, 0});
  }
  return g;
}

}  // namespace pricescan
