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

#include "pricescan/facts.hpp"

namespace pricescan {

FactBase extract_primitives(const ContractIR &ir, const AnalysisConfig &config) {
  FactBase facts;

  for (const auto &fn : ir.functions)
    if (fn.is_public()) facts.public_functions.insert(fn.name);

  // pass 1: calls, stores, transfers
  for (std::size_t fi = 0; fi < ir.functions.size(); ++fi) {
    const FunctionIR &fn = ir.functions[fi];
    bool has_mapping_store = false;
    for (const auto &in : fn.instructions) {
      switch (in.kind) {
        case InstrKind::InternalCall: {
          FactBase::CallFact c;
          c.cs = in.id;
          c.callee = in.callee;
          c.internal = true;
          c.args = in.operands;
          for (std::size_t i = 0; i < in.operands.size(); ++i)
            facts.args.push_back({in.id, static_cast<int>(i), in.operands[i]});
          facts.calls.push_back(std::move(c));
          TransferSignature sig;
          if (config.is_transfer_callee(in.callee,
                                        static_cast<int>(in.operands.size()),
                                        &sig)) {
            FactBase::TransferFact t;
            t.cs = in.id;
            t.amount = in.operands[sig.amount];
            if (sig.recipient >= 0 &&
                sig.recipient < static_cast<int>(in.operands.size()))
              t.recipient = in.operands[sig.recipient];
            else
              t.has_recipient = false;
            facts.transfers.push_back(std::move(t));
          }
          break;
        }
        case InstrKind::ExternalCall: {
          // operand 0 is the receiver expression
          std::vector<ValueRef> args(in.operands.begin() + 1, in.operands.end());
          FactBase::CallFact c;
          c.cs = in.id;
          c.callee = in.callee;
          c.internal = false;
          c.args = args;
          for (std::size_t i = 0; i < args.size(); ++i)
            facts.args.push_back({in.id, static_cast<int>(i), args[i]});
          facts.calls.push_back(std::move(c));
          facts.external_calls.push_back({in.id, in.callee_interface, in.callee,
                                          in.callee_mutability,
                                          in.callee_returns});
          TransferSignature sig;
          if (config.is_transfer_callee(in.callee,
                                        static_cast<int>(args.size()), &sig)) {
            FactBase::TransferFact t;
            t.cs = in.id;
            t.amount = args[sig.amount];
            if (sig.recipient >= 0 && sig.recipient < static_cast<int>(args.size()))
              t.recipient = args[sig.recipient];
            else
              t.has_recipient = false;
            facts.transfers.push_back(std::move(t));
          }
          break;
        }
        case InstrKind::LowLevelCall: {
          // operands: [recipient, value, callArgs...]
          if (in.has_value && in.operands.size() >= 2) {
            FactBase::TransferFact t;
            t.cs = in.id;
            t.recipient = in.operands[0];
            t.amount = in.operands[1];
            facts.transfers.push_back(std::move(t));
          }
          break;
        }
        case InstrKind::SStore: {
          FactBase::SStoreFact s;
          s.at = in.id;
          s.slot = *in.slot;
          s.value = in.operands.at(0);
          if (s.slot.is_mapping_base) has_mapping_store = true;
          facts.sstores.push_back(std::move(s));
          break;
        }
        default:
          break;
      }
    }
    if (has_mapping_store && !fn.is_public() && !fn.is_modifier)
      facts.ledger_update_functions.insert(fn.name);
  }
  return facts;
}

}  // namespace pricescan
