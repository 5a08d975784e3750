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

#include <map>
#include <set>
#include <string>
#include <vector>

#include "pricescan/config.hpp"
#include "pricescan/ir.hpp"

namespace pricescan {

// Primitive fact base extracted from lowered IR. These are the foundational
// predicates the taint rules and sink rules are phrased over.
struct FactBase {
  struct CallFact {
    InstrId cs;
    std::string callee;
    bool internal = false;
    std::vector<ValueRef> args;  // excludes the receiver for external calls
  };
  struct ECFact {
    InstrId cs;
    std::string interface_name;
    std::string fn;
    std::string mutability;
    int returns = 1;
  };
  struct SStoreFact {
    InstrId at;
    SlotId slot;
    ValueRef value;
  };
  struct TransferFact {
    InstrId cs;
    ValueRef recipient;
    ValueRef amount;
    bool has_recipient = true;
  };
  struct ArgFact {
    InstrId cs;
    int index = 0;
    ValueRef value;
  };

  std::vector<CallFact> calls;
  std::vector<ECFact> external_calls;
  std::vector<SStoreFact> sstores;
  std::vector<TransferFact> transfers;
  std::vector<ArgFact> args;
  std::set<std::string> public_functions;            // IsPublic(f)
  std::set<std::string> ledger_update_functions;     // IsLedgerUpdate(f)

  const TransferFact *transfer_at(InstrId cs) const {
    for (const auto &t : transfers)
      if (t.cs == cs) return &t;
    return nullptr;
  }
  const CallFact *call_at(InstrId cs) const {
    for (const auto &c : calls)
      if (c.cs == cs) return &c;
    return nullptr;
  }
  const ECFact *external_call_at(InstrId cs) const {
    for (const auto &e : external_calls)
      if (e.cs == cs) return &e;
    return nullptr;
  }
};

FactBase extract_primitives(const ContractIR &ir, const AnalysisConfig &config);

}  // namespace pricescan
