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

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "pricescan/config.hpp"
#include "pricescan/facts.hpp"
#include "pricescan/icfg.hpp"
#include "pricescan/ir.hpp"

namespace pricescan {

enum class SourceKind { PublicInput, TxProperty, OracleViewCall, KnownDexCall };
enum class SinkKind { EtherTokenTransfer, InternalLedgerUpdate, EconomicStateWrite };

const char *source_kind_name(SourceKind k);
const char *sink_kind_name(SinkKind k);

struct TaintLabel {
  std::string source_id;
  SourceKind source_kind = SourceKind::PublicInput;
  std::vector<InstrId> provenance;  // [0] is the source-introducing instruction
  bool implicit = false;            // acquired via control dependence

  auto operator<=>(const TaintLabel &) const = default;
};

// Monotone map from taint carriers to label sets. Carriers are keyed by their
// canonical rendering; the original objects are retained for reporting.
class TaintMap {
 public:
  using LabelSet = std::set<TaintLabel>;

  bool add_var(const ValueRef &ref, TaintLabel label);
  bool add_slot(const SlotId &slot, TaintLabel label);

  const LabelSet *var_labels(const ValueRef &ref) const;
  const LabelSet *slot_labels_exact(const SlotId &slot) const;
  // Union over all stored slots that may alias `slot`.
  LabelSet slot_labels_aliased(const SlotId &slot) const;

  bool var_tainted(const ValueRef &ref) const {
    const LabelSet *s = var_labels(ref);
    return s && !s->empty();
  }

  std::size_t total_labels() const;
  bool is_superset_of(const TaintMap &other) const;
  bool operator==(const TaintMap &other) const {
    return vars_ == other.vars_ && slots_ == other.slots_;
  }

  // Tainted carrier keys (vars and "slot:"-prefixed slots), for oracle
  // equivalence checks.
  std::set<std::string> tainted_carriers() const;

  const std::map<std::string, LabelSet> &vars() const { return vars_; }
  const std::map<std::string, LabelSet> &slots() const { return slots_; }
  const std::map<std::string, ValueRef> &var_objects() const { return var_objs_; }
  const std::map<std::string, SlotId> &slot_objects() const { return slot_objs_; }

 private:
  std::map<std::string, LabelSet> vars_;
  std::map<std::string, LabelSet> slots_;
  std::map<std::string, ValueRef> var_objs_;
  std::map<std::string, SlotId> slot_objs_;
};

struct TaintPath {
  InstrId source_instr;
  SourceKind source_kind = SourceKind::PublicInput;
  InstrId sink_instr;
  SinkKind sink_kind = SinkKind::EconomicStateWrite;
  std::vector<InstrId> steps;  // steps.front()==source, steps.back()==sink
  std::string source_function;
  std::string sink_function;
  std::set<SlotId> affected_slots;

  auto operator<=>(const TaintPath &) const = default;
};

enum class VisitOrder { Forward, Reverse };

struct TaintOptions {
  VisitOrder order = VisitOrder::Forward;
  // Called after every propagation iteration with (iteration, map).
  std::function<void(int, const TaintMap &)> iteration_observer;
};

struct TaintResult {
  TaintMap map;
  std::vector<TaintPath> paths;
  std::vector<std::string> warnings;
  bool fixpoint_budget_exceeded = false;
  int paths_capped = 0;  // paths dropped by the per-(source,sink) cap
  int iterations = 0;
};

TaintMap identify_sources(const ContractIR &ir, const ICFG &cfg,
                          const FactBase &facts, const AnalysisConfig &config);

// One application of all four propagation rule families everywhere.
// Returns true when the map grew.
bool propagate(TaintMap &map, const ContractIR &ir, const ICFG &cfg,
               const FactBase &facts, const AnalysisConfig &config,
               VisitOrder order = VisitOrder::Forward);

std::optional<SinkKind> is_sink(const Instruction &inst, const TaintMap &map,
                                const FactBase &facts,
                                const AnalysisConfig &config);

TaintResult analyze_taint(const ContractIR &ir, const ICFG &cfg,
                          const FactBase &facts, const AnalysisConfig &config,
                          const TaintOptions &options = {});

nlohmann::ordered_json taint_to_json(const TaintResult &result,
                                     const ContractIR &ir);

}  // namespace pricescan
