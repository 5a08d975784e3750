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

#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "pricescan/config.hpp"
#include "pricescan/taint.hpp"

namespace pricescan {

// Canonical critical-operation descriptor: stable across instruction-id
// renaming (kind + callee-or-slot name + ordered operand kinds).
struct OpDescriptor {
  std::string kind;    // "ext-call" | "sstore"
  std::string target;  // callee rendering or state-variable access shape
  std::vector<std::string> operand_kinds;

  auto operator<=>(const OpDescriptor &) const = default;
  std::string str() const;
};

struct GroupKey {
  std::string source_function;
  std::string sink_function;
  std::set<OpDescriptor> critical_ops;

  auto operator<=>(const GroupKey &) const = default;
  std::string str() const;
};

struct PathGroup {
  GroupKey key;
  std::vector<TaintPath> members;
  TaintPath representative;
};

struct GroupSummary {
  GroupKey key;
  std::string group_id;  // canonical key rendering
  std::string source_signature;
  std::string source_excerpt;
  std::string sink_signature;
  std::string sink_excerpt;
  std::vector<std::string> critical_ops;   // rendered; empty set renders "none"
  std::vector<std::string> affected_states;  // state-variable names
  std::vector<std::string> representative_steps;
  // facts consumed by the offline rule engine and the report
  SourceKind source_kind = SourceKind::PublicInput;
  SinkKind sink_kind = SinkKind::EconomicStateWrite;
  std::string source_call_name;  // oracle/DEX getter name when the source is one
  std::vector<std::string> source_modifiers;
  std::vector<std::string> path_functions;
  int member_count = 0;
};

GroupKey compute_key(const TaintPath &path, const ContractIR &ir);

// Deterministic partition: groups ordered by (source, sink, key rendering),
// representative = longest member, ties broken by the lexicographically
// smallest step sequence.
std::vector<PathGroup> group_paths(const std::vector<TaintPath> &paths,
                                   const ContractIR &ir);

GroupSummary summarize_group(const PathGroup &group, const ContractIR &ir,
                             const AnalysisConfig &config);

nlohmann::ordered_json groups_to_json(const std::vector<PathGroup> &groups,
                                      const std::vector<GroupSummary> &summaries,
                                      const ContractIR &ir);

}  // namespace pricescan
