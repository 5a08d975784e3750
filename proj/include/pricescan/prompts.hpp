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
#include <stdexcept>
#include <string>
#include <vector>

#include "pricescan/grouping.hpp"

namespace pricescan {

enum class Stage { PathFiltering, AttackSimulation };

const char *stage_name(Stage s);

struct SummaryIncomplete : std::runtime_error {
  explicit SummaryIncomplete(const std::string &what)
      : std::runtime_error("summary-incomplete: " + what) {}
};
struct NotFiltered : std::runtime_error {
  explicit NotFiltered(const std::string &group)
      : std::runtime_error("not-filtered: group " + group +
                           " was discarded by the filtering stage") {}
};

// Facts a deterministic rule engine needs about the group; carried alongside
// the rendered text so offline mode stays a pure function of the summary.
struct OfflineFacts {
  SourceKind source_kind = SourceKind::PublicInput;
  SinkKind sink_kind = SinkKind::EconomicStateWrite;
  std::vector<std::string> source_modifiers;
  bool cooldown_on_path = false;
  int affected_state_count = 0;
  std::string source_call_name;
  std::vector<std::string> path_functions;
  std::vector<std::string> representative_steps;
};

struct PromptInstance {
  Stage stage = Stage::PathFiltering;
  std::string group_id;
  std::string rendered_text;
  std::map<std::string, std::string> bindings;  // placeholder -> substitution
  OfflineFacts facts;
};

// The four placeholders every template binds.
inline constexpr const char *kPlaceholderSourceFunction = "<source function>";
inline constexpr const char *kPlaceholderSinkFunction = "<sink function>";
inline constexpr const char *kPlaceholderAffectedStates = "<affected states>";
inline constexpr const char *kPlaceholderCriticalOps = "<critical operations>";

PromptInstance render_filter_prompt(const GroupSummary &summary,
                                    bool cooldown_on_path = false);

struct FilterVerdict;  // engine.hpp
PromptInstance render_simulation_prompt(const GroupSummary &summary,
                                        const FilterVerdict &filter,
                                        bool cooldown_on_path = false);

}  // namespace pricescan
