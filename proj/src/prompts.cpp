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

#include "pricescan/prompts.hpp"

#include <sstream>

#include "pricescan/engine.hpp"

namespace pricescan {

const char *stage_name(Stage s) {
  return s == Stage::PathFiltering ? "PathFiltering" : "AttackSimulation";
}

namespace {

std::string join_lines(const std::vector<std::string> &items) {
  if (items.empty()) return "none";
  std::ostringstream os;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) os << "\n";
    os << "- " << items[i];
  }
  return os.str();
}

std::string source_binding(const GroupSummary &s) {
  std::ostringstream os;
  os << s.source_signature;
  if (!s.source_excerpt.empty()) os << "\n" << s.source_excerpt;
  return os.str();
}

std::string sink_binding(const GroupSummary &s) {
  std::ostringstream os;
  os << s.sink_signature;
  if (!s.sink_excerpt.empty() && s.sink_excerpt != s.source_excerpt)
    os << "\n" << s.sink_excerpt;
  return os.str();
}

OfflineFacts facts_of(const GroupSummary &s, bool cooldown_on_path) {
  OfflineFacts f;
  f.source_kind = s.source_kind;
  f.sink_kind = s.sink_kind;
  f.source_modifiers = s.source_modifiers;
  f.cooldown_on_path = cooldown_on_path;
  f.affected_state_count = static_cast<int>(s.affected_states.size());
  f.source_call_name = s.source_call_name;
  f.path_functions = s.path_functions;
  f.representative_steps = s.representative_steps;
  return f;
}

void bind(std::string &text, const std::string &placeholder,
          const std::string &value) {
  std::size_t pos = 0;
  while ((pos = text.find(placeholder, pos)) != std::string::npos) {
    text.replace(pos, placeholder.size(), value);
    pos += value.size();
  }
}

}  // namespace

PromptInstance render_filter_prompt(const GroupSummary &summary,
                                    bool cooldown_on_path) {
  if (summary.source_signature.empty())
    throw SummaryIncomplete("source function signature is empty");
  if (summary.sink_signature.empty())
    throw SummaryIncomplete("sink function signature is empty");

  PromptInstance p;
  p.stage = Stage::PathFiltering;
  p.group_id = summary.group_id;
  p.facts = facts_of(summary, cooldown_on_path);

  p.bindings[kPlaceholderSourceFunction] = source_binding(summary);
  p.bindings[kPlaceholderSinkFunction] = sink_binding(summary);
  p.bindings[kPlaceholderAffectedStates] = join_lines(summary.affected_states);
  p.bindings[kPlaceholderCriticalOps] = join_lines(summary.critical_ops);

  std::string text =
      "You are a smart contract auditor applying rule-based checks to a "
      "candidate price-manipulation path.\n"
      "\n"
      "Source function (attack entry point):\n"
      "<source function>\n"
      "\n"
      "Sink function (profit point):\n"
      "<sink function>\n"
      "\n"
      "Critical operations (low-level external call functions on the execution "
      "path between source and sink):\n"
      "<critical operations>\n"
      "\n"
      "Affected states (state variables tainted by the source function and "
      "used by the sink function):\n"
      "<affected states>\n"
      "\n"
      "Answer the following questions, then give a keep/discard verdict. A "
      "path is discarded if any single answer identifies a disqualifying "
      "condition.\n"
      "(1) Access Control: does the exploit require compromised privileged "
      "accounts?\n"
      "(2) Economic Intent: is this an intended economic feature of the "
      "protocol, not an unintended flaw?\n"
      "(3) Mitigation: does the code have mitigations like oracle checks or "
      "cooldowns to prevent manipulation?\n"
      "\n"
      "Respond with JSON only:\n"
      "{\"keep\": true|false, \"accessControl\": \"...\", \"economicIntent\": "
      "\"...\", \"mitigation\": \"...\"}\n";
  for (const auto &[placeholder, value] : p.bindings) bind(text, placeholder, value);
  p.rendered_text = std::move(text);
  return p;
}

PromptInstance render_simulation_prompt(const GroupSummary &summary,
                                        const FilterVerdict &filter,
                                        bool cooldown_on_path) {
  if (!filter.keep) throw NotFiltered(summary.group_id);
  if (summary.source_signature.empty())
    throw SummaryIncomplete("source function signature is empty");
  if (summary.sink_signature.empty())
    throw SummaryIncomplete("sink function signature is empty");

  PromptInstance p;
  p.stage = Stage::AttackSimulation;
  p.group_id = summary.group_id;
  p.facts = facts_of(summary, cooldown_on_path);

  p.bindings[kPlaceholderSourceFunction] = source_binding(summary);
  p.bindings[kPlaceholderSinkFunction] = sink_binding(summary);
  p.bindings[kPlaceholderAffectedStates] = join_lines(summary.affected_states);
  p.bindings[kPlaceholderCriticalOps] = join_lines(summary.critical_ops);

  std::string hint = summary.source_call_name.empty()
                         ? std::string("the external data read feeding this path")
                         : "the `" + summary.source_call_name +
                               "` call on this path is the candidate price source";

  std::string text =
      "You are a security auditor analyzing a high-potential price-manipulation "
      "path. Assume the attacker can take a flash loan of any size and must "
      "repay it within the same transaction.\n"
      "\n"
      "Source function (attack entry point):\n"
      "<source function>\n"
      "\n"
      "Sink function (profit point):\n"
      "<sink function>\n"
      "\n"
      "Critical operations on the path:\n"
      "<critical operations>\n"
      "\n"
      "Affected states:\n"
      "<affected states>\n"
      "\n"
      "Work through four steps:\n"
      "Step 1 - Price source: identify the specific on-chain price source "
      "being manipulated (" + hint + ").\n"
      "Step 2 - Attack scenario: construct a detailed attack scenario starting "
      "from the entry point, using plausible paths, and explain the attacker's "
      "profit mechanism.\n"
      "Step 3 - Cash out: examine the cash-out method by analyzing how the "
      "attacker would leverage the profit function.\n"
      "Step 4 - Defense check: re-evaluate all involved functions for subtle, "
      "overlooked mitigations such as TWAP oracles or reentrancy guards.\n"
      "\n"
      "Respond with JSON only:\n"
      "{\"verdict\": true|false, \"vulnerableFunctions\": [\"...\"], "
      "\"vulnerablePaths\": [\"...\"], \"attackExplanation\": \"...\", "
      "\"steps\": {\"priceSource\": \"...\", \"attackScenario\": \"...\", "
      "\"cashOut\": \"...\", \"defenseCheck\": \"...\"}}\n";
  for (const auto &[placeholder, value] : p.bindings) bind(text, placeholder, value);
  p.rendered_text = std::move(text);
  return p;
}

}  // namespace pricescan
