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

#include "pricescan/grouping.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace pricescan {

namespace {

const char *value_kind_name(ValueRef::Kind k) {
  switch (k) {
    case ValueRef::Kind::Local: return "local";
    case ValueRef::Kind::Param: return "param";
    case ValueRef::Kind::StateSlot: return "stateSlot";
    case ValueRef::Kind::TxProperty: return "txProperty";
    case ValueRef::Kind::Const: return "const";
    case ValueRef::Kind::CallReturn: return "callReturn";
  }
  return "?";
}

// Slot shape by state-variable name and path-element kinds only; abstract key
// values would leak version-numbered locals.
std::string slot_shape(const SlotId &slot, const ContractIR &ir) {
  const StateVar *sv = ir.state_var(slot.base_slot);
  std::string out = sv ? sv->name : ("slot" + std::to_string(slot.base_slot));
  for (const auto &e : slot.path) {
    switch (e.kind) {
      case SlotPathElem::Kind::MappingKey: out += "[key]"; break;
      case SlotPathElem::Kind::ArrayIndex: out += "[index]"; break;
      case SlotPathElem::Kind::Member: out += "." + e.member; break;
    }
  }
  return out;
}

}  // namespace

std::string OpDescriptor::str() const {
  std::ostringstream os;
  os << kind << ":" << target << "(";
  for (std::size_t i = 0; i < operand_kinds.size(); ++i) {
    if (i) os << ",";
    os << operand_kinds[i];
  }
  os << ")";
  return os.str();
}

std::string GroupKey::str() const {
  std::ostringstream os;
  os << source_function << "->" << sink_function << "{";
  bool first = true;
  for (const auto &op : critical_ops) {
    if (!first) os << ";";
    first = false;
    os << op.str();
  }
  os << "}";
  return os.str();
}

GroupKey compute_key(const TaintPath &path, const ContractIR &ir) {
  GroupKey key;
  key.source_function = path.source_function;
  key.sink_function = path.sink_function;
  for (const auto &step : path.steps) {
    const Instruction *in = ir.instruction(step);
    if (!in) continue;
    OpDescriptor d;
    switch (in->kind) {
      case InstrKind::ExternalCall:
        d.kind = "ext-call";
        d.target = in->callee_interface.empty()
                       ? in->callee
                       : in->callee_interface + "." + in->callee;
        for (std::size_t i = 1; i < in->operands.size(); ++i)
          d.operand_kinds.push_back(value_kind_name(in->operands[i].kind));
        break;
      case InstrKind::LowLevelCall:
        d.kind = "ext-call";
        d.target = "<" + in->op + ">";
        for (const auto &op : in->operands)
          d.operand_kinds.push_back(value_kind_name(op.kind));
        break;
      case InstrKind::SStore:
        d.kind = "sstore";
        d.target = in->slot ? slot_shape(*in->slot, ir) : "?";
        for (const auto &op : in->operands)
          d.operand_kinds.push_back(value_kind_name(op.kind));
        break;
      default:
        continue;
    }
    key.critical_ops.insert(std::move(d));
  }
  return key;
}

std::vector<PathGroup> group_paths(const std::vector<TaintPath> &paths,
                                   const ContractIR &ir) {
  std::map<GroupKey, PathGroup> by_key;
  for (const auto &p : paths) {
    GroupKey key = compute_key(p, ir);
    auto &group = by_key[key];
    group.key = key;
    group.members.push_back(p);
  }
  std::vector<PathGroup> out;
  out.reserve(by_key.size());
  for (auto &[key, group] : by_key) {
    const TaintPath *best = &group.members.front();
    for (const auto &m : group.members) {
      if (m.steps.size() > best->steps.size())
        best = &m;
      else if (m.steps.size() == best->steps.size() && m.steps < best->steps)
        best = &m;
    }
    group.representative = *best;
    out.push_back(std::move(group));
  }
  std::sort(out.begin(), out.end(), [](const PathGroup &a, const PathGroup &b) {
    if (a.key.source_function != b.key.source_function)
      return a.key.source_function < b.key.source_function;
    if (a.key.sink_function != b.key.sink_function)
      return a.key.sink_function < b.key.sink_function;
    return a.key.str() < b.key.str();
  });
  return out;
}

namespace {

// Function body excerpt capped at `max_lines`, centered on the lines the
// path's steps touch within that function.
std::string excerpt(const ContractIR &ir, const std::string &function,
                    const std::vector<InstrId> &steps, int max_lines) {
  int fi = ir.function_index(function);
  if (fi < 0) {
    for (std::size_t i = 0; i < ir.functions.size(); ++i)
      if (ir.functions[i].name == function) fi = static_cast<int>(i);
  }
  if (fi < 0) return "";
  const FunctionIR &fn = ir.functions[fi];
  if (ir.source_text.empty() || !fn.span.valid() ||
      fn.span.end > ir.source_text.size()) {
    // imported IR: render the instruction listing instead
    std::ostringstream os;
    int count = 0;
    for (const auto &in : fn.instructions) {
      if (count++ >= max_lines) {
        os << "...\n";
        break;
      }
      os << render_instruction(in, ir) << "\n";
    }
    return os.str();
  }
  std::string body =
      ir.source_text.substr(fn.span.begin, fn.span.end - fn.span.begin);
  std::vector<std::string> lines;
  {
    std::istringstream is(body);
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
  }
  if (static_cast<int>(lines.size()) <= max_lines) return body;

  // line offsets of path steps inside this function
  std::size_t first_line = 0, last_line = lines.size() - 1;
  std::vector<std::size_t> touched;
  for (const auto &s : steps) {
    if (s.fn != fi) continue;
    const Instruction *in = ir.instruction(s);
    if (!in || !in->span.valid() || in->span.begin < fn.span.begin) continue;
    std::size_t off = in->span.begin - fn.span.begin;
    std::size_t line = 0, acc = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      acc += lines[i].size() + 1;
      if (off < acc) {
        line = i;
        break;
      }
    }
    touched.push_back(line);
  }
  if (!touched.empty()) {
    first_line = *std::min_element(touched.begin(), touched.end());
    last_line = *std::max_element(touched.begin(), touched.end());
  }
  std::size_t center = (first_line + last_line) / 2;
  std::size_t half = static_cast<std::size_t>(max_lines) / 2;
  std::size_t begin = center > half ? center - half : 0;
  std::size_t end = std::min(lines.size(), begin + max_lines);
  if (end - begin < static_cast<std::size_t>(max_lines) && end == lines.size())
    begin = end > static_cast<std::size_t>(max_lines)
                ? end - max_lines
                : 0;
  std::ostringstream os;
  if (begin > 0) os << "...\n";
  for (std::size_t i = begin; i < end; ++i) os << lines[i] << "\n";
  if (end < lines.size()) os << "...\n";
  return os.str();
}

std::string signature_of(const ContractIR &ir, const std::string &function) {
  const FunctionIR *fn = ir.function_by_name(function);
  if (!fn) return function + "(?)";
  return fn->signature.empty() ? function + "()" : fn->signature;
}

}  // namespace

GroupSummary summarize_group(const PathGroup &group, const ContractIR &ir,
                             const AnalysisConfig &config) {
  GroupSummary s;
  s.key = group.key;
  s.group_id = group.key.str();
  s.member_count = static_cast<int>(group.members.size());
  s.source_signature = signature_of(ir, group.key.source_function);
  s.sink_signature = signature_of(ir, group.key.sink_function);
  s.source_excerpt = excerpt(ir, group.key.source_function,
                             group.representative.steps,
                             config.excerpt_max_lines);
  s.sink_excerpt = excerpt(ir, group.key.sink_function,
                           group.representative.steps,
                           config.excerpt_max_lines);
  for (const auto &op : group.key.critical_ops) s.critical_ops.push_back(op.str());

  std::set<std::string> states;
  for (const auto &m : group.members)
    for (const auto &slot : m.affected_slots) {
      const StateVar *sv = ir.state_var(slot.base_slot);
      states.insert(sv ? sv->name : ("slot" + std::to_string(slot.base_slot)));
    }
  s.affected_states.assign(states.begin(), states.end());

  for (const auto &step : group.representative.steps) {
    const Instruction *in = ir.instruction(step);
    s.representative_steps.push_back(in ? render_instruction(*in, ir)
                                        : step.str());
  }

  s.source_kind = group.representative.source_kind;
  s.sink_kind = group.representative.sink_kind;
  if (s.source_kind == SourceKind::KnownDexCall ||
      s.source_kind == SourceKind::OracleViewCall) {
    const Instruction *src = ir.instruction(group.representative.source_instr);
    if (src) s.source_call_name = src->callee;
  }
  if (const FunctionIR *src_fn = ir.function_by_name(group.key.source_function))
    for (const auto &m : src_fn->modifiers) s.source_modifiers.push_back(m.name);

  std::set<std::string> fns;
  for (const auto &step : group.representative.steps)
    if (step.fn >= 0 && step.fn < static_cast<int>(ir.functions.size()))
      fns.insert(ir.functions[step.fn].name);
  s.path_functions.assign(fns.begin(), fns.end());
  return s;
}

nlohmann::ordered_json groups_to_json(const std::vector<PathGroup> &groups,
                                      const std::vector<GroupSummary> &summaries,
                                      const ContractIR &ir) {
  using ordered = nlohmann::ordered_json;
  ordered j = ordered::array();
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const PathGroup &g = groups[i];
    ordered gj;
    gj["key"] = g.key.str();
    gj["sourceFunction"] = g.key.source_function;
    gj["sinkFunction"] = g.key.sink_function;
    ordered ops = ordered::array();
    for (const auto &op : g.key.critical_ops) ops.push_back(op.str());
    gj["criticalOps"] = std::move(ops);
    gj["members"] = g.members.size();
    ordered steps = ordered::array();
    for (const auto &s : g.representative.steps) steps.push_back(s.str());
    gj["representativeSteps"] = std::move(steps);
    gj["representativeLength"] = g.representative.steps.size();
    if (i < summaries.size()) {
      gj["affectedStates"] = summaries[i].affected_states;
      gj["sourceKind"] = source_kind_name(summaries[i].source_kind);
      gj["sinkKind"] = sink_kind_name(summaries[i].sink_kind);
    }
    (void)ir;
    j.push_back(std::move(gj));
  }
  return j;
}

}  // namespace pricescan
