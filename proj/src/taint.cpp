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

#include "pricescan/taint.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace pricescan {

const char *source_kind_name(SourceKind k) {
  switch (k) {
    case SourceKind::PublicInput: return "PublicInput";
    case SourceKind::TxProperty: return "TxProperty";
    case SourceKind::OracleViewCall: return "OracleViewCall";
    case SourceKind::KnownDexCall: return "KnownDexCall";
  }
  return "?";
}

const char *sink_kind_name(SinkKind k) {
  switch (k) {
    case SinkKind::EtherTokenTransfer: return "EtherTokenTransfer";
    case SinkKind::InternalLedgerUpdate: return "InternalLedgerUpdate";
    case SinkKind::EconomicStateWrite: return "EconomicStateWrite";
  }
  return "?";
}

// --- TaintMap ---------------------------------------------------------------

bool TaintMap::add_var(const ValueRef &ref, TaintLabel label) {
  std::string key = ref.str();
  auto [it, inserted_obj] = var_objs_.try_emplace(key, ref);
  (void)it;
  (void)inserted_obj;
  return vars_[key].insert(std::move(label)).second;
}

bool TaintMap::add_slot(const SlotId &slot, TaintLabel label) {
  std::string key = slot.str();
  slot_objs_.try_emplace(key, slot);
  return slots_[key].insert(std::move(label)).second;
}

const TaintMap::LabelSet *TaintMap::var_labels(const ValueRef &ref) const {
  auto it = vars_.find(ref.str());
  return it == vars_.end() ? nullptr : &it->second;
}

const TaintMap::LabelSet *TaintMap::slot_labels_exact(const SlotId &slot) const {
  auto it = slots_.find(slot.str());
  return it == slots_.end() ? nullptr : &it->second;
}

TaintMap::LabelSet TaintMap::slot_labels_aliased(const SlotId &slot) const {
  LabelSet out;
  for (const auto &[key, labels] : slots_) {
    auto obj = slot_objs_.find(key);
    if (obj == slot_objs_.end()) continue;
    if (obj->second.aliases(slot)) out.insert(labels.begin(), labels.end());
  }
  return out;
}

std::size_t TaintMap::total_labels() const {
  std::size_t n = 0;
  for (const auto &[k, s] : vars_) n += s.size();
  for (const auto &[k, s] : slots_) n += s.size();
  return n;
}

bool TaintMap::is_superset_of(const TaintMap &other) const {
  for (const auto &[key, labels] : other.vars_) {
    auto it = vars_.find(key);
    if (it == vars_.end()) {
      if (!labels.empty()) return false;
      continue;
    }
    if (!std::includes(it->second.begin(), it->second.end(), labels.begin(),
                       labels.end()))
      return false;
  }
  for (const auto &[key, labels] : other.slots_) {
    auto it = slots_.find(key);
    if (it == slots_.end()) {
      if (!labels.empty()) return false;
      continue;
    }
    if (!std::includes(it->second.begin(), it->second.end(), labels.begin(),
                       labels.end()))
      return false;
  }
  return true;
}

std::set<std::string> TaintMap::tainted_carriers() const {
  std::set<std::string> out;
  for (const auto &[key, labels] : vars_)
    if (!labels.empty()) out.insert(key);
  for (const auto &[key, labels] : slots_)
    if (!labels.empty()) out.insert("slot:" + key);
  return out;
}

// --- shared machinery ---------------------------------------------------------

namespace {

struct Context {
  const ContractIR &ir;
  const ICFG &cfg;
  const FactBase &facts;
  const AnalysisConfig &config;

  // guard instruction -> instructions control-dependent on it
  std::map<InstrId, std::vector<InstrId>> cd_targets;
  // function index -> Return instructions
  std::map<int, std::vector<const Instruction *>> returns;
  // flattened instruction order
  std::vector<const Instruction *> order;

  Context(const ContractIR &ir_, const ICFG &cfg_, const FactBase &facts_,
          const AnalysisConfig &config_)
      : ir(ir_), cfg(cfg_), facts(facts_), config(config_) {
    for (std::size_t fi = 0; fi < ir.functions.size(); ++fi) {
      for (const auto &in : ir.functions[fi].instructions) {
        order.push_back(&in);
        for (const auto &dep : in.control_deps) cd_targets[dep].push_back(in.id);
        if (in.kind == InstrKind::Return)
          returns[static_cast<int>(fi)].push_back(&in);
      }
    }
  }
};

TaintLabel extend(const TaintLabel &label, InstrId through, int revisit_bound) {
  int count = 0;
  for (const auto &id : label.provenance)
    if (id == through) ++count;
  if (count >= revisit_bound) return label;  // merge into the existing label
  TaintLabel out = label;
  out.provenance.push_back(through);
  return out;
}

// Operand taint lookup; StateSlot operands (possible in imported IR) read the
// slot side of the map through aliasing.
TaintMap::LabelSet labels_of(const TaintMap &map, const ValueRef &ref) {
  if (ref.kind == ValueRef::Kind::StateSlot)
    return map.slot_labels_aliased(ref.slot);
  const auto *s = map.var_labels(ref);
  return s ? *s : TaintMap::LabelSet{};
}

bool apply_instruction(TaintMap &map, const Instruction &in, const Context &ctx) {
  bool changed = false;
  const int bound = ctx.config.provenance_revisit_bound;

  auto flow_to_var = [&](const ValueRef &dest, const TaintMap::LabelSet &labels,
                         InstrId through) {
    for (const auto &l : labels)
      changed |= map.add_var(dest, extend(l, through, bound));
  };

  switch (in.kind) {
    case InstrKind::Assign:
    case InstrKind::BinOp:
    case InstrKind::Phi: {
      if (!in.result) break;
      for (const auto &op : in.operands)
        flow_to_var(*in.result, labels_of(map, op), in.id);
      break;
    }
    case InstrKind::SLoad: {
      if (!in.result || !in.slot) break;
      flow_to_var(*in.result, map.slot_labels_aliased(*in.slot), in.id);
      break;
    }
    case InstrKind::SStore: {
      if (!in.slot || in.operands.empty()) break;
      for (const auto &l : labels_of(map, in.operands[0]))
        changed |= map.add_slot(*in.slot, extend(l, in.id, bound));
      break;
    }
    case InstrKind::InternalCall: {
      auto it = ctx.cfg.resolved_calls.find(in.id);
      if (it == ctx.cfg.resolved_calls.end()) break;
      int callee = it->second;
      const FunctionIR &target = ctx.ir.functions[callee];
      // arguments taint parameters
      std::size_t nparams = target.params.size();
      for (std::size_t i = 0; i < in.operands.size() && i < nparams; ++i) {
        ValueRef p = ValueRef::param(target.name, static_cast<int>(i));
        flow_to_var(p, labels_of(map, in.operands[i]), in.id);
      }
      // returned values taint the call-site return carriers
      auto rit = ctx.returns.find(callee);
      if (rit != ctx.returns.end()) {
        for (const Instruction *ret : rit->second) {
          for (std::size_t j = 0; j < ret->operands.size(); ++j) {
            ValueRef cr = ValueRef::call_return(in.id, static_cast<int>(j));
            flow_to_var(cr, labels_of(map, ret->operands[j]), in.id);
          }
        }
      }
      break;
    }
    case InstrKind::Require:
    case InstrKind::CondJump: {
      if (in.operands.empty()) break;
      TaintMap::LabelSet cond = labels_of(map, in.operands[0]);
      if (cond.empty()) break;
      auto tg = ctx.cd_targets.find(in.id);
      if (tg == ctx.cd_targets.end()) break;
      for (const auto &target_id : tg->second) {
        const Instruction *target = ctx.ir.instruction(target_id);
        if (!target || !target->result) continue;
        for (const auto &l : cond) {
          if (l.implicit) continue;  // implicit depth 1
          TaintLabel stepped = extend(l, in.id, bound);
          stepped = extend(stepped, target_id, bound);
          stepped.implicit = true;
          changed |= map.add_var(*target->result, std::move(stepped));
        }
      }
      break;
    }
    default:
      break;  // Entry, External/LowLevel calls (frontier), Return, Revert, Jump
  }
  return changed;
}

}  // namespace

// --- sources -----------------------------------------------------------------

namespace {

// Forward def-use closure: does any return value of `cs` reach an operand of a
// multiplication or division?
bool feeds_mul_div(const ContractIR &ir, const ICFG &cfg, InstrId cs,
                   int returns) {
  // data edges over canonical carrier keys
  std::map<std::string, std::set<std::string>> succ;
  std::vector<std::pair<SlotId, std::string>> stored_slots;
  std::set<std::string> muldiv_operands;

  for (const auto &fn : ir.functions) {
    for (const auto &in : fn.instructions) {
      switch (in.kind) {
        case InstrKind::Assign:
        case InstrKind::BinOp:
        case InstrKind::Phi:
          if (in.result)
            for (const auto &op : in.operands)
              succ[op.str()].insert(in.result->str());
          if (in.kind == InstrKind::BinOp && (in.op == "*" || in.op == "/"))
            for (const auto &op : in.operands) muldiv_operands.insert(op.str());
          break;
        case InstrKind::SStore:
          if (in.slot && !in.operands.empty()) {
            succ[in.operands[0].str()].insert("slot:" + in.slot->str());
            stored_slots.push_back({*in.slot, "slot:" + in.slot->str()});
          }
          break;
        case InstrKind::SLoad:
          if (in.slot && in.result) {
            // link any aliasing stored slot to this load
            for (const auto &[slot, key] : stored_slots)
              if (slot.aliases(*in.slot)) succ[key].insert(in.result->str());
            succ["slot:" + in.slot->str()].insert(in.result->str());
          }
          break;
        case InstrKind::InternalCall: {
          auto it = cfg.resolved_calls.find(in.id);
          if (it == cfg.resolved_calls.end()) break;
          const FunctionIR &target = ir.functions[it->second];
          std::size_t nparams = target.params.size();
          for (std::size_t i = 0; i < in.operands.size() && i < nparams; ++i)
            succ[in.operands[i].str()].insert(
                ValueRef::param(target.name, static_cast<int>(i)).str());
          for (const auto &ret : target.instructions) {
            if (ret.kind != InstrKind::Return) continue;
            for (std::size_t j = 0; j < ret.operands.size(); ++j)
              succ[ret.operands[j].str()].insert(
                  ValueRef::call_return(in.id, static_cast<int>(j)).str());
          }
          break;
        }
        default:
          break;
      }
    }
  }

  std::queue<std::string> work;
  std::set<std::string> seen;
  for (int j = 0; j < std::max(returns, 1); ++j) {
    std::string key = ValueRef::call_return(cs, j).str();
    work.push(key);
    seen.insert(key);
  }
  while (!work.empty()) {
    std::string cur = work.front();
    work.pop();
    if (muldiv_operands.count(cur)) return true;
    auto it = succ.find(cur);
    if (it == succ.end()) continue;
    for (const auto &next : it->second)
      if (seen.insert(next).second) work.push(next);
  }
  return false;
}

}  // namespace

TaintMap identify_sources(const ContractIR &ir, const ICFG &cfg,
                          const FactBase &facts, const AnalysisConfig &config) {
  TaintMap map;

  // (a) parameters of public/external functions
  for (std::size_t fi = 0; fi < ir.functions.size(); ++fi) {
    const FunctionIR &fn = ir.functions[fi];
    if (!fn.is_public() || fn.instructions.empty()) continue;
    for (std::size_t i = 0; i < fn.params.size(); ++i) {
      TaintLabel l;
      l.source_id = "public-input:" + fn.name + "#" + std::to_string(i);
      l.source_kind = SourceKind::PublicInput;
      l.provenance = {InstrId{static_cast<int>(fi), 0}};
      map.add_var(ValueRef::param(fn.name, static_cast<int>(i)), std::move(l));
    }
  }

  // (b) transaction properties msg.value / msg.data at their reads
  for (const auto &fn : ir.functions) {
    for (const auto &in : fn.instructions) {
      for (const auto &op : in.operands) {
        if (op.kind != ValueRef::Kind::TxProperty) continue;
        if (op.prop != TxProp::MsgValue && op.prop != TxProp::MsgData) continue;
        TaintLabel l;
        l.source_id =
            std::string("tx-property:") + tx_prop_name(op.prop) + "@" + in.id.str();
        l.source_kind = SourceKind::TxProperty;
        l.provenance = {in.id};
        map.add_var(op, std::move(l));
      }
    }
  }

  // (c) external view/pure calls whose returns feed * or /
  // (d) known DEX/oracle getters
  for (const auto &ec : facts.external_calls) {
    bool dex = config.dex_source_functions.count(ec.fn) > 0;
    bool oracle_view =
        (ec.mutability == "view" || ec.mutability == "pure") &&
        feeds_mul_div(ir, cfg, ec.cs, ec.returns);
    if (!dex && !oracle_view) continue;
    for (int j = 0; j < std::max(ec.returns, 1); ++j) {
      if (dex) {
        TaintLabel l;
        l.source_id = "dex-call:" + ec.fn + "@" + ec.cs.str();
        l.source_kind = SourceKind::KnownDexCall;
        l.provenance = {ec.cs};
        map.add_var(ValueRef::call_return(ec.cs, j), std::move(l));
      }
      if (oracle_view) {
        TaintLabel l;
        l.source_id = "oracle-view:" + ec.fn + "@" + ec.cs.str();
        l.source_kind = SourceKind::OracleViewCall;
        l.provenance = {ec.cs};
        map.add_var(ValueRef::call_return(ec.cs, j), std::move(l));
      }
    }
  }
  return map;
}

// --- propagation ---------------------------------------------------------------

bool propagate(TaintMap &map, const ContractIR &ir, const ICFG &cfg,
               const FactBase &facts, const AnalysisConfig &config,
               VisitOrder order) {
  Context ctx(ir, cfg, facts, config);
  bool changed = false;
  if (order == VisitOrder::Forward) {
    for (const Instruction *in : ctx.order)
      changed |= apply_instruction(map, *in, ctx);
  } else {
    for (auto it = ctx.order.rbegin(); it != ctx.order.rend(); ++it)
      changed |= apply_instruction(map, **it, ctx);
  }
  return changed;
}

// --- sinks ---------------------------------------------------------------------

std::optional<SinkKind> is_sink(const Instruction &inst, const TaintMap &map,
                                const FactBase &facts,
                                const AnalysisConfig &config) {
  (void)config;
  // rule 1: ether and token transfer with tainted amount
  if (const auto *t = facts.transfer_at(inst.id)) {
    if (map.var_tainted(t->amount)) return SinkKind::EtherTokenTransfer;
  }
  // rule 2: call into a private/internal ledger-updating function with a
  // tainted argument
  if (inst.kind == InstrKind::InternalCall &&
      facts.ledger_update_functions.count(inst.callee)) {
    for (const auto &arg : inst.operands)
      if (map.var_tainted(arg)) return SinkKind::InternalLedgerUpdate;
  }
  // rule 3: tainted write to a mapping slot
  if (inst.kind == InstrKind::SStore && inst.slot && inst.slot->is_mapping_base &&
      !inst.operands.empty()) {
    if (map.var_tainted(inst.operands[0])) return SinkKind::EconomicStateWrite;
  }
  return std::nullopt;
}

// --- full analysis ---------------------------------------------------------------

namespace {

struct PendingPath {
  TaintPath path;
  // ordering for the shortest-first cap
  bool operator<(const PendingPath &o) const {
    if (path.steps.size() != o.path.steps.size())
      return path.steps.size() < o.path.steps.size();
    return path < o.path;
  }
};

}  // namespace

TaintResult analyze_taint(const ContractIR &ir, const ICFG &cfg,
                          const FactBase &facts, const AnalysisConfig &config,
                          const TaintOptions &options) {
  TaintResult result;
  result.map = identify_sources(ir, cfg, facts, config);

  int iter = 0;
  while (true) {
    bool changed = propagate(result.map, ir, cfg, facts, config, options.order);
    ++iter;
    if (options.iteration_observer) options.iteration_observer(iter, result.map);
    if (!changed) break;
    if (iter >= config.max_fixpoint_iterations) {
      result.fixpoint_budget_exceeded = true;
      result.warnings.push_back(
          "fixpoint-budget-exceeded: stopped after " + std::to_string(iter) +
          " iterations; paths reflect the partial map");
      break;
    }
  }
  result.iterations = iter;

  // sink scan + path reconstruction
  std::map<std::pair<InstrId, InstrId>, std::set<PendingPath>> by_pair;
  for (const auto &fn : ir.functions) {
    for (const auto &in : fn.instructions) {
      auto kind = is_sink(in, result.map, facts, config);
      if (!kind) continue;

      TaintMap::LabelSet labels;
      auto collect = [&](const ValueRef &ref) {
        auto ls = labels_of(result.map, ref);
        labels.insert(ls.begin(), ls.end());
      };
      switch (*kind) {
        case SinkKind::EtherTokenTransfer:
          collect(facts.transfer_at(in.id)->amount);
          break;
        case SinkKind::InternalLedgerUpdate:
          for (const auto &arg : in.operands) collect(arg);
          break;
        case SinkKind::EconomicStateWrite:
          collect(in.operands[0]);
          break;
      }

      for (const auto &label : labels) {
        if (label.provenance.empty()) continue;
        TaintPath p;
        p.source_instr = label.provenance.front();
        p.source_kind = label.source_kind;
        p.sink_instr = in.id;
        p.sink_kind = *kind;
        p.steps = label.provenance;
        if (p.steps.back() != in.id) p.steps.push_back(in.id);
        p.source_function = p.source_instr.fn >= 0 &&
                                    p.source_instr.fn <
                                        static_cast<int>(ir.functions.size())
                                ? ir.functions[p.source_instr.fn].name
                                : "?";
        p.sink_function = fn.name;
        for (const auto &step : p.steps) {
          const Instruction *si = ir.instruction(step);
          if (si && si->kind == InstrKind::SStore && si->slot)
            p.affected_slots.insert(*si->slot);
        }
        by_pair[{p.source_instr, p.sink_instr}].insert({std::move(p)});
      }
    }
  }

  std::set<TaintPath> unique;
  for (auto &[pair, pending] : by_pair) {
    int kept = 0;
    for (const auto &pp : pending) {
      if (kept >= config.max_paths_per_pair) {
        ++result.paths_capped;
        continue;
      }
      unique.insert(pp.path);
      ++kept;
    }
  }
  if (result.paths_capped > 0)
    result.warnings.push_back(
        "path-capped: dropped " + std::to_string(result.paths_capped) +
        " paths beyond " + std::to_string(config.max_paths_per_pair) +
        " per (source, sink) pair");
  result.paths.assign(unique.begin(), unique.end());
  return result;
}

nlohmann::ordered_json taint_to_json(const TaintResult &result,
                                     const ContractIR &ir) {
  using ordered = nlohmann::ordered_json;
  ordered j;
  ordered vars = ordered::object();
  for (const auto &[key, labels] : result.map.vars()) {
    if (labels.empty()) continue;
    ordered arr = ordered::array();
    for (const auto &l : labels) {
      ordered lj;
      lj["source"] = l.source_id;
      lj["kind"] = source_kind_name(l.source_kind);
      lj["implicit"] = l.implicit;
      ordered prov = ordered::array();
      for (const auto &id : l.provenance) prov.push_back(id.str());
      lj["provenance"] = std::move(prov);
      arr.push_back(std::move(lj));
    }
    vars[key] = std::move(arr);
  }
  j["varTaints"] = std::move(vars);
  ordered slots = ordered::object();
  for (const auto &[key, labels] : result.map.slots()) {
    if (labels.empty()) continue;
    ordered arr = ordered::array();
    for (const auto &l : labels) {
      ordered lj;
      lj["source"] = l.source_id;
      lj["kind"] = source_kind_name(l.source_kind);
      lj["implicit"] = l.implicit;
      arr.push_back(std::move(lj));
    }
    slots[key] = std::move(arr);
  }
  j["slotTaints"] = std::move(slots);
  ordered paths = ordered::array();
  for (const auto &p : result.paths) {
    ordered pj;
    pj["source"] = ordered{{"instr", p.source_instr.str()},
                           {"kind", source_kind_name(p.source_kind)},
                           {"function", p.source_function}};
    pj["sink"] = ordered{{"instr", p.sink_instr.str()},
                         {"kind", sink_kind_name(p.sink_kind)},
                         {"function", p.sink_function}};
    ordered steps = ordered::array();
    for (const auto &s : p.steps) steps.push_back(s.str());
    pj["steps"] = std::move(steps);
    ordered slots_arr = ordered::array();
    for (const auto &s : p.affected_slots) slots_arr.push_back(render_slot(s, ir));
    pj["affectedSlots"] = std::move(slots_arr);
    paths.push_back(std::move(pj));
  }
  j["paths"] = std::move(paths);
  j["iterations"] = result.iterations;
  j["warnings"] = result.warnings;
  return j;
}

}  // namespace pricescan
