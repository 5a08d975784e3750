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

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pricescan/source.hpp"

namespace pricescan {

// Instruction identity: (function index, instruction index). Ordering is the
// stable interchange ordering.
struct InstrId {
  int fn = -1;
  int idx = -1;

  auto operator<=>(const InstrId &) const = default;
  std::string str() const {
    return std::to_string(fn) + ":" + std::to_string(idx);
  }
  static std::optional<InstrId> parse(const std::string &s);
};

enum class TxProp { MsgSender, MsgValue, MsgData, BlockTimestamp };

const char *tx_prop_name(TxProp p);
std::optional<TxProp> tx_prop_from_name(const std::string &);

// Abstract mapping key / array index. Static analysis cannot evaluate
// concrete storage keys; keys are abstracted to the key expression's value
// reference when it is a simple, stable one, otherwise Unknown.
// Unknown aliases everything on the same base slot.
struct AbstractKey {
  enum class Kind { Unknown, Param, Local, TxProperty, Const };
  Kind kind = Kind::Unknown;
  std::string text;  // canonical rendering of the ref, empty for Unknown

  auto operator<=>(const AbstractKey &) const = default;
  std::string str() const { return kind == Kind::Unknown ? "?" : text; }
  bool compatible(const AbstractKey &other) const {
    return kind == Kind::Unknown || other.kind == Kind::Unknown ||
           *this == other;
  }
};

struct SlotPathElem {
  enum class Kind { MappingKey, ArrayIndex, Member };
  Kind kind = Kind::MappingKey;
  AbstractKey key;     // MappingKey / ArrayIndex
  std::string member;  // Member

  auto operator<=>(const SlotPathElem &) const = default;
};

struct SlotId {
  int base_slot = -1;
  std::vector<SlotPathElem> path;
  bool is_mapping_base = false;

  auto operator<=>(const SlotId &) const = default;
  std::string str() const;
  // Conservative may-alias: equal base, path elements pairwise compatible.
  bool aliases(const SlotId &other) const;
};

struct ValueRef {
  enum class Kind { Local, Param, StateSlot, TxProperty, Const, CallReturn };
  Kind kind = Kind::Const;

  std::string function;  // Local, Param
  std::string name;      // Local
  int version = 0;       // Local
  int index = 0;         // Param index / CallReturn index
  SlotId slot;           // StateSlot
  TxProp prop = TxProp::MsgSender;  // TxProperty
  std::string literal;   // Const
  InstrId call_site;     // CallReturn

  auto operator<=>(const ValueRef &) const = default;
  std::string str() const;

  static ValueRef local(std::string fn, std::string name, int version) {
    ValueRef v;
    v.kind = Kind::Local;
    v.function = std::move(fn);
    v.name = std::move(name);
    v.version = version;
    return v;
  }
  static ValueRef param(std::string fn, int index) {
    ValueRef v;
    v.kind = Kind::Param;
    v.function = std::move(fn);
    v.index = index;
    return v;
  }
  static ValueRef state_slot(SlotId s) {
    ValueRef v;
    v.kind = Kind::StateSlot;
    v.slot = std::move(s);
    return v;
  }
  static ValueRef tx(TxProp p) {
    ValueRef v;
    v.kind = Kind::TxProperty;
    v.prop = p;
    return v;
  }
  static ValueRef constant(std::string lit) {
    ValueRef v;
    v.kind = Kind::Const;
    v.literal = std::move(lit);
    return v;
  }
  static ValueRef call_return(InstrId cs, int index) {
    ValueRef v;
    v.kind = Kind::CallReturn;
    v.call_site = cs;
    v.index = index;
    return v;
  }
};

enum class InstrKind {
  Entry,  // parameter-binding pseudo-instruction, one per function
  Assign,
  BinOp,
  InternalCall,
  ExternalCall,
  LowLevelCall,
  SStore,
  SLoad,
  Require,
  Revert,
  Return,
  Jump,
  CondJump,
  Phi,
};

const char *instr_kind_name(InstrKind k);
std::optional<InstrKind> instr_kind_from_name(const std::string &);

struct Instruction {
  InstrId id;
  InstrKind kind = InstrKind::Assign;
  // BinOp operator; LowLevelCall flavor (call|send|transfer); Assign detail
  // (index, member, balance, not, neg, new-array, index-store).
  std::string op;
  std::string callee;             // Internal/External call target name
  std::string callee_interface;   // ExternalCall interface type name
  std::string callee_mutability;  // declared mutability if known
  int callee_returns = 1;         // declared return arity if known
  bool has_value = false;         // LowLevelCall carries ether
  std::vector<ValueRef> operands;
  std::optional<ValueRef> result;
  std::optional<SlotId> slot;  // SStore target / SLoad source
  SourceSpan span;
  // Conditions (Require/CondJump instruction ids) this instruction is
  // control-dependent on; drives implicit-flow tainting.
  std::vector<InstrId> control_deps;
};

struct IRModifierInvocation {
  std::string name;
  std::vector<std::string> args;  // rendered arg expressions
};

struct FunctionIR {
  std::string name;
  std::string visibility;  // public|external|internal|private
  std::string mutability;  // default|view|pure|payable
  bool is_modifier = false;
  std::vector<IRModifierInvocation> modifiers;
  std::vector<std::pair<std::string, std::string>> params;  // (name, type)
  std::vector<std::string> returns;                         // types
  std::vector<Instruction> instructions;
  std::vector<std::vector<int>> successors;  // per instruction, local indices
  SourceSpan span;
  std::string signature;

  bool is_public() const {
    return !is_modifier && (visibility == "public" || visibility == "external");
  }
};

struct StateVar {
  std::string name;
  std::string type_text;
  int slot = 0;
  bool is_mapping = false;
};

struct ContractIR {
  std::string name;
  std::string source_path;
  std::string source_text;  // empty when imported
  std::vector<StateVar> state_vars;
  std::vector<FunctionIR> functions;
  std::vector<Diagnostic> diagnostics;

  const FunctionIR *function_by_name(const std::string &n) const {
    for (const auto &f : functions)
      if (f.name == n && !f.is_modifier) return &f;
    return nullptr;
  }
  int function_index(const std::string &n) const {
    for (std::size_t i = 0; i < functions.size(); ++i)
      if (functions[i].name == n && !functions[i].is_modifier)
        return static_cast<int>(i);
    return -1;
  }
  const Instruction *instruction(InstrId id) const {
    if (id.fn < 0 || id.fn >= static_cast<int>(functions.size())) return nullptr;
    const auto &ins = functions[id.fn].instructions;
    if (id.idx < 0 || id.idx >= static_cast<int>(ins.size())) return nullptr;
    return &ins[id.idx];
  }
  const StateVar *state_var(int slot) const {
    for (const auto &sv : state_vars)
      if (sv.slot == slot) return &sv;
    return nullptr;
  }
};

// Inter-procedural CFG over instruction ids.
struct ICFG {
  std::vector<std::pair<InstrId, InstrId>> intra_edges;
  std::vector<std::pair<InstrId, InstrId>> call_edges;    // call site -> callee entry
  std::vector<std::pair<InstrId, InstrId>> return_edges;  // callee exit -> call site
  std::vector<InstrId> entry_points;  // Entry instructions of IsPublic functions
  std::vector<Diagnostic> diagnostics;

  // call site -> callee function index, resolved internal calls only
  std::map<InstrId, int> resolved_calls;
};

std::string render_value_ref(const ValueRef &v);
std::string render_slot(const SlotId &s, const ContractIR &ir);
std::string render_instruction(const Instruction &in, const ContractIR &ir);

}  // namespace pricescan
