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

#include "pricescan/ir.hpp"

#include <sstream>

namespace pricescan {

std::optional<InstrId> InstrId::parse(const std::string &s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) return std::nullopt;
  try {
    InstrId id;
    id.fn = std::stoi(s.substr(0, colon));
    id.idx = std::stoi(s.substr(colon + 1));
    return id;
  } catch (...) {
    return std::nullopt;
  }
}

const char *tx_prop_name(TxProp p) {
  switch (p) {
    case TxProp::MsgSender: return "msg.sender";
    case TxProp::MsgValue: return "msg.value";
    case TxProp::MsgData: return "msg.data";
    case TxProp::BlockTimestamp: return "block.timestamp";
  }
  return "?";
}

std::optional<TxProp> tx_prop_from_name(const std::string &s) {
  if (s == "msg.sender") return TxProp::MsgSender;
  if (s == "msg.value") return TxProp::MsgValue;
  if (s == "msg.data") return TxProp::MsgData;
  if (s == "block.timestamp") return TxProp::BlockTimestamp;
  return std::nullopt;
}

std::string SlotId::str() const {
  std::ostringstream os;
  os << "slot" << base_slot;
  for (const auto &e : path) {
    switch (e.kind) {
      case SlotPathElem::Kind::MappingKey:
        os << "[" << e.key.str() << "]";
        break;
      case SlotPathElem::Kind::ArrayIndex:
        os << "{" << e.key.str() << "}";
        break;
      case SlotPathElem::Kind::Member:
        os << "." << e.member;
        break;
    }
  }
  return os.str();
}

bool SlotId::aliases(const SlotId &other) const {
  if (base_slot != other.base_slot) return false;
  // Differently deep access paths on the same base may still overlap
  // (unknown suffixes); compare the common prefix conservatively.
  std::size_t n = std::min(path.size(), other.path.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto &a = path[i];
    const auto &b = other.path[i];
    if (a.kind != b.kind) return false;
    if (a.kind == SlotPathElem::Kind::Member) {
      if (a.member != b.member) return false;
    } else if (!a.key.compatible(b.key)) {
      return false;
    }
  }
  return true;
}

std::string ValueRef::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Local:
      os << "L:" << function << ":" << name << ":v" << version;
      break;
    case Kind::Param:
      os << "P:" << function << ":" << index;
      break;
    case Kind::StateSlot:
      os << "S:" << slot.str();
      break;
    case Kind::TxProperty:
      os << "T:" << tx_prop_name(prop);
      break;
    case Kind::Const:
      os << "C:" << literal;
      break;
    case Kind::CallReturn:
      os << "R:" << call_site.str() << ":" << index;
      break;
  }
  return os.str();
}

const char *instr_kind_name(InstrKind k) {
  switch (k) {
    case InstrKind::Entry: return "Entry";
    case InstrKind::Assign: return "Assign";
    case InstrKind::BinOp: return "BinOp";
    case InstrKind::InternalCall: return "InternalCall";
    case InstrKind::ExternalCall: return "ExternalCall";
    case InstrKind::LowLevelCall: return "LowLevelCall";
    case InstrKind::SStore: return "SStore";
    case InstrKind::SLoad: return "SLoad";
    case InstrKind::Require: return "Require";
    case InstrKind::Revert: return "Revert";
    case InstrKind::Return: return "Return";
    case InstrKind::Jump: return "Jump";
    case InstrKind::CondJump: return "CondJump";
    case InstrKind::Phi: return "Phi";
  }
  return "?";
}

std::optional<InstrKind> instr_kind_from_name(const std::string &s) {
  static const std::map<std::string, InstrKind> table = {
      {"Entry", InstrKind::Entry},
      {"Assign", InstrKind::Assign},
      {"BinOp", InstrKind::BinOp},
      {"InternalCall", InstrKind::InternalCall},
      {"ExternalCall", InstrKind::ExternalCall},
      {"LowLevelCall", InstrKind::LowLevelCall},
      {"SStore", InstrKind::SStore},
      {"SLoad", InstrKind::SLoad},
      {"Require", InstrKind::Require},
      {"Revert", InstrKind::Revert},
      {"Return", InstrKind::Return},
      {"Jump", InstrKind::Jump},
      {"CondJump", InstrKind::CondJump},
      {"Phi", InstrKind::Phi},
  };
  auto it = table.find(s);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::string render_value_ref(const ValueRef &v) {
  switch (v.kind) {
    case ValueRef::Kind::Local:
      return v.name + "#" + std::to_string(v.version);
    case ValueRef::Kind::Param:
      return v.function + ".arg" + std::to_string(v.index);
    case ValueRef::Kind::StateSlot:
      return v.slot.str();
    case ValueRef::Kind::TxProperty:
      return tx_prop_name(v.prop);
    case ValueRef::Kind::Const:
      return v.literal;
    case ValueRef::Kind::CallReturn:
      return "ret(" + v.call_site.str() + ")[" + std::to_string(v.index) + "]";
  }
  return "?";
}

std::string render_slot(const SlotId &s, const ContractIR &ir) {
  const StateVar *sv = ir.state_var(s.base_slot);
  std::string out = sv ? sv->name : ("slot" + std::to_string(s.base_slot));
  for (const auto &e : s.path) {
    switch (e.kind) {
      case SlotPathElem::Kind::MappingKey:
        out += "[" + e.key.str() + "]";
        break;
      case SlotPathElem::Kind::ArrayIndex:
        out += "[" + e.key.str() + "]";
        break;
      case SlotPathElem::Kind::Member:
        out += "." + e.member;
        break;
    }
  }
  return out;
}

std::string render_instruction(const Instruction &in, const ContractIR &ir) {
  std::ostringstream os;
  os << in.id.str() << " " << instr_kind_name(in.kind);
  if (!in.op.empty()) os << "(" << in.op << ")";
  if (!in.callee.empty()) {
    os << " " << (in.callee_interface.empty()
                      ? in.callee
                      : in.callee_interface + "." + in.callee);
  }
  if (in.slot) os << " " << render_slot(*in.slot, ir);
  if (!in.operands.empty()) {
    os << " [";
    for (std::size_t i = 0; i < in.operands.size(); ++i) {
      if (i) os << ", ";
      os << render_value_ref(in.operands[i]);
    }
    os << "]";
  }
  if (in.result) os << " -> " << render_value_ref(*in.result);
  return os.str();
}

}  // namespace pricescan
