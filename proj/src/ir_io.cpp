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

#include "pricescan/ir_io.hpp"

namespace pricescan {

using json = nlohmann::json;
using ordered = nlohmann::ordered_json;

namespace {

ordered value_ref_json(const ValueRef &v) {
  ordered j;
  switch (v.kind) {
    case ValueRef::Kind::Local:
      j["kind"] = "local";
      j["function"] = v.function;
      j["name"] = v.name;
      j["version"] = v.version;
      break;
    case ValueRef::Kind::Param:
      j["kind"] = "param";
      j["function"] = v.function;
      j["index"] = v.index;
      break;
    case ValueRef::Kind::StateSlot: {
      j["kind"] = "stateSlot";
      j["slot"] = v.slot.base_slot;
      break;
    }
    case ValueRef::Kind::TxProperty:
      j["kind"] = "txProperty";
      j["property"] = tx_prop_name(v.prop);
      break;
    case ValueRef::Kind::Const:
      j["kind"] = "const";
      j["value"] = v.literal;
      break;
    case ValueRef::Kind::CallReturn:
      j["kind"] = "callReturn";
      j["callSite"] = v.call_site.str();
      j["index"] = v.index;
      break;
  }
  return j;
}

ordered slot_json(const SlotId &s) {
  ordered j;
  j["base"] = s.base_slot;
  j["mapping"] = s.is_mapping_base;
  ordered path = ordered::array();
  for (const auto &e : s.path) {
    ordered ej;
    switch (e.kind) {
      case SlotPathElem::Kind::MappingKey:
        ej["kind"] = "mappingKey";
        break;
      case SlotPathElem::Kind::ArrayIndex:
        ej["kind"] = "arrayIndex";
        break;
      case SlotPathElem::Kind::Member:
        ej["kind"] = "member";
        ej["name"] = e.member;
        path.push_back(std::move(ej));
        continue;
    }
    switch (e.key.kind) {
      case AbstractKey::Kind::Unknown: ej["key"] = nullptr; break;
      default:
        ej["key"] = ordered{{"kind",
                             e.key.kind == AbstractKey::Kind::Param   ? "param"
                             : e.key.kind == AbstractKey::Kind::Local ? "local"
                             : e.key.kind == AbstractKey::Kind::TxProperty
                                 ? "txProperty"
                                 : "const"},
                            {"text", e.key.text}};
        break;
    }
    path.push_back(std::move(ej));
  }
  j["path"] = std::move(path);
  return j;
}

}  // namespace

ordered export_ir_json(const ContractIR &ir) {
  ordered j;
  j["irVersion"] = kIrVersion;
  j["contract"] = ir.name;
  ordered svs = ordered::array();
  for (const auto &sv : ir.state_vars) {
    svs.push_back(ordered{{"name", sv.name},
                          {"type", sv.type_text},
                          {"slot", sv.slot}});
  }
  j["stateVars"] = std::move(svs);
  ordered fns = ordered::array();
  for (const auto &fn : ir.functions) {
    ordered fj;
    fj["name"] = fn.name;
    fj["visibility"] = fn.visibility;
    fj["mutability"] = fn.mutability;
    if (fn.is_modifier) fj["isModifier"] = true;
    ordered mods = ordered::array();
    for (const auto &m : fn.modifiers) {
      ordered mj;
      mj["name"] = m.name;
      mj["args"] = m.args;
      mods.push_back(std::move(mj));
    }
    fj["modifiers"] = std::move(mods);
    ordered params = ordered::array();
    for (const auto &[name, type] : fn.params)
      params.push_back(ordered{{"name", name}, {"type", type}});
    fj["params"] = std::move(params);
    fj["returns"] = fn.returns;
    if (!fn.signature.empty()) fj["signature"] = fn.signature;
    ordered ins = ordered::array();
    for (std::size_t i = 0; i < fn.instructions.size(); ++i) {
      const Instruction &in = fn.instructions[i];
      ordered ij;
      ij["id"] = in.id.str();
      ij["kind"] = instr_kind_name(in.kind);
      if (!in.op.empty()) ij["op"] = in.op;
      if (!in.callee.empty()) ij["callee"] = in.callee;
      if (!in.callee_interface.empty())
        ij["calleeInterface"] = in.callee_interface;
      if (!in.callee_mutability.empty())
        ij["calleeMutability"] = in.callee_mutability;
      if (in.callee_returns != 1) ij["calleeReturns"] = in.callee_returns;
      if (in.has_value) ij["hasValue"] = true;
      ordered ops = ordered::array();
      for (const auto &o : in.operands) ops.push_back(value_ref_json(o));
      ij["operands"] = std::move(ops);
      ij["result"] = in.result ? value_ref_json(*in.result) : ordered(nullptr);
      if (in.slot) ij["slot"] = slot_json(*in.slot);
      ij["span"] = ordered::array({in.span.begin, in.span.end});
      if (i < fn.successors.size()) ij["succ"] = fn.successors[i];
      ordered cds = ordered::array();
      for (const auto &c : in.control_deps) cds.push_back(c.str());
      ij["controlDeps"] = std::move(cds);
      ins.push_back(std::move(ij));
    }
    fj["instructions"] = std::move(ins);
    fns.push_back(std::move(fj));
  }
  j["functions"] = std::move(fns);
  return j;
}

namespace {

std::string str_field(const json &j, const std::string &path, const char *key,
                      bool required = true, const std::string &dflt = "") {
  if (!j.contains(key)) {
    if (required) throw SchemaViolation(path + "." + key, "missing field");
    return dflt;
  }
  if (!j[key].is_string())
    throw SchemaViolation(path + "." + key, "expected string");
  return j[key].get<std::string>();
}

int int_field(const json &j, const std::string &path, const char *key,
              bool required = true, int dflt = 0) {
  if (!j.contains(key)) {
    if (required) throw SchemaViolation(path + "." + key, "missing field");
    return dflt;
  }
  if (!j[key].is_number_integer())
    throw SchemaViolation(path + "." + key, "expected integer");
  return j[key].get<int>();
}

ValueRef import_value_ref(const json &j, const std::string &path) {
  if (!j.is_object()) throw SchemaViolation(path, "expected object");
  std::string kind = str_field(j, path, "kind");
  if (kind == "local")
    return ValueRef::local(str_field(j, path, "function"),
                           str_field(j, path, "name"),
                           int_field(j, path, "version"));
  if (kind == "param")
    return ValueRef::param(str_field(j, path, "function"),
                           int_field(j, path, "index"));
  if (kind == "stateSlot") {
    SlotId s;
    s.base_slot = int_field(j, path, "slot");
    return ValueRef::state_slot(s);
  }
  if (kind == "txProperty") {
    auto p = tx_prop_from_name(str_field(j, path, "property"));
    if (!p) throw SchemaViolation(path + ".property", "unknown tx property");
    return ValueRef::tx(*p);
  }
  if (kind == "const") return ValueRef::constant(str_field(j, path, "value"));
  if (kind == "callReturn") {
    auto id = InstrId::parse(str_field(j, path, "callSite"));
    if (!id) throw SchemaViolation(path + ".callSite", "malformed id");
    return ValueRef::call_return(*id, int_field(j, path, "index"));
  }
  throw SchemaViolation(path + ".kind", "unknown value kind '" + kind + "'");
}

SlotId import_slot(const json &j, const std::string &path) {
  if (!j.is_object()) throw SchemaViolation(path, "expected object");
  SlotId s;
  s.base_slot = int_field(j, path, "base");
  if (j.contains("mapping")) {
    if (!j["mapping"].is_boolean())
      throw SchemaViolation(path + ".mapping", "expected bool");
    s.is_mapping_base = j["mapping"].get<bool>();
  }
  if (j.contains("path")) {
    if (!j["path"].is_array())
      throw SchemaViolation(path + ".path", "expected array");
    int i = 0;
    for (const auto &ej : j["path"]) {
      std::string epath = path + ".path[" + std::to_string(i++) + "]";
      SlotPathElem e;
      std::string kind = str_field(ej, epath, "kind");
      if (kind == "mappingKey")
        e.kind = SlotPathElem::Kind::MappingKey;
      else if (kind == "arrayIndex")
        e.kind = SlotPathElem::Kind::ArrayIndex;
      else if (kind == "member") {
        e.kind = SlotPathElem::Kind::Member;
        e.member = str_field(ej, epath, "name");
        s.path.push_back(std::move(e));
        continue;
      } else {
        throw SchemaViolation(epath + ".kind", "unknown path element");
      }
      if (ej.contains("key") && !ej["key"].is_null()) {
        const auto &kj = ej["key"];
        std::string kk = str_field(kj, epath + ".key", "kind");
        if (kk == "param")
          e.key.kind = AbstractKey::Kind::Param;
        else if (kk == "local")
          e.key.kind = AbstractKey::Kind::Local;
        else if (kk == "txProperty")
          e.key.kind = AbstractKey::Kind::TxProperty;
        else if (kk == "const")
          e.key.kind = AbstractKey::Kind::Const;
        else
          throw SchemaViolation(epath + ".key.kind", "unknown key kind");
        e.key.text = str_field(kj, epath + ".key", "text");
      }
      s.path.push_back(std::move(e));
    }
  }
  return s;
}

}  // namespace

ContractIR import_ir_json(const json &doc) {
  if (!doc.is_object()) throw SchemaViolation("$", "expected object");
  int version = int_field(doc, "$", "irVersion");
  if (version != kIrVersion)
    throw SchemaViolation("$.irVersion",
                          "unsupported version " + std::to_string(version));
  ContractIR ir;
  ir.name = str_field(doc, "$", "contract");
  if (doc.contains("stateVars")) {
    if (!doc["stateVars"].is_array())
      throw SchemaViolation("$.stateVars", "expected array");
    int i = 0;
    for (const auto &svj : doc["stateVars"]) {
      std::string path = "$.stateVars[" + std::to_string(i++) + "]";
      StateVar sv;
      sv.name = str_field(svj, path, "name");
      sv.type_text = str_field(svj, path, "type");
      sv.slot = int_field(svj, path, "slot");
      sv.is_mapping = sv.type_text.rfind("mapping", 0) == 0;
      ir.state_vars.push_back(std::move(sv));
    }
  }
  if (!doc.contains("functions") || !doc["functions"].is_array())
    throw SchemaViolation("$.functions", "missing or not an array");
  int fi = 0;
  for (const auto &fj : doc["functions"]) {
    std::string fpath = "$.functions[" + std::to_string(fi) + "]";
    FunctionIR fn;
    fn.name = str_field(fj, fpath, "name");
    fn.visibility = str_field(fj, fpath, "visibility");
    if (fn.visibility != "public" && fn.visibility != "external" &&
        fn.visibility != "internal" && fn.visibility != "private")
      throw SchemaViolation(fpath + ".visibility",
                            "unknown visibility '" + fn.visibility + "'");
    fn.mutability = str_field(fj, fpath, "mutability", false, "default");
    if (fj.contains("isModifier") && fj["isModifier"].is_boolean())
      fn.is_modifier = fj["isModifier"].get<bool>();
    if (fj.contains("modifiers")) {
      if (!fj["modifiers"].is_array())
        throw SchemaViolation(fpath + ".modifiers", "expected array");
      for (const auto &mj : fj["modifiers"]) {
        IRModifierInvocation mi;
        if (mj.is_string()) {
          mi.name = mj.get<std::string>();
        } else {
          mi.name = str_field(mj, fpath + ".modifiers[]", "name");
          if (mj.contains("args"))
            for (const auto &a : mj["args"])
              if (a.is_string()) mi.args.push_back(a.get<std::string>());
        }
        fn.modifiers.push_back(std::move(mi));
      }
    }
    if (fj.contains("params")) {
      if (!fj["params"].is_array())
        throw SchemaViolation(fpath + ".params", "expected array");
      for (const auto &pj : fj["params"])
        fn.params.push_back({str_field(pj, fpath + ".params[]", "name", false),
                             str_field(pj, fpath + ".params[]", "type", false)});
    }
    if (fj.contains("returns")) {
      for (const auto &r : fj["returns"])
        if (r.is_string()) fn.returns.push_back(r.get<std::string>());
    }
    fn.signature = str_field(fj, fpath, "signature", false);
    if (!fj.contains("instructions") || !fj["instructions"].is_array())
      throw SchemaViolation(fpath + ".instructions", "missing or not an array");
    int ii = 0;
    for (const auto &ij : fj["instructions"]) {
      std::string ipath = fpath + ".instructions[" + std::to_string(ii) + "]";
      Instruction in;
      in.id = {fi, ii};
      std::string kind = str_field(ij, ipath, "kind");
      auto k = instr_kind_from_name(kind);
      if (!k)
        throw SchemaViolation(ipath + ".kind",
                              "unknown instruction kind '" + kind + "'");
      in.kind = *k;
      in.op = str_field(ij, ipath, "op", false);
      in.callee = str_field(ij, ipath, "callee", false);
      in.callee_interface = str_field(ij, ipath, "calleeInterface", false);
      in.callee_mutability = str_field(ij, ipath, "calleeMutability", false);
      in.callee_returns = int_field(ij, ipath, "calleeReturns", false, 1);
      if (ij.contains("hasValue") && ij["hasValue"].is_boolean())
        in.has_value = ij["hasValue"].get<bool>();
      if (ij.contains("operands")) {
        if (!ij["operands"].is_array())
          throw SchemaViolation(ipath + ".operands", "expected array");
        int oi = 0;
        for (const auto &oj : ij["operands"])
          in.operands.push_back(import_value_ref(
              oj, ipath + ".operands[" + std::to_string(oi++) + "]"));
      }
      if (ij.contains("result") && !ij["result"].is_null())
        in.result = import_value_ref(ij["result"], ipath + ".result");
      if (ij.contains("slot") && !ij["slot"].is_null())
        in.slot = import_slot(ij["slot"], ipath + ".slot");
      if ((in.kind == InstrKind::SStore || in.kind == InstrKind::SLoad) &&
          !in.slot)
        throw SchemaViolation(ipath + ".slot", "storage access without slot");
      if (in.kind == InstrKind::SStore && in.operands.empty())
        throw SchemaViolation(ipath + ".operands", "SStore requires a value");
      if (ij.contains("span") && ij["span"].is_array() &&
          ij["span"].size() == 2) {
        in.span.begin = ij["span"][0].get<std::size_t>();
        in.span.end = ij["span"][1].get<std::size_t>();
      }
      std::vector<int> succ;
      if (ij.contains("succ")) {
        if (!ij["succ"].is_array())
          throw SchemaViolation(ipath + ".succ", "expected array");
        for (const auto &sj : ij["succ"]) {
          if (!sj.is_number_integer())
            throw SchemaViolation(ipath + ".succ", "expected integers");
          succ.push_back(sj.get<int>());
        }
      }
      if (ij.contains("controlDeps")) {
        for (const auto &cj : ij["controlDeps"]) {
          auto cid = InstrId::parse(cj.get<std::string>());
          if (!cid)
            throw SchemaViolation(ipath + ".controlDeps", "malformed id");
          in.control_deps.push_back(*cid);
        }
      }
      fn.instructions.push_back(std::move(in));
      fn.successors.push_back(std::move(succ));
      ++ii;
    }
    // default linear fallthrough when succ lists were omitted
    for (std::size_t i = 0; i + 1 < fn.instructions.size(); ++i) {
      if (!fn.successors[i].empty()) continue;
      InstrKind k2 = fn.instructions[i].kind;
      if (k2 != InstrKind::Return && k2 != InstrKind::Revert)
        fn.successors[i].push_back(static_cast<int>(i) + 1);
    }
    ir.functions.push_back(std::move(fn));
    ++fi;
  }
  return ir;
}

}  // namespace pricescan
