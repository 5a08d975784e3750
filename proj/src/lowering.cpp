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

#include "pricescan/lowering.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <memory>
#include <set>
#include <sstream>

namespace pricescan {

using namespace ast;

UnitIndex UnitIndex::build(const SourceUnit &unit) {
  UnitIndex idx;
  for (const auto &c : unit.contracts) {
    auto &fns = idx.interfaces[c.name];
    for (const auto &f : c.functions) {
      FnSig sig;
      sig.mutability = mutability_name(f.mutability);
      sig.returns = static_cast<int>(f.returns.size());
      if (sig.returns == 0) sig.returns = 1;
      fns[f.name] = sig;
    }
  }
  return idx;
}

const UnitIndex::FnSig *UnitIndex::lookup(const std::string &iface,
                                          const std::string &fn) const {
  auto it = interfaces.find(iface);
  if (it == interfaces.end()) return nullptr;
  auto jt = it->second.find(fn);
  if (jt == it->second.end()) return nullptr;
  return &jt->second;
}

namespace {

struct TypeInfo {
  enum class Cat {
    Unknown,
    Integer,
    Address,
    Bool,
    BytesLike,
    Interface,
    Mapping,
    Array,
  };
  Cat cat = Cat::Unknown;
  std::string iface;                        // Interface
  std::shared_ptr<const TypeName> type;     // full declared type when known

  static TypeInfo unknown() { return {}; }
};

TypeInfo classify(const TypeName &t) {
  TypeInfo ti;
  ti.type = std::shared_ptr<const TypeName>(new TypeName(t.clone()));
  switch (t.kind) {
    case TypeName::Kind::Elementary: {
      const std::string &n = t.name;
      if (n.rfind("uint", 0) == 0 || n.rfind("int", 0) == 0)
        ti.cat = TypeInfo::Cat::Integer;
      else if (n == "address" || n == "address payable")
        ti.cat = TypeInfo::Cat::Address;
      else if (n == "bool")
        ti.cat = TypeInfo::Cat::Bool;
      else
        ti.cat = TypeInfo::Cat::BytesLike;
      break;
    }
    case TypeName::Kind::UserDefined:
      ti.cat = TypeInfo::Cat::Interface;
      ti.iface = t.name;
      break;
    case TypeName::Kind::Mapping:
      ti.cat = TypeInfo::Cat::Mapping;
      break;
    case TypeName::Kind::Array:
      ti.cat = TypeInfo::Cat::Array;
      break;
  }
  return ti;
}

TypeInfo element_type(const TypeInfo &container) {
  if (!container.type) return TypeInfo::unknown();
  const TypeName &t = *container.type;
  if (t.kind == TypeName::Kind::Mapping && t.value) return classify(*t.value);
  if (t.kind == TypeName::Kind::Array && t.value) return classify(*t.value);
  return TypeInfo::unknown();
}

struct LoweringError {
  std::string reason;
  SourceSpan span;
};

struct StateInfo {
  int slot = 0;
  bool is_mapping = false;
  std::shared_ptr<const TypeName> type;
};

std::string render_expr_text(const Expr &e, const std::string &src) {
  if (e.span.valid() && e.span.end <= src.size())
    return src.substr(e.span.begin, e.span.end - e.span.begin);
  return "";
}

class FunctionLowerer {
 public:
  FunctionLowerer(ContractIR &ir, int fn_index, FunctionIR &fn,
                  const std::map<std::string, StateInfo> &state,
                  const UnitIndex &unit, const std::string &src)
      : ir_(ir), fn_index_(fn_index), fn_(fn), state_(state), unit_(unit),
        src_(src) {}

  void run(const std::vector<Param> &params, const std::vector<Param> &returns,
           const Stmt *body, SourceSpan header_span) {
    Instruction entry;
    entry.kind = InstrKind::Entry;
    entry.span = header_span;
    emit(std::move(entry));
    for (std::size_t i = 0; i < params.size(); ++i) {
      VarInfo vi;
      vi.param_index = static_cast<int>(i);
      vi.version = -1;
      vi.ti = classify(params[i].type);
      if (!params[i].name.empty()) vars_[params[i].name] = std::move(vi);
    }
    for (const auto &r : returns) {
      if (r.name.empty()) continue;
      VarInfo vi;
      vi.version = 0;
      vi.ti = classify(r.type);
      vars_[r.name] = std::move(vi);
      named_returns_.push_back(r.name);
    }
    if (body) lower_block(*body);
    finalize();
  }

 private:
  ContractIR &ir_;
  int fn_index_;
  FunctionIR &fn_;
  const std::map<std::string, StateInfo> &state_;
  const UnitIndex &unit_;
  const std::string &src_;

  struct VarInfo {
    int param_index = -1;
    int version = 0;  // -1: still the unshadowed parameter
    TypeInfo ti;
  };
  std::map<std::string, VarInfo> vars_;
  std::vector<std::string> named_returns_;
  int temp_counter_ = 0;

  struct Label {
    std::vector<std::pair<int, int>> sites;  // (instr, succ slot); -1 appends
  };
  std::deque<Label> labels_;  // stable addresses for the function's lifetime
  std::vector<int> open_ends_;
  std::vector<Label *> pending_;
  std::vector<InstrId> cond_stack_;
  std::vector<InstrId> guard_conds_;
  bool reachable_ = true;

  struct Value {
    ValueRef ref;
    TypeInfo ti;
  };

  Label &new_label() {
    labels_.emplace_back();
    return labels_.back();
  }

  int next_index() const { return static_cast<int>(fn_.instructions.size()); }

  static bool falls_through(InstrKind k) {
    return k != InstrKind::Return && k != InstrKind::Revert &&
           k != InstrKind::CondJump && k != InstrKind::Jump;
  }

  int emit(Instruction in) {
    int idx = next_index();
    in.id = {fn_index_, idx};
    in.control_deps = guard_conds_;
    for (const auto &c : cond_stack_)
      if (std::find(in.control_deps.begin(), in.control_deps.end(), c) ==
          in.control_deps.end())
        in.control_deps.push_back(c);
    InstrKind kind = in.kind;
    fn_.instructions.push_back(std::move(in));
    fn_.successors.emplace_back();
    for (int e : open_ends_) fn_.successors[e].push_back(idx);
    open_ends_.clear();
    for (Label *l : pending_) {
      for (auto [site, slot] : l->sites) {
        if (slot < 0)
          fn_.successors[site].push_back(idx);
        else
          fn_.successors[site][slot] = idx;
      }
      l->sites.clear();
    }
    pending_.clear();
    if (falls_through(kind)) open_ends_.push_back(idx);
    reachable_ = true;
    return idx;
  }

  InstrId id_of(int idx) const { return {fn_index_, idx}; }

  void attach_open_to(Label &l) {
    for (int e : open_ends_) l.sites.push_back({e, -1});
    open_ends_.clear();
  }
  // Moves every unresolved exit of the just-lowered region (fallthroughs and
  // sites parked on still-pending labels) onto `l`.
  void capture_exits(Label &l) {
    attach_open_to(l);
    for (Label *p : pending_) {
      for (auto &site : p->sites) l.sites.push_back(site);
      p->sites.clear();
    }
    pending_.clear();
  }
  void bind_next(Label &l) {
    if (!l.sites.empty() &&
        std::find(pending_.begin(), pending_.end(), &l) == pending_.end())
      pending_.push_back(&l);
  }

  ValueRef fresh_temp(const TypeInfo &ti) {
    ValueRef r = ValueRef::local(fn_.name, "%t" + std::to_string(temp_counter_++), 0);
    temp_types_[r.str()] = ti;
    return r;
  }
  std::map<std::string, TypeInfo> temp_types_;

  ValueRef read_var(const std::string &name, TypeInfo *ti_out) {
    auto it = vars_.find(name);
    assert(it != vars_.end());
    if (ti_out) *ti_out = it->second.ti;
    if (it->second.param_index >= 0 && it->second.version < 0)
      return ValueRef::param(fn_.name, it->second.param_index);
    return ValueRef::local(fn_.name, name, it->second.version);
  }

  ValueRef write_var(const std::string &name) {
    auto it = vars_.find(name);
    assert(it != vars_.end());
    it->second.version = std::max(it->second.version, 0) + 1;
    return ValueRef::local(fn_.name, name, it->second.version);
  }

  ValueRef declare_var(const std::string &name, TypeInfo ti) {
    VarInfo vi;
    vi.version = 0;
    vi.ti = std::move(ti);
    vars_[name] = std::move(vi);
    return ValueRef::local(fn_.name, name, 0);
  }

  AbstractKey abstract_key(const ValueRef &key) const {
    AbstractKey k;
    switch (key.kind) {
      case ValueRef::Kind::Param:
        k.kind = AbstractKey::Kind::Param;
        break;
      case ValueRef::Kind::TxProperty:
        k.kind = AbstractKey::Kind::TxProperty;
        break;
      case ValueRef::Kind::Const:
        k.kind = AbstractKey::Kind::Const;
        break;
      case ValueRef::Kind::Local:
        if (key.name.rfind("%t", 0) == 0) return k;  // temp -> unknown
        k.kind = AbstractKey::Kind::Local;
        break;
      default:
        return k;  // unknown
    }
    k.text = key.str();
    return k;
  }

  // --- statements -----------------------------------------------------------

  void lower_block(const Stmt &block) {
    for (const auto &s : block.children)
      if (s) lower_stmt(*s);
  }

  void lower_stmt(const Stmt &s) {
    switch (s.kind) {
      case Stmt::Kind::Block:
        lower_block(s);
        return;
      case Stmt::Kind::VarDecl:
        lower_var_decl(s);
        return;
      case Stmt::Kind::Assign:
        lower_assign(s);
        return;
      case Stmt::Kind::If:
        lower_if(s);
        return;
      case Stmt::Kind::While:
        lower_while(s);
        return;
      case Stmt::Kind::For:
        lower_for(s);
        return;
      case Stmt::Kind::Require:
      case Stmt::Kind::AssertStmt:
        lower_require(s);
        return;
      case Stmt::Kind::Revert: {
        Instruction in;
        in.kind = InstrKind::Revert;
        in.span = s.span;
        if (!s.args.empty() && s.args[0])
          in.operands.push_back(lower_expr(*s.args[0]).ref);
        emit(std::move(in));
        reachable_ = false;
        return;
      }
      case Stmt::Kind::Return:
        lower_return(s);
        return;
      case Stmt::Kind::ExprStmt:
        if (s.cond) lower_expr(*s.cond);
        return;
      case Stmt::Kind::Emit:
        // event arguments are evaluated, the emission itself has no effect
        if (s.cond && s.cond->kind == Expr::Kind::Call)
          for (std::size_t i = 1; i < s.cond->children.size(); ++i)
            lower_expr(*s.cond->children[i]);
        return;
      case Stmt::Kind::Placeholder:
        return;  // modifier body marker
    }
  }

  void lower_var_decl(const Stmt &s) {
    if (s.bindings.size() > 1) {
      // tuple: (T a, T b) = call();
      if (s.init && (s.init->kind == Expr::Kind::Call ||
                     s.init->kind == Expr::Kind::CallValue)) {
        Value callv = lower_expr(*s.init);
        InstrId cs = callv.ref.kind == ValueRef::Kind::CallReturn
                         ? callv.ref.call_site
                         : id_of(next_index() - 1);
        for (std::size_t i = 0; i < s.bindings.size(); ++i) {
          const auto &b = s.bindings[i];
          if (b.name.empty()) continue;
          ValueRef dest = declare_var(b.name, classify(b.type));
          Instruction in;
          in.kind = InstrKind::Assign;
          in.span = b.span;
          in.operands.push_back(ValueRef::call_return(cs, static_cast<int>(i)));
          in.result = dest;
          emit(std::move(in));
        }
        return;
      }
      // non-call tuple initializer: bind first element only
    }
    if (s.bindings.empty()) return;
    const auto &b = s.bindings[0];
    if (b.name.empty()) return;
    ValueRef dest = declare_var(b.name, classify(b.type));
    Instruction in;
    in.kind = InstrKind::Assign;
    in.span = s.span;
    if (s.init)
      in.operands.push_back(lower_expr(*s.init).ref);
    else
      in.operands.push_back(ValueRef::constant("0"));
    in.result = dest;
    emit(std::move(in));
  }

  std::string binop_of_compound(const std::string &op) {
    return op.substr(0, 1);  // "+=" -> "+"
  }

  void lower_assign(const Stmt &s) {
    const Expr &lhs = *s.lhs;
    bool compound = s.text != "=";

    if (lhs.kind == Expr::Kind::Identifier && vars_.count(lhs.text)) {
      Value rhs = lower_expr(*s.init);
      if (!compound) {
        ValueRef dest = write_var(lhs.text);
        Instruction in;
        in.kind = InstrKind::Assign;
        in.span = s.span;
        in.operands.push_back(rhs.ref);
        in.result = dest;
        emit(std::move(in));
      } else {
        TypeInfo ti;
        ValueRef old = read_var(lhs.text, &ti);
        ValueRef dest = write_var(lhs.text);
        Instruction in;
        in.kind = InstrKind::BinOp;
        in.op = binop_of_compound(s.text);
        in.span = s.span;
        in.operands = {old, rhs.ref};
        in.result = dest;
        emit(std::move(in));
      }
      return;
    }

    // storage lvalue?
    if (auto slot = resolve_slot_lvalue(lhs)) {
      Value rhs = lower_expr(*s.init);
      ValueRef stored = rhs.ref;
      if (compound) {
        Instruction load;
        load.kind = InstrKind::SLoad;
        load.slot = *slot;
        load.span = lhs.span;
        ValueRef old = fresh_temp(TypeInfo::unknown());
        load.result = old;
        emit(std::move(load));
        Instruction binop;
        binop.kind = InstrKind::BinOp;
        binop.op = binop_of_compound(s.text);
        binop.span = s.span;
        binop.operands = {old, rhs.ref};
        ValueRef tmp = fresh_temp(TypeInfo::unknown());
        binop.result = tmp;
        emit(std::move(binop));
        stored = tmp;
      }
      Instruction in;
      in.kind = InstrKind::SStore;
      in.slot = *slot;
      in.span = s.span;
      in.operands.push_back(stored);
      emit(std::move(in));
      return;
    }

    // memory array element store: arr[i] = v
    if (lhs.kind == Expr::Kind::Index) {
      const Expr *base = &lhs;
      while (base->kind == Expr::Kind::Index) base = base->children[0].get();
      if (base->kind == Expr::Kind::Identifier && vars_.count(base->text)) {
        Value idx = lower_expr(*lhs.children[1]);
        Value rhs = lower_expr(*s.init);
        TypeInfo ti;
        ValueRef old = read_var(base->text, &ti);
        ValueRef dest = write_var(base->text);
        Instruction in;
        in.kind = InstrKind::Assign;
        in.op = "index-store";
        in.span = s.span;
        in.operands = {old, idx.ref, rhs.ref};
        in.result = dest;
        emit(std::move(in));
        return;
      }
    }

    throw LoweringError{"unsupported assignment target", s.span};
  }

  // Builds a SlotId for a state-variable lvalue chain (identifier with
  // index/member accesses), or nullopt when the base is not a state variable.
  std::optional<SlotId> resolve_slot_lvalue(const Expr &e) {
    std::vector<const Expr *> chain;
    const Expr *cur = &e;
    while (cur->kind == Expr::Kind::Index || cur->kind == Expr::Kind::Member) {
      chain.push_back(cur);
      cur = cur->children[0].get();
    }
    if (cur->kind != Expr::Kind::Identifier) return std::nullopt;
    auto it = state_.find(cur->text);
    if (it == state_.end()) return std::nullopt;
    if (vars_.count(cur->text)) return std::nullopt;  // shadowed by a local
    SlotId slot;
    slot.base_slot = it->second.slot;
    slot.is_mapping_base = it->second.is_mapping;
    const TypeName *ty = it->second.type.get();
    for (auto rit = chain.rbegin(); rit != chain.rend(); ++rit) {
      const Expr &acc = **rit;
      SlotPathElem elem;
      if (acc.kind == Expr::Kind::Index) {
        Value key = lower_expr(*acc.children[1]);
        bool mapping = ty && ty->kind == TypeName::Kind::Mapping;
        elem.kind = mapping ? SlotPathElem::Kind::MappingKey
                            : SlotPathElem::Kind::ArrayIndex;
        elem.key = abstract_key(key.ref);
        ty = ty && ty->value ? ty->value.get() : nullptr;
      } else {
        elem.kind = SlotPathElem::Kind::Member;
        elem.member = acc.text;
        ty = nullptr;
      }
      slot.path.push_back(std::move(elem));
    }
    return slot;
  }

  void lower_if(const Stmt &s) {
    Value cond = lower_expr(*s.cond);
    Instruction cj;
    cj.kind = InstrKind::CondJump;
    cj.span = s.cond->span;
    cj.operands.push_back(cond.ref);
    int cj_idx = emit(std::move(cj));
    fn_.successors[cj_idx] = {-1, -1};
    InstrId cj_id = id_of(cj_idx);

    Label &then_label = new_label();
    Label &else_label = new_label();
    Label &join_label = new_label();
    then_label.sites.push_back({cj_idx, 0});
    else_label.sites.push_back({cj_idx, 1});

    auto snapshot = vars_;

    bind_next(then_label);
    cond_stack_.push_back(cj_id);
    int then_start = next_index();
    if (!s.children.empty() && s.children[0]) lower_block(*s.children[0]);
    cond_stack_.pop_back();
    bool then_emitted = next_index() > then_start;
    bool then_terminated = then_emitted && branch_done();
    if (!then_emitted) {
      // no instruction claimed the then edge; it falls straight to the join
      drop_pending(then_label);
      for (auto &site : then_label.sites) join_label.sites.push_back(site);
      then_label.sites.clear();
    }
    capture_exits(join_label);
    auto then_vars = vars_;

    bool has_else = s.children.size() > 1 && s.children[1];
    bool else_terminated = false;
    auto else_vars = snapshot;
    if (has_else) {
      vars_ = snapshot;
      reachable_ = true;
      bind_next(else_label);
      cond_stack_.push_back(cj_id);
      int else_start = next_index();
      lower_block(*s.children[1]);
      cond_stack_.pop_back();
      bool else_emitted = next_index() > else_start;
      else_terminated = else_emitted && branch_done();
      if (!else_emitted) {
        drop_pending(else_label);
        for (auto &site : else_label.sites) join_label.sites.push_back(site);
        else_label.sites.clear();
      }
      capture_exits(join_label);
      else_vars = vars_;
    } else {
      // else edge falls through to the join
      for (auto &site : else_label.sites) join_label.sites.push_back(site);
      else_label.sites.clear();
    }

    // merge variable versions
    if (then_terminated && else_terminated) {
      vars_ = snapshot;
      reachable_ = false;
      bind_next(join_label);  // resolved by later dead code or the final return
      guard_conds_.push_back(cj_id);
      return;
    }
    reachable_ = true;
    if (then_terminated) {
      vars_ = else_vars;
      guard_conds_.push_back(cj_id);
      bind_next(join_label);
      return;
    }
    if (else_terminated) {
      vars_ = then_vars;
      guard_conds_.push_back(cj_id);
      bind_next(join_label);
      return;
    }
    vars_ = then_vars;
    bind_next(join_label);
    for (const auto &[name, after_else] : else_vars) {
      auto it = vars_.find(name);
      if (it == vars_.end()) continue;
      const VarInfo &a = it->second;
      const VarInfo &b = after_else;
      bool a_param = a.param_index >= 0 && a.version < 0;
      bool b_param = b.param_index >= 0 && b.version < 0;
      if (a.version == b.version && a_param == b_param) continue;
      ValueRef from_then = a_param ? ValueRef::param(fn_.name, a.param_index)
                                   : ValueRef::local(fn_.name, name, a.version);
      ValueRef from_else = b_param ? ValueRef::param(fn_.name, b.param_index)
                                   : ValueRef::local(fn_.name, name, b.version);
      ValueRef dest = write_var(name);
      Instruction phi;
      phi.kind = InstrKind::Phi;
      phi.span = s.span;
      phi.operands = {from_then, from_else};
      phi.result = dest;
      emit(std::move(phi));
    }
  }

  void drop_pending(Label &l) {
    pending_.erase(std::remove(pending_.begin(), pending_.end(), &l),
                   pending_.end());
  }

  bool pending_has_sites() const {
    for (const Label *l : pending_)
      if (!l->sites.empty()) return true;
    return false;
  }

  // True when no execution path flows out of the just-lowered branch.
  bool branch_done() const {
    return !reachable_ && open_ends_.empty() && !pending_has_sites();
  }

  // Names assigned anywhere in a statement subtree (syntactic approximation
  // used for loop-header phi placement).
  void assigned_names(const Stmt &s, std::set<std::string> &out) {
    if (s.kind == Stmt::Kind::Assign && s.lhs) {
      const Expr *base = s.lhs.get();
      while ((base->kind == Expr::Kind::Index ||
              base->kind == Expr::Kind::Member) &&
             !base->children.empty())
        base = base->children[0].get();
      if (base->kind == Expr::Kind::Identifier) out.insert(base->text);
    }
    if (s.init_stmt) assigned_names(*s.init_stmt, out);
    if (s.post_stmt) assigned_names(*s.post_stmt, out);
    for (const auto &c : s.children)
      if (c) assigned_names(*c, out);
  }

  void lower_loop(const Expr *cond, const Stmt &body, const Stmt *post,
                  SourceSpan span) {
    std::set<std::string> assigned;
    assigned_names(body, assigned);
    if (post) assigned_names(*post, assigned);

    int header = next_index();
    struct PhiPatch {
      std::string name;
      int instr;
    };
    std::vector<PhiPatch> patches;
    for (const auto &name : assigned) {
      auto it = vars_.find(name);
      if (it == vars_.end()) continue;
      bool was_param = it->second.param_index >= 0 && it->second.version < 0;
      ValueRef before = was_param
                            ? ValueRef::param(fn_.name, it->second.param_index)
                            : ValueRef::local(fn_.name, name, it->second.version);
      ValueRef dest = write_var(name);
      Instruction phi;
      phi.kind = InstrKind::Phi;
      phi.span = span;
      phi.operands = {before, before};  // second patched with body-end version
      phi.result = dest;
      patches.push_back({name, emit(std::move(phi))});
    }

    std::map<std::string, int> header_versions;
    for (const auto &p : patches) header_versions[p.name] = vars_[p.name].version;

    ValueRef cond_ref = cond ? lower_expr(*cond).ref : ValueRef::constant("true");
    Instruction cj;
    cj.kind = InstrKind::CondJump;
    cj.span = cond ? cond->span : span;
    cj.operands.push_back(cond_ref);
    int cj_idx = emit(std::move(cj));
    fn_.successors[cj_idx] = {-1, -1};
    InstrId cj_id = id_of(cj_idx);

    Label &body_label = new_label();
    Label &exit_label = new_label();
    body_label.sites.push_back({cj_idx, 0});
    exit_label.sites.push_back({cj_idx, 1});

    bind_next(body_label);
    cond_stack_.push_back(cj_id);
    lower_block(body);
    if (post) lower_stmt(*post);
    cond_stack_.pop_back();

    if (next_index() == cj_idx + 1) {
      // empty body: the taken edge loops straight back to the header
      fn_.successors[cj_idx][0] = header;
      pending_.erase(std::remove(pending_.begin(), pending_.end(), &body_label),
                     pending_.end());
      body_label.sites.clear();
    }
    // back edge to the loop header: every exit of the body loops around
    for (int e : open_ends_) fn_.successors[e].push_back(header);
    open_ends_.clear();
    for (Label *p : pending_) {
      for (auto [site, slot] : p->sites) {
        if (slot < 0)
          fn_.successors[site].push_back(header);
        else
          fn_.successors[site][slot] = header;
      }
      p->sites.clear();
    }
    pending_.clear();

    // patch loop-carried phis with end-of-body versions
    for (const auto &p : patches) {
      int end_version = vars_[p.name].version;
      if (end_version == header_versions[p.name]) {
        // body never actually assigned it; keep the pre-loop operand
        continue;
      }
      fn_.instructions[p.instr].operands[1] =
          ValueRef::local(fn_.name, p.name, end_version);
    }
    // after the loop the header version is visible
    for (const auto &p : patches) vars_[p.name].version = header_versions[p.name];

    reachable_ = true;
    bind_next(exit_label);
  }

  void lower_while(const Stmt &s) {
    lower_loop(s.cond.get(), *s.children[0], nullptr, s.span);
  }

  void lower_for(const Stmt &s) {
    if (s.init_stmt) lower_stmt(*s.init_stmt);
    lower_loop(s.cond.get(), *s.children[0], s.post_stmt.get(), s.span);
  }

  void lower_require(const Stmt &s) {
    Value cond = lower_expr(*s.cond);
    Instruction in;
    in.kind = InstrKind::Require;
    if (s.kind == Stmt::Kind::AssertStmt) in.op = "assert";
    in.span = s.span;
    in.operands.push_back(cond.ref);
    if (!s.args.empty() && s.args[0])
      in.operands.push_back(lower_expr(*s.args[0]).ref);
    int idx = emit(std::move(in));
    guard_conds_.push_back(id_of(idx));
  }

  void lower_return(const Stmt &s) {
    Instruction in;
    in.kind = InstrKind::Return;
    in.span = s.span;
    if (!s.args.empty()) {
      for (const auto &a : s.args)
        if (a) in.operands.push_back(lower_expr(*a).ref);
    } else {
      for (const auto &name : named_returns_) {
        TypeInfo ti;
        in.operands.push_back(read_var(name, &ti));
      }
    }
    emit(std::move(in));
    reachable_ = false;
  }

  void finalize() {
    bool needs_return = fn_.instructions.empty() ||
                        fn_.instructions.back().kind != InstrKind::Return ||
                        !open_ends_.empty() || pending_has_sites();
    if (needs_return) {
      Instruction in;
      in.kind = InstrKind::Return;
      in.span = fn_.span;
      for (const auto &name : named_returns_) {
        TypeInfo ti;
        in.operands.push_back(read_var(name, &ti));
      }
      emit(std::move(in));
      reachable_ = false;
    }
  }

  // --- expressions ------------------------------------------------------------

  Value lower_expr(const Expr &e) {
    switch (e.kind) {
      case Expr::Kind::Identifier:
        return lower_identifier(e);
      case Expr::Kind::NumberLit:
      case Expr::Kind::StringLit:
        return {ValueRef::constant(e.text), TypeInfo::unknown()};
      case Expr::Kind::BoolLit: {
        TypeInfo ti;
        ti.cat = TypeInfo::Cat::Bool;
        return {ValueRef::constant(e.text), ti};
      }
      case Expr::Kind::MsgSender: {
        TypeInfo ti;
        ti.cat = TypeInfo::Cat::Address;
        return {ValueRef::tx(TxProp::MsgSender), ti};
      }
      case Expr::Kind::MsgValue: {
        TypeInfo ti;
        ti.cat = TypeInfo::Cat::Integer;
        return {ValueRef::tx(TxProp::MsgValue), ti};
      }
      case Expr::Kind::MsgData: {
        TypeInfo ti;
        ti.cat = TypeInfo::Cat::BytesLike;
        return {ValueRef::tx(TxProp::MsgData), ti};
      }
      case Expr::Kind::BlockTimestamp: {
        TypeInfo ti;
        ti.cat = TypeInfo::Cat::Integer;
        return {ValueRef::tx(TxProp::BlockTimestamp), ti};
      }
      case Expr::Kind::This: {
        TypeInfo ti;
        ti.cat = TypeInfo::Cat::Address;
        return {ValueRef::constant("this"), ti};
      }
      case Expr::Kind::Binary:
        return lower_binary(e);
      case Expr::Kind::Unary: {
        Value v = lower_expr(*e.children[0]);
        Instruction in;
        in.kind = InstrKind::Assign;
        in.op = e.text == "!" ? "not" : "neg";
        in.span = e.span;
        in.operands.push_back(v.ref);
        ValueRef t = fresh_temp(v.ti);
        in.result = t;
        emit(std::move(in));
        return {t, v.ti};
      }
      case Expr::Kind::Member:
        return lower_member(e);
      case Expr::Kind::Index:
        return lower_index(e);
      case Expr::Kind::Call:
      case Expr::Kind::CallValue:
        return lower_call(e);
      case Expr::Kind::NewArray: {
        Value len = lower_expr(*e.children[0]);
        Instruction in;
        in.kind = InstrKind::Assign;
        in.op = "new-array";
        in.span = e.span;
        in.operands.push_back(len.ref);
        TypeInfo ti;
        ti.cat = TypeInfo::Cat::Array;
        ValueRef t = fresh_temp(ti);
        in.result = t;
        emit(std::move(in));
        return {t, ti};
      }
      case Expr::Kind::Cast: {
        Value v = lower_expr(*e.children[0]);
        TypeInfo ti;
        if (e.text == "address" || e.text == "payable")
          ti.cat = TypeInfo::Cat::Address;
        else if (e.text.rfind("uint", 0) == 0 || e.text.rfind("int", 0) == 0)
          ti.cat = TypeInfo::Cat::Integer;
        else if (e.text == "bool")
          ti.cat = TypeInfo::Cat::Bool;
        else
          ti.cat = TypeInfo::Cat::BytesLike;
        return {v.ref, ti};  // casts are value-preserving
      }
      case Expr::Kind::Tuple:
        if (e.children.size() == 1) return lower_expr(*e.children[0]);
        if (!e.children.empty()) return lower_expr(*e.children[0]);
        return {ValueRef::constant("()"), TypeInfo::unknown()};
    }
    return {ValueRef::constant("?"), TypeInfo::unknown()};
  }

  Value lower_identifier(const Expr &e) {
    if (vars_.count(e.text)) {
      TypeInfo ti;
      ValueRef r = read_var(e.text, &ti);
      return {r, ti};
    }
    auto it = state_.find(e.text);
    if (it != state_.end()) {
      SlotId slot;
      slot.base_slot = it->second.slot;
      slot.is_mapping_base = it->second.is_mapping;
      Instruction in;
      in.kind = InstrKind::SLoad;
      in.slot = slot;
      in.span = e.span;
      TypeInfo ti = it->second.type ? classify(*it->second.type)
                                    : TypeInfo::unknown();
      ValueRef t = fresh_temp(ti);
      in.result = t;
      emit(std::move(in));
      return {t, ti};
    }
    // unknown identifier (contract name, enum, unresolved symbol)
    TypeInfo ti;
    if (unit_.has_interface(e.text)) {
      ti.cat = TypeInfo::Cat::Interface;
      ti.iface = e.text;
    }
    return {ValueRef::constant(e.text), ti};
  }

  Value lower_binary(const Expr &e) {
    Value a = lower_expr(*e.children[0]);
    Value b = lower_expr(*e.children[1]);
    Instruction in;
    in.kind = InstrKind::BinOp;
    in.op = e.text;
    in.span = e.span;
    in.operands = {a.ref, b.ref};
    TypeInfo ti;
    ti.cat = (e.text == "+" || e.text == "-" || e.text == "*" || e.text == "/" ||
              e.text == "%")
                 ? TypeInfo::Cat::Integer
                 : TypeInfo::Cat::Bool;
    ValueRef t = fresh_temp(ti);
    in.result = t;
    emit(std::move(in));
    return {t, ti};
  }

  Value lower_member(const Expr &e) {
    const std::string &m = e.text;
    Value obj = lower_expr(*e.children[0]);
    Instruction in;
    in.kind = InstrKind::Assign;
    in.op = m == "balance" ? "balance" : ("member:" + m);
    in.span = e.span;
    in.operands.push_back(obj.ref);
    TypeInfo ti;
    ti.cat = (m == "balance" || m == "length") ? TypeInfo::Cat::Integer
                                               : TypeInfo::Cat::Unknown;
    ValueRef t = fresh_temp(ti);
    in.result = t;
    emit(std::move(in));
    return {t, ti};
  }

  Value lower_index(const Expr &e) {
    // state storage read?
    if (auto slot = resolve_slot_lvalue(e)) {
      Instruction in;
      in.kind = InstrKind::SLoad;
      in.slot = *slot;
      in.span = e.span;
      // element type: walk the declared type along the access path
      const Expr *base = &e;
      int depth = 0;
      while (base->kind == Expr::Kind::Index || base->kind == Expr::Kind::Member) {
        ++depth;
        base = base->children[0].get();
      }
      TypeInfo ti = TypeInfo::unknown();
      auto it = state_.find(base->kind == Expr::Kind::Identifier ? base->text
                                                                 : std::string());
      if (it != state_.end() && it->second.type) {
        ti = classify(*it->second.type);
        for (int i = 0; i < depth; ++i) ti = element_type(ti);
      }
      ValueRef t = fresh_temp(ti);
      in.result = t;
      emit(std::move(in));
      return {t, ti};
    }
    // memory array / bytes element read
    Value obj = lower_expr(*e.children[0]);
    Value idx = lower_expr(*e.children[1]);
    Instruction in;
    in.kind = InstrKind::Assign;
    in.op = "index";
    in.span = e.span;
    in.operands = {obj.ref, idx.ref};
    TypeInfo ti = element_type(obj.ti);
    ValueRef t = fresh_temp(ti);
    in.result = t;
    emit(std::move(in));
    return {t, ti};
  }

  Value lower_call(const Expr &e) {
    bool with_value = e.kind == Expr::Kind::CallValue;
    const Expr &callee = *e.children[0];
    std::size_t arg_begin = with_value ? 2 : 1;

    // plain identifier callee
    if (!with_value && callee.kind == Expr::Kind::Identifier) {
      const std::string &name = callee.text;
      // interface cast: IUniswapRouter(addr)
      if (unit_.has_interface(name) && !state_.count(name) &&
          !vars_.count(name) && e.children.size() == 2) {
        Value v = lower_expr(*e.children[1]);
        TypeInfo ti;
        ti.cat = TypeInfo::Cat::Interface;
        ti.iface = name;
        return {v.ref, ti};
      }
      // internal call (resolved or not)
      std::vector<ValueRef> args;
      for (std::size_t i = arg_begin; i < e.children.size(); ++i)
        args.push_back(lower_expr(*e.children[i]).ref);
      Instruction in;
      in.kind = InstrKind::InternalCall;
      in.callee = name;
      in.span = e.span;
      in.operands = std::move(args);
      int idx = emit(std::move(in));
      return {ValueRef::call_return(id_of(idx), 0), TypeInfo::unknown()};
    }

    if (callee.kind == Expr::Kind::Member) {
      const std::string &m = callee.text;
      Value obj = lower_expr(*callee.children[0]);
      std::size_t argc = e.children.size() - arg_begin;

      bool address_like = obj.ti.cat == TypeInfo::Cat::Address ||
                          obj.ref.kind == ValueRef::Kind::TxProperty;
      bool low_level = (m == "call" && address_like) ||
                       ((m == "send" || m == "transfer") && address_like &&
                        argc == 1) ||
                       (with_value && m == "call");
      if (low_level) {
        Instruction in;
        in.kind = InstrKind::LowLevelCall;
        in.op = m;
        in.has_value = with_value || m == "send" || m == "transfer";
        in.span = e.span;
        in.operands.push_back(obj.ref);
        if (with_value)
          in.operands.push_back(lower_expr(*e.children[1]).ref);
        else if (m == "send" || m == "transfer")
          in.operands.push_back(lower_expr(*e.children[arg_begin]).ref);
        else
          in.operands.push_back(ValueRef::constant("0"));
        for (std::size_t i = (m == "send" || m == "transfer") && !with_value
                                 ? arg_begin + 1
                                 : arg_begin;
             i < e.children.size(); ++i)
          in.operands.push_back(lower_expr(*e.children[i]).ref);
        int idx = emit(std::move(in));
        TypeInfo ti;
        ti.cat = TypeInfo::Cat::Bool;
        return {ValueRef::call_return(id_of(idx), 0), ti};
      }

      // SafeMath-style arithmetic wrappers on integers lower to BinOps
      if (obj.ti.cat == TypeInfo::Cat::Integer && argc == 1 &&
          (m == "add" || m == "sub" || m == "mul" || m == "div")) {
        Value arg = lower_expr(*e.children[arg_begin]);
        Instruction in;
        in.kind = InstrKind::BinOp;
        in.op = m == "add" ? "+" : m == "sub" ? "-" : m == "mul" ? "*" : "/";
        in.span = e.span;
        in.operands = {obj.ref, arg.ref};
        TypeInfo ti;
        ti.cat = TypeInfo::Cat::Integer;
        ValueRef t = fresh_temp(ti);
        in.result = t;
        emit(std::move(in));
        return {t, ti};
      }

      // external call on a declared interface or address-typed expression
      Instruction in;
      in.kind = InstrKind::ExternalCall;
      in.callee = m;
      in.callee_interface = obj.ti.cat == TypeInfo::Cat::Interface
                                ? obj.ti.iface
                                : (address_like ? "address" : "");
      if (const auto *sig = unit_.lookup(in.callee_interface, m)) {
        in.callee_mutability = sig->mutability;
        in.callee_returns = sig->returns;
      }
      in.span = e.span;
      in.operands.push_back(obj.ref);  // receiver first
      for (std::size_t i = arg_begin; i < e.children.size(); ++i)
        in.operands.push_back(lower_expr(*e.children[i]).ref);
      int idx = emit(std::move(in));
      return {ValueRef::call_return(id_of(idx), 0), TypeInfo::unknown()};
    }

    // anything else: evaluate operands, produce an opaque temp
    std::vector<ValueRef> args;
    Value f = lower_expr(callee);
    for (std::size_t i = arg_begin; i < e.children.size(); ++i)
      args.push_back(lower_expr(*e.children[i]).ref);
    Instruction in;
    in.kind = InstrKind::Assign;
    in.op = "opaque-call";
    in.span = e.span;
    in.operands.push_back(f.ref);
    for (auto &a : args) in.operands.push_back(std::move(a));
    ValueRef t = fresh_temp(TypeInfo::unknown());
    in.result = t;
    emit(std::move(in));
    return {t, TypeInfo::unknown()};
  }
};

}  // namespace

ContractIR lower_contract(const ContractDecl &decl, const UnitIndex &index,
                          const std::string &source_text,
                          const std::string &source_path) {
  ContractIR ir;
  ir.name = decl.name;
  ir.source_text = source_text;
  ir.source_path = source_path;

  std::map<std::string, StateInfo> state;
  int slot = 0;
  for (const auto &sv : decl.state_vars) {
    StateVar out;
    out.name = sv.name;
    out.type_text = sv.type.text();
    out.slot = slot;
    out.is_mapping = sv.type.kind == TypeName::Kind::Mapping;
    ir.state_vars.push_back(out);
    StateInfo info;
    info.slot = slot;
    info.is_mapping = out.is_mapping;
    info.type = std::shared_ptr<const TypeName>(new TypeName(sv.type.clone()));
    state[sv.name] = std::move(info);
    ++slot;
  }

  auto lower_one = [&](const std::string &name, const std::vector<Param> &params,
                       const std::vector<Param> &returns, const Stmt *body,
                       const std::string &visibility, const std::string &mutability,
                       bool is_modifier, SourceSpan span, SourceSpan header_span,
                       const std::vector<ast::ModifierInvocation> *mods) {
    FunctionIR fn;
    fn.name = name;
    fn.visibility = visibility;
    fn.mutability = mutability;
    fn.is_modifier = is_modifier;
    fn.span = span;
    for (const auto &p : params) fn.params.push_back({p.name, p.type.text()});
    for (const auto &r : returns) fn.returns.push_back(r.type.text());
    if (mods) {
      for (const auto &mi : *mods) {
        IRModifierInvocation imi;
        imi.name = mi.name;
        for (const auto &a : mi.args)
          if (a) imi.args.push_back(render_expr_text(*a, source_text));
        fn.modifiers.push_back(std::move(imi));
      }
    }
    {
      std::ostringstream sig;
      sig << (is_modifier ? "modifier " : "function ") << name << "(";
      for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) sig << ", ";
        sig << params[i].type.text();
        if (!params[i].name.empty()) sig << " " << params[i].name;
      }
      sig << ")";
      if (!is_modifier) {
        sig << " " << visibility;
        if (mutability != "default") sig << " " << mutability;
        if (!returns.empty()) {
          sig << " returns (";
          for (std::size_t i = 0; i < returns.size(); ++i) {
            if (i) sig << ", ";
            sig << returns[i].type.text();
          }
          sig << ")";
        }
      }
      fn.signature = sig.str();
    }

    int fn_index = static_cast<int>(ir.functions.size());
    ir.functions.push_back(std::move(fn));
    try {
      FunctionLowerer lw(ir, fn_index, ir.functions[fn_index], state, index,
                         source_text);
      lw.run(params, returns, body, header_span);
    } catch (LoweringError &err) {
      ir.functions.pop_back();
      ir.diagnostics.push_back({Severity::Warning, err.span,
                                "function '" + name +
                                    "' could not be lowered: " + err.reason,
                                "lowering-unsupported"});
    }
  };

  for (const auto &f : decl.functions) {
    if (f.excluded || !f.body) continue;
    lower_one(f.name, f.params, f.returns, f.body.get(),
              visibility_name(f.visibility), mutability_name(f.mutability),
              false, f.span, f.header_span, &f.modifier_invocations);
  }
  for (const auto &m : decl.modifiers) {
    if (m.excluded || !m.body) continue;
    lower_one(m.name, m.params, {}, m.body.get(), "private", "default", true,
              m.span, m.span, nullptr);
  }
  return ir;
}

}  // namespace pricescan
