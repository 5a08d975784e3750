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

#include "pricescan/ast_io.hpp"

#include <sstream>

namespace pricescan {

using namespace ast;
using json = nlohmann::ordered_json;

namespace {

const char *expr_kind_name(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Identifier: return "Identifier";
    case Expr::Kind::NumberLit: return "NumberLit";
    case Expr::Kind::StringLit: return "StringLit";
    case Expr::Kind::BoolLit: return "BoolLit";
    case Expr::Kind::Binary: return "Binary";
    case Expr::Kind::Unary: return "Unary";
    case Expr::Kind::Member: return "Member";
    case Expr::Kind::Index: return "Index";
    case Expr::Kind::Call: return "Call";
    case Expr::Kind::CallValue: return "CallValue";
    case Expr::Kind::NewArray: return "NewArray";
    case Expr::Kind::Cast: return "Cast";
    case Expr::Kind::Tuple: return "Tuple";
    case Expr::Kind::MsgSender: return "MsgSender";
    case Expr::Kind::MsgValue: return "MsgValue";
    case Expr::Kind::MsgData: return "MsgData";
    case Expr::Kind::BlockTimestamp: return "BlockTimestamp";
    case Expr::Kind::This: return "This";
  }
  return "?";
}

const char *stmt_kind_name(Stmt::Kind k) {
  switch (k) {
    case Stmt::Kind::Block: return "Block";
    case Stmt::Kind::VarDecl: return "VarDecl";
    case Stmt::Kind::Assign: return "Assign";
    case Stmt::Kind::If: return "If";
    case Stmt::Kind::While: return "While";
    case Stmt::Kind::For: return "For";
    case Stmt::Kind::Require: return "Require";
    case Stmt::Kind::AssertStmt: return "Assert";
    case Stmt::Kind::Revert: return "Revert";
    case Stmt::Kind::Return: return "Return";
    case Stmt::Kind::ExprStmt: return "ExprStmt";
    case Stmt::Kind::Emit: return "Emit";
    case Stmt::Kind::Placeholder: return "Placeholder";
  }
  return "?";
}

json span_json(const SourceSpan &s) { return json::array({s.begin, s.end}); }

json expr_json(const Expr &e, bool spans) {
  json j;
  j["kind"] = expr_kind_name(e.kind);
  if (!e.text.empty()) j["text"] = e.text;
  if (spans) j["span"] = span_json(e.span);
  if (!e.children.empty()) {
    json kids = json::array();
    for (const auto &c : e.children)
      kids.push_back(c ? expr_json(*c, spans) : json(nullptr));
    j["children"] = std::move(kids);
  }
  return j;
}

json stmt_json(const Stmt &s, bool spans) {
  json j;
  j["kind"] = stmt_kind_name(s.kind);
  if (!s.text.empty()) j["text"] = s.text;
  if (spans) j["span"] = span_json(s.span);
  if (!s.bindings.empty()) {
    json bs = json::array();
    for (const auto &b : s.bindings) {
      json bj;
      bj["type"] = b.type.text();
      bj["name"] = b.name;
      if (!b.location.empty()) bj["location"] = b.location;
      bs.push_back(std::move(bj));
    }
    j["bindings"] = std::move(bs);
  }
  if (s.lhs) j["lhs"] = expr_json(*s.lhs, spans);
  if (s.cond) j["cond"] = expr_json(*s.cond, spans);
  if (s.init) j["init"] = expr_json(*s.init, spans);
  if (s.init_stmt) j["initStmt"] = stmt_json(*s.init_stmt, spans);
  if (s.post_stmt) j["postStmt"] = stmt_json(*s.post_stmt, spans);
  if (!s.args.empty()) {
    json as = json::array();
    for (const auto &a : s.args)
      as.push_back(a ? expr_json(*a, spans) : json(nullptr));
    j["args"] = std::move(as);
  }
  if (!s.children.empty()) {
    json kids = json::array();
    for (const auto &c : s.children)
      kids.push_back(c ? stmt_json(*c, spans) : json(nullptr));
    j["children"] = std::move(kids);
  }
  return j;
}

json params_json(const std::vector<Param> &ps) {
  json arr = json::array();
  for (const auto &p : ps) {
    json pj;
    pj["type"] = p.type.text();
    pj["name"] = p.name;
    if (!p.location.empty()) pj["location"] = p.location;
    arr.push_back(std::move(pj));
  }
  return arr;
}

json function_json(const FunctionDecl &f, bool spans) {
  json j;
  j["kind"] = "Function";
  j["name"] = f.name;
  j["visibility"] = visibility_name(f.visibility);
  j["mutability"] = mutability_name(f.mutability);
  j["params"] = params_json(f.params);
  j["returns"] = params_json(f.returns);
  if (!f.modifier_invocations.empty()) {
    json ms = json::array();
    for (const auto &m : f.modifier_invocations) {
      json mj;
      mj["name"] = m.name;
      if (!m.args.empty()) {
        json as = json::array();
        for (const auto &a : m.args)
          as.push_back(a ? expr_json(*a, spans) : json(nullptr));
        mj["args"] = std::move(as);
      }
      ms.push_back(std::move(mj));
    }
    j["modifiers"] = std::move(ms);
  }
  if (f.excluded) {
    j["excluded"] = true;
    j["exclusionReason"] = f.exclusion_reason;
  }
  if (spans) j["span"] = span_json(f.span);
  if (f.body) j["body"] = stmt_json(*f.body, spans);
  return j;
}

}  // namespace

json ast_to_json(const SourceUnit &unit, bool with_spans) {
  json j;
  j["kind"] = "SourceUnit";
  j["path"] = unit.path;
  j["pragmas"] = unit.pragmas;
  json contracts = json::array();
  for (const auto &c : unit.contracts) {
    json cj;
    cj["kind"] = c.is_interface ? "Interface" : "Contract";
    cj["name"] = c.name;
    cj["bases"] = c.base_contracts;
    if (with_spans) cj["span"] = span_json(c.span);
    json svs = json::array();
    for (const auto &sv : c.state_vars) {
      json svj;
      svj["kind"] = "StateVar";
      svj["name"] = sv.name;
      svj["type"] = sv.type.text();
      svj["visibility"] = visibility_name(sv.visibility);
      if (sv.is_constant) svj["constant"] = true;
      if (sv.is_immutable) svj["immutable"] = true;
      if (sv.init) svj["init"] = expr_json(*sv.init, with_spans);
      if (with_spans) svj["span"] = span_json(sv.span);
      svs.push_back(std::move(svj));
    }
    cj["stateVars"] = std::move(svs);
    json fns = json::array();
    for (const auto &f : c.functions) fns.push_back(function_json(f, with_spans));
    cj["functions"] = std::move(fns);
    json mods = json::array();
    for (const auto &m : c.modifiers) {
      json mj;
      mj["kind"] = "Modifier";
      mj["name"] = m.name;
      mj["params"] = params_json(m.params);
      if (m.excluded) mj["excluded"] = true;
      if (with_spans) mj["span"] = span_json(m.span);
      if (m.body) mj["body"] = stmt_json(*m.body, with_spans);
      mods.push_back(std::move(mj));
    }
    cj["modifiers"] = std::move(mods);
    contracts.push_back(std::move(cj));
  }
  j["contracts"] = std::move(contracts);
  if (with_spans) {
    json ds = json::array();
    for (const auto &d : unit.diagnostics) {
      json dj;
      dj["severity"] = severity_name(d.severity);
      dj["code"] = d.code;
      dj["message"] = d.message;
      dj["span"] = span_json(d.span);
      ds.push_back(std::move(dj));
    }
    j["diagnostics"] = std::move(ds);
  }
  return j;
}

bool ast_equal(const SourceUnit &a, const SourceUnit &b) {
  return ast_to_json(a, false) == ast_to_json(b, false);
}

// ---------------------------------------------------------------------------
// pretty printer

namespace {

class Printer {
 public:
  std::string run(const SourceUnit &unit) {
    for (const auto &p : unit.pragmas) out_ << "pragma " << p << ";\n";
    for (const auto &c : unit.contracts) print_contract(c);
    return out_.str();
  }

 private:
  std::ostringstream out_;
  int indent_ = 0;

  void line() { out_ << "\n"; }
  void pad() {
    for (int i = 0; i < indent_; ++i) out_ << "    ";
  }

  void print_contract(const ContractDecl &c) {
    out_ << (c.is_interface ? "interface " : "contract ") << c.name;
    if (!c.base_contracts.empty()) {
      out_ << " is ";
      for (std::size_t i = 0; i < c.base_contracts.size(); ++i) {
        if (i) out_ << ", ";
        out_ << c.base_contracts[i];
      }
    }
    out_ << " {\n";
    indent_++;
    for (const auto &sv : c.state_vars) {
      pad();
      out_ << sv.type.text() << " ";
      if (sv.visibility != Visibility::Internal)
        out_ << visibility_name(sv.visibility) << " ";
      if (sv.is_constant) out_ << "constant ";
      if (sv.is_immutable) out_ << "immutable ";
      out_ << sv.name;
      if (sv.init) {
        out_ << " = ";
        print_expr(*sv.init);
      }
      out_ << ";\n";
    }
    for (const auto &m : c.modifiers) print_modifier(m);
    for (const auto &f : c.functions) print_function(f);
    indent_--;
    out_ << "}\n";
  }

  void print_params(const std::vector<Param> &ps) {
    out_ << "(";
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (i) out_ << ", ";
      out_ << ps[i].type.text();
      if (!ps[i].location.empty()) out_ << " " << ps[i].location;
      if (!ps[i].name.empty()) out_ << " " << ps[i].name;
    }
    out_ << ")";
  }

  void print_modifier(const ModifierDecl &m) {
    pad();
    out_ << "modifier " << m.name;
    print_params(m.params);
    if (m.body) {
      out_ << " ";
      print_block(*m.body);
    } else {
      out_ << " { _; }";  // excluded body is not reproducible
    }
    line();
  }

  void print_function(const FunctionDecl &f) {
    pad();
    if (f.name == "constructor")
      out_ << "constructor";
    else if (f.name == "receive" || f.name == "fallback")
      out_ << f.name;
    else
      out_ << "function " << f.name;
    print_params(f.params);
    if (f.name != "constructor") out_ << " " << visibility_name(f.visibility);
    if (f.mutability != Mutability::Default)
      out_ << " " << mutability_name(f.mutability);
    for (const auto &mi : f.modifier_invocations) {
      out_ << " " << mi.name;
      if (!mi.args.empty()) {
        out_ << "(";
        for (std::size_t i = 0; i < mi.args.size(); ++i) {
          if (i) out_ << ", ";
          print_expr(*mi.args[i]);
        }
        out_ << ")";
      }
    }
    if (!f.returns.empty()) {
      out_ << " returns ";
      print_params(f.returns);
    }
    if (f.body) {
      out_ << " ";
      print_block(*f.body);
    } else {
      out_ << ";";
    }
    line();
  }

  void print_block(const Stmt &block) {
    out_ << "{\n";
    indent_++;
    for (const auto &s : block.children)
      if (s) print_stmt(*s);
    indent_--;
    pad();
    out_ << "}";
  }

  void print_stmt(const Stmt &s) {
    switch (s.kind) {
      case Stmt::Kind::Block:
        pad();
        print_block(s);
        line();
        return;
      case Stmt::Kind::VarDecl: {
        pad();
        if (s.bindings.size() == 1) {
          const auto &b = s.bindings[0];
          out_ << b.type.text();
          if (!b.location.empty()) out_ << " " << b.location;
          out_ << " " << b.name;
        } else {
          out_ << "(";
          for (std::size_t i = 0; i < s.bindings.size(); ++i) {
            if (i) out_ << ", ";
            const auto &b = s.bindings[i];
            if (b.name.empty()) continue;
            out_ << b.type.text();
            if (!b.location.empty()) out_ << " " << b.location;
            out_ << " " << b.name;
          }
          out_ << ")";
        }
        if (s.init) {
          out_ << " = ";
          print_expr(*s.init);
        }
        out_ << ";\n";
        return;
      }
      case Stmt::Kind::Assign:
        pad();
        print_expr(*s.lhs);
        out_ << " " << s.text << " ";
        print_expr(*s.init);
        out_ << ";\n";
        return;
      case Stmt::Kind::If:
        pad();
        out_ << "if (";
        print_expr(*s.cond);
        out_ << ") ";
        print_block(*s.children[0]);
        if (s.children.size() > 1) {
          out_ << " else ";
          print_block(*s.children[1]);
        }
        line();
        return;
      case Stmt::Kind::While:
        pad();
        out_ << "while (";
        print_expr(*s.cond);
        out_ << ") ";
        print_block(*s.children[0]);
        line();
        return;
      case Stmt::Kind::For: {
        pad();
        out_ << "for (";
        if (s.init_stmt)
          print_inline_stmt(*s.init_stmt);
        else
          out_ << ";";
        out_ << " ";
        if (s.cond) print_expr(*s.cond);
        out_ << "; ";
        if (s.post_stmt) print_inline_stmt_no_semi(*s.post_stmt);
        out_ << ") ";
        print_block(*s.children[0]);
        line();
        return;
      }
      case Stmt::Kind::Require:
      case Stmt::Kind::AssertStmt:
        pad();
        out_ << (s.kind == Stmt::Kind::Require ? "require(" : "assert(");
        print_expr(*s.cond);
        if (!s.args.empty()) {
          out_ << ", ";
          print_expr(*s.args[0]);
        }
        out_ << ");\n";
        return;
      case Stmt::Kind::Revert:
        pad();
        out_ << "revert(";
        if (!s.args.empty()) print_expr(*s.args[0]);
        out_ << ");\n";
        return;
      case Stmt::Kind::Return:
        pad();
        out_ << "return";
        if (s.args.size() == 1) {
          out_ << " ";
          print_expr(*s.args[0]);
        } else if (s.args.size() > 1) {
          out_ << " (";
          for (std::size_t i = 0; i < s.args.size(); ++i) {
            if (i) out_ << ", ";
            print_expr(*s.args[i]);
          }
          out_ << ")";
        }
        out_ << ";\n";
        return;
      case Stmt::Kind::ExprStmt:
        pad();
        print_expr(*s.cond);
        out_ << ";\n";
        return;
      case Stmt::Kind::Emit:
        pad();
        out_ << "emit ";
        print_expr(*s.cond);
        out_ << ";\n";
        return;
      case Stmt::Kind::Placeholder:
        pad();
        out_ << "_;\n";
        return;
    }
  }

  void print_inline_stmt(const Stmt &s) {
    // for-loop init clause, including the ';'
    std::ostringstream saved;
    std::swap(saved, out_);
    int saved_indent = indent_;
    indent_ = 0;
    print_stmt(s);
    indent_ = saved_indent;
    std::string text = out_.str();
    std::swap(saved, out_);
    // strip trailing newline
    while (!text.empty() && (text.back() == '\n' || text.back() == ' '))
      text.pop_back();
    out_ << text;
  }

  void print_inline_stmt_no_semi(const Stmt &s) {
    print_inline_stmt(s);
    // remove the trailing ';' the statement printer added
    std::string str = out_.str();
    if (!str.empty() && str.back() == ';') {
      str.pop_back();
      out_.str(str);
      out_.seekp(0, std::ios_base::end);
    }
  }

  void print_expr(const Expr &e) {
    switch (e.kind) {
      case Expr::Kind::Identifier:
        out_ << e.text;
        return;
      case Expr::Kind::NumberLit:
        out_ << e.text;
        return;
      case Expr::Kind::StringLit:
        out_ << '"' << e.text << '"';
        return;
      case Expr::Kind::BoolLit:
        out_ << e.text;
        return;
      case Expr::Kind::Binary:
        out_ << "(";
        print_expr(*e.children[0]);
        out_ << " " << e.text << " ";
        print_expr(*e.children[1]);
        out_ << ")";
        return;
      case Expr::Kind::Unary:
        out_ << e.text;
        print_expr(*e.children[0]);
        return;
      case Expr::Kind::Member:
        print_expr(*e.children[0]);
        out_ << "." << e.text;
        return;
      case Expr::Kind::Index:
        print_expr(*e.children[0]);
        out_ << "[";
        print_expr(*e.children[1]);
        out_ << "]";
        return;
      case Expr::Kind::Call:
        print_expr(*e.children[0]);
        out_ << "(";
        for (std::size_t i = 1; i < e.children.size(); ++i) {
          if (i > 1) out_ << ", ";
          print_expr(*e.children[i]);
        }
        out_ << ")";
        return;
      case Expr::Kind::CallValue:
        print_expr(*e.children[0]);
        out_ << "{value: ";
        print_expr(*e.children[1]);
        out_ << "}(";
        for (std::size_t i = 2; i < e.children.size(); ++i) {
          if (i > 2) out_ << ", ";
          print_expr(*e.children[i]);
        }
        out_ << ")";
        return;
      case Expr::Kind::NewArray:
        out_ << "new " << e.text << "[](";
        print_expr(*e.children[0]);
        out_ << ")";
        return;
      case Expr::Kind::Cast:
        out_ << e.text << "(";
        print_expr(*e.children[0]);
        out_ << ")";
        return;
      case Expr::Kind::Tuple:
        out_ << "(";
        for (std::size_t i = 0; i < e.children.size(); ++i) {
          if (i) out_ << ", ";
          print_expr(*e.children[i]);
        }
        out_ << ")";
        return;
      case Expr::Kind::MsgSender:
        out_ << "msg.sender";
        return;
      case Expr::Kind::MsgValue:
        out_ << "msg.value";
        return;
      case Expr::Kind::MsgData:
        out_ << "msg.data";
        return;
      case Expr::Kind::BlockTimestamp:
        out_ << "block.timestamp";
        return;
      case Expr::Kind::This:
        out_ << "this";
        return;
    }
  }
};

}  // namespace

std::string pretty_print(const SourceUnit &unit) { return Printer().run(unit); }

}  // namespace pricescan
