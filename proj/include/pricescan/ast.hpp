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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pricescan/source.hpp"

namespace pricescan::ast {

// Declared types are kept as a small structural tree: elementary names,
// user-defined names (contract/interface types), mapping(K => V) and T[].
struct TypeName {
  enum class Kind { Elementary, UserDefined, Mapping, Array };
  Kind kind = Kind::Elementary;
  std::string name;  // elementary or user-defined identifier
  std::unique_ptr<TypeName> key;    // Mapping
  std::unique_ptr<TypeName> value;  // Mapping value / Array element
  SourceSpan span;

  TypeName clone() const;
  std::string text() const;  // canonical rendering, e.g. "mapping(address => uint256)"
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  enum class Kind {
    Identifier,   // text = name
    NumberLit,    // text = literal
    StringLit,    // text = unquoted contents
    BoolLit,      // text = "true"|"false"
    Binary,       // text = op, children = {lhs, rhs}
    Unary,        // text = op ("!" or "-"), children = {operand}
    Member,       // text = member name, children = {object}
    Index,        // children = {object, index}
    Call,         // children = {callee, args...}
    CallValue,    // children = {callee, valueExpr, args...}  for f{value: v}(...)
    NewArray,     // children = {length}; text = element type text
    Cast,         // text = target type ("address", "payable", "uint256", ...), children = {operand}
    Tuple,        // children = elements (possibly empty slots skipped at parse)
    MsgSender,
    MsgValue,
    MsgData,
    BlockTimestamp,
    This,
  };
  Kind kind = Kind::Identifier;
  std::string text;
  std::vector<ExprPtr> children;
  SourceSpan span;
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct VarBinding {
  TypeName type;
  std::string name;       // empty for a skipped tuple slot
  std::string location;   // "", "memory", "calldata", "storage"
  SourceSpan span;
};

struct Stmt {
  enum class Kind {
    Block,        // children = statements
    VarDecl,      // bindings (1 or tuple), init optional
    Assign,       // text = "=" or compound op ("+=", ...); lhs, init=rhs
    If,           // cond, children = {thenBlock, elseBlock?}
    While,        // cond, children = {body}
    For,          // initStmt, cond, postStmt, children = {body}
    Require,      // cond (+ optional message expr in args)
    AssertStmt,   // cond
    Revert,       // optional message expr in args
    Return,       // values in args
    ExprStmt,     // expr in cond slot
    Emit,         // event call expr in cond slot; ignored by lowering
    Placeholder,  // modifier body `_;`
  };
  Kind kind = Kind::Block;
  std::string text;
  std::vector<VarBinding> bindings;
  ExprPtr lhs;
  ExprPtr cond;
  ExprPtr init;
  StmtPtr init_stmt;  // For
  StmtPtr post_stmt;  // For
  std::vector<ExprPtr> args;
  std::vector<StmtPtr> children;
  SourceSpan span;
};

struct Param {
  TypeName type;
  std::string name;  // may be empty in interface signatures
  std::string location;
  SourceSpan span;
};

struct ModifierInvocation {
  std::string name;
  std::vector<ExprPtr> args;
  SourceSpan span;
};

enum class Visibility { Public, External, Internal, Private };
enum class Mutability { Default, View, Pure, Payable };

const char *visibility_name(Visibility v);
const char *mutability_name(Mutability m);
std::optional<Visibility> visibility_from_name(const std::string &);
std::optional<Mutability> mutability_from_name(const std::string &);

struct FunctionDecl {
  std::string name;  // "constructor" for constructors
  std::vector<Param> params;
  std::vector<Param> returns;
  Visibility visibility = Visibility::Public;
  Mutability mutability = Mutability::Default;
  std::vector<ModifierInvocation> modifier_invocations;
  StmtPtr body;            // null for interface signatures / bodyless decls
  bool excluded = false;   // outside the supported subset; kept, never lowered
  std::string exclusion_reason;
  SourceSpan span;
  SourceSpan header_span;  // signature only, for report excerpts
};

struct ModifierDecl {
  std::string name;
  std::vector<Param> params;
  StmtPtr body;
  bool excluded = false;
  std::string exclusion_reason;
  SourceSpan span;
};

struct StateVarDecl {
  TypeName type;
  std::string name;
  Visibility visibility = Visibility::Internal;
  bool is_constant = false;
  bool is_immutable = false;
  ExprPtr init;
  SourceSpan span;
};

struct ContractDecl {
  std::string name;
  bool is_interface = false;
  std::vector<std::string> base_contracts;  // names only; bodies not merged
  std::vector<StateVarDecl> state_vars;     // declaration order = slot order
  std::vector<FunctionDecl> functions;
  std::vector<ModifierDecl> modifiers;
  SourceSpan span;
};

struct SourceUnit {
  std::string path;
  std::vector<std::string> pragmas;  // recorded, not enforced
  std::vector<ContractDecl> contracts;
  std::vector<Diagnostic> diagnostics;

  bool has_errors() const {
    for (const auto &d : diagnostics)
      if (d.severity == Severity::Error) return true;
    return false;
  }
};

}  // namespace pricescan::ast
