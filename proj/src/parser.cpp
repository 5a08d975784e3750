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

#include "pricescan/parser.hpp"

#include <cassert>
#include <set>

#include "pricescan/lexer.hpp"

namespace pricescan {

using namespace ast;

namespace {

// Constructs outside the subset that appear at statement level and exclude
// the enclosing function.
bool is_unsupported_statement_keyword(const std::string &kw) {
  return kw == "assembly" || kw == "try" || kw == "do" || kw == "break" ||
         kw == "continue" || kw == "delete" || kw == "unchecked";
}

struct ParseAbort {};  // used only for the nesting-depth guard, caught internally

class Parser {
 public:
  Parser(const std::string &text, std::string path)
      : text_(text), path_(std::move(path)) {
    tokens_ = lex(text, unit_.diagnostics);
  }

  SourceUnit run() {
    unit_.path = path_;
    while (!at_end()) {
      if (peek().is_keyword("pragma")) {
        parse_pragma();
      } else if (peek().is_keyword("contract") || peek().is_keyword("interface") ||
                 peek().is_keyword("abstract")) {
        parse_contract();
      } else if (peek().is_keyword("library") || peek().is_keyword("struct") ||
                 peek().is_keyword("enum") || peek().is_keyword("import")) {
        warn_here("top-level construct outside the supported subset: " + peek().text,
                  "unsupported-construct");
        skip_declaration();
      } else {
        error_here("expected a contract, interface or pragma", "expected-declaration");
        advance();
        sync_to_top_level();
      }
    }
    enforce_unique_contract_names();
    return std::move(unit_);
  }

  ExprPtr fragment_expression(std::vector<Diagnostic> &diags) {
    ExprPtr e;
    try {
      e = parse_expr();
    } catch (ParseAbort &) {
    }
    diags = std::move(unit_.diagnostics);
    return e;
  }

  StmtPtr fragment_statement(std::vector<Diagnostic> &diags) {
    StmtPtr s;
    try {
      s = parse_statement();
    } catch (ParseAbort &) {
    }
    diags = std::move(unit_.diagnostics);
    return s;
  }

 private:
  const std::string &text_;
  std::string path_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  SourceUnit unit_;
  int depth_ = 0;
  static constexpr int kMaxDepth = 200;

  const Token &peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token &advance() {
    const Token &t = peek();
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Token::Kind::End; }

  void error_here(const std::string &msg, const std::string &code) {
    unit_.diagnostics.push_back({Severity::Error, peek().span, msg, code});
  }
  void warn_here(const std::string &msg, const std::string &code) {
    unit_.diagnostics.push_back({Severity::Warning, peek().span, msg, code});
  }

  bool expect_punct(const char *p, const char *what) {
    if (peek().is_punct(p)) {
      advance();
      return true;
    }
    error_here(std::string("expected '") + p + "' " + what, "syntax-error");
    return false;
  }

  struct DepthGuard {
    Parser &p;
    explicit DepthGuard(Parser &parser) : p(parser) {
      if (++p.depth_ > kMaxDepth) {
        p.error_here("expression nesting too deep", "nesting-too-deep");
        throw ParseAbort{};
      }
    }
    ~DepthGuard() { --p.depth_; }
  };

  // --- recovery -------------------------------------------------------------

  void sync_to_top_level() {
    while (!at_end()) {
      if (peek().is_keyword("contract") || peek().is_keyword("interface") ||
          peek().is_keyword("pragma") || peek().is_keyword("library") ||
          peek().is_keyword("abstract"))
        return;
      advance();
    }
  }

  // Skips a declaration: either up to and including a balanced {...} body or a
  // terminating semicolon.
  void skip_declaration() {
    advance();
    int braces = 0;
    while (!at_end()) {
      const Token &t = peek();
      if (t.is_punct("{")) {
        ++braces;
      } else if (t.is_punct("}")) {
        if (braces > 0 && --braces == 0) {
          advance();
          return;
        }
        if (braces == 0) return;  // stray brace belongs to the caller
      } else if (t.is_punct(";") && braces == 0) {
        advance();
        return;
      }
      advance();
    }
  }

  // Skips to the end of the current balanced block; assumes the opening '{'
  // has been consumed.
  void skip_block_rest() {
    int braces = 1;
    while (!at_end()) {
      if (peek().is_punct("{")) ++braces;
      if (peek().is_punct("}")) {
        if (--braces == 0) {
          advance();
          return;
        }
      }
      advance();
    }
  }

  // --- top level ------------------------------------------------------------

  void parse_pragma() {
    std::size_t start = peek().span.begin;
    advance();  // pragma
    std::string body;
    while (!at_end() && !peek().is_punct(";")) {
      if (!body.empty()) body += " ";
      body += advance().text;
    }
    if (!at_end()) advance();  // ;
    (void)start;
    unit_.pragmas.push_back(body);
  }

  void parse_contract() {
    std::size_t start = peek().span.begin;
    if (peek().is_keyword("abstract")) advance();
    bool is_interface = peek().is_keyword("interface");
    advance();  // contract | interface
    ContractDecl decl;
    decl.is_interface = is_interface;
    if (peek().kind != Token::Kind::Identifier) {
      error_here("expected contract name", "syntax-error");
      sync_to_top_level();
      return;
    }
    decl.name = advance().text;
    if (peek().is_keyword("is")) {
      advance();
      while (peek().kind == Token::Kind::Identifier) {
        decl.base_contracts.push_back(advance().text);
        // base constructor args are outside the subset; record name only
        if (peek().is_punct("(")) skip_parens();
        if (peek().is_punct(","))
          advance();
        else
          break;
      }
    }
    if (!expect_punct("{", "to open contract body")) {
      sync_to_top_level();
      return;
    }
    while (!at_end() && !peek().is_punct("}")) {
      parse_contract_member(decl);
    }
    if (peek().is_punct("}")) advance();
    decl.span = {start, previous_end()};
    unit_.contracts.push_back(std::move(decl));
  }

  std::size_t previous_end() const {
    return pos_ > 0 ? tokens_[pos_ - 1].span.end : 0;
  }

  void skip_parens() {
    if (!peek().is_punct("(")) return;
    advance();
    int depth = 1;
    while (!at_end() && depth > 0) {
      if (peek().is_punct("(")) ++depth;
      if (peek().is_punct(")")) --depth;
      advance();
    }
  }

  void parse_contract_member(ContractDecl &decl) {
    const Token &t = peek();
    if (t.is_keyword("function") || t.is_keyword("constructor") ||
        t.is_keyword("receive") || t.is_keyword("fallback")) {
      parse_function(decl);
      return;
    }
    if (t.is_keyword("modifier")) {
      parse_modifier(decl);
      return;
    }
    if (t.is_keyword("event")) {
      skip_declaration();  // declarations recorded nowhere; emit is ignored
      return;
    }
    if (t.is_keyword("using") || t.is_keyword("struct") || t.is_keyword("enum")) {
      warn_here("contract member outside the supported subset: " + t.text,
                "unsupported-construct");
      skip_declaration();
      return;
    }
    if (t.is_keyword("mapping") || t.kind == Token::Kind::Identifier ||
        is_type_keyword(t)) {
      parse_state_var(decl);
      return;
    }
    error_here("unexpected token in contract body: '" + t.text + "'",
               "syntax-error");
    advance();
  }

  bool is_type_keyword(const Token &t) const {
    return t.kind == Token::Kind::Keyword &&
           (is_elementary_type_name(t.text) || t.text == "mapping");
  }

  bool looks_like_type_start() const {
    const Token &t = peek();
    if (t.is_keyword("mapping")) return true;
    if (t.kind == Token::Kind::Identifier) return true;
    if (t.kind == Token::Kind::Keyword && is_elementary_type_name(t.text))
      return true;
    return false;
  }

  std::optional<TypeName> parse_type() {
    std::size_t start = peek().span.begin;
    TypeName ty;
    if (peek().is_keyword("mapping")) {
      advance();
      if (!expect_punct("(", "after 'mapping'")) return std::nullopt;
      auto key = parse_type();
      if (!key) return std::nullopt;
      if (!peek().is_punct("=>")) {
        error_here("expected '=>' in mapping type", "syntax-error");
        return std::nullopt;
      }
      advance();
      auto value = parse_type();
      if (!value) return std::nullopt;
      if (!expect_punct(")", "to close mapping type")) return std::nullopt;
      ty.kind = TypeName::Kind::Mapping;
      ty.key = std::make_unique<TypeName>(std::move(*key));
      ty.value = std::make_unique<TypeName>(std::move(*value));
    } else if (peek().kind == Token::Kind::Identifier ||
               (peek().kind == Token::Kind::Keyword &&
                is_elementary_type_name(peek().text)) ||
               peek().is_keyword("payable")) {
      std::string name = advance().text;
      if (name == "address" && peek().is_keyword("payable")) {
        advance();
        name = "address payable";
      }
      ty.kind = is_elementary_type_name(name) || name == "address payable"
                    ? TypeName::Kind::Elementary
                    : TypeName::Kind::UserDefined;
      ty.name = std::move(name);
    } else {
      error_here("expected a type name", "syntax-error");
      return std::nullopt;
    }
    while (peek().is_punct("[")) {
      // dynamic arrays only; fixed sizes are outside the subset
      if (!peek(1).is_punct("]")) break;
      advance();
      advance();
      TypeName arr;
      arr.kind = TypeName::Kind::Array;
      arr.value = std::make_unique<TypeName>(std::move(ty));
      ty = std::move(arr);
    }
    ty.span = {start, previous_end()};
    return ty;
  }

  void parse_state_var(ContractDecl &decl) {
    std::size_t start = peek().span.begin;
    auto ty = parse_type();
    if (!ty) {
      skip_declaration();
      return;
    }
    StateVarDecl sv;
    sv.type = std::move(*ty);
    while (peek().kind == Token::Kind::Keyword) {
      const std::string &kw = peek().text;
      if (auto v = visibility_from_name(kw)) {
        sv.visibility = *v;
        advance();
      } else if (kw == "constant") {
        sv.is_constant = true;
        advance();
      } else if (kw == "immutable") {
        sv.is_immutable = true;
        advance();
      } else if (kw == "override" || kw == "virtual") {
        advance();
      } else {
        break;
      }
    }
    if (peek().kind != Token::Kind::Identifier) {
      error_here("expected state variable name", "syntax-error");
      skip_declaration();
      return;
    }
    sv.name = advance().text;
    if (peek().is_punct("=")) {
      advance();
      sv.init = parse_expr_guarded();
    }
    expect_punct(";", "after state variable declaration");
    sv.span = {start, previous_end()};
    decl.state_vars.push_back(std::move(sv));
  }

  void parse_param_list(std::vector<Param> &out) {
    if (!expect_punct("(", "to open parameter list")) return;
    while (!at_end() && !peek().is_punct(")")) {
      Param p;
      std::size_t start = peek().span.begin;
      auto ty = parse_type();
      if (!ty) {
        // skip to , or )
        while (!at_end() && !peek().is_punct(",") && !peek().is_punct(")"))
          advance();
      } else {
        p.type = std::move(*ty);
        while (peek().is_keyword("memory") || peek().is_keyword("calldata") ||
               peek().is_keyword("storage") || peek().is_keyword("indexed")) {
          p.location = advance().text;
        }
        if (peek().kind == Token::Kind::Identifier) p.name = advance().text;
        p.span = {start, previous_end()};
        out.push_back(std::move(p));
      }
      if (peek().is_punct(","))
        advance();
      else
        break;
    }
    expect_punct(")", "to close parameter list");
  }

  void parse_function(ContractDecl &decl) {
    std::size_t start = peek().span.begin;
    FunctionDecl fn;
    if (peek().is_keyword("constructor")) {
      advance();
      fn.name = "constructor";
      fn.visibility = Visibility::Internal;
    } else if (peek().is_keyword("receive") || peek().is_keyword("fallback")) {
      fn.name = advance().text;
      fn.visibility = Visibility::External;
    } else {
      advance();  // function
      if (peek().kind != Token::Kind::Identifier) {
        error_here("expected function name", "syntax-error");
        skip_declaration();
        return;
      }
      fn.name = advance().text;
    }
    parse_param_list(fn.params);
    // header attributes in any order
    while (true) {
      const Token &t = peek();
      if (t.kind == Token::Kind::Keyword) {
        if (auto v = visibility_from_name(t.text)) {
          fn.visibility = *v;
          advance();
          continue;
        }
        if (auto m = mutability_from_name(t.text)) {
          fn.mutability = *m;
          advance();
          continue;
        }
        if (t.text == "returns") {
          advance();
          parse_param_list(fn.returns);
          continue;
        }
        if (t.text == "override" || t.text == "virtual") {
          advance();
          if (peek().is_punct("(")) skip_parens();
          continue;
        }
      }
      if (t.kind == Token::Kind::Identifier) {
        // modifier invocation
        ModifierInvocation mi;
        mi.span = t.span;
        mi.name = advance().text;
        if (peek().is_punct("(")) {
          advance();
          while (!at_end() && !peek().is_punct(")")) {
            mi.args.push_back(parse_expr_guarded());
            if (peek().is_punct(","))
              advance();
            else
              break;
          }
          expect_punct(")", "to close modifier arguments");
        }
        fn.modifier_invocations.push_back(std::move(mi));
        continue;
      }
      break;
    }
    fn.header_span = {start, previous_end()};
    if (peek().is_punct(";")) {
      advance();  // bodyless signature (interfaces, abstract)
      fn.span = {start, previous_end()};
      decl.functions.push_back(std::move(fn));
      return;
    }
    if (!peek().is_punct("{")) {
      error_here("expected function body or ';'", "syntax-error");
      fn.excluded = true;
      fn.exclusion_reason = "malformed header";
      skip_declaration();
      fn.span = {start, previous_end()};
      decl.functions.push_back(std::move(fn));
      return;
    }
    std::size_t diag_count = unit_.diagnostics.size();
    advance();  // {
    try {
      fn.body = parse_block_body(start);
    } catch (ParseAbort &) {
      fn.body.reset();
    }
    bool had_error = false;
    for (std::size_t i = diag_count; i < unit_.diagnostics.size(); ++i)
      if (unit_.diagnostics[i].severity == Severity::Error) had_error = true;
    if (!fn.body || had_error || exclude_current_) {
      if (!exclude_reason_.empty()) {
        fn.exclusion_reason = exclude_reason_;
      } else {
        fn.exclusion_reason = "parse errors in body";
      }
      fn.excluded = true;
      fn.body.reset();
    }
    exclude_current_ = false;
    exclude_reason_.clear();
    fn.span = {start, previous_end()};
    check_view_purity(fn);
    decl.functions.push_back(std::move(fn));
  }

  void parse_modifier(ContractDecl &decl) {
    std::size_t start = peek().span.begin;
    advance();  // modifier
    ModifierDecl md;
    if (peek().kind != Token::Kind::Identifier) {
      error_here("expected modifier name", "syntax-error");
      skip_declaration();
      return;
    }
    md.name = advance().text;
    if (peek().is_punct("(")) parse_param_list(md.params);
    while (peek().is_keyword("virtual") || peek().is_keyword("override")) advance();
    if (!peek().is_punct("{")) {
      expect_punct("{", "to open modifier body");
      skip_declaration();
      return;
    }
    advance();
    try {
      md.body = parse_block_body(start);
    } catch (ParseAbort &) {
      md.body.reset();
    }
    if (!md.body || exclude_current_) {
      md.excluded = true;
      md.exclusion_reason = exclude_reason_.empty() ? "parse errors in body"
                                                    : exclude_reason_;
      md.body.reset();
    }
    exclude_current_ = false;
    exclude_reason_.clear();
    md.span = {start, previous_end()};
    decl.modifiers.push_back(std::move(md));
  }

  // When a body statement is outside the subset, the whole enclosing function
  // is excluded with a warning; the body is skipped to its closing brace.
  bool exclude_current_ = false;
  std::string exclude_reason_;

  void exclude_enclosing(const std::string &reason) {
    warn_here("construct outside the supported subset: " + reason +
                  "; enclosing function excluded from analysis",
              "unsupported-construct");
    exclude_current_ = true;
    exclude_reason_ = reason;
  }

  // Parses statements until the matching '}' (already inside the block).
  StmtPtr parse_block_body(std::size_t start) {
    auto block = std::make_unique<Stmt>();
    block->kind = Stmt::Kind::Block;
    while (!at_end() && !peek().is_punct("}")) {
      if (exclude_current_) {
        skip_block_rest();
        block->span = {start, previous_end()};
        return block;
      }
      StmtPtr s = parse_statement();
      if (exclude_current_) {
        skip_block_rest();
        block->span = {start, previous_end()};
        return block;
      }
      if (s) block->children.push_back(std::move(s));
    }
    if (peek().is_punct("}")) advance();
    block->span = {start, previous_end()};
    return block;
  }

  StmtPtr parse_statement() {
    DepthGuard guard(*this);
    const Token &t = peek();
    std::size_t start = t.span.begin;

    if (t.is_punct("{")) {
      advance();
      return parse_block_body(start);
    }
    if (t.kind == Token::Kind::Keyword &&
        is_unsupported_statement_keyword(t.text)) {
      exclude_enclosing(t.text);
      return nullptr;
    }
    if (t.is_keyword("if")) return parse_if();
    if (t.is_keyword("while")) return parse_while();
    if (t.is_keyword("for")) return parse_for();
    if (t.is_keyword("return")) return parse_return();
    if (t.is_keyword("require") || t.is_keyword("assert"))
      return parse_require(t.text == "require" ? Stmt::Kind::Require
                                               : Stmt::Kind::AssertStmt);
    if (t.is_keyword("revert")) return parse_revert();
    if (t.is_keyword("emit")) return parse_emit();
    if (t.is_punct("_") || (t.kind == Token::Kind::Identifier && t.text == "_" &&
                            peek(1).is_punct(";"))) {
      auto s = make_stmt(Stmt::Kind::Placeholder, start);
      advance();
      expect_punct(";", "after '_'");
      s->span = {start, previous_end()};
      return s;
    }
    if (starts_var_decl()) return parse_var_decl();
    if (t.is_punct("(")) {
      // tuple declaration: (uint a, uint b) = expr;
      if (tuple_decl_lookahead()) return parse_tuple_decl();
    }
    return parse_expr_or_assign();
  }

  StmtPtr make_stmt(Stmt::Kind k, std::size_t start) {
    auto s = std::make_unique<Stmt>();
    s->kind = k;
    s->span = {start, start};
    return s;
  }

  // A statement starts a local declaration when it begins with an elementary
  // type keyword, `mapping`, or `Identifier[] loc name` / `Identifier name`
  // shapes that cannot be an expression.
  bool starts_var_decl() {
    const Token &t = peek();
    if (t.kind == Token::Kind::Keyword &&
        (is_elementary_type_name(t.text) || t.text == "mapping")) {
      // `address(...)` is a cast expression, not a declaration
      if (peek(1).is_punct("(")) return false;
      return true;
    }
    if (t.kind != Token::Kind::Identifier) return false;
    // Identifier-typed declaration: `IERC20 token = ...`, `Foo[] memory xs`
    const Token &n1 = peek(1);
    if (n1.kind == Token::Kind::Identifier) return true;
    if (n1.is_keyword("memory") || n1.is_keyword("storage") ||
        n1.is_keyword("calldata"))
      return true;
    if (n1.is_punct("[") && peek(2).is_punct("]")) return true;
    return false;
  }

  bool tuple_decl_lookahead() {
    // Scan `(` ... `)` `=` where some element after '(' or ',' looks like
    // `Type name`.
    std::size_t i = 1;
    int depth = 1;
    bool after_sep = true;
    bool typed = false;
    while (pos_ + i < tokens_.size() && depth > 0) {
      const Token &t = peek(i);
      if (after_sep && depth == 1 &&
          (t.kind == Token::Kind::Identifier ||
           (t.kind == Token::Kind::Keyword &&
            (is_elementary_type_name(t.text) || t.text == "mapping")))) {
        if (peek(i + 1).kind == Token::Kind::Identifier ||
            peek(i + 1).is_keyword("memory"))
          typed = true;
      }
      after_sep = t.is_punct(",");
      if (t.is_punct("(")) ++depth;
      if (t.is_punct(")")) --depth;
      ++i;
      if (depth == 0) break;
    }
    return typed && peek(i).is_punct("=");
  }

  StmtPtr parse_var_decl() {
    std::size_t start = peek().span.begin;
    auto s = make_stmt(Stmt::Kind::VarDecl, start);
    auto ty = parse_type();
    if (!ty) {
      recover_statement();
      return nullptr;
    }
    VarBinding b;
    b.type = std::move(*ty);
    while (peek().is_keyword("memory") || peek().is_keyword("storage") ||
           peek().is_keyword("calldata"))
      b.location = advance().text;
    if (peek().kind != Token::Kind::Identifier) {
      error_here("expected variable name", "syntax-error");
      recover_statement();
      return nullptr;
    }
    b.name = advance().text;
    b.span = {start, previous_end()};
    s->bindings.push_back(std::move(b));
    if (peek().is_punct("=")) {
      advance();
      s->init = parse_expr_guarded();
    }
    expect_punct(";", "after declaration");
    s->span = {start, previous_end()};
    return s;
  }

  StmtPtr parse_tuple_decl() {
    std::size_t start = peek().span.begin;
    auto s = make_stmt(Stmt::Kind::VarDecl, start);
    advance();  // (
    while (!at_end() && !peek().is_punct(")")) {
      if (peek().is_punct(",")) {  // skipped slot
        VarBinding b;
        b.span = peek().span;
        s->bindings.push_back(std::move(b));
        advance();
        continue;
      }
      std::size_t bstart = peek().span.begin;
      auto ty = parse_type();
      if (!ty) {
        recover_statement();
        return nullptr;
      }
      VarBinding b;
      b.type = std::move(*ty);
      while (peek().is_keyword("memory") || peek().is_keyword("storage") ||
             peek().is_keyword("calldata"))
        b.location = advance().text;
      if (peek().kind == Token::Kind::Identifier) b.name = advance().text;
      b.span = {bstart, previous_end()};
      s->bindings.push_back(std::move(b));
      if (peek().is_punct(","))
        advance();
      else
        break;
    }
    expect_punct(")", "to close tuple declaration");
    expect_punct("=", "in tuple declaration");
    s->init = parse_expr_guarded();
    expect_punct(";", "after declaration");
    s->span = {start, previous_end()};
    return s;
  }

  StmtPtr parse_if() {
    std::size_t start = peek().span.begin;
    advance();
    auto s = make_stmt(Stmt::Kind::If, start);
    expect_punct("(", "after 'if'");
    s->cond = parse_expr_guarded();
    expect_punct(")", "after condition");
    StmtPtr then_branch = parse_statement();
    s->children.push_back(wrap_block(std::move(then_branch)));
    if (peek().is_keyword("else")) {
      advance();
      StmtPtr else_branch = parse_statement();
      s->children.push_back(wrap_block(std::move(else_branch)));
    }
    s->span = {start, previous_end()};
    return s;
  }

  StmtPtr wrap_block(StmtPtr inner) {
    if (inner && inner->kind == Stmt::Kind::Block) return inner;
    auto block = std::make_unique<Stmt>();
    block->kind = Stmt::Kind::Block;
    if (inner) {
      block->span = inner->span;
      block->children.push_back(std::move(inner));
    }
    return block;
  }

  StmtPtr parse_while() {
    std::size_t start = peek().span.begin;
    advance();
    auto s = make_stmt(Stmt::Kind::While, start);
    expect_punct("(", "after 'while'");
    s->cond = parse_expr_guarded();
    expect_punct(")", "after condition");
    s->children.push_back(wrap_block(parse_statement()));
    s->span = {start, previous_end()};
    return s;
  }

  StmtPtr parse_for() {
    std::size_t start = peek().span.begin;
    advance();
    auto s = make_stmt(Stmt::Kind::For, start);
    expect_punct("(", "after 'for'");
    if (!peek().is_punct(";")) {
      if (starts_var_decl())
        s->init_stmt = parse_var_decl();  // consumes ';'
      else {
        s->init_stmt = parse_expr_or_assign();  // consumes ';'
      }
    } else {
      advance();
    }
    if (!peek().is_punct(";")) s->cond = parse_expr_guarded();
    expect_punct(";", "after loop condition");
    if (!peek().is_punct(")")) s->post_stmt = parse_expr_or_assign_no_semi();
    expect_punct(")", "after loop header");
    s->children.push_back(wrap_block(parse_statement()));
    s->span = {start, previous_end()};
    return s;
  }

  StmtPtr parse_return() {
    std::size_t start = peek().span.begin;
    advance();
    auto s = make_stmt(Stmt::Kind::Return, start);
    if (!peek().is_punct(";")) {
      if (peek().is_punct("(")) {
        // tuple return
        advance();
        while (!at_end() && !peek().is_punct(")")) {
          s->args.push_back(parse_expr_guarded());
          if (peek().is_punct(","))
            advance();
          else
            break;
        }
        expect_punct(")", "to close return tuple");
      } else {
        s->args.push_back(parse_expr_guarded());
      }
    }
    expect_punct(";", "after return");
    s->span = {start, previous_end()};
    return s;
  }

  StmtPtr parse_require(Stmt::Kind kind) {
    std::size_t start = peek().span.begin;
    advance();
    auto s = make_stmt(kind, start);
    expect_punct("(", "after require/assert");
    s->cond = parse_expr_guarded();
    if (peek().is_punct(",")) {
      advance();
      s->args.push_back(parse_expr_guarded());
    }
    expect_punct(")", "to close require/assert");
    expect_punct(";", "after require/assert");
    s->span = {start, previous_end()};
    return s;
  }

  StmtPtr parse_revert() {
    std::size_t start = peek().span.begin;
    advance();
    auto s = make_stmt(Stmt::Kind::Revert, start);
    if (peek().is_punct("(")) {
      advance();
      if (!peek().is_punct(")")) s->args.push_back(parse_expr_guarded());
      expect_punct(")", "to close revert");
    } else if (peek().kind == Token::Kind::Identifier) {
      // custom error: revert Foo(...)
      advance();
      if (peek().is_punct("(")) skip_parens();
    }
    expect_punct(";", "after revert");
    s->span = {start, previous_end()};
    return s;
  }

  StmtPtr parse_emit() {
    std::size_t start = peek().span.begin;
    advance();
    auto s = make_stmt(Stmt::Kind::Emit, start);
    s->cond = parse_expr_guarded();
    expect_punct(";", "after emit");
    s->span = {start, previous_end()};
    return s;
  }

  bool is_assign_op(const Token &t) const {
    return t.is_punct("=") || t.is_punct("+=") || t.is_punct("-=") ||
           t.is_punct("*=") || t.is_punct("/=") || t.is_punct("%=");
  }

  StmtPtr parse_expr_or_assign() {
    StmtPtr s = parse_expr_or_assign_no_semi();
    expect_punct(";", "after statement");
    if (s) s->span.end = previous_end();
    return s;
  }

  StmtPtr parse_expr_or_assign_no_semi() {
    std::size_t start = peek().span.begin;
    ExprPtr e = parse_expr_guarded();
    if (!e) {
      recover_statement_no_consume();
      return nullptr;
    }
    if (is_assign_op(peek())) {
      auto s = make_stmt(Stmt::Kind::Assign, start);
      s->text = advance().text;
      s->lhs = std::move(e);
      s->init = parse_expr_guarded();
      s->span = {start, previous_end()};
      return s;
    }
    // x++ / x-- desugar to compound assignment statements
    if (peek().is_punct("++") || peek().is_punct("--")) {
      auto s = make_stmt(Stmt::Kind::Assign, start);
      s->text = peek().is_punct("++") ? "+=" : "-=";
      advance();
      s->lhs = std::move(e);
      auto one = std::make_unique<Expr>();
      one->kind = Expr::Kind::NumberLit;
      one->text = "1";
      one->span = {start, previous_end()};
      s->init = std::move(one);
      s->span = {start, previous_end()};
      return s;
    }
    auto s = make_stmt(Stmt::Kind::ExprStmt, start);
    s->cond = std::move(e);
    s->span = {start, previous_end()};
    return s;
  }

  void recover_statement() {
    while (!at_end() && !peek().is_punct(";") && !peek().is_punct("}")) advance();
    if (peek().is_punct(";")) advance();
  }
  void recover_statement_no_consume() {
    while (!at_end() && !peek().is_punct(";") && !peek().is_punct("}")) advance();
  }

  // --- expressions ------------------------------------------------------------

  ExprPtr parse_expr_guarded() {
    try {
      return parse_expr();
    } catch (ParseAbort &) {
      return nullptr;
    }
  }

  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr make_binary(std::string op, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_unique<Expr>();
    e->kind = Expr::Kind::Binary;
    e->text = std::move(op);
    e->span = {lhs ? lhs->span.begin : previous_end(),
               rhs ? rhs->span.end : previous_end()};
    e->children.push_back(std::move(lhs));
    e->children.push_back(std::move(rhs));
    return e;
  }

  ExprPtr parse_or() {
    DepthGuard guard(*this);
    ExprPtr lhs = parse_and();
    while (peek().is_punct("||")) {
      advance();
      lhs = make_binary("||", std::move(lhs), parse_and());
    }
    return lhs;
  }
  ExprPtr parse_and() {
    ExprPtr lhs = parse_equality();
    while (peek().is_punct("&&")) {
      advance();
      lhs = make_binary("&&", std::move(lhs), parse_equality());
    }
    return lhs;
  }
  ExprPtr parse_equality() {
    ExprPtr lhs = parse_relational();
    while (peek().is_punct("==") || peek().is_punct("!=")) {
      std::string op = advance().text;
      lhs = make_binary(op, std::move(lhs), parse_relational());
    }
    return lhs;
  }
  ExprPtr parse_relational() {
    ExprPtr lhs = parse_additive();
    while (peek().is_punct("<") || peek().is_punct("<=") || peek().is_punct(">") ||
           peek().is_punct(">=")) {
      std::string op = advance().text;
      lhs = make_binary(op, std::move(lhs), parse_additive());
    }
    return lhs;
  }
  ExprPtr parse_additive() {
    ExprPtr lhs = parse_multiplicative();
    while (peek().is_punct("+") || peek().is_punct("-")) {
      std::string op = advance().text;
      lhs = make_binary(op, std::move(lhs), parse_multiplicative());
    }
    return lhs;
  }
  ExprPtr parse_multiplicative() {
    ExprPtr lhs = parse_unary();
    while (peek().is_punct("*") || peek().is_punct("/") || peek().is_punct("%")) {
      std::string op = advance().text;
      lhs = make_binary(op, std::move(lhs), parse_unary());
    }
    return lhs;
  }
  ExprPtr parse_unary() {
    DepthGuard guard(*this);
    std::size_t start = peek().span.begin;
    if (peek().is_punct("!") || peek().is_punct("-")) {
      std::string op = advance().text;
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::Unary;
      e->text = std::move(op);
      e->children.push_back(parse_unary());
      e->span = {start, previous_end()};
      return e;
    }
    return parse_postfix();
  }

  ExprPtr parse_postfix() {
    ExprPtr e = parse_primary();
    while (true) {
      if (peek().is_punct(".")) {
        advance();
        if (peek().kind != Token::Kind::Identifier &&
            peek().kind != Token::Kind::Keyword) {
          error_here("expected member name after '.'", "syntax-error");
          throw ParseAbort{};
        }
        auto m = std::make_unique<Expr>();
        m->kind = Expr::Kind::Member;
        m->text = advance().text;
        m->span = {e->span.begin, previous_end()};
        m->children.push_back(std::move(e));
        e = std::move(m);
        continue;
      }
      if (peek().is_punct("[")) {
        advance();
        auto ix = std::make_unique<Expr>();
        ix->kind = Expr::Kind::Index;
        ix->children.push_back(std::move(e));
        ix->children.push_back(parse_expr());
        expect_punct("]", "to close index");
        ix->span = {ix->children[0]->span.begin, previous_end()};
        e = std::move(ix);
        continue;
      }
      if (peek().is_punct("{")) {
        // call options: f{value: v}(...)
        advance();
        ExprPtr value_expr;
        while (!at_end() && !peek().is_punct("}")) {
          if (peek().kind == Token::Kind::Identifier ||
              peek().kind == Token::Kind::Keyword) {
            std::string key = advance().text;
            if (!peek().is_punct(":")) {
              error_here("expected ':' in call options", "syntax-error");
              throw ParseAbort{};
            }
            advance();
            ExprPtr v = parse_expr();
            if (key == "value") value_expr = std::move(v);
            // gas option parsed and dropped
          } else {
            error_here("expected call option name", "syntax-error");
            throw ParseAbort{};
          }
          if (peek().is_punct(","))
            advance();
          else
            break;
        }
        expect_punct("}", "to close call options");
        auto call = std::make_unique<Expr>();
        call->kind = Expr::Kind::CallValue;
        call->children.push_back(std::move(e));
        call->children.push_back(value_expr ? std::move(value_expr)
                                            : make_number("0"));
        expect_punct("(", "call options must be followed by arguments");
        while (!at_end() && !peek().is_punct(")")) {
          call->children.push_back(parse_expr());
          if (peek().is_punct(","))
            advance();
          else
            break;
        }
        expect_punct(")", "to close call");
        call->span = {call->children[0]->span.begin, previous_end()};
        e = std::move(call);
        continue;
      }
      if (peek().is_punct("(")) {
        advance();
        auto call = std::make_unique<Expr>();
        call->kind = Expr::Kind::Call;
        call->children.push_back(std::move(e));
        while (!at_end() && !peek().is_punct(")")) {
          call->children.push_back(parse_expr());
          if (peek().is_punct(","))
            advance();
          else
            break;
        }
        expect_punct(")", "to close call");
        call->span = {call->children[0]->span.begin, previous_end()};
        e = std::move(call);
        continue;
      }
      break;
    }
    return e;
  }

  ExprPtr make_number(const char *lit) {
    auto e = std::make_unique<Expr>();
    e->kind = Expr::Kind::NumberLit;
    e->text = lit;
    e->span = peek().span;
    return e;
  }

  ExprPtr parse_primary() {
    DepthGuard guard(*this);
    const Token &t = peek();
    std::size_t start = t.span.begin;

    if (t.is_punct("(")) {
      advance();
      if (peek().is_punct(")")) {
        advance();
        auto e = std::make_unique<Expr>();
        e->kind = Expr::Kind::Tuple;
        e->span = {start, previous_end()};
        return e;
      }
      ExprPtr inner = parse_expr();
      if (peek().is_punct(",")) {
        auto tup = std::make_unique<Expr>();
        tup->kind = Expr::Kind::Tuple;
        tup->children.push_back(std::move(inner));
        while (peek().is_punct(",")) {
          advance();
          if (peek().is_punct(")") || peek().is_punct(",")) continue;  // empty slot
          tup->children.push_back(parse_expr());
        }
        expect_punct(")", "to close tuple");
        tup->span = {start, previous_end()};
        return tup;
      }
      expect_punct(")", "to close parenthesized expression");
      if (inner) inner->span = {start, previous_end()};
      return inner;
    }
    if (t.kind == Token::Kind::Number) {
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::NumberLit;
      e->text = advance().text;
      e->span = {start, previous_end()};
      return e;
    }
    if (t.kind == Token::Kind::String) {
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::StringLit;
      e->text = advance().text;
      e->span = {start, previous_end()};
      return e;
    }
    if (t.is_keyword("true") || t.is_keyword("false")) {
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::BoolLit;
      e->text = advance().text;
      e->span = {start, previous_end()};
      return e;
    }
    if (t.is_keyword("this")) {
      advance();
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::This;
      e->span = {start, previous_end()};
      return e;
    }
    if (t.is_keyword("new")) {
      advance();
      auto ty = parse_type();
      if (!ty || !peek().is_punct("(")) {
        error_here("only `new T[](n)` array creation is supported",
                   "syntax-error");
        throw ParseAbort{};
      }
      if (ty->kind != TypeName::Kind::Array) {
        error_here("only dynamic array `new` is supported", "syntax-error");
        throw ParseAbort{};
      }
      advance();  // (
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::NewArray;
      e->text = ty->value->text();
      e->children.push_back(parse_expr());
      expect_punct(")", "to close new-array length");
      e->span = {start, previous_end()};
      return e;
    }
    if (t.kind == Token::Kind::Identifier && t.text == "msg") {
      if (peek(1).is_punct(".") && (peek(2).kind == Token::Kind::Identifier ||
                                    peek(2).kind == Token::Kind::Keyword)) {
        const std::string &prop = peek(2).text;
        if (prop == "sender" || prop == "value" || prop == "data") {
          advance();
          advance();
          advance();
          auto e = std::make_unique<Expr>();
          e->kind = prop == "sender"  ? Expr::Kind::MsgSender
                    : prop == "value" ? Expr::Kind::MsgValue
                                      : Expr::Kind::MsgData;
          e->span = {start, previous_end()};
          return e;
        }
      }
    }
    if (t.kind == Token::Kind::Identifier && t.text == "block") {
      if (peek(1).is_punct(".") && peek(2).kind == Token::Kind::Identifier &&
          peek(2).text == "timestamp") {
        advance();
        advance();
        advance();
        auto e = std::make_unique<Expr>();
        e->kind = Expr::Kind::BlockTimestamp;
        e->span = {start, previous_end()};
        return e;
      }
    }
    // Elementary-type casts and payable(...)
    if ((t.kind == Token::Kind::Keyword &&
         (is_elementary_type_name(t.text) || t.text == "payable")) &&
        peek(1).is_punct("(")) {
      std::string target = advance().text;
      advance();  // (
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::Cast;
      e->text = std::move(target);
      e->children.push_back(parse_expr());
      expect_punct(")", "to close cast");
      e->span = {start, previous_end()};
      return e;
    }
    if (t.kind == Token::Kind::Identifier) {
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::Identifier;
      e->text = advance().text;
      e->span = {start, previous_end()};
      return e;
    }
    error_here("unexpected token '" + t.text + "' in expression", "syntax-error");
    throw ParseAbort{};
  }

  // view/pure functions must not assign to state; the subset parser enforces
  // this with a diagnostic and exclusion rather than silently accepting.
  void check_view_purity(FunctionDecl &fn) {
    if (fn.mutability != Mutability::View && fn.mutability != Mutability::Pure)
      return;
    if (!fn.body) return;
    std::set<std::string> locals;
    for (const auto &p : fn.params) locals.insert(p.name);
    for (const auto &r : fn.returns)
      if (!r.name.empty()) locals.insert(r.name);
    bool bad = false;
    scan_state_writes(*fn.body, locals, bad);
    if (bad) {
      unit_.diagnostics.push_back(
          {Severity::Error, fn.span,
           "view/pure function assigns to a state variable", "state-write-in-view"});
      fn.excluded = true;
      fn.exclusion_reason = "state write in view/pure function";
      fn.body.reset();
    }
  }

  void scan_state_writes(const Stmt &s, std::set<std::string> &locals, bool &bad) {
    if (s.kind == Stmt::Kind::VarDecl) {
      for (const auto &b : s.bindings)
        if (!b.name.empty()) locals.insert(b.name);
    }
    if (s.kind == Stmt::Kind::Assign && s.lhs) {
      const Expr *base = s.lhs.get();
      while ((base->kind == Expr::Kind::Index || base->kind == Expr::Kind::Member) &&
             !base->children.empty())
        base = base->children[0].get();
      if (base->kind == Expr::Kind::Identifier && !locals.count(base->text))
        bad = true;  // unknown identifier at statement level = state variable
    }
    if (s.init_stmt) scan_state_writes(*s.init_stmt, locals, bad);
    if (s.post_stmt) scan_state_writes(*s.post_stmt, locals, bad);
    for (const auto &c : s.children)
      if (c) scan_state_writes(*c, locals, bad);
  }

  void enforce_unique_contract_names() {
    std::set<std::string> seen;
    for (auto it = unit_.contracts.begin(); it != unit_.contracts.end();) {
      if (!seen.insert(it->name).second) {
        unit_.diagnostics.push_back({Severity::Error, it->span,
                                     "duplicate contract name '" + it->name + "'",
                                     "duplicate-contract"});
        it = unit_.contracts.erase(it);
      } else {
        ++it;
      }
    }
  }
};

}  // namespace

ast::SourceUnit parse_source(const std::string &text, const std::string &path) {
  Parser p(text, path);
  return p.run();
}

ast::ExprPtr parse_expression_fragment(const std::string &text,
                                       std::vector<Diagnostic> &diags) {
  Parser p(text, "<fragment>");
  return p.fragment_expression(diags);
}

ast::StmtPtr parse_statement_fragment(const std::string &text,
                                      std::vector<Diagnostic> &diags) {
  Parser p(text, "<fragment>");
  return p.fragment_statement(diags);
}

bool SubsetGrammar::supports(const std::string &construct) const {
  for (const auto &e : entries)
    if (e.construct == construct) return e.supported;
  return false;
}

const SubsetGrammar &subset_grammar() {
  static const SubsetGrammar g = [] {
    SubsetGrammar sg;
    auto add = [&sg](const char *c, const char *cat, bool ok) {
      sg.entries.push_back({c, cat, ok});
    };
    add("contract declaration", "declaration", true);
    add("interface declaration", "declaration", true);
    add("single inheritance names", "declaration", true);
    add("state variable declaration", "declaration", true);
    add("mapping declaration", "declaration", true);
    add("nested mapping declaration", "declaration", true);
    add("dynamic array declaration", "declaration", true);
    add("function declaration", "declaration", true);
    add("constructor declaration", "declaration", true);
    add("modifier declaration", "declaration", true);
    add("modifier with arguments", "declaration", true);
    add("event declaration", "declaration", true);
    add("version pragma", "directive", true);
    add("local variable declaration", "statement", true);
    add("tuple declaration", "statement", true);
    add("assignment", "statement", true);
    add("compound assignment", "statement", true);
    add("if statement", "statement", true);
    add("for loop", "statement", true);
    add("while loop", "statement", true);
    add("require statement", "statement", true);
    add("assert statement", "statement", true);
    add("revert statement", "statement", true);
    add("return statement", "statement", true);
    add("expression statement", "statement", true);
    add("emit statement", "statement", true);
    add("arithmetic operators", "expression", true);
    add("comparison operators", "expression", true);
    add("logical operators", "expression", true);
    add("member access", "expression", true);
    add("index access", "expression", true);
    add("internal function call", "expression", true);
    add("external interface call", "expression", true);
    add("low-level call with value", "expression", true);
    add("new array expression", "expression", true);
    add("msg.sender", "expression", true);
    add("msg.value", "expression", true);
    add("msg.data", "expression", true);
    add("block.timestamp", "expression", true);
    add("address balance", "expression", true);
    add("payable cast", "expression", true);
    add("elementary type cast", "expression", true);
    // documented exclusions
    add("inline assembly", "statement", false);
    add("try/catch", "statement", false);
    add("user-defined operators", "declaration", false);
    add("using for directive", "directive", false);
    add("library declaration", "declaration", false);
    add("struct declaration", "declaration", false);
    add("enum declaration", "declaration", false);
    add("delete statement", "statement", false);
    add("unchecked block", "statement", false);
    add("break statement", "statement", false);
    add("continue statement", "statement", false);
    add("do-while loop", "statement", false);
    add("import directive", "directive", false);
    return sg;
  }();
  return g;
}

namespace ast {

const char *visibility_name(Visibility v) {
  switch (v) {
    case Visibility::Public: return "public";
    case Visibility::External: return "external";
    case Visibility::Internal: return "internal";
    case Visibility::Private: return "private";
  }
  return "internal";
}

const char *mutability_name(Mutability m) {
  switch (m) {
    case Mutability::Default: return "default";
    case Mutability::View: return "view";
    case Mutability::Pure: return "pure";
    case Mutability::Payable: return "payable";
  }
  return "default";
}

std::optional<Visibility> visibility_from_name(const std::string &s) {
  if (s == "public") return Visibility::Public;
  if (s == "external") return Visibility::External;
  if (s == "internal") return Visibility::Internal;
  if (s == "private") return Visibility::Private;
  return std::nullopt;
}

std::optional<Mutability> mutability_from_name(const std::string &s) {
  if (s == "view") return Mutability::View;
  if (s == "pure") return Mutability::Pure;
  if (s == "payable") return Mutability::Payable;
  if (s == "default") return Mutability::Default;
  return std::nullopt;
}

TypeName TypeName::clone() const {
  TypeName t;
  t.kind = kind;
  t.name = name;
  t.span = span;
  if (key) t.key = std::make_unique<TypeName>(key->clone());
  if (value) t.value = std::make_unique<TypeName>(value->clone());
  return t;
}

std::string TypeName::text() const {
  switch (kind) {
    case Kind::Elementary:
    case Kind::UserDefined:
      return name;
    case Kind::Mapping:
      return "mapping(" + (key ? key->text() : "?") + " => " +
             (value ? value->text() : "?") + ")";
    case Kind::Array:
      return (value ? value->text() : "?") + "[]";
  }
  return name;
}

}  // namespace ast

}  // namespace pricescan
