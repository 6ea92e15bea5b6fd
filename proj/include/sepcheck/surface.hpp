#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sepcheck/datatype.hpp"
#include "sepcheck/type_expr.hpp"

namespace sepcheck {

class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePos pos, std::string message, std::vector<std::string> expected = {})
      : std::runtime_error(format(pos, message, expected)),
        pos_(pos),
        message_(std::move(message)),
        expected_(std::move(expected)) {}

  SourcePos pos() const { return pos_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string format(SourcePos pos, const std::string& msg, const std::vector<std::string>& expected) {
    std::string out = std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " + msg;
    if (!expected.empty()) {
      out += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) out += i + 1 == expected.size() ? " or " : ", ";
        out += expected[i];
      }
      out += ")";
    }
    return out;
  }

  SourcePos pos_;
  std::string message_;
  std::vector<std::string> expected_;
};

// --- Raw (pre-desugaring) declarations ---------------------------------------

// `Name : arg -> (ret_args) decl`
struct RawGadtConstructor {
  std::string name;
  TypeExpr arg;
  std::vector<TypeExpr> ret_args;
};

struct RawCtor {
  std::string name;
  std::variant<TypeExpr, RawGadtConstructor> form;  // `of` argument or GADT signature
  SourcePos pos{};
};

struct RawVariant {
  std::vector<RawCtor> ctors;
};
struct RawRecord {
  std::vector<RecordField> fields;
};
struct RawSynonym {
  TypeExpr type;
};

struct RawDecl {
  std::string name;
  std::vector<std::string> params;
  std::variant<RawVariant, RawRecord, RawSynonym> body;
  bool unboxed = false;
  SourcePos pos{};
};

using RawBlock = std::vector<RawDecl>;

struct Program {
  std::vector<RawBlock> raw;
  std::vector<Block> blocks;
};

inline bool is_anonymous(const std::string& var) { return !var.empty() && var.front() == '_'; }

// Encodes a GADT constructor as exists b. (a1 = k1) => ... => (an = kn) => arg.
// Constructor variables are local to the constructor. A return argument that
// is literally the parameter of the same position, and that appears in no
// other return argument, is identified with that parameter and produces no
// guard.
inline TypeExpr desugar_gadt(const RawGadtConstructor& c, const std::vector<std::string>& params) {
  if (c.ret_args.size() != params.size())
    throw std::invalid_argument("desugar_gadt: return arity differs from parameter count");
  const std::size_t n = params.size();

  std::vector<bool> elided(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    auto v = c.ret_args[i].as<types::Var>();
    if (!v || v->name != params[i]) continue;
    bool elsewhere = false;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && mentions(c.ret_args[j], params[i])) elsewhere = true;
    elided[i] = !elsewhere;
  }

  std::vector<std::string> order = free_vars_in_order(c.arg);
  for (const auto& k : c.ret_args)
    for (const auto& v : free_vars_in_order(k))
      if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);

  std::set<std::string> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (elided[i]) kept.insert(params[i]);

  std::set<std::string> used(params.begin(), params.end());
  used.insert(order.begin(), order.end());
  Substitution rename;
  std::vector<std::string> existentials;
  for (const auto& v : order) {
    if (kept.contains(v)) continue;
    std::string fresh = v;
    if (std::find(params.begin(), params.end(), v) != params.end()) {
      fresh = fresh_name(v, used);
      used.insert(fresh);
      rename.emplace(v, tvar(fresh));
    }
    existentials.push_back(fresh);
  }

  TypeExpr body = substitute(c.arg, rename);
  for (std::size_t i = n; i-- > 0;) {
    if (elided[i]) continue;
    body = tguard(tvar(params[i]), substitute(c.ret_args[i], rename), body);
  }
  return texists(existentials, body);
}

namespace detail {

enum class Tok {
  End,
  Ident,
  UIdent,
  TyVar,
  Underscore,
  KwType,
  KwAnd,
  KwOf,
  KwAs,
  KwMutable,
  KwForall,
  KwExists,
  KwFloat,
  KwInt,
  KwBool,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Semi,
  Colon,
  Equal,
  Bar,
  Arrow,
  Star,
  Dot,
  Attribute,
};

inline const char* describe(Tok t) {
  switch (t) {
    case Tok::End:
      return "end of input";
    case Tok::Ident:
      return "identifier";
    case Tok::UIdent:
      return "constructor name";
    case Tok::TyVar:
      return "type variable";
    case Tok::Underscore:
      return "'_'";
    case Tok::KwType:
      return "'type'";
    case Tok::KwAnd:
      return "'and'";
    case Tok::KwOf:
      return "'of'";
    case Tok::KwAs:
      return "'as'";
    case Tok::KwMutable:
      return "'mutable'";
    case Tok::KwForall:
      return "'forall'";
    case Tok::KwExists:
      return "'exists'";
    case Tok::KwFloat:
      return "'float'";
    case Tok::KwInt:
      return "'int'";
    case Tok::KwBool:
      return "'bool'";
    case Tok::LParen:
      return "'('";
    case Tok::RParen:
      return "')'";
    case Tok::LBrace:
      return "'{'";
    case Tok::RBrace:
      return "'}'";
    case Tok::Comma:
      return "','";
    case Tok::Semi:
      return "';'";
    case Tok::Colon:
      return "':'";
    case Tok::Equal:
      return "'='";
    case Tok::Bar:
      return "'|'";
    case Tok::Arrow:
      return "'->'";
    case Tok::Star:
      return "'*'";
    case Tok::Dot:
      return "'.'";
    case Tok::Attribute:
      return "attribute";
  }
  return "token";
}

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos{};
};

inline bool ident_start(char c) { return std::islower(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

inline std::vector<Token> lex(std::string_view src) {
  static const std::map<std::string, Tok, std::less<>> keywords{
      {"type", Tok::KwType},     {"and", Tok::KwAnd},       {"of", Tok::KwOf},
      {"as", Tok::KwAs},         {"mutable", Tok::KwMutable}, {"forall", Tok::KwForall},
      {"exists", Tok::KwExists}, {"float", Tok::KwFloat},   {"int", Tok::KwInt},
      {"bool", Tok::KwBool},
  };
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1, col = 1;
  auto advance = [&](std::size_t n = 1) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto peek = [&](std::size_t k = 0) -> char { return i + k < src.size() ? src[i + k] : '\0'; };

  while (i < src.size()) {
    char c = peek();
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    SourcePos pos{line, col};
    if (c == '(' && peek(1) == '*') {
      int depth = 0;
      do {
        if (peek() == '(' && peek(1) == '*') {
          ++depth;
          advance(2);
        } else if (peek() == '*' && peek(1) == ')') {
          --depth;
          advance(2);
        } else if (i >= src.size()) {
          throw ParseError(pos, "unterminated comment");
        } else {
          advance();
        }
      } while (depth > 0);
      continue;
    }
    auto word = [&](std::size_t start) {
      std::size_t j = start;
      while (j < src.size() && ident_char(src[j])) ++j;
      return std::string(src.substr(start, j - start));
    };
    if (c == '\'') {
      if (!ident_start(peek(1))) throw ParseError(pos, "malformed type variable");
      std::string name = word(i + 1);
      if (is_anonymous(name)) throw ParseError(pos, "type variables starting with '_' are reserved");
      advance(1 + name.size());
      out.push_back({Tok::TyVar, name, pos});
      continue;
    }
    if (ident_start(c)) {
      std::string w = word(i);
      advance(w.size());
      if (w == "_") {
        out.push_back({Tok::Underscore, w, pos});
      } else if (auto it = keywords.find(w); it != keywords.end()) {
        out.push_back({it->second, w, pos});
      } else {
        out.push_back({Tok::Ident, w, pos});
      }
      continue;
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      std::string w = word(i);
      advance(w.size());
      out.push_back({Tok::UIdent, w, pos});
      continue;
    }
    if (c == '[' && peek(1) == '@' && peek(2) == '@') {
      std::size_t j = i + 3;
      while (j < src.size() && src[j] != ']' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != ']') throw ParseError(pos, "unterminated attribute");
      std::string name(src.substr(i + 3, j - i - 3));
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) name.erase(0, 1);
      advance(j + 1 - i);
      out.push_back({Tok::Attribute, name, pos});
      continue;
    }
    if (c == '-' && peek(1) == '>') {
      advance(2);
      out.push_back({Tok::Arrow, "->", pos});
      continue;
    }
    Tok kind;
    switch (c) {
      case '(':
        kind = Tok::LParen;
        break;
      case ')':
        kind = Tok::RParen;
        break;
      case '{':
        kind = Tok::LBrace;
        break;
      case '}':
        kind = Tok::RBrace;
        break;
      case ',':
        kind = Tok::Comma;
        break;
      case ';':
        kind = Tok::Semi;
        break;
      case ':':
        kind = Tok::Colon;
        break;
      case '=':
        kind = Tok::Equal;
        break;
      case '|':
        kind = Tok::Bar;
        break;
      case '*':
        kind = Tok::Star;
        break;
      case '.':
        kind = Tok::Dot;
        break;
      default:
        throw ParseError(pos, std::string("unexpected character '") + c + "'");
    }
    advance();
    out.push_back({kind, std::string(1, c), pos});
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

struct TypeRef {
  std::string head;
  std::size_t arity;
  SourcePos pos;
};

struct VarRef {
  std::string name;
  SourcePos pos;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Program program() {
    Program prog;
    while (!at(Tok::End)) {
      expect(Tok::KwType);
      RawBlock raw;
      std::vector<TypeRef> refs;
      raw.push_back(decl(refs));
      while (accept(Tok::KwAnd)) raw.push_back(decl(refs));
      validate_block(raw, refs);
      Block block;
      for (const auto& d : raw) block.push_back(desugar(d));
      prog.raw.push_back(std::move(raw));
      prog.blocks.push_back(std::move(block));
    }
    return prog;
  }

  TypeExpr standalone_type() {
    std::vector<TypeRef> refs;
    refs_ = &refs;
    std::vector<VarRef> vars;
    vars_ = &vars;
    TypeExpr t = texpr();
    expect(Tok::End);
    return t;
  }

  static Declaration desugar(const RawDecl& d) {
    Declaration out{d.name, d.params, Synonym{tint()}, d.pos};
    std::visit(overloaded{
                   [&](const RawVariant& v) {
                     std::vector<VariantCtor> ctors;
                     for (const auto& c : v.ctors) {
                       TypeExpr arg = std::visit(
                           overloaded{
                               [](const TypeExpr& t) { return t; },
                               [&](const RawGadtConstructor& g) { return desugar_gadt(g, d.params); },
                           },
                           c.form);
                       ctors.push_back({c.name, arg});
                     }
                     if (d.unboxed) {
                       out.body = UnboxedVariant{ctors.front()};
                     } else {
                       out.body = BoxedVariant{std::move(ctors)};
                     }
                   },
                   [&](const RawRecord& r) {
                     if (d.unboxed) {
                       out.body = UnboxedRecord{r.fields.front()};
                     } else {
                       out.body = BoxedRecord{r.fields};
                     }
                   },
                   [&](const RawSynonym& s) { out.body = Synonym{s.type}; },
               },
               d.body);
    return out;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::set<std::string> declared_;  // names of completed blocks
  std::map<std::string, std::size_t> arities_;
  std::vector<TypeRef>* refs_ = nullptr;
  std::vector<VarRef>* vars_ = nullptr;
  std::size_t anon_counter_ = 0;

  const Token& cur() const { return toks_[pos_]; }
  bool at(Tok k) const { return cur().kind == k; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string found = cur().kind == Tok::End ? "end of input" : "'" + cur().text + "'";
    throw ParseError(cur().pos, "unexpected " + found, std::move(expected));
  }
  Token expect(Tok k) {
    if (!at(k)) fail({describe(k)});
    return toks_[pos_++];
  }

  std::string fresh_anonymous() { return "_" + std::to_string(anon_counter_++); }

  std::string tyvar_or_anonymous() {
    if (at(Tok::TyVar)) return toks_[pos_++].text;
    if (accept(Tok::Underscore)) return fresh_anonymous();
    fail({"type variable", "'_'"});
  }

  std::vector<std::string> params() {
    std::vector<std::string> out;
    if (at(Tok::TyVar) || at(Tok::Underscore)) {
      out.push_back(tyvar_or_anonymous());
    } else if (accept(Tok::LParen)) {
      out.push_back(tyvar_or_anonymous());
      while (accept(Tok::Comma)) out.push_back(tyvar_or_anonymous());
      expect(Tok::RParen);
    }
    return out;
  }

  RawDecl decl(std::vector<TypeRef>& refs) {
    anon_counter_ = 0;
    refs_ = &refs;
    RawDecl d;
    SourcePos start = cur().pos;
    d.params = params();
    std::set<std::string> seen;
    for (const auto& p : d.params) {
      if (!seen.insert(p).second) throw ParseError(start, "duplicate type parameter '" + p + "'");
    }
    if (!at(Tok::Ident)) fail({"type name"});
    d.pos = cur().pos;
    d.name = toks_[pos_++].text;
    expect(Tok::Equal);

    std::vector<VarRef> vars;
    vars_ = &vars;
    if (at(Tok::Bar) || at(Tok::UIdent)) {
      d.body = variant(d, vars);
    } else if (at(Tok::LBrace)) {
      d.body = record();
    } else {
      d.body = RawSynonym{texpr()};
    }
    if (at(Tok::Attribute)) {
      Token attr = toks_[pos_++];
      if (attr.text != "unboxed" && attr.text != "ocaml.unboxed")
        throw ParseError(attr.pos, "unknown attribute '" + attr.text + "'");
      if (std::holds_alternative<RawSynonym>(d.body))
        throw ParseError(attr.pos, "[@@unboxed] applies only to variants and records");
      if (auto v = std::get_if<RawVariant>(&d.body); v && v->ctors.size() != 1)
        throw ParseError(attr.pos, "[@@unboxed] requires exactly one constructor");
      if (auto r = std::get_if<RawRecord>(&d.body)) {
        if (r->fields.size() != 1) throw ParseError(attr.pos, "[@@unboxed] requires exactly one field");
        if (r->fields.front().is_mutable) throw ParseError(attr.pos, "[@@unboxed] field must be immutable");
      }
      d.unboxed = true;
    }

    std::set<std::string> bound(d.params.begin(), d.params.end());
    for (const auto& v : vars) {
      if (!bound.contains(v.name)) {
        std::string shown = is_anonymous(v.name) ? "_" : "'" + v.name;
        throw ParseError(v.pos, "unbound type variable " + shown + " in '" + d.name + "'");
      }
    }
    return d;
  }

  RawVariant variant(const RawDecl& d, std::vector<VarRef>& vars) {
    RawVariant v;
    std::set<std::string> tags;
    accept(Tok::Bar);
    do {
      SourcePos pos = cur().pos;
      if (!at(Tok::UIdent)) fail({"constructor name"});
      std::string name = toks_[pos_++].text;
      if (!tags.insert(name).second) throw ParseError(pos, "duplicate constructor '" + name + "'");
      if (accept(Tok::KwOf)) {
        v.ctors.push_back({name, texpr(), pos});
      } else if (accept(Tok::Colon)) {
        // Variables of a GADT signature are local to it.
        std::vector<VarRef> local;
        vars_ = &local;
        SourcePos sig_pos = cur().pos;
        TypeExpr sig = texpr();
        vars_ = &vars;
        std::vector<TypeExpr> doms;
        TypeExpr result = sig;
        while (auto a = result.as<types::Arrow>()) {
          doms.push_back(a->dom);
          result = a->cod;
        }
        if (doms.empty()) throw ParseError(sig_pos, "GADT constructor '" + name + "' needs an argument");
        auto ret = result.as<types::Constr>();
        if (!ret || ret->head != d.name)
          throw ParseError(sig_pos, "GADT constructor '" + name + "' must return '" + d.name + "'");
        if (ret->args.size() != d.params.size())
          throw ParseError(sig_pos, "GADT constructor '" + name + "' returns '" + d.name + "' with " +
                                        std::to_string(ret->args.size()) + " arguments, expected " +
                                        std::to_string(d.params.size()));
        TypeExpr arg = doms.back();
        for (std::size_t k = doms.size() - 1; k-- > 0;) arg = tarrow(doms[k], arg);
        v.ctors.push_back({name, RawGadtConstructor{name, arg, ret->args}, pos});
      } else {
        fail({"'of'", "':'"});
      }
    } while (accept(Tok::Bar));
    return v;
  }

  RawRecord record() {
    RawRecord r;
    expect(Tok::LBrace);
    std::set<std::string> labels;
    do {
      if (at(Tok::RBrace) && !r.fields.empty()) break;
      RecordField f{"", false, tint()};
      f.is_mutable = accept(Tok::KwMutable);
      SourcePos pos = cur().pos;
      if (!at(Tok::Ident)) fail({"field label"});
      f.label = toks_[pos_++].text;
      if (!labels.insert(f.label).second) throw ParseError(pos, "duplicate field '" + f.label + "'");
      expect(Tok::Colon);
      f.type = texpr();
      r.fields.push_back(std::move(f));
    } while (accept(Tok::Semi));
    expect(Tok::RBrace);
    return r;
  }

  TypeExpr texpr() {
    if (at(Tok::KwForall) || at(Tok::KwExists)) {
      bool universal = at(Tok::KwForall);
      ++pos_;
      std::vector<std::pair<std::string, SourcePos>> binders;
      do {
        SourcePos p = cur().pos;
        binders.emplace_back(expect(Tok::TyVar).text, p);
      } while (at(Tok::TyVar));
      expect(Tok::Dot);
      std::size_t mark = vars_->size();
      TypeExpr body = texpr();
      drop_bound(mark, binders);
      for (auto it = binders.rbegin(); it != binders.rend(); ++it)
        body = universal ? tforall(it->first, body) : texists(it->first, body);
      return body;
    }
    std::size_t mark = vars_->size();
    TypeExpr t = arrow_type();
    while (at(Tok::KwAs)) {
      ++pos_;
      SourcePos p = cur().pos;
      std::string b = expect(Tok::TyVar).text;
      drop_bound(mark, {{b, p}});
      t = trec(b, t);
    }
    return t;
  }

  void drop_bound(std::size_t mark, const std::vector<std::pair<std::string, SourcePos>>& binders) {
    std::vector<VarRef> kept(vars_->begin(), vars_->begin() + static_cast<std::ptrdiff_t>(mark));
    for (std::size_t i = mark; i < vars_->size(); ++i) {
      bool is_bound = false;
      for (const auto& [b, _] : binders) is_bound = is_bound || (*vars_)[i].name == b;
      if (!is_bound) kept.push_back((*vars_)[i]);
    }
    *vars_ = std::move(kept);
  }

  TypeExpr arrow_type() {
    TypeExpr dom = product_type();
    if (accept(Tok::Arrow)) return tarrow(dom, arrow_type());
    return dom;
  }

  TypeExpr product_type() {
    std::vector<TypeExpr> fs{app_type()};
    while (accept(Tok::Star)) fs.push_back(app_type());
    return fs.size() == 1 ? fs.front() : tproduct(std::move(fs));
  }

  TypeExpr app_type() {
    std::vector<TypeExpr> args = atom_group();
    while (at(Tok::Ident)) {
      Token head = toks_[pos_++];
      refs_->push_back({head.text, args.size(), head.pos});
      args = {tconstr(head.text, std::move(args))};
    }
    if (args.size() != 1) fail({"type constructor name"});
    return args.front();
  }

  // One atom, or a parenthesized comma-separated argument list.
  std::vector<TypeExpr> atom_group() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::TyVar:
        vars_->push_back({t.text, t.pos});
        ++pos_;
        return {tvar(t.text)};
      case Tok::Underscore: {
        ++pos_;
        std::string name = fresh_anonymous();
        vars_->push_back({name, t.pos});
        return {tvar(name)};
      }
      case Tok::KwFloat:
        ++pos_;
        return {tfloat()};
      case Tok::KwInt:
        ++pos_;
        return {tint()};
      case Tok::KwBool:
        ++pos_;
        return {tbool()};
      case Tok::Ident:
        ++pos_;
        refs_->push_back({t.text, 0, t.pos});
        return {tconstr(t.text)};
      case Tok::LParen: {
        ++pos_;
        std::vector<TypeExpr> items{texpr()};
        while (accept(Tok::Comma)) items.push_back(texpr());
        expect(Tok::RParen);
        return items;
      }
      default:
        fail({"type variable", "'_'", "builtin type", "type constructor name", "'('"});
    }
  }

  void validate_block(const RawBlock& block, const std::vector<TypeRef>& refs) {
    std::map<std::string, std::size_t> local;
    for (const auto& d : block) {
      if (declared_.contains(d.name) || local.contains(d.name))
        throw ParseError(d.pos, "duplicate type constructor '" + d.name + "'");
      local[d.name] = d.params.size();
    }
    for (const auto& r : refs) {
      std::size_t expected;
      if (auto it = local.find(r.head); it != local.end()) {
        expected = it->second;
      } else if (auto jt = arities_.find(r.head); jt != arities_.end()) {
        expected = jt->second;
      } else {
        throw ParseError(r.pos, "unknown type constructor '" + r.head + "'");
      }
      if (expected != r.arity)
        throw ParseError(r.pos, "type constructor '" + r.head + "' expects " + std::to_string(expected) +
                                    " argument(s), got " + std::to_string(r.arity));
    }
    for (const auto& [n, a] : local) {
      declared_.insert(n);
      arities_[n] = a;
    }
  }
};

}  // namespace detail

inline Program parse_program(std::string_view text) { return detail::Parser(text).program(); }

// Parses a single type expression; constructor names are not resolved.
inline TypeExpr parse_type(std::string_view text) { return detail::Parser(text).standalone_type(); }

// --- Pretty printing of raw programs ----------------------------------------

inline std::string params_to_string(const std::vector<std::string>& params) {
  if (params.empty()) return "";
  if (params.size() == 1) return tyvar_to_string(params.front()) + " ";
  std::string out = "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ", ";
    out += tyvar_to_string(params[i]);
  }
  return out + ") ";
}

inline std::string to_string(const RawDecl& d) {
  PrintOptions opts;
  std::string out = params_to_string(d.params) + d.name + " =";
  std::visit(overloaded{
                 [&](const RawVariant& v) {
                   for (const auto& c : v.ctors) {
                     out += "\n  | " + c.name;
                     std::visit(overloaded{
                                    [&](const TypeExpr& t) { out += " of " + to_string(t, opts); },
                                    [&](const RawGadtConstructor& g) {
                                      std::string arg;
                                      detail::print_type(arg, g.arg, 2, opts);
                                      out += " : " + arg + " -> " + to_string(tconstr(d.name, g.ret_args), opts);
                                    },
                                },
                                c.form);
                   }
                 },
                 [&](const RawRecord& r) {
                   out += " {";
                   for (std::size_t i = 0; i < r.fields.size(); ++i) {
                     if (i) out += ";";
                     out += " ";
                     if (r.fields[i].is_mutable) out += "mutable ";
                     out += r.fields[i].label + " : " + to_string(r.fields[i].type, opts);
                   }
                   out += " }";
                 },
                 [&](const RawSynonym& s) { out += " " + to_string(s.type, opts); },
             },
             d.body);
  if (d.unboxed) out += " [@@unboxed]";
  return out;
}

inline std::string to_string(const Program& p) {
  std::string out;
  for (const auto& block : p.raw) {
    for (std::size_t i = 0; i < block.size(); ++i) {
      out += i == 0 ? "type " : "and ";
      out += to_string(block[i]);
      out += "\n";
    }
    out += "\n";
  }
  return out;
}

}  // namespace sepcheck
