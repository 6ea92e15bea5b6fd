#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sepcheck {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

enum class Builtin { Float, Int, Bool };

inline const char* to_string(Builtin b) {
  switch (b) {
    case Builtin::Float:
      return "float";
    case Builtin::Int:
      return "int";
    case Builtin::Bool:
      return "bool";
  }
  return "?";
}

struct TypeNode;

// Immutable, shared handle to a type expression node.
class TypeExpr {
 public:
  const TypeNode& node() const { return *ptr_; }

  template <class T>
  const T* as() const;

  template <class T>
  bool is() const {
    return as<T>() != nullptr;
  }

  const std::set<std::string>& free_vars() const;

  // Identity of the underlying node, used only as a cheap equality shortcut.
  const void* id() const { return ptr_.get(); }

 private:
  explicit TypeExpr(std::shared_ptr<const TypeNode> p) : ptr_(std::move(p)) {}
  std::shared_ptr<const TypeNode> ptr_;

  template <class T>
  friend TypeExpr make_type(T&& alt);
};

namespace types {

struct Var {
  std::string name;
};
struct Base {
  Builtin which;
};
struct Constr {
  std::string head;
  std::vector<TypeExpr> args;
};
struct Arrow {
  TypeExpr dom;
  TypeExpr cod;
};
struct Product {
  std::vector<TypeExpr> factors;
};
struct Forall {
  std::string binder;
  TypeExpr body;
};
struct Exists {
  std::string binder;
  TypeExpr body;
};
// body where (lhs = rhs). GADT encodings only ever produce a variable lhs;
// other shapes exist for the semantic model and are refused by the checker.
struct Guard {
  TypeExpr lhs;
  TypeExpr rhs;
  TypeExpr body;
};
// `body as binder`: binder is free in body.
struct Rec {
  std::string binder;
  TypeExpr body;
};

}  // namespace types

struct TypeNode {
  std::variant<types::Var, types::Base, types::Constr, types::Arrow, types::Product,
               types::Forall, types::Exists, types::Guard, types::Rec>
      alt;
  std::set<std::string> free;
};

template <class T>
const T* TypeExpr::as() const {
  return std::get_if<T>(&ptr_->alt);
}

inline const std::set<std::string>& TypeExpr::free_vars() const { return ptr_->free; }

namespace detail {

inline std::set<std::string> union_free(std::initializer_list<const TypeExpr*> ts) {
  std::set<std::string> out;
  for (const TypeExpr* t : ts) out.insert(t->free_vars().begin(), t->free_vars().end());
  return out;
}

inline std::set<std::string> compute_free(const TypeNode& n) {
  return std::visit(
      overloaded{
          [](const types::Var& v) { return std::set<std::string>{v.name}; },
          [](const types::Base&) { return std::set<std::string>{}; },
          [](const types::Constr& c) {
            std::set<std::string> out;
            for (const auto& a : c.args) out.insert(a.free_vars().begin(), a.free_vars().end());
            return out;
          },
          [](const types::Arrow& a) { return union_free({&a.dom, &a.cod}); },
          [](const types::Product& p) {
            std::set<std::string> out;
            for (const auto& f : p.factors) out.insert(f.free_vars().begin(), f.free_vars().end());
            return out;
          },
          [](const types::Forall& q) {
            auto out = q.body.free_vars();
            out.erase(q.binder);
            return out;
          },
          [](const types::Exists& q) {
            auto out = q.body.free_vars();
            out.erase(q.binder);
            return out;
          },
          [](const types::Guard& g) { return union_free({&g.lhs, &g.rhs, &g.body}); },
          [](const types::Rec& r) {
            auto out = r.body.free_vars();
            out.erase(r.binder);
            return out;
          },
      },
      n.alt);
}

}  // namespace detail

template <class T>
TypeExpr make_type(T&& alt) {
  auto node = std::make_shared<TypeNode>();
  node->alt = std::forward<T>(alt);
  node->free = detail::compute_free(*node);
  return TypeExpr(std::move(node));
}

// --- Construction ---------------------------------------------------------

inline TypeExpr tvar(std::string name) { return make_type(types::Var{std::move(name)}); }
inline TypeExpr tbuiltin(Builtin b) { return make_type(types::Base{b}); }
inline TypeExpr tfloat() { return tbuiltin(Builtin::Float); }
inline TypeExpr tint() { return tbuiltin(Builtin::Int); }
inline TypeExpr tbool() { return tbuiltin(Builtin::Bool); }

inline TypeExpr tconstr(std::string head, std::vector<TypeExpr> args = {}) {
  return make_type(types::Constr{std::move(head), std::move(args)});
}

inline TypeExpr tarrow(TypeExpr dom, TypeExpr cod) {
  return make_type(types::Arrow{std::move(dom), std::move(cod)});
}

inline TypeExpr tproduct(std::vector<TypeExpr> factors) {
  if (factors.size() < 2) throw std::invalid_argument("product needs at least two factors");
  return make_type(types::Product{std::move(factors)});
}

inline TypeExpr tforall(std::string binder, TypeExpr body) {
  return make_type(types::Forall{std::move(binder), std::move(body)});
}

inline TypeExpr texists(std::string binder, TypeExpr body) {
  return make_type(types::Exists{std::move(binder), std::move(body)});
}

inline TypeExpr texists(const std::vector<std::string>& binders, TypeExpr body) {
  for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = texists(*it, std::move(body));
  return body;
}

inline TypeExpr tguard(TypeExpr lhs, TypeExpr rhs, TypeExpr body) {
  return make_type(types::Guard{std::move(lhs), std::move(rhs), std::move(body)});
}

// A binder that does not occur in its body is dropped.
inline TypeExpr trec(std::string binder, TypeExpr body) {
  if (!body.free_vars().contains(binder)) return body;
  return make_type(types::Rec{std::move(binder), std::move(body)});
}

// --- Queries ---------------------------------------------------------------

template <class R, class... Fs>
R match(const TypeExpr& t, Fs&&... fs) {
  return std::visit(overloaded{std::forward<Fs>(fs)...}, t.node().alt);
}

inline bool mentions(const TypeExpr& t, const std::string& name) {
  return t.free_vars().contains(name);
}

inline bool is_closed(const TypeExpr& t) { return t.free_vars().empty(); }

// Pre-order traversal; `f` returns false to stop descending.
template <class F>
void walk(const TypeExpr& t, F&& f) {
  if (!f(t)) return;
  std::visit(overloaded{
                 [](const types::Var&) {},
                 [](const types::Base&) {},
                 [&](const types::Constr& c) {
                   for (const auto& a : c.args) walk(a, f);
                 },
                 [&](const types::Arrow& a) {
                   walk(a.dom, f);
                   walk(a.cod, f);
                 },
                 [&](const types::Product& p) {
                   for (const auto& x : p.factors) walk(x, f);
                 },
                 [&](const types::Forall& q) { walk(q.body, f); },
                 [&](const types::Exists& q) { walk(q.body, f); },
                 [&](const types::Guard& g) {
                   walk(g.lhs, f);
                   walk(g.rhs, f);
                   walk(g.body, f);
                 },
                 [&](const types::Rec& r) { walk(r.body, f); },
             },
             t.node().alt);
}

template <class T>
bool contains_node(const TypeExpr& t) {
  bool found = false;
  walk(t, [&](const TypeExpr& s) {
    if (s.is<T>()) found = true;
    return !found;
  });
  return found;
}

inline bool contains_guard(const TypeExpr& t) { return contains_node<types::Guard>(t); }
inline bool contains_rec(const TypeExpr& t) { return contains_node<types::Rec>(t); }

// Free variables in order of first occurrence, left to right.
inline std::vector<std::string> free_vars_in_order(const TypeExpr& t) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  std::vector<std::string> bound;
  auto go = [&](auto&& self, const TypeExpr& e) -> void {
    auto binder = [&](const std::string& b, const TypeExpr& body) {
      bound.push_back(b);
      self(self, body);
      bound.pop_back();
    };
    std::visit(overloaded{
                   [&](const types::Var& v) {
                     if (std::find(bound.begin(), bound.end(), v.name) != bound.end()) return;
                     if (seen.insert(v.name).second) out.push_back(v.name);
                   },
                   [](const types::Base&) {},
                   [&](const types::Constr& c) {
                     for (const auto& a : c.args) self(self, a);
                   },
                   [&](const types::Arrow& a) {
                     self(self, a.dom);
                     self(self, a.cod);
                   },
                   [&](const types::Product& p) {
                     for (const auto& f : p.factors) self(self, f);
                   },
                   [&](const types::Forall& q) { binder(q.binder, q.body); },
                   [&](const types::Exists& q) { binder(q.binder, q.body); },
                   [&](const types::Guard& g) {
                     self(self, g.lhs);
                     self(self, g.rhs);
                     self(self, g.body);
                   },
                   [&](const types::Rec& r) { binder(r.binder, r.body); },
               },
               e.node().alt);
  };
  go(go, t);
  return out;
}

// Canonical spelling: bound variables become de Bruijn levels, so two
// expressions are alpha-equivalent iff their canonical strings are equal.
inline std::string canonical(const TypeExpr& t) {
  std::map<std::string, std::vector<std::size_t>> bound;
  std::size_t depth = 0;
  std::string out;
  auto go = [&](auto&& self, const TypeExpr& e) -> void {
    auto binder = [&](char tag, const std::string& name, const TypeExpr& body) {
      out += tag;
      out += '#';
      out += std::to_string(depth);
      out += '.';
      bound[name].push_back(depth++);
      self(self, body);
      --depth;
      bound[name].pop_back();
    };
    std::visit(overloaded{
                   [&](const types::Var& v) {
                     auto it = bound.find(v.name);
                     if (it != bound.end() && !it->second.empty()) {
                       out += '#';
                       out += std::to_string(it->second.back());
                     } else {
                       out += '\'';
                       out += v.name;
                     }
                   },
                   [&](const types::Base& b) { out += to_string(b.which); },
                   [&](const types::Constr& c) {
                     out += c.head;
                     out += '(';
                     for (std::size_t i = 0; i < c.args.size(); ++i) {
                       if (i) out += ',';
                       self(self, c.args[i]);
                     }
                     out += ')';
                   },
                   [&](const types::Arrow& a) {
                     out += '(';
                     self(self, a.dom);
                     out += "->";
                     self(self, a.cod);
                     out += ')';
                   },
                   [&](const types::Product& p) {
                     out += '(';
                     for (std::size_t i = 0; i < p.factors.size(); ++i) {
                       if (i) out += '*';
                       self(self, p.factors[i]);
                     }
                     out += ')';
                   },
                   [&](const types::Forall& q) { binder('A', q.binder, q.body); },
                   [&](const types::Exists& q) { binder('E', q.binder, q.body); },
                   [&](const types::Guard& g) {
                     out += '[';
                     self(self, g.lhs);
                     out += '=';
                     self(self, g.rhs);
                     out += ']';
                     self(self, g.body);
                   },
                   [&](const types::Rec& r) { binder('R', r.binder, r.body); },
               },
               e.node().alt);
  };
  go(go, t);
  return out;
}

inline bool alpha_equal(const TypeExpr& a, const TypeExpr& b) {
  return a.id() == b.id() || canonical(a) == canonical(b);
}

struct AlphaLess {
  bool operator()(const TypeExpr& a, const TypeExpr& b) const { return canonical(a) < canonical(b); }
};

inline std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  if (!used.contains(base)) return base;
  for (std::size_t k = 1;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (!used.contains(candidate)) return candidate;
  }
}

using Substitution = std::map<std::string, TypeExpr>;

// Capture-avoiding substitution of free variables.
inline TypeExpr substitute(const TypeExpr& t, const Substitution& s) {
  if (s.empty()) return t;
  bool touches = false;
  for (const auto& [name, _] : s) {
    if (t.free_vars().contains(name)) {
      touches = true;
      break;
    }
  }
  if (!touches) return t;

  auto under_binder = [&](const std::string& binder, const TypeExpr& body,
                          auto&& rebuild) -> TypeExpr {
    Substitution inner = s;
    inner.erase(binder);
    std::set<std::string> incoming;
    for (const auto& [name, repl] : inner) {
      if (body.free_vars().contains(name))
        incoming.insert(repl.free_vars().begin(), repl.free_vars().end());
    }
    std::string b = binder;
    if (incoming.contains(binder)) {
      std::set<std::string> used = incoming;
      used.insert(body.free_vars().begin(), body.free_vars().end());
      b = fresh_name(binder, used);
      inner.insert_or_assign(binder, tvar(b));
    }
    return rebuild(b, substitute(body, inner));
  };

  return match<TypeExpr>(
      t,
      [&](const types::Var& v) {
        auto it = s.find(v.name);
        return it == s.end() ? t : it->second;
      },
      [&](const types::Base&) { return t; },
      [&](const types::Constr& c) {
        std::vector<TypeExpr> args;
        args.reserve(c.args.size());
        for (const auto& a : c.args) args.push_back(substitute(a, s));
        return tconstr(c.head, std::move(args));
      },
      [&](const types::Arrow& a) { return tarrow(substitute(a.dom, s), substitute(a.cod, s)); },
      [&](const types::Product& p) {
        std::vector<TypeExpr> fs;
        fs.reserve(p.factors.size());
        for (const auto& f : p.factors) fs.push_back(substitute(f, s));
        return tproduct(std::move(fs));
      },
      [&](const types::Forall& q) {
        return under_binder(q.binder, q.body,
                            [](std::string b, TypeExpr body) { return tforall(std::move(b), std::move(body)); });
      },
      [&](const types::Exists& q) {
        return under_binder(q.binder, q.body,
                            [](std::string b, TypeExpr body) { return texists(std::move(b), std::move(body)); });
      },
      [&](const types::Guard& g) {
        return tguard(substitute(g.lhs, s), substitute(g.rhs, s), substitute(g.body, s));
      },
      [&](const types::Rec& r) {
        return under_binder(r.binder, r.body,
                            [](std::string b, TypeExpr body) { return trec(std::move(b), std::move(body)); });
      });
}

// Renames binders so that every binder is distinct from every other binder,
// from the free variables of `t`, and from `avoid`.
inline TypeExpr freshen_binders(const TypeExpr& t, const std::set<std::string>& avoid = {}) {
  std::set<std::string> used = avoid;
  used.insert(t.free_vars().begin(), t.free_vars().end());
  auto go = [&](auto&& self, const TypeExpr& e, const std::map<std::string, std::string>& ren) -> TypeExpr {
    auto binder = [&](const std::string& b, const TypeExpr& body, auto&& rebuild) {
      std::string nb = fresh_name(b, used);
      used.insert(nb);
      auto inner = ren;
      inner[b] = nb;
      return rebuild(nb, self(self, body, inner));
    };
    return match<TypeExpr>(
        e,
        [&](const types::Var& v) {
          auto it = ren.find(v.name);
          return (it == ren.end() || it->second == v.name) ? e : tvar(it->second);
        },
        [&](const types::Base&) { return e; },
        [&](const types::Constr& c) {
          std::vector<TypeExpr> args;
          for (const auto& a : c.args) args.push_back(self(self, a, ren));
          return tconstr(c.head, std::move(args));
        },
        [&](const types::Arrow& a) { return tarrow(self(self, a.dom, ren), self(self, a.cod, ren)); },
        [&](const types::Product& p) {
          std::vector<TypeExpr> fs;
          for (const auto& f : p.factors) fs.push_back(self(self, f, ren));
          return tproduct(std::move(fs));
        },
        [&](const types::Forall& q) {
          return binder(q.binder, q.body, [](std::string b, TypeExpr body) { return tforall(b, body); });
        },
        [&](const types::Exists& q) {
          return binder(q.binder, q.body, [](std::string b, TypeExpr body) { return texists(b, body); });
        },
        [&](const types::Guard& g) {
          return tguard(self(self, g.lhs, ren), self(self, g.rhs, ren), self(self, g.body, ren));
        },
        [&](const types::Rec& r) {
          return binder(r.binder, r.body, [](std::string b, TypeExpr body) { return trec(b, body); });
        });
  };
  return go(go, t, {});
}

// Reflexive-transitive syntactic sub-components. Quantifier bodies only
// contribute sub-components that do not mention the bound variable; a
// recursive type is opaque and contributes only itself.
inline std::vector<TypeExpr> subcomponents(const TypeExpr& t) {
  std::vector<TypeExpr> out;
  std::set<std::string> seen;
  auto add = [&](const TypeExpr& s) {
    if (seen.insert(canonical(s)).second) out.push_back(s);
  };
  auto go = [&](auto&& self, const TypeExpr& e) -> std::vector<TypeExpr> {
    std::vector<TypeExpr> acc{e};
    auto extend = [&](const std::vector<TypeExpr>& more) { acc.insert(acc.end(), more.begin(), more.end()); };
    std::visit(overloaded{
                   [](const types::Var&) {},
                   [](const types::Base&) {},
                   [&](const types::Constr& c) {
                     for (const auto& a : c.args) extend(self(self, a));
                   },
                   [&](const types::Arrow& a) {
                     extend(self(self, a.dom));
                     extend(self(self, a.cod));
                   },
                   [&](const types::Product& p) {
                     for (const auto& f : p.factors) extend(self(self, f));
                   },
                   [&](const types::Forall& q) {
                     for (const auto& s : self(self, q.body))
                       if (!mentions(s, q.binder)) acc.push_back(s);
                   },
                   [&](const types::Exists& q) {
                     for (const auto& s : self(self, q.body))
                       if (!mentions(s, q.binder)) acc.push_back(s);
                   },
                   [&](const types::Guard& g) {
                     extend(self(self, g.rhs));
                     extend(self(self, g.body));
                   },
                   [](const types::Rec&) {},
               },
               e.node().alt);
    return acc;
  };
  for (const auto& s : go(go, t)) add(s);
  return out;
}

// --- Printing --------------------------------------------------------------

struct PrintOptions {
  // Print generated anonymous variables (names starting with '_') as `_`.
  bool anonymous_as_underscore = true;
};

inline std::string tyvar_to_string(const std::string& name, const PrintOptions& opts = {}) {
  if (opts.anonymous_as_underscore && !name.empty() && name.front() == '_') return "_";
  return "'" + name;
}

namespace detail {

// Precedence: 0 = binders/as, 1 = arrow, 2 = product, 3 = application.
inline void print_type(std::string& out, const TypeExpr& t, int ctx, const PrintOptions& opts) {
  auto open = [&](bool wrap) {
    if (wrap) out += '(';
  };
  auto close = [&](bool wrap) {
    if (wrap) out += ')';
  };
  std::visit(
      overloaded{
          [&](const types::Var& v) { out += tyvar_to_string(v.name, opts); },
          [&](const types::Base& b) { out += to_string(b.which); },
          [&](const types::Constr& c) {
            if (c.args.size() == 1) {
              print_type(out, c.args[0], 3, opts);
              out += ' ';
            } else if (c.args.size() > 1) {
              out += '(';
              for (std::size_t i = 0; i < c.args.size(); ++i) {
                if (i) out += ", ";
                print_type(out, c.args[i], 0, opts);
              }
              out += ") ";
            }
            out += c.head;
          },
          [&](const types::Arrow& a) {
            bool wrap = ctx > 1;
            open(wrap);
            print_type(out, a.dom, 2, opts);
            out += " -> ";
            print_type(out, a.cod, 1, opts);
            close(wrap);
          },
          [&](const types::Product& p) {
            bool wrap = ctx > 2;
            open(wrap);
            for (std::size_t i = 0; i < p.factors.size(); ++i) {
              if (i) out += " * ";
              print_type(out, p.factors[i], 3, opts);
            }
            close(wrap);
          },
          [&](const types::Forall& q) {
            bool wrap = ctx > 0;
            open(wrap);
            out += "forall " + tyvar_to_string(q.binder, opts);
            const TypeExpr* body = &q.body;
            while (auto inner = body->as<types::Forall>()) {
              out += " " + tyvar_to_string(inner->binder, opts);
              body = &inner->body;
            }
            out += ". ";
            print_type(out, *body, 0, opts);
            close(wrap);
          },
          [&](const types::Exists& q) {
            bool wrap = ctx > 0;
            open(wrap);
            out += "exists " + tyvar_to_string(q.binder, opts);
            const TypeExpr* body = &q.body;
            while (auto inner = body->as<types::Exists>()) {
              out += " " + tyvar_to_string(inner->binder, opts);
              body = &inner->body;
            }
            out += ". ";
            print_type(out, *body, 0, opts);
            close(wrap);
          },
          [&](const types::Guard& g) {
            bool wrap = ctx > 0;
            open(wrap);
            print_type(out, g.body, 1, opts);
            out += " with (";
            print_type(out, g.lhs, 0, opts);
            out += " = ";
            print_type(out, g.rhs, 0, opts);
            out += ")";
            close(wrap);
          },
          [&](const types::Rec& r) {
            bool wrap = ctx > 0;
            open(wrap);
            print_type(out, r.body, 1, opts);
            out += " as " + tyvar_to_string(r.binder, opts);
            close(wrap);
          },
      },
      t.node().alt);
}

}  // namespace detail

inline std::string to_string(const TypeExpr& t, const PrintOptions& opts = {}) {
  std::string out;
  detail::print_type(out, t, 0, opts);
  return out;
}

}  // namespace sepcheck
