#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sepcheck/blocks.hpp"
#include "sepcheck/datatype.hpp"
#include "sepcheck/oracle.hpp"
#include "sepcheck/type_expr.hpp"

namespace sepcheck {

// The older check: expand the unboxed argument type through known
// definitions until its representation is evident.
struct LegacyVerdict {
  bool accepted = true;
  std::string reason;
};

namespace detail {

// First-order unification over closed-world constructors; binds variables
// only, preferring to bind those in `prefer`.
class Unifier {
 public:
  explicit Unifier(std::set<std::string> prefer) : prefer_(std::move(prefer)) {}

  enum class Outcome { Ok, Clash, Unsupported };

  Outcome unify(const TypeExpr& a0, const TypeExpr& b0) {
    TypeExpr a = resolve(a0), b = resolve(b0);
    auto va = a.as<types::Var>(), vb = b.as<types::Var>();
    if (va && vb && va->name == vb->name) return Outcome::Ok;
    if (va && vb) {
      if (prefer_.contains(va->name) || !prefer_.contains(vb->name)) return bind(va->name, b);
      return bind(vb->name, a);
    }
    if (va) return bind(va->name, b);
    if (vb) return bind(vb->name, a);
    if (auto x = a.as<types::Base>()) {
      auto y = b.as<types::Base>();
      return y && y->which == x->which ? Outcome::Ok : shape_clash(b);
    }
    if (auto x = a.as<types::Constr>()) {
      auto y = b.as<types::Constr>();
      if (!y || y->head != x->head || y->args.size() != x->args.size()) return shape_clash(b);
      return all(x->args, y->args);
    }
    if (auto x = a.as<types::Arrow>()) {
      auto y = b.as<types::Arrow>();
      if (!y) return shape_clash(b);
      return all({x->dom, x->cod}, {y->dom, y->cod});
    }
    if (auto x = a.as<types::Product>()) {
      auto y = b.as<types::Product>();
      if (!y || y->factors.size() != x->factors.size()) return shape_clash(b);
      return all(x->factors, y->factors);
    }
    return alpha_equal(apply(a), apply(b)) ? Outcome::Ok : Outcome::Unsupported;
  }

  TypeExpr apply(const TypeExpr& t) const {
    Substitution s;
    for (const auto& v : t.free_vars()) {
      auto it = bindings_.find(v);
      if (it != bindings_.end()) s.emplace(v, apply(it->second));
    }
    return substitute(t, s);
  }

 private:
  std::set<std::string> prefer_;
  std::map<std::string, TypeExpr> bindings_;

  TypeExpr resolve(TypeExpr t) const {
    while (auto v = t.as<types::Var>()) {
      auto it = bindings_.find(v->name);
      if (it == bindings_.end()) break;
      t = it->second;
    }
    return t;
  }

  static bool opaque(const TypeExpr& t) {
    return t.is<types::Forall>() || t.is<types::Exists>() || t.is<types::Guard>() || t.is<types::Rec>();
  }

  static Outcome shape_clash(const TypeExpr& other) { return opaque(other) ? Outcome::Unsupported : Outcome::Clash; }

  Outcome bind(const std::string& v, const TypeExpr& t) {
    if (apply(t).free_vars().contains(v)) return Outcome::Clash;  // occurs check
    bindings_.emplace(v, t);
    return Outcome::Ok;
  }

  Outcome all(const std::vector<TypeExpr>& xs, const std::vector<TypeExpr>& ys) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      Outcome o = unify(xs[i], ys[i]);
      if (o != Outcome::Ok) return o;
    }
    return Outcome::Ok;
  }
};

struct Unpacked {
  std::vector<std::string> existentials;
  std::vector<std::pair<TypeExpr, TypeExpr>> equations;
  TypeExpr core;
};

inline Unpacked unpack(const TypeExpr& t0) {
  Unpacked u{{}, {}, t0};
  while (auto q = u.core.as<types::Exists>()) {
    u.existentials.push_back(q->binder);
    TypeExpr next = q->body;
    u.core = next;
  }
  while (auto g = u.core.as<types::Guard>()) {
    u.equations.emplace_back(g->lhs, g->rhs);
    TypeExpr next = g->body;
    u.core = next;
  }
  return u;
}

// Existentials of a constructor that its return type does not determine.
inline std::set<std::string> hidden_existentials(const Unpacked& u) {
  std::set<std::string> out;
  for (const auto& b : u.existentials) {
    bool determined = false;
    for (const auto& [_, rhs] : u.equations) determined = determined || mentions(rhs, b);
    if (!determined) out.insert(b);
  }
  return out;
}

class LegacyChecker {
 public:
  LegacyChecker(const std::map<std::string, Declaration>& defs, int fuel) : defs_(defs), fuel_(fuel) {}

  LegacyVerdict check(const TypeExpr& t, std::set<std::string> hidden, std::set<std::string> used) {
    used.insert(t.free_vars().begin(), t.free_vars().end());
    return match<LegacyVerdict>(
        t,
        [&](const types::Var& v) -> LegacyVerdict {
          if (hidden.contains(v.name)) return {false, "existential variable " + tyvar_to_string(v.name, {false})};
          return {};
        },
        [&](const types::Base&) -> LegacyVerdict { return {}; },
        [&](const types::Arrow&) -> LegacyVerdict { return {}; },
        [&](const types::Product&) -> LegacyVerdict { return {}; },
        [&](const types::Forall& q) {
          hidden.erase(q.binder);
          used.insert(q.binder);
          return check(q.body, hidden, used);
        },
        [&](const types::Exists& q) {
          hidden.insert(q.binder);
          used.insert(q.binder);
          return check(q.body, hidden, used);
        },
        [&](const types::Guard& g) { return check(g.body, hidden, used); },
        [&](const types::Rec&) -> LegacyVerdict { return {false, "legacy-unsupported: 'as' type"}; },
        [&](const types::Constr& c) -> LegacyVerdict {
          auto it = defs_.find(c.head);
          if (it == defs_.end()) return {false, "definition of '" + c.head + "' not available"};
          if (is_boxed(it->second.body)) return {};
          if (fuel_ <= 0) return {false, "expansion limit reached at '" + c.head + "'"};
          --fuel_;
          TypeExpr body = freshen_binders(unboxed_body(instantiate(it->second, c.args)).type, used);
          Unpacked u = unpack(body);
          std::set<std::string> inner(u.existentials.begin(), u.existentials.end());
          Unifier unifier(inner);
          for (const auto& [lhs, rhs] : u.equations) {
            switch (unifier.unify(lhs, rhs)) {
              case Unifier::Outcome::Ok:
                break;
              case Unifier::Outcome::Clash:
                return {};  // the equations cannot hold: the type is empty
              case Unifier::Outcome::Unsupported:
                return {false, "legacy-unsupported: equation on quantified types"};
            }
          }
          std::set<std::string> next_hidden;
          for (const auto& h : hidden) {
            TypeExpr image = unifier.apply(tvar(h));
            if (auto v = image.as<types::Var>()) next_hidden.insert(v->name);
          }
          for (const auto& h : hidden_existentials(u)) {
            TypeExpr image = unifier.apply(tvar(h));
            if (auto v = image.as<types::Var>()) next_hidden.insert(v->name);
          }
          for (const auto& b : u.existentials) used.insert(b);
          return check(unifier.apply(u.core), next_hidden, used);
        });
  }

 private:
  const std::map<std::string, Declaration>& defs_;
  int fuel_;
};

}  // namespace detail

inline constexpr int default_legacy_fuel = 100;

// `defs` holds only declarations completed before `decl`'s block.
inline LegacyVerdict legacy_check_decl(const std::map<std::string, Declaration>& defs, const Declaration& decl,
                                       int fuel = default_legacy_fuel) {
  if (is_boxed(decl.body)) return {};
  std::set<std::string> params(decl.params.begin(), decl.params.end());
  detail::Unpacked u = detail::unpack(freshen_binders(unboxed_body(decl.body).type, params));
  std::set<std::string> used = params;
  used.insert(u.existentials.begin(), u.existentials.end());
  detail::LegacyChecker checker(defs, fuel);
  return checker.check(u.core, detail::hidden_existentials(u), used);
}

enum class DiffClass { Agreement, NewAcceptsLegacyRejects, LegacyAcceptsNewRejects };

inline const char* to_string(DiffClass c) {
  switch (c) {
    case DiffClass::Agreement:
      return "agreement";
    case DiffClass::NewAcceptsLegacyRejects:
      return "new-accepts-legacy-rejects";
    case DiffClass::LegacyAcceptsNewRejects:
      return "legacy-accepts-new-rejects";
  }
  return "?";
}

struct DiffEntry {
  std::string name;
  std::size_t block = 0;
  LegacyVerdict legacy;
  bool new_accepted = false;
  std::optional<DiagnosticKind> new_rejection;
  DiffClass classification = DiffClass::Agreement;
};

inline std::vector<DiffEntry> diff_report(const std::vector<Block>& blocks, int fuel = default_legacy_fuel) {
  std::vector<BlockResult> results = check_program(blocks);
  std::vector<DiffEntry> out;
  std::map<std::string, Declaration> defs;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (const auto& d : blocks[b]) {
      DiffEntry e;
      e.name = d.name;
      e.block = b;
      e.legacy = legacy_check_decl(defs, d, fuel);
      e.new_accepted = results[b].accepted;
      if (!e.new_accepted) e.new_rejection = results[b].diagnostic->kind;
      if (e.new_accepted && !e.legacy.accepted) {
        e.classification = DiffClass::NewAcceptsLegacyRejects;
      } else if (!e.new_accepted && e.legacy.accepted) {
        e.classification = DiffClass::LegacyAcceptsNewRejects;
      }
      out.push_back(std::move(e));
    }
    for (const auto& d : blocks[b]) defs.emplace(d.name, d);
  }
  return out;
}

}  // namespace sepcheck
