#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "sepcheck/context.hpp"
#include "sepcheck/datatype.hpp"
#include "sepcheck/mode.hpp"
#include "sepcheck/type_expr.hpp"

namespace sepcheck {

// A finite ground value. Floats are a single marker and integers range over
// {0, 1}: separability only distinguishes float from non-float.
struct GroundValue {
  enum class Kind { Bool, Int, Float, Tuple, Function, Record, Variant };

  Kind kind = Kind::Int;
  int scalar = 0;                   // Bool / Int payload
  std::string tag;                  // Variant constructor
  std::vector<std::string> labels;  // Record labels, parallel to items
  std::vector<GroundValue> items;   // Tuple components, record fields, variant payload

  static GroundValue boolean(bool b) { return {Kind::Bool, b ? 1 : 0, {}, {}, {}}; }
  static GroundValue integer(int n) { return {Kind::Int, n, {}, {}, {}}; }
  static GroundValue floating() { return {Kind::Float, 0, {}, {}, {}}; }
  static GroundValue function() { return {Kind::Function, 0, {}, {}, {}}; }
  static GroundValue tuple(std::vector<GroundValue> xs) { return {Kind::Tuple, 0, {}, {}, std::move(xs)}; }
  static GroundValue record(std::vector<std::string> ls, std::vector<GroundValue> xs) {
    return {Kind::Record, 0, {}, std::move(ls), std::move(xs)};
  }
  static GroundValue variant(std::string t, GroundValue v) { return {Kind::Variant, 0, std::move(t), {}, {std::move(v)}}; }

  bool is_float() const { return kind == Kind::Float; }

  int depth() const {
    int d = 0;
    for (const auto& x : items) d = std::max(d, x.depth());
    return d + 1;
  }

  friend bool operator<(const GroundValue& a, const GroundValue& b) {
    return std::tie(a.kind, a.scalar, a.tag, a.labels, a.items) < std::tie(b.kind, b.scalar, b.tag, b.labels, b.items);
  }
  friend bool operator==(const GroundValue& a, const GroundValue& b) {
    return std::tie(a.kind, a.scalar, a.tag, a.labels, a.items) == std::tie(b.kind, b.scalar, b.tag, b.labels, b.items);
  }
};

inline std::string to_string(const GroundValue& v) {
  switch (v.kind) {
    case GroundValue::Kind::Bool:
      return v.scalar ? "true" : "false";
    case GroundValue::Kind::Int:
      return std::to_string(v.scalar);
    case GroundValue::Kind::Float:
      return "0.5";
    case GroundValue::Kind::Function:
      return "<fun>";
    case GroundValue::Kind::Tuple: {
      std::string out = "(";
      for (std::size_t i = 0; i < v.items.size(); ++i) {
        if (i) out += ", ";
        out += to_string(v.items[i]);
      }
      return out + ")";
    }
    case GroundValue::Kind::Record: {
      std::string out = "{";
      for (std::size_t i = 0; i < v.items.size(); ++i) {
        if (i) out += "; ";
        out += v.labels[i] + " = " + to_string(v.items[i]);
      }
      return out + "}";
    }
    case GroundValue::Kind::Variant:
      return v.tag + " " + (v.items.front().items.empty() ? to_string(v.items.front())
                                                          : "(" + to_string(v.items.front()) + ")");
  }
  return "?";
}

using GroundEnv = std::map<std::string, Declaration>;

struct Budget {
  int value_depth = 4;
  int unfold_limit = 3;
  std::vector<TypeExpr> type_pool;
  std::size_t value_cap = 512;

  static std::vector<TypeExpr> default_pool() {
    return {tint(), tfloat(), tbool(), tproduct({tint(), tfloat()}), texists("x", tvar("x"))};
  }
  static std::vector<TypeExpr> small_pool() { return {tint(), tfloat(), texists("x", tvar("x"))}; }
  static Budget standard() { return Budget{4, 3, default_pool(), 512}; }
  static Budget small() { return Budget{4, 3, small_pool(), 512}; }
};

enum class Tri { Holds, Fails, Unknown };

inline const char* to_string(Tri t) {
  switch (t) {
    case Tri::Holds:
      return "holds";
    case Tri::Fails:
      return "fails";
    case Tri::Unknown:
      return "unknown";
  }
  return "?";
}

// Values found at a type, and whether values of either class may have been
// left out because a budget ran out.
struct Enumeration {
  std::set<GroundValue> values;
  bool missing_float = false;
  bool missing_nonfloat = false;

  bool has_float() const {
    return std::any_of(values.begin(), values.end(), [](const GroundValue& v) { return v.is_float(); });
  }
  bool has_nonfloat() const {
    return std::any_of(values.begin(), values.end(), [](const GroundValue& v) { return !v.is_float(); });
  }
  bool complete() const { return !missing_float && !missing_nonfloat; }
};

// Product types flattened so that (a * b) * c and a * (b * c) compare equal.
inline TypeExpr normalize_for_equality(const TypeExpr& t) {
  return match<TypeExpr>(
      t, [&](const types::Var&) { return t; }, [&](const types::Base&) { return t; },
      [&](const types::Constr& c) {
        std::vector<TypeExpr> args;
        for (const auto& a : c.args) args.push_back(normalize_for_equality(a));
        return tconstr(c.head, args);
      },
      [&](const types::Arrow& a) { return tarrow(normalize_for_equality(a.dom), normalize_for_equality(a.cod)); },
      [&](const types::Product& p) {
        std::vector<TypeExpr> fs;
        for (const auto& f : p.factors) {
          TypeExpr n = normalize_for_equality(f);
          if (auto inner = n.as<types::Product>()) {
            fs.insert(fs.end(), inner->factors.begin(), inner->factors.end());
          } else {
            fs.push_back(n);
          }
        }
        return tproduct(fs);
      },
      [&](const types::Forall& q) { return tforall(q.binder, normalize_for_equality(q.body)); },
      [&](const types::Exists& q) { return texists(q.binder, normalize_for_equality(q.body)); },
      [&](const types::Guard& g) {
        return tguard(normalize_for_equality(g.lhs), normalize_for_equality(g.rhs), normalize_for_equality(g.body));
      },
      [&](const types::Rec& r) { return trec(r.binder, normalize_for_equality(r.body)); });
}

inline bool ground_equal(const TypeExpr& a, const TypeExpr& b) {
  return canonical(normalize_for_equality(a)) == canonical(normalize_for_equality(b));
}

// Body of `name` instantiated at `args`.
inline DatatypeDecl instantiate(const Declaration& d, const std::vector<TypeExpr>& args) {
  if (args.size() != d.params.size()) throw PreconditionError("instantiate: arity mismatch for '" + d.name + "'");
  Substitution s;
  for (std::size_t i = 0; i < args.size(); ++i) s.emplace(d.params[i], args[i]);
  return std::visit(overloaded{
                        [&](const BoxedVariant& v) -> DatatypeDecl {
                          BoxedVariant out;
                          for (const auto& c : v.ctors) out.ctors.push_back({c.name, substitute(c.arg, s)});
                          return out;
                        },
                        [&](const UnboxedVariant& v) -> DatatypeDecl {
                          return UnboxedVariant{{v.ctor.name, substitute(v.ctor.arg, s)}};
                        },
                        [&](const BoxedRecord& r) -> DatatypeDecl {
                          BoxedRecord out;
                          for (const auto& f : r.fields) out.fields.push_back({f.label, f.is_mutable, substitute(f.type, s)});
                          return out;
                        },
                        [&](const UnboxedRecord& r) -> DatatypeDecl {
                          return UnboxedRecord{{r.field.label, r.field.is_mutable, substitute(r.field.type, s)}};
                        },
                        [&](const Synonym& syn) -> DatatypeDecl { return Synonym{substitute(syn.type, s)}; },
                    },
                    d.body);
}

// Bounded model of closed types as sets of ground values.
class Oracle {
 public:
  Oracle(GroundEnv env, Budget budget) : env_(std::move(env)), budget_(std::move(budget)) {
    if (budget_.value_depth <= 0 || budget_.unfold_limit <= 0 || budget_.type_pool.empty())
      throw PreconditionError("oracle budget must be positive with a non-empty pool");
    for (const auto& p : budget_.type_pool)
      if (!is_closed(p)) throw PreconditionError("oracle pool types must be closed");
  }

  const Budget& budget() const { return budget_; }
  const GroundEnv& env() const { return env_; }

  Enumeration enumerate(const TypeExpr& t) { return enumerate(t, budget_.value_depth); }

  Enumeration enumerate(const TypeExpr& t, int depth) {
    if (!is_closed(t)) throw PreconditionError("enumerate: type is not closed: " + to_string(t));
    return enum_at(t, depth, budget_.unfold_limit);
  }

  Tri inhabits(const GroundValue& v, const TypeExpr& t) {
    if (!is_closed(t)) throw PreconditionError("inhabits: type is not closed: " + to_string(t));
    return member(v, t, budget_.unfold_limit);
  }

  Tri separable(const TypeExpr& t) {
    Enumeration e = enumerate(t);
    bool f = e.has_float(), n = e.has_nonfloat();
    if (f && n) return Tri::Fails;
    if ((f || e.missing_float) && (n || e.missing_nonfloat)) return Tri::Unknown;
    return Tri::Holds;
  }

  Tri semantic_mode(const TypeExpr& t, Mode m) {
    if (m == Mode::Ind) return Tri::Holds;
    if (m == Mode::Sep) return separable(t);
    Tri acc = Tri::Holds;
    for (const auto& s : deep_components(t)) {
      Tri r = separable(s);
      if (r == Tri::Fails) return Tri::Fails;
      if (r == Tri::Unknown) acc = Tri::Unknown;
    }
    return acc;
  }

  // Sub-components of a closed type, looking through `as` types by unfolding.
  std::vector<TypeExpr> deep_components(const TypeExpr& t) {
    std::vector<TypeExpr> out;
    std::set<std::string> seen;
    std::vector<std::pair<TypeExpr, int>> work{{t, budget_.unfold_limit}};
    while (!work.empty()) {
      auto [cur, fuel] = work.back();
      work.pop_back();
      for (const auto& s : subcomponents(cur)) {
        if (!seen.insert(canonical(s)).second) continue;
        out.push_back(s);
        if (auto r = s.as<types::Rec>(); r && fuel > 0) work.push_back({unfold(s), fuel - 1});
      }
    }
    return out;
  }

 private:
  GroundEnv env_;
  Budget budget_;
  std::map<std::tuple<std::string, int, int>, Enumeration> cache_;
  std::set<std::tuple<std::string, int, int>> in_progress_;
  int cycle_hits_ = 0;
  std::set<std::tuple<std::string, std::string, int>> member_in_progress_;

  static TypeExpr unfold(const TypeExpr& rec) {
    const auto* r = rec.as<types::Rec>();
    return substitute(r->body, {{r->binder, rec}});
  }

  const Declaration& lookup(const std::string& name) const {
    auto it = env_.find(name);
    if (it == env_.end()) throw PreconditionError("oracle: no definition for '" + name + "'");
    return it->second;
  }

  void cap(Enumeration& e) const {
    if (e.values.size() <= budget_.value_cap) return;
    auto it = e.values.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(budget_.value_cap));
    for (auto jt = it; jt != e.values.end(); ++jt) (jt->is_float() ? e.missing_float : e.missing_nonfloat) = true;
    e.values.erase(it, e.values.end());
  }

  // Cartesian product of component enumerations, built with `make`.
  template <class Make>
  Enumeration combine(const std::vector<Enumeration>& parts, Make&& make) const {
    Enumeration out;
    bool any_missing = false;
    for (const auto& p : parts) any_missing = any_missing || !p.complete();
    std::vector<std::vector<GroundValue>> lists;
    for (const auto& p : parts) lists.emplace_back(p.values.begin(), p.values.end());
    std::vector<std::size_t> idx(lists.size(), 0);
    bool empty = std::any_of(lists.begin(), lists.end(), [](const auto& l) { return l.empty(); });
    while (!empty) {
      if (out.values.size() >= budget_.value_cap) {
        out.missing_nonfloat = true;
        break;
      }
      std::vector<GroundValue> pick;
      for (std::size_t i = 0; i < lists.size(); ++i) pick.push_back(lists[i][idx[i]]);
      out.values.insert(make(std::move(pick)));
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == lists[k].size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
    if (any_missing) out.missing_nonfloat = true;
    return out;
  }

  Enumeration enum_at(const TypeExpr& t, int depth, int fuel) {
    auto key = std::make_tuple(canonical(t), depth, fuel);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    if (in_progress_.contains(key)) {
      ++cycle_hits_;
      return {};
    }
    in_progress_.insert(key);
    int hits_before = cycle_hits_;
    Enumeration e;
    try {
      e = compute(t, depth, fuel);
    } catch (...) {
      in_progress_.erase(key);
      throw;
    }
    in_progress_.erase(key);
    cap(e);
    if (cycle_hits_ == hits_before) cache_.emplace(key, e);
    return e;
  }

  Enumeration compound_missing() const {
    Enumeration e;
    e.missing_nonfloat = true;
    return e;
  }

  Enumeration datatype_values(const std::string& head, const std::vector<TypeExpr>& args, int depth, int fuel) {
    const Declaration& d = lookup(head);
    DatatypeDecl body = instantiate(d, args);
    return std::visit(
        overloaded{
            [&](const BoxedVariant& v) {
              if (depth <= 1) return compound_missing();
              Enumeration out;
              for (const auto& c : v.ctors) {
                Enumeration p = enum_at(c.arg, depth - 1, budget_.unfold_limit);
                for (const auto& x : p.values) out.values.insert(GroundValue::variant(c.name, x));
                if (!p.complete()) out.missing_nonfloat = true;
              }
              return out;
            },
            [&](const BoxedRecord& r) {
              if (depth <= 1) return compound_missing();
              std::vector<Enumeration> parts;
              std::vector<std::string> labels;
              for (const auto& f : r.fields) {
                parts.push_back(enum_at(f.type, depth - 1, budget_.unfold_limit));
                labels.push_back(f.label);
              }
              return combine(parts, [&](std::vector<GroundValue> xs) { return GroundValue::record(labels, std::move(xs)); });
            },
            [&](const auto& unboxed) {
              (void)unboxed;
              if (fuel <= 0) {
                Enumeration e;
                e.missing_float = e.missing_nonfloat = true;
                return e;
              }
              return enum_at(unboxed_body(body).type, depth, fuel - 1);
            },
        },
        body);
  }

  Enumeration compute(const TypeExpr& t, int depth, int fuel) {
    return match<Enumeration>(
        t,
        [&](const types::Var& v) -> Enumeration {
          throw PreconditionError("enumerate: free variable '" + v.name + "'");
        },
        [&](const types::Base& b) {
          Enumeration e;
          switch (b.which) {
            case Builtin::Float:
              e.values.insert(GroundValue::floating());
              break;
            case Builtin::Int:
              e.values.insert(GroundValue::integer(0));
              e.values.insert(GroundValue::integer(1));
              break;
            case Builtin::Bool:
              e.values.insert(GroundValue::boolean(false));
              e.values.insert(GroundValue::boolean(true));
              break;
          }
          return e;
        },
        [&](const types::Arrow&) {
          Enumeration e;
          e.values.insert(GroundValue::function());
          return e;
        },
        [&](const types::Product& p) {
          if (depth <= 1) return compound_missing();
          std::vector<Enumeration> parts;
          for (const auto& f : p.factors) parts.push_back(enum_at(f, depth - 1, budget_.unfold_limit));
          return combine(parts, [](std::vector<GroundValue> xs) { return GroundValue::tuple(std::move(xs)); });
        },
        [&](const types::Constr& c) { return datatype_values(c.head, c.args, depth, fuel); },
        [&](const types::Exists& q) {
          Enumeration out;
          for (const auto& p : budget_.type_pool) {
            Enumeration e = enum_at(substitute(q.body, {{q.binder, p}}), depth, fuel);
            out.values.insert(e.values.begin(), e.values.end());
            out.missing_float = out.missing_float || e.missing_float;
            out.missing_nonfloat = out.missing_nonfloat || e.missing_nonfloat;
          }
          return out;
        },
        [&](const types::Forall& q) {
          std::vector<Enumeration> parts;
          for (const auto& p : budget_.type_pool) parts.push_back(enum_at(substitute(q.body, {{q.binder, p}}), depth, fuel));
          return intersect(parts);
        },
        [&](const types::Guard& g) {
          if (!ground_equal(g.lhs, g.rhs)) return Enumeration{};
          return enum_at(g.body, depth, fuel);
        },
        [&](const types::Rec&) {
          if (fuel <= 0) {
            Enumeration e;
            e.missing_float = e.missing_nonfloat = true;
            return e;
          }
          return enum_at(unfold(t), depth, fuel - 1);
        });
  }

  static Enumeration intersect(const std::vector<Enumeration>& parts) {
    Enumeration out;
    bool definitely_no_float = false, definitely_no_nonfloat = false;
    for (const auto& p : parts) {
      if (!p.has_float() && !p.missing_float) definitely_no_float = true;
      if (!p.has_nonfloat() && !p.missing_nonfloat) definitely_no_nonfloat = true;
    }
    std::set<GroundValue> candidates;
    for (const auto& p : parts) candidates.insert(p.values.begin(), p.values.end());
    for (const auto& v : candidates) {
      bool in_all = true, unknown = false;
      for (const auto& p : parts) {
        if (p.values.contains(v)) continue;
        if (v.is_float() ? p.missing_float : p.missing_nonfloat) {
          unknown = true;
        } else {
          in_all = false;
        }
      }
      if (!in_all) continue;
      if (unknown) {
        (v.is_float() ? out.missing_float : out.missing_nonfloat) = true;
      } else {
        out.values.insert(v);
      }
    }
    bool all_missing_float = !parts.empty(), all_missing_nonfloat = !parts.empty();
    for (const auto& p : parts) {
      all_missing_float = all_missing_float && p.missing_float;
      all_missing_nonfloat = all_missing_nonfloat && p.missing_nonfloat;
    }
    out.missing_float = !definitely_no_float && (out.missing_float || all_missing_float);
    out.missing_nonfloat = !definitely_no_nonfloat && (out.missing_nonfloat || all_missing_nonfloat);
    if (definitely_no_float)
      std::erase_if(out.values, [](const GroundValue& v) { return v.is_float(); });
    if (definitely_no_nonfloat)
      std::erase_if(out.values, [](const GroundValue& v) { return !v.is_float(); });
    return out;
  }

  static Tri tri_and(Tri a, Tri b) {
    if (a == Tri::Fails || b == Tri::Fails) return Tri::Fails;
    if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
    return Tri::Holds;
  }
  static Tri tri_or(Tri a, Tri b) {
    if (a == Tri::Holds || b == Tri::Holds) return Tri::Holds;
    if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
    return Tri::Fails;
  }

  Tri member(const GroundValue& v, const TypeExpr& t, int fuel) {
    auto key = std::make_tuple(canonical(t), to_string(v), fuel);
    if (member_in_progress_.contains(key)) return Tri::Fails;
    member_in_progress_.insert(key);
    Tri r;
    try {
      r = member_step(v, t, fuel);
    } catch (...) {
      member_in_progress_.erase(key);
      throw;
    }
    member_in_progress_.erase(key);
    return r;
  }

  Tri member_step(const GroundValue& v, const TypeExpr& t, int fuel) {
    using K = GroundValue::Kind;
    auto yes = [](bool b) { return b ? Tri::Holds : Tri::Fails; };
    return match<Tri>(
        t,
        [&](const types::Var& x) -> Tri { throw PreconditionError("inhabits: free variable '" + x.name + "'"); },
        [&](const types::Base& b) {
          switch (b.which) {
            case Builtin::Float:
              return yes(v.kind == K::Float);
            case Builtin::Int:
              return yes(v.kind == K::Int);
            case Builtin::Bool:
              return yes(v.kind == K::Bool);
          }
          return Tri::Fails;
        },
        [&](const types::Arrow&) { return yes(v.kind == K::Function); },
        [&](const types::Product& p) {
          if (v.kind != K::Tuple || v.items.size() != p.factors.size()) return Tri::Fails;
          Tri acc = Tri::Holds;
          for (std::size_t i = 0; i < p.factors.size(); ++i)
            acc = tri_and(acc, member(v.items[i], p.factors[i], budget_.unfold_limit));
          return acc;
        },
        [&](const types::Exists& q) {
          Tri acc = Tri::Fails;
          for (const auto& p : budget_.type_pool) acc = tri_or(acc, member(v, substitute(q.body, {{q.binder, p}}), fuel));
          return acc;
        },
        [&](const types::Forall& q) {
          Tri acc = Tri::Holds;
          for (const auto& p : budget_.type_pool) acc = tri_and(acc, member(v, substitute(q.body, {{q.binder, p}}), fuel));
          return acc;
        },
        [&](const types::Guard& g) { return ground_equal(g.lhs, g.rhs) ? member(v, g.body, fuel) : Tri::Fails; },
        [&](const types::Rec&) { return fuel <= 0 ? Tri::Unknown : member(v, unfold(t), fuel - 1); },
        [&](const types::Constr& c) {
          DatatypeDecl body = instantiate(lookup(c.head), c.args);
          return std::visit(
              overloaded{
                  [&](const BoxedVariant& bv) {
                    if (v.kind != K::Variant) return Tri::Fails;
                    for (const auto& ctor : bv.ctors)
                      if (ctor.name == v.tag) return member(v.items.front(), ctor.arg, budget_.unfold_limit);
                    return Tri::Fails;
                  },
                  [&](const BoxedRecord& br) {
                    if (v.kind != K::Record || v.labels.size() != br.fields.size()) return Tri::Fails;
                    Tri acc = Tri::Holds;
                    for (std::size_t i = 0; i < br.fields.size(); ++i) {
                      if (v.labels[i] != br.fields[i].label) return Tri::Fails;
                      acc = tri_and(acc, member(v.items[i], br.fields[i].type, budget_.unfold_limit));
                    }
                    return acc;
                  },
                  [&](const auto&) { return fuel <= 0 ? Tri::Unknown : member(v, unboxed_body(body).type, fuel - 1); },
              },
              body);
        });
  }
};

struct Counterexample {
  std::string constructor;
  std::vector<TypeExpr> instantiation;
  GroundValue float_value;
  GroundValue nonfloat_value;
};

struct SignatureVerdict {
  Tri status = Tri::Holds;
  std::optional<Counterexample> counterexample;
  int instances_checked = 0;
  int instances_unknown = 0;
};

namespace detail {

inline void for_each_tuple(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    if (!f(idx)) return;
    std::size_t i = 0;
    while (i < n && ++idx[i] == k) idx[i++] = 0;
    if (i == n) return;
  }
}

}  // namespace detail

// Checks, within the budget, that every unboxed declaration or synonym of `sig`
// is separable at every pool instantiation that meets its parameter modes.
inline SignatureVerdict semantic_signature_check(const GroundEnv& env, const ModeSignature& sig, const Budget& budget) {
  Oracle oracle(env, budget);
  SignatureVerdict verdict;
  const auto& pool = budget.type_pool;

  std::map<std::pair<std::string, Mode>, Tri> pool_modes;
  auto pool_mode = [&](std::size_t i, Mode m) {
    auto key = std::make_pair(canonical(pool[i]), m);
    auto it = pool_modes.find(key);
    if (it == pool_modes.end()) it = pool_modes.emplace(key, oracle.semantic_mode(pool[i], m)).first;
    return it->second;
  };

  for (const auto& [name, modes] : sig) {
    auto it = env.find(name);
    if (it == env.end()) throw PreconditionError("semantic_signature_check: no definition for '" + name + "'");
    const Declaration& d = it->second;
    if (is_boxed(d.body)) continue;
    detail::for_each_tuple(modes.size(), pool.size(), [&](const std::vector<std::size_t>& idx) {
      for (std::size_t i = 0; i < idx.size(); ++i)
        if (pool_mode(idx[i], modes[i].mode) != Tri::Holds) return true;
      std::vector<TypeExpr> inst;
      for (auto i : idx) inst.push_back(pool[i]);
      ++verdict.instances_checked;
      Enumeration e = oracle.enumerate(tconstr(name, inst));
      if (e.has_float() && e.has_nonfloat()) {
        Counterexample cx{name, inst, GroundValue::floating(), GroundValue::integer(0)};
        for (const auto& v : e.values) {
          if (!v.is_float()) {
            cx.nonfloat_value = v;
            break;
          }
        }
        verdict.status = Tri::Fails;
        verdict.counterexample = std::move(cx);
        return false;
      }
      if ((e.has_float() || e.missing_float) && (e.has_nonfloat() || e.missing_nonfloat)) {
        ++verdict.instances_unknown;
        verdict.status = Tri::Unknown;
      }
      return true;
    });
    if (verdict.status == Tri::Fails) break;
  }
  return verdict;
}

// Every declaration of the program, by name.
inline GroundEnv ground_env(const std::vector<Block>& blocks) {
  GroundEnv env;
  for (const auto& b : blocks)
    for (const auto& d : b) env.emplace(d.name, d);
  return env;
}

}  // namespace sepcheck
