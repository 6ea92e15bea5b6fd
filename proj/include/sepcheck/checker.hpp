#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sepcheck/context.hpp"
#include "sepcheck/datatype.hpp"
#include "sepcheck/mode.hpp"
#include "sepcheck/type_expr.hpp"

namespace sepcheck {

enum class DiagnosticKind { UnguardedExistential, UnsafeCycle, UnknownConstructor, Arity, Internal };

inline const char* to_string(DiagnosticKind k) {
  switch (k) {
    case DiagnosticKind::UnguardedExistential:
      return "unguarded-existential";
    case DiagnosticKind::UnsafeCycle:
      return "unsafe-cycle";
    case DiagnosticKind::UnknownConstructor:
      return "unknown-constructor";
    case DiagnosticKind::Arity:
      return "arity";
    case DiagnosticKind::Internal:
      return "internal";
  }
  return "?";
}

// Sigma; Gamma |- subject : mode
struct Judgment {
  ModeSignature signature;
  ModeContext context;
  TypeExpr subject;
  Mode mode;
};

struct TraceStep {
  std::string rule;
  std::string path;
  TypeExpr subject;
  Mode mode;
};

struct Diagnostic {
  DiagnosticKind kind;
  std::string path;
  Judgment judgment;
  std::vector<TraceStep> trace;
  std::string message;
};

class CheckError : public std::runtime_error {
 public:
  explicit CheckError(Diagnostic d)
      : std::runtime_error(std::string(to_string(d.kind)) + " at " + d.path + ": " + d.message),
        diag_(std::move(d)) {}
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

// Coinductive hypotheses, keyed by the alpha-invariant spelling of the subject.
struct HypothesisSets {
  std::set<std::pair<std::string, Mode>> safe;
  std::set<std::pair<std::string, Mode>> unsafe;

  bool safe_covers(const std::string& key, Mode m) const {
    for (Mode n : all_modes)
      if (n >= m && safe.contains({key, n})) return true;
    return false;
  }
  bool unsafe_has(const std::string& key, Mode m) const { return unsafe.contains({key, m}); }
};

// One node of an inference derivation, with the context it demands.
struct Derivation {
  std::string rule;
  std::optional<TypeExpr> subject;
  Mode mode = Mode::Ind;
  ModeContext demand;
  std::vector<Derivation> premises;
  std::string note;
};

namespace detail {

class Inference {
 public:
  Inference(const ModeSignature& sig, std::string root_path) : sig_(sig), root_(std::move(root_path)) {}

  ModeContext run(const TypeExpr& t, Mode m, const HypothesisSets& hyps, Derivation* out) {
    return infer(t, m, hyps, root_, out);
  }

 private:
  const ModeSignature& sig_;
  std::string root_;
  std::map<std::string, TypeExpr> rec_binders_;
  std::vector<TraceStep> stack_;

  [[noreturn]] void fail(DiagnosticKind kind, const std::string& path, const TypeExpr& subject, Mode m,
                         ModeContext ctx, std::string message) {
    ModeContext full = ctx.over(subject.free_vars());
    throw CheckError(Diagnostic{kind, path, Judgment{sig_, full, subject, m}, stack_, std::move(message)});
  }

  struct Frame {
    std::vector<TraceStep>& stack;
    Frame(std::vector<TraceStep>& s, TraceStep step) : stack(s) { stack.push_back(std::move(step)); }
    ~Frame() { stack.pop_back(); }
  };

  ModeContext infer(TypeExpr t, Mode m, const HypothesisSets& hyps, const std::string& path, Derivation* out) {
    if (auto v = t.as<types::Var>()) {
      if (auto it = rec_binders_.find(v->name); it != rec_binders_.end()) t = it->second;
    }
    auto record = [&](std::string rule, ModeContext demand, std::string note = {}) {
      if (out) {
        out->rule = std::move(rule);
        out->subject = t;
        out->mode = m;
        out->demand = demand;
        out->note = std::move(note);
      }
      return demand;
    };
    auto premise = [&]() -> Derivation* {
      if (!out) return nullptr;
      out->premises.push_back(Derivation{"", t, m, {}, {}, {}});
      return &out->premises.back();
    };

    if (m == Mode::Ind) return record("ind", {});

    const std::string key = canonical(t);
    if (hyps.safe_covers(key, m)) return record("hyp-safe", {}, "assumed under a computational constructor");

    if (hyps.unsafe_has(key, m)) {
      Frame f(stack_, {"hyp-unsafe", path, t, m});
      fail(DiagnosticKind::UnsafeCycle, path, t, m, {},
           "judgment " + to_string(t) + " : " + std::string(to_string(m)) +
               " re-entered without crossing a computational type constructor");
    }

    return match<ModeContext>(
        t,
        [&](const types::Var& v) {
          ModeContext c;
          c.set(v.name, m);
          return record("var", c);
        },
        [&](const types::Base&) { return record("builtin", {}); },
        [&](const types::Constr& c) {
          Frame f(stack_, {"constr", path, t, m});
          const auto* modes = sig_.find(c.head);
          if (!modes)
            fail(DiagnosticKind::UnknownConstructor, path, t, m, {}, "no signature for '" + c.head + "'");
          if (modes->size() != c.args.size())
            fail(DiagnosticKind::Arity, path, t, m, {},
                 "'" + c.head + "' expects " + std::to_string(modes->size()) + " argument(s), got " +
                     std::to_string(c.args.size()));
          HypothesisSets inner = hyps;
          inner.unsafe.insert({key, m});
          ModeContext acc;
          for (std::size_t i = 0; i < c.args.size(); ++i) {
            Mode need = mode_compose(m, (*modes)[i].mode);
            acc = context_join(acc, infer(c.args[i], need, inner, path + "." + std::to_string(i + 1), premise()));
          }
          return record("constr", acc);
        },
        [&](const types::Arrow& a) {
          Frame f(stack_, {"arrow", path, t, m});
          HypothesisSets inner = promote(hyps, key, m);
          Mode need = mode_compose(m, Mode::Ind);
          ModeContext acc = infer(a.dom, need, inner, path + ".dom", premise());
          acc = context_join(acc, infer(a.cod, need, inner, path + ".cod", premise()));
          return record("arrow", acc);
        },
        [&](const types::Product& p) {
          Frame f(stack_, {"product", path, t, m});
          HypothesisSets inner = promote(hyps, key, m);
          Mode need = mode_compose(m, Mode::Ind);
          ModeContext acc;
          for (std::size_t i = 0; i < p.factors.size(); ++i)
            acc = context_join(acc, infer(p.factors[i], need, inner, path + "." + std::to_string(i + 1), premise()));
          return record("product", acc);
        },
        [&](const types::Forall& q) {
          Frame f(stack_, {"forall", path, t, m});
          ModeContext body = infer(q.body, m, hyps, path + ".body", premise());
          Mode witness = body.get(q.binder);
          body.erase(q.binder);
          return record("forall", body, tyvar_to_string(q.binder, {false}) + " : " + std::string(to_string(witness)));
        },
        [&](const types::Exists& q) {
          Frame f(stack_, {"exists", path, t, m});
          ModeContext body = infer(q.body, m, hyps, path + ".body", premise());
          if (body.get(q.binder) > Mode::Ind)
            fail(DiagnosticKind::UnguardedExistential, path, t, m, body,
                 "existential " + tyvar_to_string(q.binder, {false}) + " is required at " +
                     std::string(to_string(body.get(q.binder))));
          body.erase(q.binder);
          return record("exists", body);
        },
        [&](const types::Guard&) -> ModeContext {
          Frame f(stack_, {"guard", path, t, m});
          fail(DiagnosticKind::Internal, path, t, m, {}, "equality guard outside a GADT constructor prefix");
        },
        [&](const types::Rec& r) {
          Frame f(stack_, {"as", path, t, m});
          HypothesisSets inner = hyps;
          inner.unsafe.insert({key, m});
          rec_binders_.insert_or_assign(r.binder, t);
          ModeContext body = infer(r.body, m, inner, path + ".body", premise());
          body.erase(r.binder);
          return record("as", body);
        });
  }

  static HypothesisSets promote(const HypothesisSets& hyps, const std::string& key, Mode m) {
    HypothesisSets inner;
    inner.safe = hyps.safe;
    inner.safe.insert(hyps.unsafe.begin(), hyps.unsafe.end());
    inner.safe.insert({key, m});
    return inner;
  }
};

}  // namespace detail

// Minimal context (over the free variables of t) under which t has mode m.
// Throws CheckError when no context works.
inline ModeContext infer_context(const ModeSignature& sig, const TypeExpr& t, Mode m,
                                 const HypothesisSets& hyps = {}, Derivation* derivation = nullptr,
                                 const std::string& path = "type") {
  TypeExpr fresh = freshen_binders(t);
  detail::Inference engine(sig, path);
  ModeContext sparse = engine.run(fresh, m, hyps, derivation);
  return sparse.over(t.free_vars());
}

inline bool derivable(const ModeSignature& sig, const ModeContext& g, const TypeExpr& t, Mode m) {
  try {
    return context_below(infer_context(sig, t, m), g);
  } catch (const CheckError&) {
    return false;
  }
}

// Largest mode at which t holds in g.
inline Mode max_mode(const ModeSignature& sig, const ModeContext& g, const TypeExpr& t) {
  for (Mode m : {Mode::Deepsep, Mode::Sep}) {
    if (derivable(sig, g, t, m)) return m;
  }
  return Mode::Ind;
}

enum class DischargeCase { Existential = 1, AllInd = 2, Strengthen = 3 };

struct DischargeStep {
  std::string param;
  TypeExpr rhs;
  DischargeCase which;
  ModeContext before;
  ModeContext after;
};

inline DischargeCase discharge_case(const ModeContext& g, const TypeExpr& kappa,
                                    const std::set<std::string>& existentials) {
  if (auto v = kappa.as<types::Var>(); v && existentials.contains(v->name)) return DischargeCase::Existential;
  for (const auto& x : kappa.free_vars())
    if (g.get(x) != Mode::Ind) return DischargeCase::Strengthen;
  return DischargeCase::AllInd;
}

// Accounts for the equation alpha = kappa in g. The parameter keeps the larger
// of its own mode and the existential's, so that every context that satisfies
// the equation and extends the result also extends g.
inline ModeContext discharge_equation(const ModeContext& g, const std::string& alpha, const TypeExpr& kappa,
                                      const std::set<std::string>& existentials) {
  ModeContext out = g;
  switch (discharge_case(g, kappa, existentials)) {
    case DischargeCase::Existential: {
      const std::string& beta = kappa.as<types::Var>()->name;
      out.set(alpha, max(g.get(alpha), g.get(beta)));
      out.set(beta, Mode::Ind);
      break;
    }
    case DischargeCase::AllInd:
      break;
    case DischargeCase::Strengthen:
      out.set(alpha, Mode::Deepsep);
      for (const auto& x : kappa.free_vars()) out.set(x, Mode::Ind);
      break;
  }
  return out;
}

// What check_decl did for one declaration, for --explain.
struct DeclExplanation {
  std::string rule;
  std::string path;
  std::vector<std::string> existentials;
  std::vector<std::pair<std::string, TypeExpr>> guards;
  std::optional<TypeExpr> core;
  Derivation derivation;
  ModeContext initial;
  std::vector<DischargeStep> steps;
  ModeContext result;
};

namespace detail {

inline void check_constructor_refs(const ModeSignature& sig, const TypeExpr& t, const std::string& path) {
  std::visit(overloaded{
                 [](const types::Var&) {},
                 [](const types::Base&) {},
                 [&](const types::Constr& c) {
                   const auto* modes = sig.find(c.head);
                   if (!modes)
                     throw CheckError(Diagnostic{DiagnosticKind::UnknownConstructor, path,
                                                 Judgment{sig, ModeContext{}.over(t.free_vars()), t, Mode::Ind},
                                                 {{"constr", path, t, Mode::Ind}},
                                                 "no signature for '" + c.head + "'"});
                   if (modes->size() != c.args.size())
                     throw CheckError(Diagnostic{DiagnosticKind::Arity, path,
                                                 Judgment{sig, ModeContext{}.over(t.free_vars()), t, Mode::Ind},
                                                 {{"constr", path, t, Mode::Ind}},
                                                 "'" + c.head + "' expects " + std::to_string(modes->size()) +
                                                     " argument(s), got " + std::to_string(c.args.size())});
                   for (std::size_t i = 0; i < c.args.size(); ++i)
                     check_constructor_refs(sig, c.args[i], path + "." + std::to_string(i + 1));
                 },
                 [&](const types::Arrow& a) {
                   check_constructor_refs(sig, a.dom, path + ".dom");
                   check_constructor_refs(sig, a.cod, path + ".cod");
                 },
                 [&](const types::Product& p) {
                   for (std::size_t i = 0; i < p.factors.size(); ++i)
                     check_constructor_refs(sig, p.factors[i], path + "." + std::to_string(i + 1));
                 },
                 [&](const types::Forall& q) { check_constructor_refs(sig, q.body, path + ".body"); },
                 [&](const types::Exists& q) { check_constructor_refs(sig, q.body, path + ".body"); },
                 [&](const types::Guard& g) {
                   check_constructor_refs(sig, g.rhs, path + ".guard");
                   check_constructor_refs(sig, g.body, path + ".body");
                 },
                 [&](const types::Rec& r) { check_constructor_refs(sig, r.body, path + ".body"); },
             },
             t.node().alt);
}

inline const char* decl_rule(const DatatypeDecl& d) {
  return std::visit(overloaded{
                        [](const BoxedVariant&) { return "boxed-variant"; },
                        [](const UnboxedVariant&) { return "unboxed-variant"; },
                        [](const BoxedRecord&) { return "boxed-record"; },
                        [](const UnboxedRecord&) { return "unboxed-record"; },
                        [](const Synonym&) { return "synonym"; },
                    },
                    d);
}

}  // namespace detail

// Parameter requirements of one declaration under `sig`.
inline ModeContext check_decl(const ModeSignature& sig, const Declaration& decl,
                              DeclExplanation* explain = nullptr) {
  for (const auto& b : body_types(decl.body))
    detail::check_constructor_refs(sig, b.type, decl.name + "." + b.label);

  ModeContext none = ModeContext{}.over(decl.params);
  if (explain) {
    explain->rule = detail::decl_rule(decl.body);
    explain->path = decl.name;
  }
  if (is_boxed(decl.body)) {
    if (explain) explain->result = none;
    return none;
  }

  UnboxedBody ub = unboxed_body(decl.body);
  const std::string root = decl.name + "." + ub.label;
  const std::set<std::string> params(decl.params.begin(), decl.params.end());
  TypeExpr t = freshen_binders(ub.type, params);

  std::string path = root;
  std::vector<std::string> existentials;
  while (auto q = t.as<types::Exists>()) {
    existentials.push_back(q->binder);
    TypeExpr next = q->body;
    t = next;
    path += ".body";
  }
  std::vector<std::pair<std::string, TypeExpr>> guards;
  while (auto g = t.as<types::Guard>()) {
    auto lhs = g->lhs.as<types::Var>();
    bool shaped = lhs && params.contains(lhs->name);
    for (const auto& p : decl.params) shaped = shaped && !mentions(g->rhs, p);
    if (!shaped)
      throw CheckError(Diagnostic{DiagnosticKind::Internal, path,
                                  Judgment{sig, ModeContext{}.over(t.free_vars()), t, Mode::Sep},
                                  {{"guard", path, t, Mode::Sep}},
                                  "equality guard outside the GADT fragment (left side must be a parameter and "
                                  "the right side must avoid parameters)"});
    guards.emplace_back(lhs->name, g->rhs);
    TypeExpr next = g->body;
    t = next;
    path += ".body";
  }

  Derivation deriv;
  ModeContext g = infer_context(sig, t, Mode::Sep, {}, explain ? &deriv : nullptr, path);
  std::set<std::string> scope = params;
  scope.insert(existentials.begin(), existentials.end());
  g = g.over(scope);
  ModeContext initial = g;

  const std::set<std::string> ex(existentials.begin(), existentials.end());
  std::vector<DischargeStep> steps;
  for (const auto& [alpha, kappa] : guards) {
    ModeContext before = g;
    DischargeCase which = discharge_case(g, kappa, ex);
    g = discharge_equation(g, alpha, kappa, ex);
    steps.push_back({alpha, kappa, which, before, g});
  }

  if (explain) {
    explain->existentials = existentials;
    explain->guards = guards;
    explain->core = t;
    explain->derivation = deriv;
    explain->initial = initial;
    explain->steps = steps;
  }

  for (const auto& b : existentials) {
    if (g.get(b) > Mode::Ind) {
      std::vector<TraceStep> trace{{detail::decl_rule(decl.body), root, ub.type, Mode::Sep},
                                   {"exists", root, ub.type, Mode::Sep}};
      for (const auto& s : steps)
        trace.push_back({"guard", path, tguard(tvar(s.param), s.rhs, t), Mode::Sep});
      trace.push_back({"var", path, tvar(b), g.get(b)});
      throw CheckError(Diagnostic{DiagnosticKind::UnguardedExistential, root,
                                  Judgment{sig, g.over(ub.type.free_vars()), ub.type, Mode::Sep}, std::move(trace),
                                  "existential " + tyvar_to_string(b, {false}) + " is required at " +
                                      std::string(to_string(g.get(b))) + " and no equation determines it"});
    }
  }

  ModeContext result = g.over(decl.params);
  if (explain) explain->result = result;
  return result;
}

}  // namespace sepcheck
