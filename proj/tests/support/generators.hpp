#pragma once

// Seeded random generators for types, contexts, signatures and blocks.

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sepcheck/blocks.hpp"
#include "sepcheck/context.hpp"
#include "sepcheck/datatype.hpp"
#include "sepcheck/type_expr.hpp"

namespace sepcheck::testing {

class Rng {
 public:
  explicit Rng(unsigned seed) : gen_(seed) {}

  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(gen_); }
  Mode mode() { return all_modes[static_cast<std::size_t>(below(3))]; }

  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(below(static_cast<int>(xs.size())))];
  }

 private:
  std::mt19937 gen_;
};

struct CtorInfo {
  std::string name;
  std::size_t arity;
};

struct TypeGenOptions {
  int max_depth = 3;
  bool quantifiers = true;
  bool recursion = false;
};

class TypeGen {
 public:
  TypeGen(Rng& rng, std::vector<CtorInfo> ctors, TypeGenOptions opts = {})
      : rng_(rng), ctors_(std::move(ctors)), opts_(opts) {}

  TypeExpr gen(const std::vector<std::string>& scope) { return gen(scope, opts_.max_depth); }

  TypeExpr gen(std::vector<std::string> scope, int depth) {
    if (depth <= 0 || rng_.chance(0.25)) return leaf(scope);
    switch (rng_.below(8)) {
      case 0:
      case 1:
        if (!ctors_.empty()) {
          const CtorInfo& c = rng_.pick(ctors_);
          std::vector<TypeExpr> args;
          for (std::size_t i = 0; i < c.arity; ++i) args.push_back(gen(scope, depth - 1));
          return tconstr(c.name, args);
        }
        return leaf(scope);
      case 2:
        return tarrow(gen(scope, depth - 1), gen(scope, depth - 1));
      case 3: {
        std::vector<TypeExpr> fs;
        int n = 2 + rng_.below(2);
        for (int i = 0; i < n; ++i) fs.push_back(gen(scope, depth - 1));
        return tproduct(fs);
      }
      case 4:
      case 5: {
        if (!opts_.quantifiers) return leaf(scope);
        std::string b = "q" + std::to_string(counter_++);
        scope.push_back(b);
        TypeExpr body = gen(scope, depth - 1);
        return rng_.chance(0.5) ? tforall(b, body) : texists(b, body);
      }
      case 6: {
        if (!opts_.recursion) return leaf(scope);
        std::string b = "r" + std::to_string(counter_++);
        scope.push_back(b);
        return trec(b, gen(scope, depth - 1));
      }
      default:
        return leaf(scope);
    }
  }

 private:
  Rng& rng_;
  std::vector<CtorInfo> ctors_;
  TypeGenOptions opts_;
  int counter_ = 0;

  TypeExpr leaf(const std::vector<std::string>& scope) {
    if (!scope.empty() && rng_.chance(0.7)) return tvar(rng_.pick(scope));
    switch (rng_.below(3)) {
      case 0:
        return tint();
      case 1:
        return tfloat();
      default:
        return tbool();
    }
  }
};

inline std::vector<std::string> var_names(std::size_t n, const std::string& prefix = "v") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline ModeSignature random_signature(Rng& rng, const std::vector<CtorInfo>& ctors) {
  ModeSignature sig;
  for (const auto& c : ctors) {
    std::vector<ParamMode> modes;
    for (std::size_t i = 0; i < c.arity; ++i) modes.push_back({"p" + std::to_string(i), rng.mode()});
    sig.set(c.name, modes);
  }
  return sig;
}

inline ModeContext random_context(Rng& rng, const std::set<std::string>& vars) {
  ModeContext g;
  for (const auto& v : vars) g.set(v, rng.mode());
  return g;
}

// The fixed constructors used by random types in the checker properties.
inline std::vector<CtorInfo> small_ctors() { return {{"k0", 0}, {"k1", 1}, {"k2", 2}}; }

struct BlockGenOptions {
  int max_decls = 4;
  int max_params = 3;
  bool guards = false;
  bool recursion = false;
  bool quantifiers = true;
};

// A random block whose bodies may mention `env` constructors and each other.
inline Block random_block(Rng& rng, const std::vector<CtorInfo>& env, const std::string& prefix,
                          BlockGenOptions opts = {}) {
  int n = 1 + rng.below(opts.max_decls);
  std::vector<CtorInfo> names = env;
  std::vector<std::vector<std::string>> params(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::size_t arity = static_cast<std::size_t>(rng.below(opts.max_params + 1));
    for (std::size_t k = 0; k < arity; ++k) params[static_cast<std::size_t>(i)].push_back("a" + std::to_string(k));
    names.push_back({prefix + std::to_string(i), arity});
  }
  TypeGen tg(rng, names, {2, opts.quantifiers, opts.recursion});
  Block block;
  for (int i = 0; i < n; ++i) {
    const auto& ps = params[static_cast<std::size_t>(i)];
    Declaration d{prefix + std::to_string(i), ps, Synonym{tint()}, {}};
    auto body = [&]() { return tg.gen(ps); };
    switch (rng.below(5)) {
      case 0: {
        BoxedVariant v;
        int k = 1 + rng.below(2);
        for (int j = 0; j < k; ++j) v.ctors.push_back({"C" + std::to_string(j), body()});
        d.body = v;
        break;
      }
      case 1:
        if (opts.guards && !ps.empty() && rng.chance(0.5)) {
          // exists e0 e1. (a_i = kappa) => tau
          std::vector<std::string> ex{"e0", "e1"};
          std::vector<std::string> inner_scope = ps;
          inner_scope.insert(inner_scope.end(), ex.begin(), ex.end());
          TypeExpr core = tg.gen(inner_scope);
          std::size_t target = static_cast<std::size_t>(rng.below(static_cast<int>(ps.size())));
          TypeExpr kappa = rng.chance(0.4) ? tvar(rng.pick(ex)) : tg.gen(ex);
          TypeExpr guarded = tguard(tvar(ps[target]), kappa, core);
          d.body = UnboxedVariant{{"G", texists(ex, guarded)}};
        } else {
          d.body = UnboxedVariant{{"U", body()}};
        }
        break;
      case 2: {
        BoxedRecord r;
        r.fields.push_back({"f0", false, body()});
        if (rng.chance(0.5)) r.fields.push_back({"f1", true, body()});
        d.body = r;
        break;
      }
      case 3:
        d.body = UnboxedRecord{{"f", false, body()}};
        break;
      default:
        d.body = Synonym{body()};
        break;
    }
    block.push_back(std::move(d));
  }
  return block;
}

}  // namespace sepcheck::testing
