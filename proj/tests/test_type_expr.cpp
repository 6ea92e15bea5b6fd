#include <gtest/gtest.h>

#include <algorithm>

#include "sepcheck/surface.hpp"
#include "sepcheck/type_expr.hpp"
#include "support/generators.hpp"

using namespace sepcheck;
using sepcheck::testing::Rng;
using sepcheck::testing::TypeGen;

namespace {

bool has_component(const std::vector<TypeExpr>& cs, const TypeExpr& t) {
  return std::any_of(cs.begin(), cs.end(), [&](const TypeExpr& c) { return alpha_equal(c, t); });
}

// Free variables recomputed by a plain walk, against the cached set.
std::set<std::string> naive_free(const TypeExpr& t) {
  return match<std::set<std::string>>(
      t, [](const types::Var& v) { return std::set<std::string>{v.name}; },
      [](const types::Base&) { return std::set<std::string>{}; },
      [](const types::Constr& c) {
        std::set<std::string> s;
        for (const auto& a : c.args) s.merge(naive_free(a));
        return s;
      },
      [](const types::Arrow& a) {
        auto s = naive_free(a.dom);
        s.merge(naive_free(a.cod));
        return s;
      },
      [](const types::Product& p) {
        std::set<std::string> s;
        for (const auto& f : p.factors) s.merge(naive_free(f));
        return s;
      },
      [](const types::Forall& q) {
        auto s = naive_free(q.body);
        s.erase(q.binder);
        return s;
      },
      [](const types::Exists& q) {
        auto s = naive_free(q.body);
        s.erase(q.binder);
        return s;
      },
      [](const types::Guard& g) {
        auto s = naive_free(g.lhs);
        s.merge(naive_free(g.rhs));
        s.merge(naive_free(g.body));
        return s;
      },
      [](const types::Rec& r) {
        auto s = naive_free(r.body);
        s.erase(r.binder);
        return s;
      });
}

std::vector<std::string> binders(const TypeExpr& t) {
  std::vector<std::string> out;
  walk(t, [&](const TypeExpr& e) {
    if (auto q = e.as<types::Forall>()) out.push_back(q->binder);
    if (auto q = e.as<types::Exists>()) out.push_back(q->binder);
    if (auto r = e.as<types::Rec>()) out.push_back(r->binder);
    return true;
  });
  return out;
}

}  // namespace

TEST(TypeExpr, ProductNeedsTwoFactors) { EXPECT_ANY_THROW(tproduct({tint()})); }

TEST(TypeExpr, RecDropsUnusedBinder) { EXPECT_TRUE(trec("a", tint()).is<types::Base>()); }

TEST(TypeExpr, FreeVariables) {
  TypeExpr t = tarrow(tvar("a"), texists("b", tproduct({tvar("b"), tvar("c")})));
  EXPECT_EQ(t.free_vars(), (std::set<std::string>{"a", "c"}));
  EXPECT_EQ(free_vars_in_order(tproduct({tvar("z"), tvar("a"), tvar("z")})), (std::vector<std::string>{"z", "a"}));
}

TEST(TypeExpr, CanonicalIsAlphaInvariant) {
  EXPECT_TRUE(alpha_equal(tforall("a", tvar("a")), tforall("b", tvar("b"))));
  EXPECT_FALSE(alpha_equal(tforall("a", tvar("a")), tforall("a", tvar("c"))));
  EXPECT_FALSE(alpha_equal(tvar("a"), tvar("b")));
  EXPECT_TRUE(alpha_equal(trec("x", tarrow(tint(), tvar("x"))), trec("y", tarrow(tint(), tvar("y")))));
}

TEST(TypeExpr, SubstitutionAvoidsCapture) {
  // (forall b. a -> b)[a := b]
  TypeExpr t = tforall("b", tarrow(tvar("a"), tvar("b")));
  TypeExpr r = substitute(t, {{"a", tvar("b")}});
  EXPECT_EQ(r.free_vars(), (std::set<std::string>{"b"}));
  EXPECT_TRUE(alpha_equal(r, tforall("z", tarrow(tvar("b"), tvar("z")))));
}

TEST(TypeExpr, SubstitutionRespectsShadowing) {
  TypeExpr t = tproduct({tvar("a"), texists("a", tvar("a"))});
  TypeExpr r = substitute(t, {{"a", tint()}});
  EXPECT_TRUE(alpha_equal(r, tproduct({tint(), texists("a", tvar("a"))})));
}

TEST(TypeExpr, SubcomponentsOfArrow) {
  TypeExpr t = tarrow(tvar("a"), tproduct({tint(), tvar("b")}));
  auto cs = subcomponents(t);
  EXPECT_EQ(cs.size(), 5u);
  EXPECT_TRUE(has_component(cs, t));
  EXPECT_TRUE(has_component(cs, tvar("a")));
  EXPECT_TRUE(has_component(cs, tint()));
}

TEST(TypeExpr, SubcomponentsRespectBinders) {
  TypeExpr t = texists("b", tproduct({tvar("b"), tvar("a")}));
  auto cs = subcomponents(t);
  EXPECT_TRUE(has_component(cs, t));
  EXPECT_TRUE(has_component(cs, tvar("a")));
  EXPECT_FALSE(has_component(cs, tvar("b")));
  EXPECT_EQ(cs.size(), 2u);
}

TEST(TypeExpr, SubcomponentsOfRecAreOpaque) {
  TypeExpr t = trec("b", tarrow(tvar("a"), tvar("b")));
  EXPECT_EQ(subcomponents(t).size(), 1u);
}

TEST(TypeExpr, Printing) {
  EXPECT_EQ(to_string(tarrow(tarrow(tvar("a"), tvar("b")), tvar("c"))), "('a -> 'b) -> 'c");
  EXPECT_EQ(to_string(tconstr("t", {tint(), tvar("a")})), "(int, 'a) t");
  EXPECT_EQ(to_string(tconstr("list", {tproduct({tint(), tfloat()})})), "(int * float) list");
  EXPECT_EQ(to_string(trec("b", tarrow(tvar("a"), tvar("b")))), "'a -> 'b as 'b");
  EXPECT_EQ(to_string(tvar("_0")), "_");
  EXPECT_EQ(to_string(tvar("_0"), {false}), "'_0");
}

TEST(TypeExprProperty, CachedFreeVariablesAreExact) {
  Rng rng(11);
  TypeGen gen(rng, sepcheck::testing::small_ctors(), {4, true, true});
  for (int i = 0; i < 300; ++i) {
    TypeExpr t = gen.gen({"a", "b", "c"});
    EXPECT_EQ(t.free_vars(), naive_free(t)) << to_string(t);
  }
}

TEST(TypeExprProperty, FreshenKeepsMeaningAndSeparatesBinders) {
  Rng rng(12);
  TypeGen gen(rng, sepcheck::testing::small_ctors(), {4, true, true});
  for (int i = 0; i < 300; ++i) {
    TypeExpr t = gen.gen({"a", "b"});
    TypeExpr f = freshen_binders(t, {"q0"});
    EXPECT_TRUE(alpha_equal(t, f)) << to_string(t);
    auto bs = binders(f);
    std::set<std::string> unique(bs.begin(), bs.end());
    EXPECT_EQ(unique.size(), bs.size());
    EXPECT_FALSE(unique.contains("q0"));
    for (const auto& v : f.free_vars()) EXPECT_FALSE(unique.contains(v));
  }
}

TEST(TypeExprProperty, SubstitutionCommutesWithFreeVariables) {
  Rng rng(13);
  TypeGen gen(rng, sepcheck::testing::small_ctors(), {3, true, false});
  for (int i = 0; i < 300; ++i) {
    TypeExpr t = gen.gen({"a", "b"});
    TypeExpr repl = gen.gen({"q0", "c"});
    TypeExpr r = substitute(t, {{"a", repl}});
    std::set<std::string> expected = t.free_vars();
    if (expected.erase("a")) expected.insert(repl.free_vars().begin(), repl.free_vars().end());
    EXPECT_EQ(r.free_vars(), expected) << to_string(t) << " [a := " << to_string(repl) << "]";
  }
}

TEST(TypeExprProperty, PrintParseRoundTrip) {
  Rng rng(14);
  TypeGen gen(rng, sepcheck::testing::small_ctors(), {4, true, true});
  for (int i = 0; i < 300; ++i) {
    TypeExpr t = gen.gen({"a", "b", "c"});
    std::string text = to_string(t);
    TypeExpr back = parse_type(text);
    EXPECT_TRUE(alpha_equal(t, back)) << text << " reparsed as " << to_string(back);
  }
}
