#include <gtest/gtest.h>

#include "sepcheck/context.hpp"
#include "support/derivations.hpp"

using namespace sepcheck;
using sepcheck::testing::all_contexts;

TEST(ModeContext, AbsentIsInd) {
  ModeContext g{{"a", Mode::Sep}};
  EXPECT_EQ(g.get("b"), Mode::Ind);
  EXPECT_THROW(g.at("b"), PreconditionError);
  g.raise("a", Mode::Ind);
  EXPECT_EQ(g.get("a"), Mode::Sep);
  g.raise("a", Mode::Deepsep);
  EXPECT_EQ(g.get("a"), Mode::Deepsep);
}

TEST(ModeContext, OverRestrictsAndFills) {
  ModeContext g{{"a", Mode::Sep}, {"z", Mode::Deepsep}};
  ModeContext h = g.over(std::vector<std::string>{"a", "b"});
  EXPECT_EQ(h, (ModeContext{{"a", Mode::Sep}, {"b", Mode::Ind}}));
}

TEST(ModeContext, LeExamples) {
  EXPECT_TRUE(context_le({{"a", Mode::Ind}, {"b", Mode::Sep}}, {{"a", Mode::Sep}, {"b", Mode::Sep}}));
  EXPECT_FALSE(context_le({{"a", Mode::Deepsep}}, {{"a", Mode::Sep}}));
  EXPECT_THROW(context_le({{"a", Mode::Ind}}, {{"b", Mode::Ind}}), PreconditionError);
}

TEST(ModeContext, JoinAndBelow) {
  ModeContext j = context_join({{"a", Mode::Sep}}, {{"a", Mode::Ind}, {"b", Mode::Deepsep}});
  EXPECT_EQ(j, (ModeContext{{"a", Mode::Sep}, {"b", Mode::Deepsep}}));
  EXPECT_TRUE(context_below({{"a", Mode::Ind}}, {}));
  EXPECT_FALSE(context_below({{"a", Mode::Sep}}, {}));
}

TEST(ModeContext, PartialOrderLawsOnTwoVariables) {
  auto all = all_contexts({"a", "b"});
  ASSERT_EQ(all.size(), 9u);
  for (const auto& x : all) {
    EXPECT_TRUE(context_le(x, x));
    for (const auto& y : all) {
      if (context_le(x, y) && context_le(y, x)) {
        EXPECT_EQ(x, y);
      }
      for (const auto& z : all)
        if (context_le(x, y) && context_le(y, z)) {
          EXPECT_TRUE(context_le(x, z));
        }
    }
  }
}

namespace {

std::vector<ModeSignature> two_param_signatures() {
  std::vector<ModeSignature> out;
  for (const auto& g : all_contexts({"a", "b"}))
    out.push_back(ModeSignature{{"t", {{"a", g.get("a")}, {"b", g.get("b")}}}});
  return out;
}

}  // namespace

TEST(ModeSignature, LeIsContravariant) {
  ModeSignature strict{{"t", {{"a", Mode::Deepsep}}}};
  ModeSignature lax{{"t", {{"a", Mode::Ind}}}};
  EXPECT_TRUE(signature_le(strict, lax));
  EXPECT_FALSE(signature_le(lax, strict));
}

TEST(ModeSignature, PartialOrderLaws) {
  auto all = two_param_signatures();
  for (const auto& x : all) {
    EXPECT_TRUE(signature_le(x, x));
    for (const auto& y : all) {
      if (signature_le(x, y) && signature_le(y, x)) {
        EXPECT_EQ(x, y);
      }
      for (const auto& z : all)
        if (signature_le(x, y) && signature_le(y, z)) {
          EXPECT_TRUE(signature_le(x, z));
        }
    }
  }
}

TEST(ModeSignature, MismatchedDomainsAreRejected) {
  EXPECT_THROW(signature_le({{"t", {}}}, {{"u", {}}}), PreconditionError);
  EXPECT_THROW(signature_le({{"t", {{"a", Mode::Ind}}}}, {{"t", {}}}), PreconditionError);
}

TEST(ModeSignature, MergeOverrides) {
  ModeSignature s{{"t", {{"a", Mode::Ind}}}};
  s.merge({{"t", {{"a", Mode::Sep}}}, {"u", {}}});
  EXPECT_EQ(s.at("t")[0].mode, Mode::Sep);
  EXPECT_TRUE(s.contains("u"));
  EXPECT_THROW(s.at("v"), PreconditionError);
}
