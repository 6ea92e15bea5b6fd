#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "sepcheck/legacy.hpp"
#include "sepcheck/surface.hpp"
#include "support/generators.hpp"

using namespace sepcheck;
using namespace sepcheck::testing;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(SEPCHECK_SAMPLES_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<DiffEntry> diff_text(const std::string& src, int fuel = default_legacy_fuel) {
  return diff_report(parse_program(src).blocks, fuel);
}

const DiffEntry& entry(const std::vector<DiffEntry>& es, const std::string& name) {
  for (const auto& e : es)
    if (e.name == name) return e;
  throw std::runtime_error("no entry " + name);
}

}  // namespace

TEST(Legacy, AnyIsRejected) {
  auto es = diff_text(slurp("any.ml"));
  EXPECT_FALSE(entry(es, "any").legacy.accepted);
  EXPECT_EQ(entry(es, "any").classification, DiffClass::Agreement);
}

TEST(Legacy, SameBlockDefinitionIsUnavailable) {
  auto es = diff_text(slurp("tree_node.ml"));
  const DiffEntry& node = entry(es, "node");
  EXPECT_FALSE(node.legacy.accepted);
  EXPECT_NE(node.legacy.reason.find("tree"), std::string::npos);
  EXPECT_EQ(node.classification, DiffClass::NewAcceptsLegacyRejects);
  int divergent = 0;
  for (const auto& e : es) divergent += e.classification != DiffClass::Agreement;
  EXPECT_EQ(divergent, 1);
}

TEST(Legacy, ExpansionAcceptsBothStrangeEqUses) {
  auto es = diff_text(slurp("strange_eq.ml"));
  EXPECT_TRUE(entry(es, "t1").legacy.accepted);
  EXPECT_TRUE(entry(es, "t2").legacy.accepted);
  int new_rejects = !entry(es, "t1").new_accepted + !entry(es, "t2").new_accepted;
  EXPECT_EQ(new_rejects, 1);
  EXPECT_EQ(entry(es, "t2").classification, DiffClass::LegacyAcceptsNewRejects);
}

TEST(Legacy, BoxedDeclarationsAgree) {
  for (const auto& e : diff_text("type 'a t = A of 'a | B of int\ntype r = { x : int; mutable y : float }"))
    EXPECT_EQ(e.classification, DiffClass::Agreement);
}

TEST(Legacy, ImpossibleEquationMeansEmptyType) {
  auto es = diff_text(
      "type 'a g = G : 'b -> int g [@@unboxed]\n"
      "type h = H : float g -> h [@@unboxed]");
  EXPECT_TRUE(entry(es, "h").legacy.accepted);
}

TEST(Legacy, CyclicTypesAreUnsupported) {
  auto es = diff_text(slurp("cyclic.ml"));
  EXPECT_FALSE(entry(es, "stream").legacy.accepted);
  EXPECT_NE(entry(es, "stream").legacy.reason.find("legacy-unsupported"), std::string::npos);
}

TEST(Legacy, FuelBoundsExpansion) {
  std::string src =
      "type 'a s0 = S0 of 'a [@@unboxed]\n"
      "type 'a s1 = S1 of 'a s0 [@@unboxed]\n"
      "type 'a s2 = S2 of 'a s1 [@@unboxed]\n"
      "type s3 = S3 of float s2 [@@unboxed]\n";
  EXPECT_TRUE(entry(diff_text(src, 3), "s3").legacy.accepted);
  EXPECT_FALSE(entry(diff_text(src, 2), "s3").legacy.accepted);
  EXPECT_FALSE(entry(diff_text(src, 0), "s3").legacy.accepted);
}

TEST(LegacyProperty, TerminatesForEveryFuel) {
  Rng rng(51);
  const std::vector<CtorInfo> env{{"k0", 0}, {"k1", 1}};
  std::map<std::string, Declaration> defs;
  defs.emplace("k0", parse_program("type k0 = K0 of int").blocks[0][0]);
  defs.emplace("k1", Declaration{"k1", {"a"}, UnboxedVariant{{"K1", tconstr("k1", {tconstr("k1", {tvar("a")})})}}, {}});
  TypeGen gen(rng, env, {3, true, false});
  for (int fuel : {0, 1, 5, 50}) {
    for (int i = 0; i < 50; ++i) {
      Declaration d{"t", {"a"}, UnboxedVariant{{"T", gen.gen({"a"})}}, {}};
      LegacyVerdict v = legacy_check_decl(defs, d, fuel);
      if (!v.accepted) {
        EXPECT_FALSE(v.reason.empty());
      }
    }
  }
}

TEST(LegacyProperty, AgreesOnSingleNonRecursiveDeclarations) {
  Rng rng(52);
  TypeGen gen(rng, {}, {3, true, false});
  for (int i = 0; i < 300; ++i) {
    std::vector<std::string> params = var_names(static_cast<std::size_t>(rng.below(3)), "a");
    TypeExpr body = gen.gen(params);
    Declaration d{"t", params, UnboxedVariant{{"T", body}}, {}};
    std::vector<DiffEntry> es = diff_report({{d}});
    ASSERT_EQ(es.size(), 1u);
    EXPECT_EQ(es[0].classification, DiffClass::Agreement)
        << to_string(body) << " legacy: " << es[0].legacy.reason;
  }
}
