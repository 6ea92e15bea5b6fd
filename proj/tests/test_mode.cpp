#include <gtest/gtest.h>

#include "sepcheck/mode.hpp"

using namespace sepcheck;

TEST(Mode, Order) {
  EXPECT_LT(Mode::Ind, Mode::Sep);
  EXPECT_LT(Mode::Sep, Mode::Deepsep);
  EXPECT_EQ(max(Mode::Ind, Mode::Deepsep), Mode::Deepsep);
  EXPECT_EQ(min(Mode::Sep, Mode::Deepsep), Mode::Sep);
}

TEST(Mode, ComposeTable) {
  EXPECT_EQ(mode_compose(Mode::Sep, Mode::Deepsep), Mode::Deepsep);
  EXPECT_EQ(mode_compose(Mode::Ind, Mode::Deepsep), Mode::Ind);
  EXPECT_EQ(mode_compose(Mode::Deepsep, Mode::Ind), Mode::Deepsep);
  EXPECT_EQ(mode_compose(Mode::Sep, Mode::Ind), Mode::Ind);
}

TEST(Mode, ComposeAssociative) {
  for (Mode a : all_modes)
    for (Mode b : all_modes)
      for (Mode c : all_modes)
        EXPECT_EQ(mode_compose(a, mode_compose(b, c)), mode_compose(mode_compose(a, b), c));
}

TEST(Mode, SepIsIdentity) {
  for (Mode m : all_modes) {
    EXPECT_EQ(mode_compose(Mode::Sep, m), m);
    EXPECT_EQ(mode_compose(m, Mode::Sep), m);
  }
}

TEST(Mode, IndAndDeepsepAbsorbOnTheLeft) {
  for (Mode m : all_modes) {
    EXPECT_EQ(mode_compose(Mode::Ind, m), Mode::Ind);
    EXPECT_EQ(mode_compose(Mode::Deepsep, m), Mode::Deepsep);
  }
}

TEST(Mode, ComposeMonotone) {
  for (Mode a : all_modes)
    for (Mode b : all_modes)
      for (Mode c : all_modes) {
        if (a <= b) {
          EXPECT_LE(mode_compose(a, c), mode_compose(b, c));
          EXPECT_LE(mode_compose(c, a), mode_compose(c, b));
        }
      }
}

TEST(Mode, NamesRoundTrip) {
  for (Mode m : all_modes) EXPECT_EQ(parse_mode(to_string(m)), m);
  EXPECT_EQ(to_string(Mode::Deepsep), "Deepsep");
  EXPECT_FALSE(parse_mode("sep").has_value());
}
