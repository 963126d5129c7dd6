#include "oracles.hpp"
#include "qliar/builders.hpp"
#include "qliar/logic.hpp"

#include <gtest/gtest.h>

using namespace qliar;

namespace {

PossibilisticModel hardy_support() {
  const auto h = hardy_realization();
  return support_of(realize(h.realization, h.scenario));
}

// The three forbidden Hardy pairs, checked on (A_c, A_d, B_c, B_d) with
// outcome indices 0 = {0,+}, 1 = {1,-}.
std::vector<GlobalAssignment> hardy_sections_by_hand() {
  std::vector<GlobalAssignment> out;
  for (std::size_t ac = 0; ac < 2; ++ac)
    for (std::size_t ad = 0; ad < 2; ++ad)
      for (std::size_t bc = 0; bc < 2; ++bc)
        for (std::size_t bd = 0; bd < 2; ++bd) {
          if (ad == 1 && bc == 0) continue;
          if (ac == 0 && bc == 1) continue;
          if (ac == 1 && bd == 1) continue;
          out.push_back({ac, ad, bc, bd});
        }
  return out;
}

}  // namespace

TEST(GlobalSections, HardyMatchesForbiddenPairs) {
  const auto p = hardy_support();
  const auto expected = hardy_sections_by_hand();
  EXPECT_EQ(expected.size(), 5u);
  EXPECT_EQ(global_sections(p), expected);
  EXPECT_EQ(oracle::sections(p), expected);
}

TEST(GlobalSections, FullSupportIsEverything) {
  const Scenario sc("two", {{"A", {"0", "1"}}, {"B", {"0", "1", "2"}}}, {{{"A"}}, {{"B"}}});
  EXPECT_EQ(global_sections(PossibilisticModel(sc, {{true, true}, {true, true, true}})).size(), 6u);
}

TEST(GlobalSections, TooLargeThrows) {
  std::vector<Observable> obs;
  std::vector<Context> ctx;
  std::vector<std::vector<bool>> sup;
  for (int i = 0; i < 25; ++i) {
    obs.push_back({"X" + std::to_string(i), {"0", "1"}});
    ctx.push_back({{"X" + std::to_string(i)}});
    sup.push_back({true, true});
  }
  EXPECT_THROW(global_sections(PossibilisticModel(Scenario("big", obs, ctx), sup)), std::length_error);
}

TEST(Extends, HardySeeds) {
  const auto p = hardy_support();
  EXPECT_FALSE(extends_to_global(p, 3, 3));  // (-,-)
  EXPECT_TRUE(extends_to_global(p, 3, 0));   // (+,+)
  EXPECT_EQ(non_extendable(p), (std::vector<LocalEvent>{{3, 3}}));
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(hardy_support()), Classification::LogicallyContextual);
  EXPECT_EQ(classify(cycle_model(3, Parity::Odd)), Classification::StronglyContextual);
  EXPECT_EQ(classify(cycle_model(4, Parity::Even)), Classification::GloballyExtendable);
  EXPECT_EQ(classification_from_string(to_string(Classification::LogicallyContextual)), Classification::LogicallyContextual);
  EXPECT_FALSE(classification_from_string("nonsense"));
}

TEST(Forces, VacuousWhenPremiseAbsent) {
  const auto p = hardy_support();
  // Context 1 (A_c, B_c): B_c=1 forces A_c=1.
  EXPECT_TRUE(forces(p, 1, 2, 1, 0, 1));
  EXPECT_FALSE(forces(p, 1, 2, 0, 0, 1));
}

TEST(LiarCycles, HardyExactChain) {
  const auto p = hardy_support();
  const auto cyc = liar_cycles(p, {3, 3});
  ASSERT_TRUE(cyc);
  const std::vector<ImplicationStep> expected{
      {"A_d", "-", "B_c", "1", 0},
      {"B_c", "1", "A_c", "1", 1},
      {"A_c", "1", "B_d", "+", 2},
  };
  EXPECT_EQ(cyc->steps, expected);
  EXPECT_EQ(cyc->contradiction_observable, "B_d");
  EXPECT_EQ(cyc->held_value, "-");
  EXPECT_EQ(cyc->derived_value, "+");
  EXPECT_TRUE(cyc->against_seed);
  EXPECT_EQ(cyc->length(), 4u);
  EXPECT_TRUE(verify(p, *cyc));
}

TEST(LiarCycles, ExtendableSeedHasNone) { EXPECT_FALSE(liar_cycles(hardy_support(), {3, 0})); }

TEST(LiarCycles, ImpossibleSeedThrows) { EXPECT_THROW(liar_cycles(hardy_support(), {1, 1}), std::invalid_argument); }

TEST(LiarCycles, VerifyRejectsTamperedCycle) {
  const auto p = hardy_support();
  auto cyc = *liar_cycles(p, {3, 3});
  cyc.steps[1].conclusion_value = "0";
  EXPECT_FALSE(verify(p, cyc));
}

TEST(CycleModel, OddAndEven) {
  for (int n = 3; n <= 5; ++n) {
    const auto odd = cycle_model(n, Parity::Odd);
    const auto even = cycle_model(n, Parity::Even);
    EXPECT_EQ(odd.scenario().contexts().size(), static_cast<std::size_t>(n));
    EXPECT_TRUE(global_sections(odd).empty());
    EXPECT_EQ(global_sections(even).size(), 2u);
    EXPECT_EQ(oracle::sections(even).size(), 2u);
    const auto cyc = liar_cycles(odd, {0, 0});
    ASSERT_TRUE(cyc);
    EXPECT_EQ(cyc->length(), static_cast<std::size_t>(n));
    EXPECT_TRUE(verify(odd, *cyc));
  }
  EXPECT_THROW(cycle_model(2, Parity::Odd), std::invalid_argument);
}

TEST(CycleModel, ClosingEdgeIsUnequal) {
  const auto p = cycle_model(3, Parity::Odd);
  EXPECT_EQ(p.support(2), (std::vector<bool>{false, true, true, false}));
  EXPECT_EQ(p.support(0), (std::vector<bool>{true, false, false, true}));
}

TEST(FormatAssignment, Hardy) {
  const auto p = hardy_support();
  EXPECT_EQ(format_assignment(p.scenario(), {1, 0, 1, 0}), "A_c=1 A_d=+ B_c=1 B_d=+");
}

TEST(LiarCycles, UnconditionalStepsCloseTheGap) {
  // S1 is 1 in context (S1,S2) and 0 in context (S5,S1) whatever the seed is.
  std::vector<Observable> obs;
  std::vector<Context> ctx;
  for (int i = 1; i <= 5; ++i) obs.push_back({"S" + std::to_string(i), {"0", "1"}});
  for (int i = 1; i <= 5; ++i) ctx.push_back({{"S" + std::to_string(i), "S" + std::to_string(i % 5 + 1)}});
  const PossibilisticModel p(Scenario("ring", obs, ctx), {{false, false, false, true},
                                                          {true, true, true, true},
                                                          {true, false, true, true},
                                                          {false, false, true, true},
                                                          {false, false, true, false}});
  EXPECT_FALSE(extends_to_global(p, 2, 3));
  const auto cyc = liar_cycles(p, {2, 3});
  ASSERT_TRUE(cyc);
  EXPECT_FALSE(cyc->against_seed);
  EXPECT_EQ(cyc->contradiction_observable, "S1");
  EXPECT_TRUE(cyc->steps.front().premise_observable.empty());
  EXPECT_TRUE(verify(p, *cyc));
  EXPECT_TRUE(certain(p, 0, 0, 1));
  EXPECT_FALSE(certain(p, 1, 1, 0));
}
