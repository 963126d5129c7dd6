#include "qliar/builders.hpp"
#include "qliar/scenario.hpp"

#include <gtest/gtest.h>

using namespace qliar;

namespace {

Scenario one_bit(const std::string& name = "bit") { return Scenario(name, {{"A", {"0", "1"}}}, {{{"A"}}}); }

std::vector<Probability> row(std::initializer_list<double> ps) {
  std::vector<Probability> out;
  for (double p : ps) out.push_back({p, std::nullopt});
  return out;
}

Probability exact(long p, long q) { return Probability::from_rational(Rational(p, q)); }

}  // namespace

TEST(Scenario, ValidatesInvariants) {
  EXPECT_THROW(Scenario("s", {{"A", {"0", "0"}}}, {{{"A"}}}), std::invalid_argument);
  EXPECT_THROW(Scenario("s", {{"A", {"0"}}}, {{{"A"}}}), std::invalid_argument);
  EXPECT_THROW(Scenario("s", {{"", {"0", "1"}}}, {{{""}}}), std::invalid_argument);
  EXPECT_THROW(Scenario("s", {{"A", {"0", "1"}}}, {{{"B"}}}), std::invalid_argument);
  EXPECT_THROW(Scenario("s", {{"A", {"0", "1"}}, {"B", {"0", "1"}}}, {{{"A"}}}), std::invalid_argument);
  EXPECT_THROW(Scenario("s", {{"A", {"0", "1"}}}, {{{"A"}}, {{"A"}}}), std::invalid_argument);
  EXPECT_THROW(Scenario("s", {{"A", {"0", "1"}}}, {{{"A", "A"}}}), std::invalid_argument);
}

TEST(Scenario, TupleEnumeration) {
  const auto sc = hardy_realization().scenario;
  EXPECT_EQ(sc.tuple_count(0), 4u);
  EXPECT_EQ(sc.tuple_labels(0, 2), (std::vector<std::string>{"-", "0"}));
  const std::vector<std::string> l{"-", "1"};
  EXPECT_EQ(sc.find_tuple(0, l), 3u);
  EXPECT_EQ(sc.assignment_space(), 16u);
}

TEST(EmpiricalModel, TablesMustSumToOne) {
  EXPECT_THROW(EmpiricalModel(one_bit(), {row({0.5, 0.4})}), std::invalid_argument);
  EXPECT_THROW(EmpiricalModel(one_bit(), {row({1.0})}), std::invalid_argument);
  EXPECT_THROW(EmpiricalModel(one_bit(), {}), std::invalid_argument);
  EXPECT_NO_THROW(EmpiricalModel(one_bit(), {row({0.25, 0.75})}));
}

TEST(EmpiricalModel, SnapRecoversFractions) {
  const EmpiricalModel m(one_bit(), {row({1.0 / 3, 2.0 / 3})});
  const auto s = m.snapped();
  ASSERT_TRUE(s.all_exact());
  EXPECT_EQ(*s.table(0)[0].exact, Rational(1, 3));
}

TEST(Realize, HardyTables) {
  const auto h = hardy_realization();
  const auto m = realize(h.realization, h.scenario);
  const double expected[4][4] = {
      {2.0 / 3, 1.0 / 6, 0.0, 1.0 / 6},
      {1.0 / 3, 0.0, 1.0 / 3, 1.0 / 3},
      {1.0 / 6, 1.0 / 6, 2.0 / 3, 0.0},
      {9.0 / 12, 1.0 / 12, 1.0 / 12, 1.0 / 12},
  };
  for (std::size_t c = 0; c < 4; ++c)
    for (std::size_t f = 0; f < 4; ++f) EXPECT_NEAR(m.probability(c, f), expected[c][f], 1e-9) << c << "," << f;
}

TEST(Realize, ProductStateTablesAreProducts) {
  // |0> (x) |0>: marginals computed by hand from single-qubit Born rules.
  const StateVector zero({2}, {1.0, 0.0});
  const auto r = product_realization(zero, zero);
  const auto m = realize(r.realization, r.scenario);
  const double c[2] = {1.0, 0.0};
  const double d[2] = {0.5, 0.5};
  for (std::size_t ctx = 0; ctx < 4; ++ctx) {
    const auto& members = r.scenario.members(ctx);
    for (std::size_t f = 0; f < 4; ++f) {
      const auto t = r.scenario.tuple(ctx, f);
      double expected = 1.0;
      for (std::size_t i = 0; i < 2; ++i) {
        const auto& label = r.scenario.observable(members[i]).label;
        expected *= label.back() == 'c' ? c[t[i]] : d[t[i]];
      }
      EXPECT_NEAR(m.probability(ctx, f), expected, 1e-9);
    }
  }
}

TEST(Realize, SingleContextEqualsBorn) {
  const auto h = hardy_realization();
  const Scenario sc("one", {{"A_c", {"0", "1"}}, {"B_c", {"0", "1"}}}, {{{"A_c", "B_c"}}});
  const auto m = realize(h.realization, sc);
  const auto d = born(h.realization.state, ProductBasis({{{0}, Basis::computational()}, {{1}, Basis::computational()}}));
  for (std::size_t f = 0; f < 4; ++f) EXPECT_NEAR(m.probability(0, f), d.entries()[f].probability, 1e-12);
}

TEST(Realize, MissingRecipeAndOverlap) {
  auto h = hardy_realization();
  auto qr = h.realization;
  qr.recipes.erase("B_d");
  EXPECT_THROW(realize(qr, h.scenario), std::invalid_argument);
  const Scenario clash("clash", {{"A_c", {"0", "1"}}, {"A_d", {"+", "-"}}}, {{{"A_c", "A_d"}}});
  EXPECT_THROW(realize(h.realization, clash), std::invalid_argument);
}

TEST(Realize, GroupedOutcomeMap) {
  // Two basis vectors reporting the same outcome are summed.
  auto h = hardy_realization();
  h.realization.recipes.at("A_c") = {{0, 1}, Basis::computational(4), {"0", "0", "1", "1"}};
  const Scenario sc("grouped", {{"A_c", {"0", "1"}}}, {{{"A_c"}}});
  const auto m = realize(h.realization, sc);
  EXPECT_NEAR(m.probability(0, 0), 1.0 / 3, 1e-9);
  EXPECT_NEAR(m.probability(0, 1), 2.0 / 3, 1e-9);
}

TEST(NoDisturbance, Hardy) {
  const auto h = hardy_realization();
  const auto r = no_disturbance(realize(h.realization, h.scenario));
  EXPECT_LE(r.max_violation, 1e-9);
  EXPECT_TRUE(r.holds());
  EXPECT_EQ(r.entries.size(), 4u);  // each observable is shared by one context pair
}

TEST(NoDisturbance, MaximalSignalling) {
  const Scenario sc("sig", {{"A", {"0", "1"}}, {"B", {"0", "1"}}, {"C", {"0", "1"}}}, {{{"A", "B"}}, {{"A", "C"}}});
  const EmpiricalModel m(sc, {row({1.0, 0.0, 0.0, 0.0}), row({0.0, 0.0, 1.0, 0.0})});
  const auto r = no_disturbance(m);
  EXPECT_DOUBLE_EQ(r.max_violation, 1.0);
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.entries[0].shared, (std::vector<std::string>{"A"}));
}

TEST(NoDisturbance, SingleContext) {
  const auto r = no_disturbance(EmpiricalModel(one_bit(), {row({0.5, 0.5})}));
  EXPECT_EQ(r.max_violation, 0.0);
  EXPECT_TRUE(r.entries.empty());
}

TEST(SupportOf, HardyDiagComput) {
  const auto h = hardy_realization();
  const auto p = support_of(realize(h.realization, h.scenario));
  EXPECT_EQ(p.support(0), (std::vector<bool>{true, true, false, true}));
  EXPECT_EQ(p.support(1), (std::vector<bool>{true, false, true, true}));
}

TEST(SupportOf, UniformIsFull) {
  const auto p = support_of(EmpiricalModel(one_bit(), {{exact(1, 2), exact(1, 2)}}));
  EXPECT_EQ(p.support(0), (std::vector<bool>{true, true}));
}

TEST(SupportOf, EmptySupportIsDegenerate) {
  EXPECT_THROW(support_of(EmpiricalModel(one_bit(), {row({0.5, 0.5})}), 0.6), std::invalid_argument);
  EXPECT_THROW(PossibilisticModel(one_bit(), {{false, false}}), std::invalid_argument);
}
