#include "qliar/builders.hpp"
#include "qliar/cli.hpp"
#include "qliar/report.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace qliar;

namespace {

std::vector<AnalysisReport> sample_reports() {
  std::vector<AnalysisReport> out;
  const auto h = hardy_realization();
  const auto hm = realize(h.realization, h.scenario);
  out.push_back(analyze_model(hm, default_roster(h.scenario), {}));
  const auto f = fr_friendified();
  out.push_back(analyze_model(realize(f.realization, f.scenario), friendified_roster(f), {}));
  out.push_back(analyze_chain(wigner_document()));
  out.push_back(fraction_report(hm));
  out.push_back(cycles_report(hm, std::nullopt, kDefaultSupportEps));
  for (int n = 3; n <= 5; ++n) {
    const auto m = cycle_empirical_model(n, Parity::Odd);
    out.push_back(analyze_model(m, default_roster(m.scenario()), {}));
  }
  return out;
}

}  // namespace

TEST(Report, HardySections) {
  const auto h = hardy_realization();
  const auto r = analyze_model(realize(h.realization, h.scenario), default_roster(h.scenario), {kDefaultSupportEps, AssumptionSet{}});
  EXPECT_EQ(r.kind, "scenario");
  EXPECT_EQ(r.classification, "LogicallyContextual");
  EXPECT_EQ(r.global_sections, 5u);
  ASSERT_TRUE(r.cycles);
  ASSERT_EQ(r.cycles->size(), 1u);
  EXPECT_EQ(r.cycles->front().steps.size(), 3u);
  ASSERT_TRUE(r.fraction);
  EXPECT_EQ(*r.fraction->ncf.exact, Rational(5, 6));
  EXPECT_EQ(*r.fraction->cf.exact, Rational(1, 6));
  ASSERT_TRUE(r.claims);
  EXPECT_EQ(*r.claims->seed_probability.exact, Rational(1, 12));
  ASSERT_EQ(r.claims->verdicts.size(), 1u);
  EXPECT_TRUE(r.claims->verdicts[0].contradiction);
}

TEST(Report, AllAssumptionSetsByDefault) {
  const auto f = fr_friendified();
  const auto r = analyze_model(realize(f.realization, f.scenario), friendified_roster(f), {});
  ASSERT_TRUE(r.claims);
  ASSERT_EQ(r.claims->verdicts.size(), 16u);
  int contradictions = 0;
  for (const auto& v : r.claims->verdicts) contradictions += v.contradiction;
  EXPECT_EQ(contradictions, 2);  // Q,NMC,NC with and without S
}

TEST(Report, QuantumAndTabulatedAgree) {
  const std::string dir = QLIAR_DATA_DIR;
  const auto tab = parse_model(read_file(dir + "/hardy.scn"));
  const auto q = parse_model(read_file(dir + "/hardy_quantum.scn"));
  const auto a = analyze_model(*tab.model, default_roster(tab.scenario), {});
  const auto b = analyze_model(realize(*q.realization, q.scenario), default_roster(q.scenario), {});
  auto strip = [](std::string s) { return s.substr(s.find('\n')); };  // names differ
  EXPECT_EQ(strip(render_text(a)), strip(render_text(b)));
}

TEST(Report, JsonRoundTripPreservesText) {
  for (const auto& r : sample_reports()) {
    SCOPED_TRACE(r.name);
    const auto json = render_json(r);
    const auto back = parse_report_json(json);
    EXPECT_EQ(render_text(back), render_text(r));
    EXPECT_EQ(render_json(back), json);
  }
}

TEST(Report, MalformedJson) {
  EXPECT_THROW(parse_report_json("{"), std::invalid_argument);
  EXPECT_THROW(parse_report_json("[1,2]"), std::invalid_argument);
}

TEST(Report, ChainCuts) {
  const auto r = analyze_chain(wigner_document());
  EXPECT_EQ(r.kind, "chain");
  ASSERT_TRUE(r.cuts);
  ASSERT_EQ(r.cuts->size(), 2u);
  EXPECT_EQ(*(*r.cuts)[0].total_variation.exact, Rational(1, 2));
  EXPECT_EQ(*(*r.cuts)[1].total_variation.exact, Rational(0));
}

TEST(Report, SignallingHasUndefinedFraction) {
  const Scenario sc("sig", {{"A", {"0", "1"}}, {"B", {"0", "1"}}, {"C", {"0", "1"}}}, {{{"A", "B"}}, {{"A", "C"}}});
  const auto half = Probability::from_rational(Rational(1, 2));
  const auto zero = Probability::from_rational(0);
  const EmpiricalModel m(sc, {{half, half, zero, zero}, {zero, zero, half, half}});
  const auto r = fraction_report(m);
  ASSERT_TRUE(r.fraction);
  EXPECT_FALSE(r.fraction->defined);
}

TEST(Report, PrimarySeedIsSmallestNonExtendable) {
  const auto h = hardy_realization();
  const auto m = realize(h.realization, h.scenario);
  const auto s = primary_seed(m, support_of(m));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->context, 3u);
  EXPECT_EQ(s->tuple, 3u);
  const auto c = cycle_empirical_model(4, Parity::Even);
  EXPECT_FALSE(primary_seed(c, support_of(c)));
}

TEST(Report, CompleteRosterFillsGaps) {
  const auto h = hardy_realization();
  const auto r = complete_roster(h.scenario, {{"Alice", "{Alice}", {"A_c", "A_d"}, false}});
  EXPECT_EQ(r.size(), 3u);
}
