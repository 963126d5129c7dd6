#include "qliar/builders.hpp"
#include "qliar/qstate.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qliar;

namespace {

const double kH = 1.0 / std::sqrt(2.0);

StateVector ket(std::vector<std::size_t> dims, std::vector<std::size_t> digits) { return StateVector::basis_state(std::move(dims), digits); }

ProductBasis single(std::size_t site, Basis b) { return ProductBasis({{{site}, std::move(b)}}); }

ProductBasis pair(Basis a, Basis b) { return ProductBasis({{{0}, std::move(a)}, {{1}, std::move(b)}}); }

void expect_state_near(const StateVector& s, std::vector<Amplitude> amps) {
  ASSERT_EQ(s.size(), amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) EXPECT_NEAR(std::abs(s[i] - amps[i]), 0.0, 1e-12) << "amplitude " << i;
}

}  // namespace

TEST(StateVector, RejectsUnnormalizedAndMisSized) {
  EXPECT_THROW(StateVector({2}, {1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(StateVector({2}, {1.0}), std::invalid_argument);
  EXPECT_THROW(StateVector({1}, {1.0}), std::invalid_argument);
  EXPECT_NO_THROW(StateVector({2}, {kH, kH}));
}

TEST(StateVector, MixedRadixLeftmostMostSignificant) {
  StateVector s({2, 3}, std::vector<Amplitude>(6, 1.0 / std::sqrt(6.0)));
  const std::size_t d[] = {1, 2};
  EXPECT_EQ(s.index_of(d), 5u);
  EXPECT_EQ(s.digits_of(4), (std::vector<std::size_t>{1, 1}));
}

TEST(Basis, ValidatesOrthonormalityAndLabels) {
  EXPECT_THROW(Basis({{1.0, 0.0}, {1.0, 0.0}}, {"a", "b"}), std::invalid_argument);
  EXPECT_THROW(Basis({{1.0, 0.0}, {0.0, 1.0}}, {"a", "a"}), std::invalid_argument);
  EXPECT_THROW(Basis({{2.0, 0.0}, {0.0, 1.0}}, {"a", "b"}), std::invalid_argument);
  EXPECT_NO_THROW(Basis::diagonal());
}

TEST(Tensor, BasisStates) {
  expect_state_near(tensor(ket({2}, {0}), ket({2}, {0})), {1.0, 0.0, 0.0, 0.0});
}

TEST(Tensor, Distributivity) {
  StateVector plus({2}, {kH, kH});
  expect_state_near(tensor(plus, ket({2}, {1})), {0.0, kH, 0.0, kH});
}

TEST(Tensor, HardyWithReadyStateIsNormalized) {
  const auto s = tensor(hardy_state(), ket({2}, {0}));
  EXPECT_EQ(s.size(), 8u);
  double norm = 0.0;
  for (const auto& a : s.amplitudes()) norm += std::norm(a);
  EXPECT_NEAR(norm, 1.0, 1e-9);
}

TEST(Born, HardyComputational) {
  const auto d = born(hardy_state(), pair(Basis::computational(), Basis::computational()));
  EXPECT_NEAR(d.at({"0", "0"}), 1.0 / 3, 1e-9);
  EXPECT_NEAR(d.at({"0", "1"}), 0.0, 1e-9);
  EXPECT_NEAR(d.at({"1", "0"}), 1.0 / 3, 1e-9);
  EXPECT_NEAR(d.at({"1", "1"}), 1.0 / 3, 1e-9);
}

TEST(Born, HardyDiagonal) {
  const auto d = born(hardy_state(), pair(Basis::diagonal(), Basis::diagonal()));
  EXPECT_NEAR(d.at({"+", "+"}), 9.0 / 12, 1e-9);
  EXPECT_NEAR(d.at({"+", "-"}), 1.0 / 12, 1e-9);
  EXPECT_NEAR(d.at({"-", "+"}), 1.0 / 12, 1e-9);
  EXPECT_NEAR(d.at({"-", "-"}), 1.0 / 12, 1e-9);
}

TEST(Born, Eigenstate) {
  const auto d = born(ket({2}, {0}), single(0, Basis::computational()));
  EXPECT_DOUBLE_EQ(d.at({"0"}), 1.0);
  EXPECT_DOUBLE_EQ(d.at({"1"}), 0.0);
}

TEST(Born, TracesOutUnmeasuredSites) {
  const auto d = born(hardy_state(), single(1, Basis::computational()));
  EXPECT_NEAR(d.at({"0"}), 2.0 / 3, 1e-9);
  EXPECT_NEAR(d.at({"1"}), 1.0 / 3, 1e-9);
  EXPECT_THROW(d.at({"2"}), std::out_of_range);
}

TEST(Born, DimensionMismatch) {
  EXPECT_THROW(born(hardy_state(), single(0, Basis::computational(3))), std::invalid_argument);
  EXPECT_THROW(born(hardy_state(), single(2, Basis::computational())), std::invalid_argument);
}

TEST(Project, ImpossibleBranch) {
  const std::vector<std::string> o{"0", "1"};
  const auto p = project(hardy_state(), pair(Basis::computational(), Basis::computational()), o);
  EXPECT_LT(p.probability, 1e-12);
  EXPECT_FALSE(p.state.has_value());
}

TEST(Project, PlusOnComputational) {
  const std::vector<std::string> o{"0"};
  const auto p = project(StateVector({2}, {kH, kH}), single(0, Basis::computational()), o);
  EXPECT_NEAR(p.probability, 0.5, 1e-12);
  ASSERT_TRUE(p.state);
  expect_state_near(*p.state, {1.0, 0.0});
}

TEST(Project, HardyMinusMinus) {
  const std::vector<std::string> o{"-", "-"};
  const auto p = project(hardy_state(), pair(Basis::diagonal(), Basis::diagonal()), o);
  EXPECT_NEAR(p.probability, 1.0 / 12, 1e-9);
  ASSERT_TRUE(p.state);
  // |--> up to a global phase.
  const auto minus = tensor(StateVector({2}, {kH, -kH}), StateVector({2}, {kH, -kH}));
  EXPECT_NEAR(std::abs(inner(minus, *p.state)), 1.0, 1e-9);
}

TEST(Project, UnknownLabel) {
  const std::vector<std::string> o{"x"};
  EXPECT_THROW(project(hardy_state(), single(0, Basis::computational()), o), std::invalid_argument);
}

TEST(Premeasure, SuperpositionEntangles) {
  const double a = 0.6, b = 0.8;
  const auto s = premeasure(StateVector({2}, {a, b}), 0, Basis::computational());
  EXPECT_EQ(s.dims(), (std::vector<std::size_t>{2, 2}));
  expect_state_near(s, {a, 0.0, 0.0, b});
}

TEST(Premeasure, Eigenstate) { expect_state_near(premeasure(ket({2}, {0}), 0, Basis::computational()), {1.0, 0.0, 0.0, 0.0}); }

TEST(Premeasure, DiagonalBasisOnZero) {
  // |0> = (|+> + |->)/sqrt2 -> (|+,M+> + |-,M->)/sqrt2.
  const auto s = premeasure(ket({2}, {0}), 0, Basis::diagonal());
  const auto plus = StateVector({2}, {kH, kH});
  const auto minus = StateVector({2}, {kH, -kH});
  const auto m0 = ket({2}, {0});
  const auto m1 = ket({2}, {1});
  const auto a = tensor(plus, m0), b = tensor(minus, m1);
  std::vector<Amplitude> expected(4);
  for (std::size_t i = 0; i < 4; ++i) expected[i] = kH * (a[i] + b[i]);
  expect_state_near(s, expected);
}

TEST(Premeasure, MemoryFollowsItsSystemSite) {
  // Memory for site 0 of a 2-site state lands at index 1.
  const auto s = premeasure(hardy_state(), 0, Basis::computational());
  EXPECT_EQ(s.site_count(), 3u);
  const auto d = born(s, ProductBasis({{{1}, Basis::computational()}}));
  EXPECT_NEAR(d.at({"1"}), 2.0 / 3, 1e-9);
}

TEST(Premeasure, DimensionMismatch) {
  EXPECT_THROW(premeasure(hardy_state(), 0, Basis::computational(3)), std::invalid_argument);
  EXPECT_THROW(premeasure(hardy_state(), 5, Basis::computational()), std::invalid_argument);
}

TEST(Premeasure, SiteGroup) {
  const std::size_t sites[] = {0, 1};
  const auto s = premeasure(hardy_state(), sites, Basis::computational(4));
  EXPECT_EQ(s.dims(), (std::vector<std::size_t>{2, 2, 4}));
  const auto d = born(s, ProductBasis({{{2}, Basis::computational(4)}}));
  EXPECT_NEAR(d.at({"0"}), 1.0 / 3, 1e-9);
  EXPECT_NEAR(d.at({"1"}), 0.0, 1e-9);
  EXPECT_NEAR(d.at({"3"}), 1.0 / 3, 1e-9);
}
