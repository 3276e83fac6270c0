#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "ghypo/error.hpp"
#include "ghypo/spectral_models.hpp"
#include "oracles.hpp"

using namespace ghypo;

TEST(SpectralModels, TorusCutoffOne) {
  const auto f = enumerate_frequencies(SpectralModel::torus2(), 1.0);
  ASSERT_EQ(f.size(), 5u);
  std::set<std::pair<int, int>> labels;
  for (const auto& x : f) {
    const auto& l = std::get<Torus2Label>(x.label);
    labels.insert({l.xi, l.eta});
    EXPECT_EQ(x.dim, 1);
    EXPECT_DOUBLE_EQ(x.lambda, l.xi * l.xi + l.eta * l.eta);
  }
  EXPECT_EQ(labels, (std::set<std::pair<int, int>>{{0, 0}, {0, 1}, {0, -1}, {1, 0}, {-1, 0}}));
}

TEST(SpectralModels, TorusCutoffTwo) {
  const auto f = enumerate_frequencies(SpectralModel::torus2(), 2.0);
  EXPECT_EQ(f.size(), 9u);
}

TEST(SpectralModels, Su2CutoffTwo) {
  const auto f = enumerate_frequencies(SpectralModel::su2(), 2.0);
  ASSERT_EQ(f.size(), 3u);
  EXPECT_DOUBLE_EQ(f[0].lambda, 0.0);
  EXPECT_DOUBLE_EQ(f[1].lambda, 0.75);
  EXPECT_DOUBLE_EQ(f[2].lambda, 2.0);
  EXPECT_EQ(f[0].dim, 1);
  EXPECT_EQ(f[1].dim, 4);
  EXPECT_EQ(f[2].dim, 9);
  EXPECT_EQ(f[2].block_dim(), 3);
  EXPECT_EQ(f[2].replicas(), 3);
}

TEST(SpectralModels, Bracket) {
  EXPECT_DOUBLE_EQ(bracket(make_frequency(Torus2Label{0, 0})), 1.0);
  EXPECT_NEAR(bracket(make_frequency(Su2Label{2})), 1.7320508, 1e-7);
  EXPECT_DOUBLE_EQ(bracket(make_frequency(Torus2Label{3, 4})), std::sqrt(26.0));
}

TEST(SpectralModels, NegativeCutoffRejected) {
  EXPECT_THROW(enumerate_frequencies(SpectralModel::torus2(), -1.0), Error);
}

TEST(SpectralModelsProperty, TorusCountMatchesDisk) {
  for (int r = 0; r <= 40; ++r) {
    const double cutoff = static_cast<double>(r) * r;
    EXPECT_EQ(enumerate_frequencies(SpectralModel::torus2(), cutoff).size(), oracle::disk(cutoff).size()) << r;
  }
}

TEST(SpectralModelsProperty, OrderingAndOrdinals) {
  for (const auto& model : {SpectralModel::torus2(), SpectralModel::su2()}) {
    const auto f = enumerate_frequencies(model, 400.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
      EXPECT_EQ(f[i].ordinal, static_cast<std::int64_t>(i));
      EXPECT_EQ(make_frequency(f[i].label).ordinal, f[i].ordinal);
      if (i > 0) {
        EXPECT_TRUE(f[i - 1].lambda < f[i].lambda || (f[i - 1].lambda == f[i].lambda && f[i - 1].label < f[i].label));
        EXPECT_GT(f[i].lambda, 0.0);
      }
    }
    EXPECT_EQ(f[0].lambda, 0.0);
  }
}

TEST(SpectralModelsProperty, L1WindowKeepsGlobalOrdinals) {
  const auto all = enumerate_frequencies(SpectralModel::torus2(), 100.0);
  const auto l1 = enumerate_frequencies(SpectralModel::torus2(), Window::torus_l1(10));
  std::size_t expected = 0;
  for (const auto& f : all) {
    const auto& l = std::get<Torus2Label>(f.label);
    if (std::abs(l.xi) + std::abs(l.eta) <= 10) ++expected;
  }
  ASSERT_EQ(l1.size(), expected);
  for (const auto& f : l1) EXPECT_EQ(all[static_cast<std::size_t>(f.ordinal)].label, f.label);
}

TEST(SpectralModelsProperty, WeylSeriesPartialSumsBounded) {
  // sum d_j (1 + lambda_j)^{-4} converges for both models.
  for (const auto& model : {SpectralModel::torus2(), SpectralModel::su2()}) {
    double prev = 0.0;
    double sum = 0.0;
    for (const auto& f : enumerate_frequencies(model, 2500.0)) {
      sum += f.dim * std::pow(1.0 + f.lambda, -4.0);
      EXPECT_GE(sum, prev);
      prev = sum;
    }
    EXPECT_LT(sum, 10.0);
  }
}

TEST(SpectralModelsProperty, Su2BracketComparableToOnePlusEll) {
  for (int tl = 2; tl <= 400; ++tl) {
    const double ell = tl / 2.0;
    const double b = bracket(make_frequency(Su2Label{tl}));
    EXPECT_LE(1.0 + ell, b * std::sqrt(2.0));
    EXPECT_LE(b, 1.0 + ell);
  }
}

TEST(SpectralModels, ShellsGroupEqualEigenvalues) {
  const auto f = enumerate_frequencies(SpectralModel::torus2(), 25.0);
  const auto shells = group_by_shell(f);
  int total = 0;
  for (const auto& s : shells) total += s.dim();
  EXPECT_EQ(total, static_cast<int>(f.size()));
  const auto it = std::find_if(shells.begin(), shells.end(), [](const Shell& s) { return s.lambda == 25.0; });
  ASSERT_NE(it, shells.end());
  EXPECT_EQ(it->members.size(), 12u);  // (0,±5), (±5,0), (±3,±4), (±4,±3)
}

TEST(SpectralModels, ParseWindow) {
  EXPECT_DOUBLE_EQ(parse_window("12.5").lambda_cutoff(), 12.5);
  EXPECT_DOUBLE_EQ(parse_window("ell:2").lambda_cutoff(), 6.0);
  EXPECT_EQ(parse_window("l1:7").l1_radius().value(), 7);
  EXPECT_THROW(parse_window("nonsense"), Error);
  EXPECT_THROW(enumerate_frequencies(SpectralModel::su2(), Window::torus_l1(3)), Error);
}
