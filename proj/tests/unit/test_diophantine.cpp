#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ghypo/diophantine.hpp"
#include "ghypo/error.hpp"
#include "oracles.hpp"

using namespace ghypo;

namespace {

std::vector<int> quotients(const ContinuedFraction& cf) {
  std::vector<int> out;
  for (const auto& a : cf.partial_quotients) out.push_back(a.convert_to<int>());
  return out;
}

const RealSpec kPhi = RealSpec::parse("(1+sqrt(5))/2");

}  // namespace

TEST(RealSpecParse, Grammar) {
  EXPECT_EQ(RealSpec::parse("355/113").kind(), RealSpec::Kind::Rational);
  EXPECT_EQ(RealSpec::parse("-7").to_string(), "-7");
  EXPECT_EQ(RealSpec::parse("1.25").to_string(), "5/4");
  EXPECT_EQ(RealSpec::parse("sqrt(8)").kind(), RealSpec::Kind::QuadraticIrrational);
  EXPECT_EQ(RealSpec::parse("sqrt(8)").exact().radicand(), 2);
  EXPECT_EQ(RealSpec::parse("sqrt(9)").kind(), RealSpec::Kind::Rational);
  EXPECT_NEAR(kPhi.to_double(), 1.6180339887498949, 1e-15);
  EXPECT_NEAR(RealSpec::parse("2-3*sqrt(2)").to_double(), 2 - 3 * std::sqrt(2.0), 1e-14);
  EXPECT_EQ(RealSpec::parse("dec:0.110001000...~1e-30").kind(), RealSpec::Kind::DecimalEnclosure);
  EXPECT_THROW(RealSpec::parse("pi"), Error);
  EXPECT_THROW(RealSpec::parse("1/0"), Error);
}

TEST(RealSpecParse, RoundTrip) {
  for (const char* lit : {"3/7", "-22/7", "(1+sqrt(5))/2", "(3-2*sqrt(7))/5", "sqrt(2)", "range:1/3:1/2", "liouville:4"}) {
    const RealSpec r = RealSpec::parse(lit);
    EXPECT_EQ(RealSpec::parse(r.to_string()).to_string(), r.to_string()) << lit;
  }
}

TEST(QuadraticSurdArith, ExactIdentities) {
  const QuadraticSurd phi = kPhi.exact();
  EXPECT_TRUE(phi * phi == phi + QuadraticSurd(Rational(1)));
  EXPECT_EQ(phi.floor(), 1);
  EXPECT_EQ((QuadraticSurd(Rational(0)) - phi).floor(), -2);
  // 5 phi - 8 = phi^-5 nearly cancels.
  const QuadraticSurd r = phi * QuadraticSurd(Rational(5)) - QuadraticSurd(Rational(8));
  EXPECT_NEAR(r.to_double(), std::pow(kPhi.to_double(), -5), 1e-16);
  EXPECT_EQ(r.sign(), 1);
}

TEST(ContinuedFractionTest, Rational) {
  const auto cf = continued_fraction(RealSpec::parse("355/113"), 10);
  EXPECT_EQ(quotients(cf), (std::vector<int>{3, 7, 16}));
  EXPECT_TRUE(cf.terminated);
  EXPECT_EQ(cf.convergents.back().p, 355);
  EXPECT_EQ(cf.convergents.back().q, 113);
}

TEST(ContinuedFractionTest, GoldenRatio) {
  const auto cf = continued_fraction(kPhi, 12);
  EXPECT_EQ(quotients(cf), std::vector<int>(12, 1));
  ASSERT_TRUE(cf.period_start.has_value());
  EXPECT_EQ(*cf.period_length, 1u);
}

TEST(ContinuedFractionTest, SqrtEightAndPell) {
  const auto cf = continued_fraction(RealSpec::parse("sqrt(8)"), 9);
  EXPECT_EQ(quotients(cf), (std::vector<int>{2, 1, 4, 1, 4, 1, 4, 1, 4}));
  EXPECT_EQ(*cf.period_start, 1u);
  EXPECT_EQ(*cf.period_length, 2u);
  // Convergent at the end of the first period solves Pell.
  const auto& c = cf.convergents[1];
  EXPECT_EQ(c.p, 3);
  EXPECT_EQ(c.q, 1);
  EXPECT_EQ(c.p * c.p - 8 * c.q * c.q, 1);
}

TEST(ContinuedFractionTest, EnclosureStopsWhenUncertain) {
  const auto cf = continued_fraction(RealSpec::parse("dec:1.6180339887~1e-10"), 50);
  EXPECT_TRUE(cf.limited_by_precision);
  EXPECT_GT(cf.partial_quotients.size(), 5u);
  EXPECT_LT(cf.partial_quotients.size(), 50u);
  for (const auto& a : cf.partial_quotients) EXPECT_EQ(a, 1);
  EXPECT_THROW(continued_fraction(RealSpec::parse("range:0:2"), 5), Error);
}

TEST(Pell, DEightFirstFour) {
  const auto sols = pell_solutions(8, 4);
  const std::vector<std::pair<int, int>> expect{{3, 1}, {17, 6}, {99, 35}, {577, 204}};
  ASSERT_EQ(sols.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(sols[i].u, expect[i].first);
    EXPECT_EQ(sols[i].m, expect[i].second);
  }
  const auto levels = pell_levels(4);
  EXPECT_EQ(levels, (std::vector<Integer>{1, 8, 49, 288}));
  EXPECT_EQ(Integer(288) * 289, 2 * Integer(204) * 204);
}

TEST(Pell, DTwo) {
  const auto sols = pell_solutions(2, 2);
  EXPECT_EQ(sols[0].u, 3);
  EXPECT_EQ(sols[0].m, 2);
  EXPECT_EQ(sols[1].u, 17);
  EXPECT_EQ(sols[1].m, 12);
}

TEST(Pell, SquareRejected) {
  EXPECT_THROW(pell_solutions(9, 2), Error);
  EXPECT_THROW(pell_solutions(0, 2), Error);
}

TEST(PellProperty, MatchesBruteForce) {
  for (int D = 2; D <= 60; ++D) {
    if (is_perfect_square(D)) continue;
    const auto brute = oracle::pell_brute(D, 10000);
    std::size_t count = 0;
    while (count < 40) {
      const auto sols = pell_solutions(D, count + 1);
      if (sols.back().u > 10000) break;
      ++count;
    }
    const auto sols = pell_solutions(D, std::max<std::size_t>(count, 1));
    ASSERT_EQ(count, brute.size()) << "D=" << D;
    for (std::size_t i = 0; i < count; ++i) {
      EXPECT_EQ(sols[i].u, brute[i].first) << "D=" << D;
      EXPECT_EQ(sols[i].m, brute[i].second) << "D=" << D;
      EXPECT_EQ(sols[i].u * sols[i].u - D * sols[i].m * sols[i].m, 1);
    }
  }
}

TEST(ContinuedFractionProperty, DeterminantIdentity500) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> num(-1000000, 1000000), den(1, 1000000);
  std::uniform_int_distribution<int> rad(2, 2000), coef(-50, 50);
  for (int n = 0; n < 500; ++n) {
    RealSpec c;
    if (n % 2 == 0) {
      c = RealSpec::rational(Rational(Integer(num(rng)), Integer(den(rng))));
    } else {
      Integer d = rad(rng);
      while (is_perfect_square(d)) d += 1;
      int b = coef(rng);
      if (b == 0) b = 1;
      c = RealSpec::surd(QuadraticSurd(Rational(coef(rng)), Rational(b, 7), d));
    }
    const auto cf = continued_fraction(c, 30);
    const auto& cv = cf.convergents;
    for (std::size_t k = 1; k < cv.size(); ++k) {
      const Integer det = cv[k].p * cv[k - 1].q - cv[k - 1].p * cv[k].q;
      EXPECT_EQ(det, (k % 2 == 1) ? 1 : -1) << c.to_string() << " k=" << k;
      if (k >= 2) EXPECT_GT(cv[k].q, cv[k - 1].q);
      else EXPECT_GE(cv[k].q, cv[k - 1].q);
    }
    for (std::size_t k = 1; k < cf.partial_quotients.size(); ++k) EXPECT_GE(cf.partial_quotients[k], 1);
    for (std::size_t k = 2; k < cv.size(); ++k) {
      EXPECT_EQ(cv[k].p, cf.partial_quotients[k] * cv[k - 1].p + cv[k - 2].p);
      EXPECT_EQ(cv[k].q, cf.partial_quotients[k] * cv[k - 1].q + cv[k - 2].q);
    }
  }
}

TEST(ContinuedFractionProperty, BestApproximation) {
  for (const char* lit : {"(1+sqrt(5))/2", "sqrt(2)", "sqrt(7)", "(3+sqrt(13))/4", "355/113"}) {
    const RealSpec c = RealSpec::parse(lit);
    const auto [lo, hi] = c.enclose(60);
    const Rational x = (lo + hi) / 2;
    for (const auto& conv : continued_fraction(c, 40).convergents) {
      if (conv.q > 500) break;
      const Rational err = boost::multiprecision::abs(x - Rational(conv.p, conv.q));
      for (Integer q = 1; q < conv.q; ++q) {
        const Rational xq = x * q;  // x > 0, so truncation is the floor
        const Integer p = boost::multiprecision::numerator(xq) / boost::multiprecision::denominator(xq);
        for (Integer pp = p - 1; pp <= p + 2; ++pp)
          EXPECT_GE(boost::multiprecision::abs(x - Rational(pp, q)), err) << lit << " q=" << q;
      }
    }
  }
}

TEST(TorusMinGainTest, RationalResonance) {
  const auto g = torus_min_gain(RealSpec::parse("1"), 5, 2);
  EXPECT_TRUE(g.exact_zero);
  EXPECT_EQ(g.lo, 0);
  EXPECT_EQ(g.hi, 0);
  EXPECT_EQ(std::abs(g.argmin.xi), 1);
  EXPECT_EQ(g.argmin.xi + g.argmin.eta, 0);
}

TEST(TorusMinGainTest, GoldenRatioRadius13) {
  const auto g = torus_min_gain(kPhi, 13, -1);
  EXPECT_EQ(g.argmin.xi, -8);
  EXPECT_EQ(g.argmin.eta, 5);
  // Weighted value |5 phi - 8| (1 + 13)^{1} with |5 phi - 8| = phi^-5.
  const double expect = std::pow(kPhi.to_double(), -5) * 14.0;
  EXPECT_LE(to_double(g.lo), expect * (1 + 1e-15));
  EXPECT_GE(to_double(g.hi), expect * (1 - 1e-15));
  EXPECT_NEAR(std::pow(kPhi.to_double(), -5), 0.0901699, 1e-7);
}

TEST(TorusMinGainProperty, ZeroIffRationalPairInBall) {
  for (const char* lit : {"3/7", "-2/3", "5/2", "11/13", "0"}) {
    const RealSpec c = RealSpec::parse(lit);
    const Rational r = c.exact().rational_part();
    const auto q = boost::multiprecision::denominator(r);
    const auto p = boost::multiprecision::abs(boost::multiprecision::numerator(r));
    const int l1 = (p + q).convert_to<int>();
    EXPECT_TRUE(torus_min_gain(c, l1, 0).exact_zero) << lit;
    if (l1 > 1) EXPECT_FALSE(torus_min_gain(c, l1 - 1, 0).exact_zero) << lit;
  }
}

TEST(TorusMinGainProperty, MatchesBruteForce) {
  for (const char* lit : {"(1+sqrt(5))/2", "sqrt(2)", "(3-sqrt(7))/2"}) {
    const RealSpec c = RealSpec::parse(lit);
    const long double cv = c.to_double();
    for (int N : {-1, 0, 1}) {
      long double best = INFINITY;
      for (int x = -20; x <= 20; ++x)
        for (int y = -20; y <= 20; ++y) {
          if ((x == 0 && y == 0) || std::abs(x) + std::abs(y) > 20) continue;
          best = std::min(best, std::abs(x + cv * y) * std::pow(1.0L + std::abs(x) + std::abs(y), -N));
        }
      const auto g = torus_min_gain(c, 20, N);
      EXPECT_NEAR(to_double(g.lo), static_cast<double>(best), 1e-12 * static_cast<double>(best)) << lit << " N=" << N;
    }
  }
}

TEST(TorusMinGainTest, WideEnclosureAsksForPrecision) {
  EXPECT_THROW(torus_min_gain(RealSpec::parse("range:1.6:1.7"), 13, -1), Error);
}

TEST(Liouville, GoldenRatioHasNoWitnesses) {
  EXPECT_TRUE(liouville_witnesses(kPhi, 3, Integer(1000000)).empty());
}

TEST(Liouville, PartialSumHasStrongWitness) {
  const auto w = liouville_witnesses(RealSpec::liouville(5), 6, Integer(1) << 100);
  bool found = false;
  for (const auto& x : w)
    if (x.q == boost::multiprecision::pow(Integer(10), 24) && x.n_achieved >= 4) found = true;
  EXPECT_TRUE(found);
}

TEST(Liouville, RationalRejected) {
  EXPECT_THROW(liouville_witnesses(RealSpec::parse("355/113"), 3, Integer(1000)), Error);
}

TEST(Classify, Arms) {
  EXPECT_TRUE(std::holds_alternative<ImNonzero>(classify_coefficient({RealSpec::parse("2"), RealSpec::parse("3")})));
  const auto r = classify_coefficient({RealSpec::parse("22/7"), RealSpec::parse("0")});
  ASSERT_TRUE(std::holds_alternative<RationalCoefficient>(r));
  EXPECT_EQ(std::get<RationalCoefficient>(r).p, 22);
  EXPECT_EQ(std::get<RationalCoefficient>(r).q, 7);
  const auto s = classify_coefficient({RealSpec::parse("sqrt(2)"), RealSpec::parse("0")});
  ASSERT_TRUE(std::holds_alternative<IrrationalEvidence>(s));
  EXPECT_NEAR(std::get<IrrationalEvidence>(s).mu_hat, 2.0, 0.05);
  EXPECT_TRUE(std::get<IrrationalEvidence>(s).witnesses.empty());
}
