#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ghypo/coefficients.hpp"
#include "ghypo/error.hpp"
#include "ghypo/symbols.hpp"
#include "oracles.hpp"

using namespace ghypo;

namespace {

const Complex I{0.0, 1.0};

OperatorSpec torus(Complex a, Complex b) {
  return {TorusPoly{{{Coefficient::from_double(a), 1, 0}, {Coefficient::from_double(b), 0, 1}}}};
}

OperatorSpec su2(std::vector<Su2Term> terms) { return {Su2DiagPoly{std::move(terms)}}; }

Su2Term term(Complex c, int d0, int neglap) { return {Coefficient::from_double(c), d0, neglap}; }

}  // namespace

TEST(EvalSymbol, TorusScalar) {
  const double c = 0.75;
  const auto m = eval_symbol(torus(1.0, c), make_frequency(Torus2Label{3, -2}));
  ASSERT_EQ(m.rows(), 1);
  EXPECT_NEAR(std::abs(m(0, 0) - I * (3.0 + c * -2.0)), 0.0, 1e-15);
}

TEST(EvalSymbol, Su2DerivativeAtEllOne) {
  const auto m = eval_symbol(su2({term(1.0, 1, 0)}), make_frequency(Su2Label{2}));
  ASSERT_EQ(m.rows(), 9);
  const std::vector<Complex> diag{-I, 0.0, I};
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 3; ++k) EXPECT_EQ(m(3 * r + k, 3 * r + k), diag[k]);
  EXPECT_EQ((m - ComplexMatrix(m.diagonal().asDiagonal())).norm(), 0.0);
}

TEST(EvalSymbol, Su2NegLapPlusD0Squared) {
  const auto m = eval_symbol(su2({term(1.0, 0, 1), term(1.0, 2, 0)}), make_frequency(Su2Label{2}));
  const std::vector<double> diag{1, 2, 1};
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 3; ++k) EXPECT_DOUBLE_EQ(m(3 * r + k, 3 * r + k).real(), diag[k]);
}

TEST(EvalSymbol, ModelMismatchAndMissingTableEntry) {
  EXPECT_THROW(eval_symbol(torus(1.0, 1.0), make_frequency(Su2Label{1})), Error);
  MatrixTable t;
  t.model = ModelKind::Su2;
  t.entries[Su2Label{0}] = ComplexMatrix::Identity(1, 1);
  EXPECT_THROW(eval_symbol(OperatorSpec{t}, make_frequency(Su2Label{1})), Error);
  EXPECT_EQ(eval_symbol(OperatorSpec{t}, make_frequency(Su2Label{0}))(0, 0), Complex(1.0));
}

TEST(Gain, Examples) {
  EXPECT_DOUBLE_EQ(smallest_gain(ComplexMatrix::Identity(4, 4)), 1.0);
  EXPECT_DOUBLE_EQ(operator_norm(ComplexMatrix::Identity(4, 4)), 1.0);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 3.0 * I;
  d(1, 1) = -4.0;
  EXPECT_NEAR(smallest_gain(d), 3.0, 1e-14);
  EXPECT_NEAR(operator_norm(d), 4.0, 1e-14);
  ComplexMatrix nil = ComplexMatrix::Zero(2, 2);
  nil(0, 1) = 1.0;
  EXPECT_NEAR(operator_norm(nil), 1.0, 1e-15);
  EXPECT_NEAR(smallest_gain(nil), 0.0, 1e-15);
  const SymbolBlock diag = SymbolBlock::diag((ComplexVector(2) << 3.0 * I, -4.0).finished());
  EXPECT_EQ(diag.gain(), 3.0);
  EXPECT_EQ(diag.opnorm(), 4.0);
}

TEST(GainProperty, SphereOracle200) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 5;
    const auto a = oracle::random_matrix(n, rng);
    const double want = oracle::sphere_min_gain(a, rng);
    EXPECT_NEAR(smallest_gain(a), want, 1e-6) << "n=" << n;
  }
}

TEST(GainProperty, Invariants) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 5;
    const auto a = oracle::random_matrix(n, rng);
    const double lo = smallest_gain(a), hi = operator_norm(a);
    EXPECT_LE(lo, hi * (1 + 1e-14));
    const Complex c{g(rng), g(rng)};
    EXPECT_NEAR(smallest_gain(ComplexMatrix(c * a)), std::abs(c) * lo, 1e-12 * std::abs(c) * hi);
    EXPECT_NEAR(lo, 1.0 / operator_norm(ComplexMatrix(a.inverse())), 1e-9 * lo);
  }
  // Equality iff all singular values agree: a scaled unitary.
  const auto q = Eigen::HouseholderQR<ComplexMatrix>(oracle::random_matrix(4, rng)).householderQ() * ComplexMatrix::Identity(4, 4);
  EXPECT_NEAR(smallest_gain(ComplexMatrix(2.0 * q)), operator_norm(ComplexMatrix(2.0 * q)), 1e-12);
}

TEST(GainProperty, Su2BlockMatchesFullMatrix) {
  std::mt19937_64 rng(13);
  const MatrixSymbol dense(ModelKind::Su2, Structure::Su2Block, [&](const FrequencyIndex& f) {
    std::mt19937_64 local(static_cast<std::uint64_t>(f.ordinal) + 99);
    return SymbolBlock::dense(oracle::random_matrix(f.block_dim(), local), f.replicas());
  });
  for (int tl = 0; tl <= 6; ++tl) {
    const FrequencyIndex f = make_frequency(Su2Label{tl});
    const SymbolBlock b = dense.block(f);
    const ComplexMatrix full = dense(f);
    ASSERT_EQ(full.rows(), f.dim);
    EXPECT_NEAR(b.gain(), smallest_gain(full), 1e-10);
    EXPECT_NEAR(b.opnorm(), operator_norm(full), 1e-10);
  }
}

TEST(Combine, Algebra) {
  const SpectralModel model = SpectralModel::su2();
  const MatrixSymbol d0 = make_symbol(su2({term(1.0, 1, 0)}), model);
  const MatrixSymbol neglap = make_symbol(su2({term(1.0, 0, 1)}), model);
  const MatrixSymbol target = make_symbol(su2({term(1.0, 0, 1), term(1.0, 2, 0)}), model);
  const MatrixSymbol sum = neglap + d0 * d0;
  const MatrixSymbol id = MatrixSymbol::identity(ModelKind::Su2);
  for (int tl = 0; tl <= 10; ++tl) {
    const FrequencyIndex f = make_frequency(Su2Label{tl});
    EXPECT_NEAR((sum(f) - target(f)).norm(), 0.0, 1e-12);
    EXPECT_NEAR((ComplexMatrix((target * id)(f)) - target(f)).norm(), 0.0, 0.0);
    const Complex c{-2.0, 1.5};
    EXPECT_NEAR((c * target).block(f).gain(), std::abs(c) * target.block(f).gain(), 1e-12);
  }
  EXPECT_THROW(d0 + MatrixSymbol::identity(ModelKind::Torus2), Error);
}

TEST(Combine, ShapeMismatch) {
  const MatrixSymbol bad(ModelKind::Torus2, Structure::Dense, [](const FrequencyIndex&) {
    return SymbolBlock::dense(ComplexMatrix::Identity(2, 2));
  });
  EXPECT_THROW(bad.block(make_frequency(Torus2Label{1, 0})), Error);
}

TEST(ApplySymbol, Examples) {
  const SpectralModel t = SpectralModel::torus2();
  const MatrixSymbol p = make_symbol(torus(1.0, 1.0), t);
  CoefficientField zero(ModelKind::Torus2);
  EXPECT_TRUE(apply_symbol(p, zero, Window::lambda(10)).support().empty());

  CoefficientField delta(ModelKind::Torus2);
  delta.set(make_frequency(Torus2Label{1, -1}), ComplexVector::Ones(1));
  const auto out = apply_symbol(p, delta, Window::lambda(10));
  EXPECT_EQ(out.at(make_frequency(Torus2Label{1, -1}))(0), Complex(0.0));

  const MatrixSymbol d0 = make_symbol(su2({term(1.0, 1, 0)}), SpectralModel::su2());
  CoefficientField u(ModelKind::Su2);
  const FrequencyIndex half = make_frequency(Su2Label{1});
  u.set(half, (ComplexVector(4) << 1.0, 0.0, 0.0, 0.0).finished());
  const ComplexVector got = apply_symbol(d0, u, Window::su2_ell(1)).at(half);
  const ComplexVector want = I * -0.5 * (ComplexVector(4) << 1.0, 0.0, 0.0, 0.0).finished();
  EXPECT_NEAR((got - want).norm(), 0.0, 1e-15);
}

TEST(ApplySymbol, RuleFieldBeyondValidity) {
  const auto u = CoefficientField::from_rule(ModelKind::Torus2, [](const FrequencyIndex& f) {
    return ComplexVector::Ones(f.dim);
  }, 10.0);
  const MatrixSymbol id = MatrixSymbol::identity(ModelKind::Torus2);
  EXPECT_NO_THROW(apply_symbol(id, u, Window::lambda(10)));
  EXPECT_THROW(apply_symbol(id, u, Window::lambda(20)), Error);
}

TEST(ApplySymbolProperty, Linearity) {
  std::mt19937_64 rng(21);
  const SpectralModel model = SpectralModel::su2();
  const MatrixSymbol p = make_symbol(su2({term(1.0, 0, 1), term({0.5, -1.0}, 2, 0), term(I, 1, 0)}), model);
  const Window w = Window::su2_ell(6);
  std::normal_distribution<double> g;
  for (int t = 0; t < 50; ++t) {
    CoefficientField u(ModelKind::Su2), v(ModelKind::Su2), mix(ModelKind::Su2);
    const Complex a{g(rng), g(rng)}, b{g(rng), g(rng)};
    for (const auto& f : enumerate_frequencies(model, w)) {
      const ComplexVector x = oracle::random_unit(f.dim, rng), y = oracle::random_unit(f.dim, rng);
      u.set(f, x);
      v.set(f, y);
      mix.set(f, a * x + b * y);
    }
    const auto pu = apply_symbol(p, u, w), pv = apply_symbol(p, v, w), pm = apply_symbol(p, mix, w);
    for (const auto& [ordinal, e] : pm.support()) {
      const ComplexVector lin = a * pu.at(e.freq) + b * pv.at(e.freq);
      EXPECT_LE((e.value - lin).norm(), 1e-12 * std::max(1.0, lin.norm()));
    }
  }
}

TEST(ApplySymbolProperty, PlancherelIdentity) {
  std::mt19937_64 rng(22);
  const SpectralModel model = SpectralModel::torus2();
  const Window w = Window::lambda(50);
  CoefficientField u(ModelKind::Torus2);
  for (const auto& f : enumerate_frequencies(model, w)) u.set(f, oracle::random_unit(1, rng) * (1.0 + f.lambda));
  const MatrixSymbol id = MatrixSymbol::identity(ModelKind::Torus2);
  EXPECT_DOUBLE_EQ(sobolev_norm(apply_symbol(id, u, w), 0, model, w), sobolev_norm(u, 0, model, w));
}

TEST(EstimateOrder, Examples) {
  const auto id = estimate_order(MatrixSymbol::identity(ModelKind::Torus2), SpectralModel::torus2(), Window::lambda(400));
  EXPECT_NEAR(id.order_hat, 0.0, 0.05);
  EXPECT_NEAR(id.C_hat, 1.0, 1e-12);
  const auto t = estimate_order(make_symbol(torus(1.0, 1.0), SpectralModel::torus2()), SpectralModel::torus2(),
                                Window::torus_l1(100));
  EXPECT_NEAR(t.order_hat, 1.0, 0.05);
  const auto s = estimate_order(make_symbol(su2({term(1.0, 0, 1), term(1.0, 2, 0)}), SpectralModel::su2()),
                                SpectralModel::su2(), Window::su2_ell(50));
  EXPECT_NEAR(s.order_hat, 2.0, 0.05);
}

TEST(EstimateOrder, BoundHoldsEverywhere) {
  const SpectralModel model = SpectralModel::su2();
  const MatrixSymbol p = make_symbol(su2({term(1.0, 0, 1), term(1.0, 2, 0)}), model);
  const auto est = estimate_order(p, model, Window::su2_ell(50));
  for (const auto& s : gain_samples(p, model, Window::su2_ell(50)))
    EXPECT_LE(s.opnorm, est.C_hat * std::pow(1.0 + s.freq.lambda, est.order_hat / 2.0) * (1 + 1e-12));
}

TEST(EstimateOrder, ZeroSymbolAndSmallWindow) {
  const MatrixSymbol zero = 0.0 * MatrixSymbol::identity(ModelKind::Torus2);
  EXPECT_EQ(estimate_order(zero, SpectralModel::torus2(), Window::lambda(50)).order_hat,
            -std::numeric_limits<double>::infinity());
  EXPECT_THROW(estimate_order(MatrixSymbol::identity(ModelKind::Torus2), SpectralModel::torus2(), Window::lambda(1)),
               Error);
}

TEST(CoefficientParts, ExactnessOfFloats) {
  EXPECT_TRUE(Coefficient::from_double({2.0, -0.5}).is_exact());
  EXPECT_FALSE(Coefficient::from_double({1.618033988749895, 0.0}).is_exact());
}
