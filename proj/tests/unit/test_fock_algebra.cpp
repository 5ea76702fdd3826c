#include "rabi_qpt/errors.hpp"
#include "rabi_qpt/fock_algebra.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace rabi_qpt;

TEST(HilbertConfig, RejectsFewerThanTwoLevels) {
  EXPECT_THROW(HilbertConfig(1), InvalidArgument);
  EXPECT_THROW(HilbertConfig(0), InvalidArgument);
  EXPECT_EQ(HilbertConfig(7).product_dim(), 14);
}

TEST(QuantumState, BasisOrderingIsTwoMPlusS) {
  const QuantumState s = QuantumState::basis(3, 2, Spin::up);
  EXPECT_EQ(s.amplitudes()(5), Complex(1.0));
  EXPECT_EQ(product_index(1, Spin::down), 2);
  EXPECT_EQ(product_index(1, Spin::up), 3);
}

TEST(QuantumState, NormalizeAndZeroNorm) {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = 3.0;
  v(3) = Complex(0.0, 4.0);
  const QuantumState s = QuantumState(2, v).normalized();
  EXPECT_NEAR(s.norm(), 1.0, 1e-15);
  EXPECT_THROW(QuantumState(2, ComplexVector::Zero(4)).normalized(), ZeroNorm);
}

TEST(QuantumState, ProductAndFieldComponents) {
  const ComplexVector field = fock_state(3, 1);
  const QuantumState s = QuantumState::product(field, 0.6, Complex(0.0, 0.8));
  EXPECT_EQ(s.amplitude(1, Spin::down), Complex(0.6));
  EXPECT_EQ(s.amplitude(1, Spin::up), Complex(0.0, 0.8));
  EXPECT_TRUE(s.field_component(Spin::up).isApprox(Complex(0.0, 0.8) * field));
}

TEST(Annihilation, TwoLevels) {
  RealMatrix expected(2, 2);
  expected << 0, 1, 0, 0;
  EXPECT_EQ(annihilation(HilbertConfig(2)), expected);
}

TEST(Annihilation, ElementSqrtM) {
  const Operator b = annihilation(HilbertConfig(3));
  EXPECT_NEAR(b(1, 2), 1.41421356237, 1e-11);
  EXPECT_EQ(b(2, 1), 0.0);
  EXPECT_EQ(creation(HilbertConfig(3)), b.transpose());
}

TEST(Number, DiagonalIsFockIndex) {
  const Operator n = number(HilbertConfig(6));
  const Operator b = annihilation(HilbertConfig(6));
  EXPECT_TRUE(n.isApprox(b.transpose() * b));
  for (int m = 0; m < 6; ++m) EXPECT_EQ(n(m, m), m);
}

TEST(QuadratureSum, TwoLevels) {
  RealMatrix expected(2, 2);
  expected << 0, 1, 1, 0;
  EXPECT_EQ(quadrature_sum(HilbertConfig(2)), expected);
}

TEST(QuadratureSum, VacuumVarianceIsOne) {
  for (int d : {2, 3, 10}) {
    const Operator x = quadrature_sum(HilbertConfig(d));
    EXPECT_DOUBLE_EQ((x * x)(0, 0), 1.0);
  }
}

TEST(QuadratureSum, SquareTruncationArtifactOnlyAtTopLevel) {
  // Oracle: the same square built in a space two levels larger and then
  // cut down has the exact 2m+1 diagonal everywhere.
  const int d = 8;
  const Operator small = quadrature_sum(HilbertConfig(d));
  const Operator big = quadrature_sum(HilbertConfig(d + 2));
  const Operator exact = (big * big).topLeftCorner(d, d);
  const Operator truncated = small * small;
  for (int m = 0; m < d; ++m) EXPECT_DOUBLE_EQ(exact(m, m), 2.0 * m + 1.0);
  EXPECT_TRUE(truncated.topLeftCorner(d - 1, d - 1).isApprox(exact.topLeftCorner(d - 1, d - 1)));
  EXPECT_DOUBLE_EQ(truncated(d - 1, d - 1), d - 1.0);
  EXPECT_NE(truncated(d - 1, d - 1), exact(d - 1, d - 1));
}

TEST(CommutatorDefect, OnlyTopLevelViolates) {
  const int d = 12;
  const HilbertConfig cfg(d);
  const Operator b = annihilation(cfg);
  const Operator comm = b * b.transpose() - b.transpose() * b - Operator::Identity(d, d);
  // sqrt(m) * sqrt(m) rounds to m only up to an ulp.
  EXPECT_LE(comm.topLeftCorner(d - 1, d - 1).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_DOUBLE_EQ(comm(d - 1, d - 1), -static_cast<double>(d));
}

TEST(SpinOperator, SigmaZAndSigmaX) {
  const HilbertConfig cfg(3);
  const Operator sz = spin_operator(Pauli::z, cfg);
  const Operator sx = spin_operator(Pauli::x, cfg);
  for (int m = 0; m < 3; ++m) {
    EXPECT_EQ(sz(product_index(m, Spin::down), product_index(m, Spin::down)), -1.0);
    EXPECT_EQ(sz(product_index(m, Spin::up), product_index(m, Spin::up)), 1.0);
    EXPECT_EQ(sx(product_index(m, Spin::down), product_index(m, Spin::up)), 1.0);
    EXPECT_EQ(sx(product_index(m, Spin::up), product_index(m, Spin::down)), 1.0);
  }
  EXPECT_EQ(sx.cwiseAbs().sum(), 6.0);
}

TEST(SpinOperator, LadderAlgebra) {
  const HilbertConfig cfg(4);
  const Operator sp = spin_operator(Pauli::plus, cfg);
  const Operator sm = spin_operator(Pauli::minus, cfg);
  EXPECT_TRUE((sp * sm + sm * sp).isApprox(Operator::Identity(8, 8)));
  EXPECT_TRUE((sp + sm).isApprox(spin_operator(Pauli::x, cfg)));
  EXPECT_TRUE((sp * sm - sm * sp).isApprox(spin_operator(Pauli::z, cfg)));
}

TEST(LiftField, ActsOnEachSpinBlock) {
  const HilbertConfig cfg(3);
  const Operator lifted = lift_field(number(cfg));
  EXPECT_EQ(lifted(product_index(2, Spin::up), product_index(2, Spin::up)), 2.0);
  EXPECT_EQ(lifted(product_index(2, Spin::down), product_index(2, Spin::down)), 2.0);
  EXPECT_EQ(lifted(product_index(2, Spin::down), product_index(2, Spin::up)), 0.0);
}

TEST(Parity, Eigenvalues) {
  const HilbertConfig cfg(4);
  const Operator pi = parity(cfg);
  EXPECT_EQ(pi(product_index(0, Spin::down), product_index(0, Spin::down)), 1.0);
  EXPECT_EQ(pi(product_index(1, Spin::down), product_index(1, Spin::down)), -1.0);
  EXPECT_EQ(pi(product_index(1, Spin::up), product_index(1, Spin::up)), 1.0);
  EXPECT_TRUE((pi * pi).isApprox(Operator::Identity(8, 8)));
}

TEST(Parity, CommutesWithModelTerms) {
  const HilbertConfig cfg(20);
  const Operator pi = parity(cfg);
  const Operator x = lift_field(quadrature_sum(cfg));
  const Operator coupling = x * spin_operator(Pauli::x, cfg);
  const Operator quad = x * x;
  EXPECT_LE((pi * coupling - coupling * pi).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((pi * quad - quad * pi).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(SymmetryDefect, MeasuresAsymmetry) {
  RealMatrix a(2, 2);
  a << 1, 2, 2.5, 3;
  EXPECT_DOUBLE_EQ(symmetry_defect(a), 0.5);
}

TEST(Displacement, ZeroIsIdentity) {
  const auto d = displacement(0.0, HilbertConfig(10));
  EXPECT_TRUE(d.value.isApprox(ComplexMatrix::Identity(10, 10)));
  EXPECT_FALSE(d.report.warning());
}

TEST(Displacement, MeanFieldEqualsAmplitude) {
  const HilbertConfig cfg(60);
  for (Complex a : {Complex(1.0, 0.0), Complex(0.0, 1.0), Complex(std::sqrt(0.5), -std::sqrt(0.5))}) {
    const auto d = displacement(a, cfg);
    const ComplexVector v = d.value.col(0);
    const Complex mean = v.dot(annihilation(cfg).cast<Complex>() * v);
    EXPECT_NEAR(std::abs(mean - a), 0.0, 1e-8);
  }
}

TEST(Displacement, VacuumOverlapClosedForm) {
  const auto d = displacement(1.0, HilbertConfig(60));
  EXPECT_NEAR(std::norm(d.value(0, 0)), std::exp(-1.0), 1e-12);
  EXPECT_NEAR(std::norm(d.value(0, 0)), 0.36788, 1e-5);
}

TEST(Displacement, InverseAndUnitarity) {
  const HilbertConfig cfg(60);
  const Complex a(1.2, -0.7);
  const ComplexMatrix d = displacement(a, cfg).value;
  const ComplexMatrix dinv = displacement(-a, cfg).value;
  EXPECT_LE((d * dinv - ComplexMatrix::Identity(60, 60)).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_LE((d.adjoint() * d - ComplexMatrix::Identity(60, 60)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Displacement, TruncationWarningWhenTooLarge) {
  EXPECT_TRUE(displacement(4.0, HilbertConfig(20)).report.warning());
  EXPECT_FALSE(displacement(1.0, HilbertConfig(60)).report.warning());
}

TEST(Displacement, VectorActionMatchesMatrix) {
  const HilbertConfig cfg(40);
  ComplexVector v = ComplexVector::Zero(40);
  v(0) = 0.6;
  v(3) = Complex(0.0, 0.8);
  const Complex a(0.9, 0.4);
  const ComplexVector direct = displacement(a, cfg).value * v;
  EXPECT_LE((apply_displacement(a, v).value - direct).norm(), 1e-12);
}

TEST(Squeeze, ZeroIsIdentity) {
  EXPECT_TRUE(squeeze(0.0, HilbertConfig(10)).value.isApprox(RealMatrix::Identity(10, 10)));
}

TEST(Squeeze, QuadratureVariance) {
  const HilbertConfig cfg(80);
  const RealMatrix x = 0.5 * quadrature_sum(cfg);
  for (double r : {0.0, 0.5}) {
    const RealVector v = squeeze(r, cfg).value.col(0);
    EXPECT_NEAR(v.dot(x * x * v), std::exp(2.0 * r) / 4.0, 1e-10);
  }
  const RealVector v = squeeze(0.5, cfg).value.col(0);
  EXPECT_NEAR(v.dot(x * x * v), 0.67957, 1e-5);
}

TEST(Squeeze, BogoliubovOnLowBlock) {
  const HilbertConfig cfg(80);
  const double r = 0.4;
  const RealMatrix s = squeeze(r, cfg).value;
  const Operator b = annihilation(cfg);
  const RealMatrix lhs = s.transpose() * b * s;
  const RealMatrix rhs = std::cosh(r) * b + std::sinh(r) * b.transpose();
  EXPECT_LE((lhs - rhs).topLeftCorner(20, 20).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Squeeze, VectorActionMatchesMatrix) {
  const HilbertConfig cfg(60);
  const ComplexVector v = fock_state(60, 2);
  const ComplexVector direct = squeeze(-0.3, cfg).value.cast<Complex>() * v;
  EXPECT_LE((apply_squeeze(-0.3, v).value - direct).norm(), 1e-12);
}

TEST(Expm, MatchesClosedFormRotation) {
  RealMatrix g(2, 2);
  g << 0, -1.3, 1.3, 0;
  const RealMatrix e = expm(g);
  EXPECT_NEAR(e(0, 0), std::cos(1.3), 1e-14);
  EXPECT_NEAR(e(1, 0), std::sin(1.3), 1e-14);
}

TEST(EdgeWeight, TopDecile) {
  ComplexVector v = ComplexVector::Zero(20);
  v(0) = std::sqrt(0.75);
  v(19) = 0.5;
  EXPECT_NEAR(edge_weight(v), 0.25, 1e-15);
  EXPECT_EQ(edge_weight(fock_state(20, 0)), 0.0);
}

TEST(Builders, AreDeterministic) {
  const HilbertConfig cfg(30);
  EXPECT_EQ(squeeze(0.3, cfg).value, squeeze(0.3, cfg).value);
  EXPECT_EQ(displacement(Complex(0.3, 0.1), cfg).value, displacement(Complex(0.3, 0.1), cfg).value);
}
