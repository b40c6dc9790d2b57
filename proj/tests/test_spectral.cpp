#include <gtest/gtest.h>

#include "digft/spectral.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace digft;

namespace {

void expect_valid_basis(const RealMatrix& m, const EigenBasis& eb) {
  const Index n = m.rows();
  EXPECT_LE((eb.eigenvectors.transpose() * eb.eigenvectors - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
  for (Index k = 0; k < n; ++k) {
    const double lam = eb.eigenvalues(k);
    EXPECT_LE((m * eb.eigenvectors.col(k) - lam * eb.eigenvectors.col(k)).norm(), 1e-8 * std::max(1.0, std::abs(lam)));
    if (k > 0) EXPECT_LE(eb.eigenvalues(k - 1), lam);
  }
  const RealMatrix rebuilt = eb.eigenvectors * eb.eigenvalues.asDiagonal() * eb.eigenvectors.transpose();
  EXPECT_LE((rebuilt - m).cwiseAbs().maxCoeff(), 1e-8 * std::max(1e-300, m.cwiseAbs().maxCoeff()));
}

}  // namespace

TEST(UnderlyingGraphTest, Examples) {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 1) = -3.0;
  a(1, 0) = 1.0;
  const Graph u = underlying_undirected(Graph(a));
  EXPECT_EQ(u.adj()(0, 1), Complex(3.0, 0.0));
  EXPECT_EQ(u.adj()(1, 0), Complex(3.0, 0.0));
  EXPECT_EQ(u.weight_class(), WeightClass::Nonnegative);

  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  b(0, 1) = Complex(0, 1);
  EXPECT_EQ(underlying_undirected(Graph(b)).adj()(0, 1), Complex(1.0, 0.0));

  Rng rng(1);
  const Graph s = fixtures::random_symmetric_nonnegative(rng, 8);
  EXPECT_EQ(underlying_undirected(s).adj(), s.adj());
}

TEST(LaplacianTest, Examples) {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 1) = a(1, 0) = 1.0;
  RealMatrix want(2, 2);
  want << 1, -1, -1, 1;
  EXPECT_EQ(laplacian(Graph(a)), want);
  EXPECT_TRUE(laplacian(Graph(ComplexMatrix::Zero(4, 4))).isZero(0.0));

  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    const RealMatrix l = laplacian(fixtures::random_symmetric_nonnegative(rng, 9));
    EXPECT_LE((l * RealVector::Ones(9)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_TRUE(l.isApprox(l.transpose(), 0.0));
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<RealMatrix>(l).eigenvalues().minCoeff(), -1e-12);
  }
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 1) = 1.0;
  EXPECT_THROW(laplacian(Graph(d)), ClassError);
}

TEST(EigenTest, TwoNodeLaplacian) {
  RealMatrix l(2, 2);
  l << 1, -1, -1, 1;
  const EigenBasis eb = symmetric_eig(l);
  EXPECT_NEAR(eb.eigenvalues(0), 0.0, 1e-14);
  EXPECT_NEAR(eb.eigenvalues(1), 2.0, 1e-14);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(eb.eigenvectors(0, 0), r, 1e-14);
  EXPECT_NEAR(eb.eigenvectors(1, 0), r, 1e-14);
  // Tie on magnitude: the lowest index carries the positive sign.
  EXPECT_NEAR(eb.eigenvectors(0, 1), r, 1e-14);
  EXPECT_NEAR(eb.eigenvectors(1, 1), -r, 1e-14);
}

TEST(EigenTest, IdentityAndDiagonal) {
  const RealMatrix id = RealMatrix::Identity(5, 5);
  const EigenBasis e1 = symmetric_eig(id);
  EXPECT_TRUE(e1.eigenvalues.isApprox(RealVector::Ones(5), 1e-15));
  expect_valid_basis(id, e1);

  RealMatrix d = RealMatrix::Zero(3, 3);
  d.diagonal() << 3, 1, 2;
  const EigenBasis e2 = symmetric_eig(d);
  EXPECT_EQ(e2.eigenvalues, RealVector::LinSpaced(3, 1, 3));
  EXPECT_EQ(e2.eigenvectors.col(0), RealVector::Unit(3, 1));
  EXPECT_EQ(e2.eigenvectors.col(1), RealVector::Unit(3, 2));
  EXPECT_EQ(e2.eigenvectors.col(2), RealVector::Unit(3, 0));
}

TEST(EigenTest, RejectsNonSymmetricInput) {
  RealMatrix m(2, 2);
  m << 0, 1, 0, 0;
  EXPECT_THROW(symmetric_eig(m), NumericalError);
  EXPECT_THROW(symmetric_eig(RealMatrix::Zero(2, 3)), DimensionError);
}

TEST(EigenTest, AgreesWithReferenceSolver) {
  Rng rng(3);
  for (int t = 0; t < 40; ++t) {
    const Index n = 3 + t % 20;
    const RealMatrix l = laplacian(fixtures::random_symmetric_nonnegative(rng, n, 0.3));
    const EigenBasis eb = symmetric_eig(l);
    expect_valid_basis(l, eb);
    const Eigen::SelfAdjointEigenSolver<RealMatrix> ref(l);
    EXPECT_LE((eb.eigenvalues - ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-9 * std::max(1.0, ref.eigenvalues().maxCoeff()));
    for (Index k = 0; k < n; ++k) {
      const RealVector c = eb.eigenvectors.col(k);
      Index arg = 0;
      for (Index r = 1; r < n; ++r)
        if (std::abs(c(r)) > std::abs(c(arg))) arg = r;
      EXPECT_GT(c(arg), 0.0);
    }
  }
}

TEST(EigenTest, GeneralSymmetricMatricesReconstruct) {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const RealMatrix r = RealMatrix::NullaryExpr(12, 12, [&] { return std::normal_distribution<double>()(rng); });
    const RealMatrix m = r + r.transpose();
    expect_valid_basis(m, symmetric_eig(m));
  }
}

TEST(EigenTest, ZeroEigenvaluesCountComponents) {
  Rng rng(5);
  for (int t = 0; t < 60; ++t) {
    const Index n = 10;
    const Graph g = fixtures::random_graph(rng, n, WeightClass::Complex, 0.08 + 0.004 * t);
    const Graph u = underlying_undirected(g);
    oracle::UnionFind uf(static_cast<int>(n));
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (std::abs(g.adj()(i, j)) > 0.0) uf.unite(static_cast<int>(i), static_cast<int>(j));
    const EigenBasis eb = symmetric_eig(laplacian(u));
    int zeros = 0;
    for (Index k = 0; k < n; ++k) zeros += std::abs(eb.eigenvalues(k)) < 1e-9;
    EXPECT_EQ(zeros, uf.components());
  }
}

TEST(BoundTest, Examples) {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 1) = 1.0;
  const Graph g(a);
  EXPECT_NEAR(dv_upper_bound(g), 2.0, 1e-12);
  EXPECT_LE(directed_variation(g, GraphSignal(RealVector(RealVector::Unit(2, 0)))), dv_upper_bound(g));
  EXPECT_EQ(dv_upper_bound(Graph(ComplexMatrix::Zero(3, 3))), 0.0);

  Rng rng(6);
  const Graph base = fixtures::random_graph(rng, 7, WeightClass::Nonnegative, 0.5);
  ComplexMatrix signed_a = base.adj();
  ComplexMatrix complex_a = base.adj();
  for (Index i = 0; i < 7; ++i)
    for (Index j = 0; j < 7; ++j) {
      if ((i + 2 * j) % 3 == 0) signed_a(i, j) = -signed_a(i, j);
      complex_a(i, j) *= std::polar(1.0, 0.37 * static_cast<double>(i * 7 + j));
    }
  EXPECT_NEAR(dv_upper_bound(Graph(signed_a)), dv_upper_bound(base), 1e-12);
  EXPECT_NEAR(dv_upper_bound(Graph(complex_a)), dv_upper_bound(base), 1e-9);
}

// Without opposite-signed reciprocal edges every ordered pair is dominated by
// one underlying edge, so the underlying Laplacian bounds IDV.
TEST(BoundTest, HoldsOnGraphsWithoutOpposingReciprocalEdges) {
  Rng rng(7);
  for (int t = 0; t < 1000; ++t) {
    const Graph g = fixtures::random_one_way_indefinite(rng, 8, 0.5);
    RealVector x = fixtures::random_real(rng, 8);
    x.normalize();
    ASSERT_LE(indefinite_dv(g, GraphSignal(x)), dv_upper_bound(g) + 1e-9);
  }
}

TEST(BoundTest, OpposingReciprocalEdgesCanExceedUnderlyingBound) {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 1) = 1.0;
  a(1, 0) = -1.0;
  const Graph g(a);
  RealVector x(2);
  x << 1.0, -1.0;
  x.normalize();
  EXPECT_NEAR(indefinite_dv(g, GraphSignal(x)), 4.0, 1e-12);
  EXPECT_NEAR(dv_upper_bound(g), 2.0, 1e-12);
  EXPECT_NEAR(variation_upper_bound(g, VariationKind::IDV), 4.0, 1e-12);
}

TEST(BoundTest, VariationUpperBoundHoldsForAllClasses) {
  Rng rng(8);
  for (int t = 0; t < 1000; ++t) {
    const Graph gi = fixtures::random_graph(rng, 7, WeightClass::Indefinite, 0.5);
    const Graph gc = fixtures::random_graph(rng, 7, WeightClass::Complex, 0.5);
    RealVector x = fixtures::random_real(rng, 7);
    x.normalize();
    ComplexVector z = fixtures::random_complex(rng, 7);
    z.normalize();
    ASSERT_LE(indefinite_dv(gi, GraphSignal(x)), variation_upper_bound(gi, VariationKind::IDV) + 1e-9);
    ASSERT_LE(complex_dv(gc, GraphSignal(z)), variation_upper_bound(gc, VariationKind::CDV) + 1e-9);
  }
}
