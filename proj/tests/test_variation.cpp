#include <gtest/gtest.h>

#include "digft/variation.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace digft;

namespace {

Graph edge(Index n, Index i, Index j, Complex w) {
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  a(i, j) = w;
  return Graph(a);
}

GraphSignal real_signal(std::initializer_list<double> v) {
  RealVector x(static_cast<Index>(v.size()));
  Index k = 0;
  for (double s : v) x(k++) = s;
  return GraphSignal(x);
}

Graph undirected_pair() {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 1) = a(1, 0) = 1.0;
  return Graph(a);
}

}  // namespace

TEST(ClipTest, PositiveAndNegativeParts) {
  EXPECT_EQ(pos_part(2.5), 2.5);
  EXPECT_EQ(neg_part(2.5), 0.0);
  EXPECT_EQ(pos_part(-3.0), 0.0);
  EXPECT_EQ(neg_part(-3.0), 3.0);
  EXPECT_EQ(pos_part(0.0), 0.0);
  EXPECT_EQ(neg_part(0.0), 0.0);
  for (double s : {-7.25, -1e-300, 0.0, 4.5, 1e300}) EXPECT_EQ(pos_part(s) - neg_part(s), s);
}

TEST(TotalVariationTest, Examples) {
  const Graph g = undirected_pair();
  EXPECT_DOUBLE_EQ(total_variation(g, real_signal({1, 0})), 1.0);
  EXPECT_DOUBLE_EQ(total_variation(g, real_signal({0.3, 0.3})), 0.0);
}

TEST(TotalVariationTest, MatchesQuadraticFormAndEigenvalues) {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const Graph g = fixtures::random_symmetric_nonnegative(rng, 9, 0.5);
    const RealVector x = fixtures::random_real(rng, 9);
    EXPECT_NEAR(total_variation(g, GraphSignal(x)), oracle::quadratic_tv(g.real_adj(), x), 1e-9);
    RealMatrix l = -g.real_adj();
    l.diagonal() += g.real_adj().colwise().sum().transpose();
    const Eigen::SelfAdjointEigenSolver<RealMatrix> es(l);
    for (Index k = 0; k < 9; ++k)
      EXPECT_NEAR(total_variation(g, GraphSignal(RealVector(es.eigenvectors().col(k)))), es.eigenvalues()(k), 1e-9);
  }
}

TEST(TotalVariationTest, RejectsDirectedOrSignedGraphs) {
  EXPECT_THROW(total_variation(edge(2, 0, 1, 1.0), real_signal({1, 0})), ClassError);
  EXPECT_THROW(total_variation(edge(2, 0, 1, -1.0), real_signal({1, 0})), ClassError);
}

TEST(DirectedVariationTest, Examples) {
  EXPECT_DOUBLE_EQ(directed_variation(edge(2, 0, 1, 2.0), real_signal({3, 1})), 8.0);
  EXPECT_DOUBLE_EQ(directed_variation(edge(2, 0, 1, 1.0), real_signal({0, 1})), 0.0);
  EXPECT_DOUBLE_EQ(directed_variation(undirected_pair(), real_signal({1, 0})), 1.0);
  EXPECT_THROW(directed_variation(edge(2, 0, 1, -1.0), real_signal({0, 1})), ClassError);
}

TEST(IdvTest, Examples) {
  EXPECT_DOUBLE_EQ(indefinite_dv(edge(2, 0, 1, -1.0), real_signal({0, 1})), 1.0);
  EXPECT_DOUBLE_EQ(indefinite_dv(edge(2, 0, 1, -1.0), real_signal({1, 0})), 0.0);
  EXPECT_THROW(indefinite_dv(edge(2, 0, 1, Complex(0, 1)), real_signal({1, 0})), ClassError);
}

TEST(IdvTest, MatchesLiteralOracleAndDvOnNonnegativeGraphs) {
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const Graph gi = fixtures::random_graph(rng, 8, WeightClass::Indefinite, 0.4);
    const RealVector x = fixtures::random_real(rng, 8);
    EXPECT_NEAR(indefinite_dv(gi, GraphSignal(x)), oracle::idv(gi.real_adj(), x), 1e-12);
    const Graph gn = fixtures::random_graph(rng, 8, WeightClass::Nonnegative, 0.4);
    EXPECT_NEAR(indefinite_dv(gn, GraphSignal(x)), directed_variation(gn, GraphSignal(x)), 1e-12);
    // All-negative weights: same as DV of -A on the reversed flow -x.
    const Graph neg = Graph::from_real(-gn.real_adj());
    EXPECT_NEAR(indefinite_dv(neg, GraphSignal(x)), directed_variation(gn, GraphSignal(RealVector(-x))), 1e-12);
  }
}

TEST(EmbeddingTest, Examples) {
  Rng rng(3);
  const Graph real = fixtures::random_graph(rng, 4, WeightClass::Indefinite, 0.6);
  const RealMatrix e = complex_embed(real).a_tilde;
  EXPECT_EQ(e.topLeftCorner(4, 4), real.real_adj());
  EXPECT_EQ(e.bottomRightCorner(4, 4), real.real_adj());
  EXPECT_TRUE(e.topRightCorner(4, 4).isZero(0.0));
  EXPECT_TRUE(e.bottomLeftCorner(4, 4).isZero(0.0));

  const RealMatrix ei = complex_embed(edge(2, 0, 1, Complex(0, 1))).a_tilde;
  RealMatrix want = RealMatrix::Zero(4, 4);
  want(0, 3) = -1.0;
  want(2, 1) = 1.0;
  EXPECT_EQ(ei, want);

  ComplexVector x = ComplexVector::Zero(2);
  x(0) = Complex(0, 1);
  EXPECT_EQ(embed_signal(x), RealVector::Unit(4, 2));
}

TEST(EmbeddingTest, ProductConsistencyAndNorm) {
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const Graph g = fixtures::random_graph(rng, 7, WeightClass::Complex, 0.5);
    ComplexVector x = fixtures::random_complex(rng, 7);
    x.normalize();
    const RealVector y = complex_embed(g).a_tilde * embed_signal(x);
    const ComplexVector ax = g.adj() * x;
    EXPECT_LE((unembed_signal(y) - ax).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(embed_signal(x).norm(), 1.0, 1e-14);
    EXPECT_EQ(unembed_signal(embed_signal(x)), x);
  }
}

TEST(CdvTest, Examples) {
  ComplexVector x = ComplexVector::Zero(2);
  x(0) = Complex(0, 1);
  const Graph g = edge(2, 0, 1, Complex(0, 1));
  EXPECT_DOUBLE_EQ(complex_dv(g, GraphSignal(x)), 1.0);
  EXPECT_DOUBLE_EQ(complex_dv_expanded(g, GraphSignal(x)), 1.0);

  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const Graph gr = fixtures::random_graph(rng, 6, WeightClass::Indefinite, 0.5);
    const RealVector re = fixtures::random_real(rng, 6);
    const RealVector im = fixtures::random_real(rng, 6);
    EXPECT_NEAR(complex_dv(gr, GraphSignal(re)), indefinite_dv(gr, GraphSignal(re)), 1e-12);
    ComplexVector z(6);
    z.real() = re;
    z.imag() = im;
    EXPECT_NEAR(complex_dv(gr, GraphSignal(z)),
                indefinite_dv(gr, GraphSignal(re)) + indefinite_dv(gr, GraphSignal(im)), 1e-12);
  }
}

TEST(VariationDispatchTest, Examples) {
  Rng rng(6);
  const Graph gn = fixtures::random_graph(rng, 5, WeightClass::Nonnegative, 0.5);
  const Graph gi = fixtures::random_graph(rng, 5, WeightClass::Indefinite, 0.5);
  const GraphSignal x(fixtures::random_real(rng, 5));
  EXPECT_EQ(variation(VariationKind::IDV, gn, x), directed_variation(gn, x));
  EXPECT_EQ(variation(VariationKind::CDV, gi, x), indefinite_dv(gi, x));
  EXPECT_THROW(variation(VariationKind::TV, edge(2, 0, 1, 1.0), real_signal({1, 0})), ClassError);
  EXPECT_THROW(variation(VariationKind::IDV, gi, real_signal({1, 0})), DimensionError);
}

TEST(VariationPropertyTest, Nonnegativity) {
  Rng rng(7);
  for (int t = 0; t < 100; ++t) {
    const Graph gs = fixtures::random_symmetric_nonnegative(rng, 6);
    const Graph gn = fixtures::random_graph(rng, 6, WeightClass::Nonnegative);
    const Graph gi = fixtures::random_graph(rng, 6, WeightClass::Indefinite);
    const Graph gc = fixtures::random_graph(rng, 6, WeightClass::Complex);
    const GraphSignal x(fixtures::random_real(rng, 6));
    EXPECT_GE(total_variation(gs, x), 0.0);
    EXPECT_GE(directed_variation(gn, x), 0.0);
    EXPECT_GE(indefinite_dv(gi, x), 0.0);
    EXPECT_GE(complex_dv(gc, GraphSignal(fixtures::random_complex(rng, 6))), 0.0);
  }
}

TEST(VariationPropertyTest, CollapseChainOnSymmetricGraphs) {
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    const Graph g = fixtures::random_symmetric_nonnegative(rng, 10, 0.4);
    const GraphSignal x(fixtures::random_real(rng, 10));
    const double tv = total_variation(g, x);
    EXPECT_NEAR(directed_variation(g, x), tv, 1e-9);
    EXPECT_NEAR(indefinite_dv(g, x), tv, 1e-9);
    EXPECT_NEAR(complex_dv(g, x), tv, 1e-9);
  }
}

TEST(VariationPropertyTest, ScaleLaw) {
  Rng rng(9);
  for (int t = 0; t < 30; ++t) {
    const Graph gs = fixtures::random_symmetric_nonnegative(rng, 6);
    const Graph gi = fixtures::random_graph(rng, 6, WeightClass::Indefinite);
    const Graph gc = fixtures::random_graph(rng, 6, WeightClass::Complex);
    const RealVector x = fixtures::random_real(rng, 6);
    const ComplexVector z = fixtures::random_complex(rng, 6);
    const double c = 1.7;
    EXPECT_NEAR(total_variation(gs, GraphSignal(RealVector(c * x))), c * c * total_variation(gs, GraphSignal(x)), 1e-9);
    EXPECT_NEAR(total_variation(gs, GraphSignal(RealVector(-c * x))), c * c * total_variation(gs, GraphSignal(x)), 1e-9);
    EXPECT_NEAR(indefinite_dv(gi, GraphSignal(RealVector(c * x))), c * c * indefinite_dv(gi, GraphSignal(x)), 1e-9);
    EXPECT_NEAR(complex_dv(gc, GraphSignal(ComplexVector(c * z))), c * c * complex_dv(gc, GraphSignal(z)), 1e-9);
  }
}

TEST(VariationPropertyTest, AsymmetryWitness) {
  const Graph g = edge(2, 0, 1, 1.0);
  EXPECT_NE(directed_variation(g, real_signal({1, 0})), directed_variation(g, real_signal({-1, 0})));
}

TEST(VariationPropertyTest, ExpandedFormulaMatchesEmbedding) {
  Rng rng(10);
  for (int t = 0; t < 1000; ++t) {
    const Graph g = fixtures::random_graph(rng, 8, WeightClass::Complex, 0.4);
    const GraphSignal x(fixtures::random_complex(rng, 8));
    const double a = complex_dv(g, x);
    const double b = complex_dv_expanded(g, x);
    ASSERT_LE(std::abs(a - b), 1e-12 * std::max(1.0, a));
  }
}

TEST(GradientTest, Examples) {
  const RealVector g1 = idv_gradient(edge(2, 0, 1, 1.0), RealVector::Unit(2, 0));
  EXPECT_DOUBLE_EQ(g1(0), 2.0);
  EXPECT_DOUBLE_EQ(g1(1), -2.0);

  Rng rng(11);
  const Graph gi = fixtures::random_graph(rng, 6, WeightClass::Indefinite, 0.6);
  EXPECT_TRUE(idv_gradient(gi, RealVector::Constant(6, 0.4)).isZero(0.0));

  ComplexVector u = ComplexVector::Zero(2);
  u(0) = Complex(0, 1);
  const ComplexVector gc = cdv_gradient(edge(2, 0, 1, Complex(0, 1)), u);
  EXPECT_NEAR(std::abs(gc(0) - Complex(0, 2)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(gc(1) - Complex(-2, 0)), 0.0, 1e-15);

  EXPECT_TRUE(cdv_gradient(Graph(ComplexMatrix::Zero(3, 3)), fixtures::random_complex(rng, 3)).isZero(0.0));
}

TEST(GradientTest, SymmetricGraphGivesTwiceLaplacianProduct) {
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    const Graph g = fixtures::random_symmetric_nonnegative(rng, 7, 0.5);
    const RealVector u = fixtures::random_real(rng, 7);
    RealMatrix l = -g.real_adj();
    l.diagonal() += g.real_adj().colwise().sum().transpose();
    EXPECT_LE((idv_gradient(g, u) - 2.0 * l * u).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(GradientTest, CdvOnRealInputsReducesToIdv) {
  Rng rng(13);
  const Graph g = fixtures::random_graph(rng, 7, WeightClass::Indefinite, 0.5);
  const RealVector u = fixtures::random_real(rng, 7);
  const ComplexVector gc = cdv_gradient(g, u.cast<Complex>());
  EXPECT_TRUE(gc.imag().isZero(0.0));
  EXPECT_LE((gc.real() - idv_gradient(g, u)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(GradientTest, FiniteDifferencesIdv) {
  Rng rng(14);
  int checked = 0;
  while (checked < 100) {
    const Graph g = fixtures::random_graph(rng, 6, WeightClass::Indefinite, 0.5);
    const RealVector u = fixtures::random_real(rng, 6);
    if (!oracle::smooth_point(g.real_adj(), u, 1e-4)) continue;
    const RealMatrix a = g.real_adj();
    const RealVector fd = oracle::central_diff([&](const RealVector& v) { return oracle::idv(a, v); }, u);
    if (fd.norm() < 1e-8) continue;
    EXPECT_LE(oracle::relative_error(idv_gradient(g, u), fd), 1e-5);
    ++checked;
  }
}

TEST(GradientTest, FiniteDifferencesCdv) {
  Rng rng(15);
  int checked = 0;
  while (checked < 100) {
    const Graph g = fixtures::random_graph(rng, 6, WeightClass::Complex, 0.5);
    const ComplexVector u = fixtures::random_complex(rng, 6);
    const RealMatrix e = embed_matrix(g.adj());
    const RealVector x = embed_signal(u);
    if (!oracle::smooth_point(e, x, 1e-4)) continue;
    const RealVector fd = oracle::central_diff([&](const RealVector& v) { return oracle::idv(e, v); }, x);
    if (fd.norm() < 1e-8) continue;
    EXPECT_LE(oracle::relative_error(embed_signal(cdv_gradient(g, u)), fd), 1e-5);
    ++checked;
  }
}

// [d]_+^2 is C^1: the analytic gradient varies continuously through a kink.
TEST(GradientTest, ContinuousAcrossClipBoundary) {
  RealMatrix a = RealMatrix::Zero(3, 3);
  a(0, 1) = 1.5;
  a(1, 2) = -0.7;
  a(2, 0) = 2.0;
  RealVector kink(3);
  kink << 0.4, 0.4, -0.3;
  const RealVector at = idv_gradient(a, kink);
  for (double eps : {1e-2, 1e-4, 1e-6, 1e-8}) {
    RealVector above = kink, below = kink;
    above(0) += eps;
    below(0) -= eps;
    EXPECT_LE((idv_gradient(a, above) - at).norm(), 10.0 * eps);
    EXPECT_LE((idv_gradient(a, below) - at).norm(), 10.0 * eps);
  }
}

TEST(GradientTest, KernelMatchesDenseEvaluation) {
  Rng rng(16);
  for (const WeightClass cls : {WeightClass::Indefinite, WeightClass::Complex}) {
    const VariationKind kind = cls == WeightClass::Complex ? VariationKind::CDV : VariationKind::IDV;
    for (int t = 0; t < 20; ++t) {
      const Graph g = fixtures::random_graph(rng, 9, cls, 0.4);
      const VariationOperator op(g, kind);
      const ComplexVector u = kind == VariationKind::CDV ? fixtures::random_complex(rng, 9)
                                                         : ComplexVector(fixtures::random_real(rng, 9).cast<Complex>());
      EXPECT_NEAR(op.value(u), variation(kind, g, GraphSignal(u)), 1e-12);
      const ComplexVector dense =
          kind == VariationKind::CDV ? cdv_gradient(g, u) : ComplexVector(idv_gradient(g, RealVector(u.real())).cast<Complex>());
      EXPECT_LE((op.gradient(u) - dense).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_EQ(op.real_dim(), kind == VariationKind::CDV ? 18 : 9);
    }
  }
  EXPECT_THROW(VariationOperator(fixtures::random_graph(rng, 4, WeightClass::Complex, 1.0), VariationKind::IDV),
               ClassError);
  EXPECT_THROW(VariationOperator(undirected_pair(), VariationKind::TV), ClassError);
}
