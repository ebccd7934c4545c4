#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "generators.hpp"
#include "wedge/error.hpp"
#include "wedge/oracle.hpp"
#include "wedge/zoo.hpp"

using namespace wedge;
using wedge::testing::Rng;

namespace {

QVector v(std::initializer_list<long> xs) {
  QVector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

QMatrix diag(std::initializer_list<long> xs) { return QMatrix::diagonal(v(xs)); }

// h = diag(1, 0, -1), tau = diag(-1, 1, -1), W = cone{e1, e3}.
TubeDatum three_dim() {
  return {diag({-1, 1, -1}), diag({1, 0, -1}), ConvexCone::polyhedral(3, {v({1, 0, 0}), v({0, 0, 1})})};
}

// Reference flow by a dense complex exponential, independent of the
// eigenprojection path.
Eigen::VectorXcd dense_flow(const QMatrix& h, const QVector& x, double y) {
  Eigen::MatrixXcd gen = std::complex<double>(0.0, y) * to_eigen(h).cast<std::complex<double>>();
  return gen.exp() * to_eigen(x).cast<std::complex<double>>();
}

}  // namespace

TEST(WickFlow, Examples) {
  QMatrix h = diag({0, 1, 2});
  ComplexVector z0 = wick_flow(h, v({1, 2, 3}), 0.0);
  EXPECT_LT((z0.real_part - Eigen::Vector3d(1, 2, 3)).norm(), 1e-15);
  EXPECT_LT(z0.imag_part.norm(), 1e-15);

  const double half_pi = std::numbers::pi / 2;
  ComplexVector w1 = wick_flow(h, v({0, 1, 0}), half_pi);
  EXPECT_LT(w1.real_part.norm(), 1e-15);
  EXPECT_LT((w1.imag_part - Eigen::Vector3d(0, 1, 0)).norm(), 1e-15);

  ComplexVector w2 = wick_flow(h, v({0, 0, 1}), half_pi);
  EXPECT_LT((w2.real_part - Eigen::Vector3d(0, 0, -1)).norm(), 1e-15);
  EXPECT_LT(w2.imag_part.norm(), 1e-15);
}

TEST(WickFlow, MatchesDenseExponentialProperty) {
  Rng rng(71);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto t = wedge::testing::random_spectral_triple(seed, true);
    for (double y : {0.3, 1.0, 2.5}) {
      ComplexVector z = wick_flow(t.h_op, t.x, y);
      Eigen::VectorXcd ref = dense_flow(t.h_op, t.x, y);
      EXPECT_LT((z.real_part - ref.real()).norm(), 1e-9 * (1 + ref.norm())) << seed;
      EXPECT_LT((z.imag_part - ref.imag()).norm(), 1e-9 * (1 + ref.norm())) << seed;
    }
  }
  // A rotation has no rational eigenvalues, so this goes through exp().
  QMatrix rot = QMatrix::from_rows({v({0, -1}), v({1, 0})}, 2);
  EXPECT_FALSE(WickPropagator(rot).spectral());
  ComplexVector z = wick_flow(rot, v({1, 0}), 0.7);
  Eigen::VectorXcd ref = dense_flow(rot, v({1, 0}), 0.7);
  EXPECT_LT((z.real_part - ref.real()).norm(), 1e-12);
}

TEST(WickFlow, ParityAtPiMatchesSpectralDecompositionProperty) {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    auto t = wedge::testing::random_spectral_triple(seed, true);
    ComplexVector z = wick_flow(t.h_op, t.x, std::numbers::pi);
    // e^{i pi h} acts by (-1)^k on the weight-k component.
    QVector expected = zero_vector(t.x.size());
    for (const auto& part : spectral_decompose(t.h_op, t.tau, t.x)) {
      axpy(expected, Rational(part.weight % 2 == 0 ? 1 : -1), part.component);
    }
    EXPECT_LT((z.real_part - to_eigen(expected)).norm(), 1e-9 * (1 + z.real_part.norm())) << seed;
    EXPECT_LT((z.real_part - to_eigen(t.tau.apply(t.x))).norm(), 1e-9 * (1 + z.real_part.norm())) << seed;
  }
}

TEST(TubeMembership, GeneratorsAreMembers) {
  TubeDatum d = three_dim();
  SplitCone closed = tube_inv(d);
  for (const auto& g : closed.generators()) {
    TubeVerdict t = tube_membership(d, g);
    EXPECT_TRUE(t.member) << format_vector(g);
    EXPECT_FALSE(t.witness_y);
  }
  EXPECT_TRUE(tube_membership(d, v({1, 1, -1})).member);
  EXPECT_TRUE(tube_membership(d, v({2, -3, -5})).member);
}

TEST(TubeMembership, NonMembersCarryWitness) {
  TubeDatum d = three_dim();
  TubeVerdict t = tube_membership(d, v({-1, 0, 0}));
  EXPECT_FALSE(t.member);
  ASSERT_TRUE(t.witness_y);
  EXPECT_GT(*t.witness_y, 0.0);
  EXPECT_LT(t.margin, 0.0);

  // Weight 2 with tau-parity +1: the imaginary part at y = pi/2 vanishes,
  // but at small y it is sin(2y) x, which leaves any pointed cone on one side.
  TubeDatum w2{diag({-1, 1}), diag({1, 2}), ConvexCone::polyhedral(2, {v({1, 1}), v({1, -1})})};
  TubeVerdict u = tube_membership(w2, v({0, 1}));
  EXPECT_FALSE(u.member);
  EXPECT_TRUE(u.witness_y);
  EXPECT_FALSE(tube_membership(w2, v({0, -1})).member);
}

TEST(TubeMembership, ParityFailureWithoutWitness) {
  // h = 0, tau = -1: e^{i pi h} x = x differs from tau x.
  TubeDatum d{diag({-1}), diag({0}), ConvexCone::polyhedral(1, {v({1})})};
  TubeVerdict t = tube_membership(d, v({1}));
  EXPECT_FALSE(t.member);
  EXPECT_TRUE(t.parity_failed);
  EXPECT_NEAR(t.parity_residual, 1.0, 1e-12);
  EXPECT_FALSE(t.witness_y);
}

TEST(TubeMembership, RefinementKeepsWitnessesProperty) {
  // The grid with 2N - 1 points contains the grid with N points.
  Rng rng(77);
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    auto c = wedge::testing::random_abelian(seed, 6);
    OracleConfig coarse;
    coarse.samples = 33;
    OracleConfig fine = coarse;
    fine.samples = 2 * coarse.samples - 1;
    TubeOracle a(c.datum, coarse), b(c.datum, fine);
    for (int i = 0; i < 20; ++i) {
      QVector x = rng.vector(c.datum.dim(), -3, 3);
      TubeVerdict va = a.check(x), vb = b.check(x);
      if (!va.member) {
        EXPECT_FALSE(vb.member) << seed;
      }
      EXPECT_LE(vb.margin, va.margin + 1e-12) << seed;
    }
  }
}

TEST(TubeMembership, Errors) {
  TubeDatum d = three_dim();
  EXPECT_THROW(tube_membership(d, v({1, 0})), Error);
  OracleConfig bad;
  bad.samples = 1;
  EXPECT_THROW(bad.validate(), Error);
  bad = {};
  bad.tol = 0;
  EXPECT_THROW(tube_membership(d, v({1, 0, 0}), bad), Error);
}

TEST(FuzzCompare, AgreesOnFixtures) {
  AgreementReport r = fuzz_compare(three_dim(), {}, 400);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.total, 400u);
  EXPECT_EQ(r.compared + r.excluded, r.total);
  EXPECT_GT(r.exact_members, 0u);
  EXPECT_LT(r.exact_members, r.compared);

  AgreementReport p = fuzz_compare(zoo_entry("poincare3").datum, {}, 300);
  EXPECT_TRUE(p.ok());
  EXPECT_DOUBLE_EQ(p.agreement(), 1.0);
}

TEST(FuzzCompare, IsDeterministic) {
  OracleConfig cfg;
  cfg.seed = 9;
  AgreementReport a = fuzz_compare(three_dim(), cfg, 200);
  AgreementReport b = fuzz_compare(three_dim(), cfg, 200);
  EXPECT_EQ(a.exact_members, b.exact_members);
  EXPECT_EQ(a.excluded, b.excluded);
}

TEST(FuzzCompare, RefusesNonInvariantCone) {
  TubeDatum d = three_dim();
  d.cone = ConvexCone::polyhedral(3, {v({0, 1, 0})});
  try {
    fuzz_compare(d, {}, 10);
    FAIL() << "expected InvarianceFailed";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvarianceFailed);
  }
}

TEST(ClosedFormMargin, Signs) {
  SplitCone c = tube_inv(three_dim());
  EXPECT_GE(closed_form_margin(c, v({1, 4, -1})), 0.0);
  EXPECT_LT(closed_form_margin(c, v({-1, 0, 0})), 0.0);
  EXPECT_LT(closed_form_margin(c, v({0, 0, 1})), 0.0);
  EXPECT_EQ(closed_form_margin(c, v({0, 0, 0})), 0.0);
}
