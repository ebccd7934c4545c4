#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "generators.hpp"
#include "wedge/cone.hpp"
#include "wedge/error.hpp"
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

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected a wedge::Error";
  return ErrorCode::InvalidArgument;
}

// Forward light cone x0 >= sqrt(x1^2 + x2^2).
ConvexCone lorentz3() { return ConvexCone::quadratic(diag({1, -1, -1}), v({1, 0, 0})); }

// Cone over the unit square at height 1.
ConvexCone square_cone() {
  return ConvexCone::polyhedral(3, {v({1, 1, 1}), v({1, -1, 1}), v({-1, 1, 1}), v({-1, -1, 1})});
}

std::vector<QVector> random_generators(Rng& rng, std::size_t n) {
  std::vector<QVector> gens;
  std::size_t k = static_cast<std::size_t>(rng.uniform(1, 6));
  while (gens.size() < k) {
    QVector g = rng.vector(n, -3, 3);
    if (!is_zero(g)) gens.push_back(g);
  }
  return gens;
}

}  // namespace

TEST(Lp, FeasibleAndInfeasible) {
  QMatrix a = QMatrix::from_rows({v({1, 0, 1}), v({0, 1, 1})}, 3);
  auto sol = lp_feasible(a, v({2, 3}));
  ASSERT_TRUE(sol);
  EXPECT_EQ(a.apply(*sol), v({2, 3}));
  for (const auto& x : *sol) EXPECT_GE(x, 0);
  EXPECT_FALSE(lp_feasible(a, v({-1, 1})));
  EXPECT_TRUE(lp_in_cone({v({1, 0}), v({1, 1})}, v({3, 1}), 2));
  EXPECT_FALSE(lp_in_cone({v({1, 0}), v({1, 1})}, v({1, 2}), 2));
  EXPECT_TRUE(lp_in_cone({}, v({0, 0}), 2));
}

TEST(DoubleDescription, SquareCone) {
  HRep h = facets_of(square_cone().as_polyhedral().generators, 3);
  EXPECT_TRUE(h.equalities.empty());
  EXPECT_EQ(h.facets.size(), 4u);
  ConeGenerators g = double_description(h.facets, h.equalities, 3);
  EXPECT_TRUE(g.lineality.empty());
  EXPECT_EQ(g.rays.size(), 4u);
}

TEST(DoubleDescription, RedundantGeneratorsDropped) {
  ConvexCone c = ConvexCone::polyhedral(2, {v({1, 0}), v({0, 1}), v({1, 1}), v({2, 3})});
  EXPECT_EQ(c.as_polyhedral().minimal.rays, (std::vector<QVector>{v({0, 1}), v({1, 0})}));
}

TEST(DoubleDescription, HalfPlaneHasLineality) {
  ConvexCone c = ConvexCone::polyhedral(2, {v({1, 0}), v({-1, 0}), v({0, 1})});
  EXPECT_EQ(c.as_polyhedral().minimal.lineality.size(), 1u);
  EXPECT_FALSE(is_pointed(c));
  EXPECT_EQ(lineality(c).size(), 1u);
}

TEST(DoubleDescription, RoundTripProperty) {
  Rng rng(31);
  for (int i = 0; i < 60; ++i) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(2, 4));
    auto gens = random_generators(rng, n);
    HRep h = facets_of(gens, n);
    ConeGenerators back = double_description(h.facets, h.equalities, n);
    for (const auto& g : gens) EXPECT_TRUE(lp_in_cone(back.all_generators(), g, n));
    for (const auto& g : back.all_generators()) EXPECT_TRUE(lp_in_cone(gens, g, n));
  }
}

TEST(Membership, LpAgreementProperty) {
  Rng rng(32);
  for (int i = 0; i < 60; ++i) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(2, 4));
    auto gens = random_generators(rng, n);
    ConvexCone c = ConvexCone::polyhedral(n, gens);
    for (int j = 0; j < 10; ++j) {
      QVector x = rng.vector(n, -4, 4);
      EXPECT_EQ(contains(c, x), lp_in_cone(gens, x, n));
    }
  }
}

TEST(Membership, PolyhedralClassification) {
  ConvexCone c = square_cone();
  EXPECT_EQ(membership(c, v({0, 0, 1})), Membership::Inside);
  EXPECT_EQ(membership(c, v({1, 0, 1})), Membership::Boundary);
  EXPECT_EQ(membership(c, v({0, 0, 0})), Membership::Boundary);
  EXPECT_EQ(membership(c, v({2, 0, 1})), Membership::Outside);
  // {0} is its own relative interior.
  EXPECT_EQ(membership(ConvexCone::zero(2), v({0, 0})), Membership::Inside);
  EXPECT_EQ(membership(ConvexCone::zero(2), v({1, 0})), Membership::Outside);
}

TEST(Membership, Quadratic) {
  ConvexCone c = lorentz3();
  EXPECT_EQ(membership(c, v({2, 1, 1})), Membership::Inside);
  EXPECT_EQ(membership(c, v({5, 3, 4})), Membership::Boundary);
  EXPECT_EQ(membership(c, v({-2, 1, 1})), Membership::Outside);
  EXPECT_EQ(membership(c, v({1, 1, 1})), Membership::Outside);
  EXPECT_TRUE(is_pointed(c));
  EXPECT_EQ(linear_span(c).size(), 3u);
}

TEST(Quadratic, ValidationRejectsBadData) {
  EXPECT_EQ(code_of([] { ConvexCone::quadratic(diag({1, 1, -1}), v({1, 0, 0})); }), ErrorCode::InvalidCone);
  EXPECT_EQ(code_of([] { ConvexCone::quadratic(diag({1, -1, -1}), v({0, 1, 0})); }), ErrorCode::InvalidCone);
  QMatrix asym = diag({1, -1});
  asym(0, 1) = 1;
  EXPECT_EQ(code_of([&] { ConvexCone::quadratic(asym, v({1, 0})); }), ErrorCode::InvalidCone);
}

TEST(Quadratic, SupportSubspace) {
  // Forward cone of the (x0, x1) plane inside R^3.
  ConvexCone c = ConvexCone::quadratic(diag({1, -1, 0}), v({1, 0, 0}), Basis{v({1, 0, 0}), v({0, 1, 0})});
  EXPECT_TRUE(contains(c, v({2, 1, 0})));
  EXPECT_FALSE(contains(c, v({2, 1, 1})));
  EXPECT_EQ(linear_span(c).size(), 2u);
}

TEST(Inertia, Diagonalization) {
  Inertia i = inertia(diag({1, -1, -1, 0}));
  EXPECT_EQ(i.positive, 1u);
  EXPECT_EQ(i.negative, 2u);
  EXPECT_EQ(i.zero, 1u);
  // [[0, 1], [1, 0]] has one positive and one negative square.
  QMatrix hyp(2, 2);
  hyp(0, 1) = 1;
  hyp(1, 0) = 1;
  Inertia j = inertia(hyp);
  EXPECT_EQ(j.positive, 1u);
  EXPECT_EQ(j.negative, 1u);
}

TEST(Inertia, CongruenceInvariantProperty) {
  Rng rng(33);
  for (int i = 0; i < 30; ++i) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(1, 5));
    QVector d = rng.vector(n, -2, 2);
    QMatrix p = rng.invertible(n);
    Inertia a = inertia(QMatrix::diagonal(d));
    Inertia b = inertia(p.transpose() * QMatrix::diagonal(d) * p);
    EXPECT_EQ(a.positive, b.positive);
    EXPECT_EQ(a.negative, b.negative);
    EXPECT_EQ(a.zero, b.zero);
  }
}

TEST(IntersectSubspace, Polyhedral) {
  ConvexCone sub = intersect_subspace(square_cone(), {v({1, 0, 0}), v({0, 0, 1})});
  ASSERT_TRUE(sub.is_polyhedral());
  EXPECT_EQ(sub.ambient_dim(), 2u);
  EXPECT_EQ(sub.as_polyhedral().minimal.rays, (std::vector<QVector>{v({-1, 1}), v({1, 1})}));
}

TEST(IntersectSubspace, QuadraticCases) {
  ConvexCone c = lorentz3();
  // Timelike plane: stays quadratic.
  ConvexCone timelike = intersect_subspace(c, {v({1, 0, 0}), v({0, 1, 0})});
  EXPECT_TRUE(timelike.is_quadratic());
  EXPECT_TRUE(contains(timelike, v({1, 1})));
  EXPECT_FALSE(contains(timelike, v({1, 2})));
  // Timelike line: a half-line.
  ConvexCone line = intersect_subspace(c, {v({1, 0, 0})});
  ASSERT_TRUE(line.is_polyhedral());
  EXPECT_EQ(line.as_polyhedral().minimal.rays, std::vector<QVector>{v({1})});
  // Null plane: the form degenerates, leaving the light ray.
  ConvexCone null_plane = intersect_subspace(c, {v({1, 1, 0}), v({0, 0, 1})});
  ASSERT_TRUE(null_plane.is_polyhedral());
  EXPECT_EQ(null_plane.as_polyhedral().minimal.rays, std::vector<QVector>{v({1, 0})});
  // Spacelike plane: only the origin.
  EXPECT_TRUE(intersect_subspace(c, {v({0, 1, 0}), v({0, 0, 1})}).is_zero());
}

TEST(IntersectSubspace, CommutesWithMembershipProperty) {
  Rng rng(34);
  std::vector<ConvexCone> cones = {lorentz3(), square_cone()};
  for (int i = 0; i < 20; ++i) cones.push_back(ConvexCone::polyhedral(3, random_generators(rng, 3)));
  for (const auto& c : cones) {
    for (int j = 0; j < 5; ++j) {
      Basis s = span_basis({rng.vector(3, -2, 2), rng.vector(3, -2, 2)}, 3);
      if (s.empty()) continue;
      ConvexCone sub = intersect_subspace(c, s);
      ConvexCone back = embed(sub, s, 3);
      for (int k = 0; k < 10; ++k) {
        QVector coeffs = rng.vector(s.size(), -3, 3);
        QVector x = combine(s, coeffs, 3);
        EXPECT_EQ(contains(sub, coeffs), contains(c, x));
        EXPECT_EQ(contains(back, x), contains(c, x));
      }
    }
  }
}

TEST(SameCone, Examples) {
  EXPECT_TRUE(same_cone(ConvexCone::polyhedral(2, {v({1, 0}), v({0, 1})}),
                        ConvexCone::polyhedral(2, {v({2, 0}), v({1, 1}), v({0, 3})})));
  EXPECT_FALSE(same_cone(ConvexCone::polyhedral(2, {v({1, 0})}), ConvexCone::polyhedral(2, {v({0, 1})})));
  ConvexCone scaled = ConvexCone::quadratic(diag({3, -3, -3}), v({2, 0, 0}));
  EXPECT_TRUE(same_cone(lorentz3(), scaled));
  EXPECT_FALSE(same_cone(lorentz3(), lorentz3().negated()));
}

TEST(Cone, NegatedAndImage) {
  ConvexCone c = lorentz3();
  EXPECT_TRUE(contains(c.negated(), v({-2, 1, 0})));
  QMatrix boost = QMatrix::from_rows({v({2, 1, 0}), v({1, 1, 0}), v({0, 0, 1})}, 3);  // det 1, not Lorentz
  ConvexCone img = c.image(boost);
  EXPECT_TRUE(contains(img, boost.apply(v({5, 3, 4}))));
  EXPECT_FALSE(contains(img, boost.apply(v({1, 2, 0}))));
  ConvexCone sq = square_cone();
  ConvexCone p = sq.image(boost);
  for (const auto& g : sq.as_polyhedral().generators) EXPECT_TRUE(contains(p, boost.apply(g)));
}

TEST(Pointed, EquivalentToTrivialLinealityProperty) {
  Rng rng(35);
  for (int i = 0; i < 80; ++i) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    ConvexCone c = ConvexCone::polyhedral(n, random_generators(rng, n));
    EXPECT_EQ(is_pointed(c), lineality(c).empty());
  }
}

TEST(Invariance, Reflect) {
  ConvexCone c = ConvexCone::polyhedral(2, {v({1, 1}), v({1, -1})});
  EXPECT_EQ(certify_invariance(c, diag({1, -1}), InvarianceMode::Reflect).kind, CertificateKind::Exact);
  Certificate bad = certify_invariance(c, diag({-1, 1}), InvarianceMode::Reflect);
  EXPECT_EQ(bad.kind, CertificateKind::Failed);
  EXPECT_NE(bad.detail.find("reflect certificate failed"), std::string::npos);
  EXPECT_EQ(certify_invariance(lorentz3(), diag({1, -1, 1}), InvarianceMode::Reflect).kind, CertificateKind::Exact);
  EXPECT_EQ(certify_invariance(lorentz3(), diag({-1, 1, 1}), InvarianceMode::Reflect).kind, CertificateKind::Failed);
}

TEST(Invariance, Flow) {
  // Diagonal flows preserve the orthant; a rotation does not.
  ConvexCone orthant = ConvexCone::polyhedral(2, {v({1, 0}), v({0, 1})});
  EXPECT_EQ(certify_invariance(orthant, diag({1, -1}), InvarianceMode::Flow).kind, CertificateKind::Exact);
  QMatrix rot(2, 2);
  rot(0, 1) = -1;
  rot(1, 0) = 1;
  EXPECT_EQ(certify_invariance(orthant, rot, InvarianceMode::Flow).kind, CertificateKind::Failed);
  // Boosts and rotations preserve the light cone; a dilation of x0 alone does not.
  QMatrix boost(3, 3);
  boost(0, 1) = 1;
  boost(1, 0) = 1;
  EXPECT_EQ(certify_invariance(lorentz3(), boost, InvarianceMode::Flow).kind, CertificateKind::Exact);
  QMatrix spin(3, 3);
  spin(1, 2) = -1;
  spin(2, 1) = 1;
  EXPECT_EQ(certify_invariance(lorentz3(), spin, InvarianceMode::Flow).kind, CertificateKind::Exact);
  EXPECT_EQ(certify_invariance(lorentz3(), diag({1, 0, 0}), InvarianceMode::Flow).kind, CertificateKind::Failed);
}

TEST(Invariance, ApproximateConeIsNumeric) {
  ZooEntry e = zoo_entry("sl2_approx");
  QMatrix adh = ad(e.datum.algebra, e.datum.h_elem).matrix;
  Certificate c = certify_invariance(e.datum.cone, adh, InvarianceMode::Flow);
  EXPECT_EQ(c.kind, CertificateKind::Numeric);
  EXPECT_LE(c.max_violation, 1.0 / 20);
  // Without the approximation allowance the same cone fails.
  ConvexCone strict = ConvexCone::polyhedral(3, e.datum.cone.as_polyhedral().generators);
  EXPECT_EQ(certify_invariance(strict, adh, InvarianceMode::Flow).kind, CertificateKind::Failed);
}

TEST(Invariance, FlowImpliesSampledMembershipProperty) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto c = wedge::testing::random_abelian(seed, 6);
    ASSERT_EQ(certify_invariance(c.datum.cone, c.datum.h_op, InvarianceMode::Flow).kind, CertificateKind::Exact);
    NumericCone num(c.datum.cone);
    Eigen::MatrixXd h = to_eigen(c.datum.h_op);
    for (double t : {-1.5, -0.3, 0.7, 2.0}) {
      Eigen::MatrixXd flow = (t * h).exp();
      for (const auto& g : generators(c.datum.cone)) {
        EXPECT_GE(num.margin(flow * to_eigen(g)), -1e-9) << "seed " << seed << " t " << t;
      }
    }
  }
}

TEST(NumericCone, MarginSigns) {
  NumericCone sq(square_cone());
  EXPECT_GT(sq.margin(to_eigen(v({0, 0, 1}))), 0.1);
  EXPECT_NEAR(sq.margin(to_eigen(v({1, 0, 1}))), 0.0, 1e-12);
  EXPECT_LT(sq.margin(to_eigen(v({2, 0, 1}))), -0.1);
  NumericCone lc(lorentz3());
  EXPECT_GT(lc.margin(to_eigen(v({2, 1, 0}))), 0.1);
  EXPECT_LT(lc.margin(to_eigen(v({-2, 1, 0}))), -0.1);
  EXPECT_LT(lc.margin(to_eigen(v({1, 2, 0}))), -0.1);
  // Off-support directions are negative.
  NumericCone ray(ConvexCone::polyhedral(2, {v({1, 0})}));
  EXPECT_LT(ray.margin(to_eigen(v({1, 1}))), -0.1);
  // Scale invariance.
  EXPECT_NEAR(sq.margin(to_eigen(v({0, 1, 3}))), sq.margin(to_eigen(v({0, 7, 21}))), 1e-12);
}

TEST(Cone, ApproximationTolerance) {
  ConvexCone c = square_cone().with_approximation(Rational(1, 10));
  EXPECT_TRUE(c.approximate());
  EXPECT_EQ(c.approximation_tolerance(), Rational(1, 10));
  EXPECT_FALSE(c == square_cone());
  EXPECT_EQ(code_of([] { square_cone().with_approximation(Rational(-1)); }), ErrorCode::InvalidArgument);
}
