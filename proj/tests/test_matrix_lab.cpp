#include <gtest/gtest.h>

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "wedge/error.hpp"
#include "wedge/matrix_lab.hpp"

using namespace wedge;

namespace {

// |[[1, a], [0, 1]]| from the 2x2 singular value formula.
double unipotent_norm(double a) { return (std::abs(a) + std::sqrt(a * a + 4.0)) / 2.0; }

// |[[eps, 1], [0, eps]]| as the square root of the top eigenvalue of g^T g.
double g_norm(double eps) {
  const double tr = 1.0 + 2.0 * eps * eps;
  const double det = std::pow(eps, 4);
  return std::sqrt((tr + std::sqrt(tr * tr - 4.0 * det)) / 2.0);
}

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

}  // namespace

TEST(JordanExample, MatchesIndependentFormulas) {
  for (double eps : {0.05, 0.1, 0.3, 1.0}) {
    JordanExample ex = jordan_example(eps, 400);
    EXPECT_NEAR(ex.g_norm, g_norm(eps), 1e-12) << eps;
    EXPECT_NEAR(ex.g_norm_closed_form, g_norm(eps), 1e-12) << eps;
    EXPECT_NEAR(ex.exp_norm, 1.0, 1e-12) << eps;
    // (Y + Y^*)/2 = log(eps/|g|) 1 + [[0, c], [c, 0]] with c = 1/(2 eps).
    EXPECT_NEAR(ex.dissipativity.lambda_max, std::log(eps / g_norm(eps)) + 0.5 / eps, 1e-10) << eps;
    EXPECT_NEAR(ex.lambda_max_closed_form, ex.dissipativity.lambda_max, 1e-10) << eps;
  }
}

TEST(JordanExample, TrajectoryMatchesClosedForm) {
  const double eps = 0.1;
  JordanExample ex = jordan_example(eps, 201);
  const double r = eps / g_norm(eps);
  double best = 0.0;
  for (const auto& p : ex.trajectory.points) {
    double expected = std::pow(r, p.t) * unipotent_norm(p.t / eps);
    EXPECT_NEAR(p.norm, expected, 1e-10 * expected) << p.t;
    best = std::max(best, expected);
  }
  EXPECT_NEAR(ex.trajectory.max_norm, best, 1e-10);
  EXPECT_GT(ex.trajectory.max_norm, 1.5);
  ASSERT_TRUE(ex.trajectory.first_exceed);
  EXPECT_GT(*ex.trajectory.first_exceed, 0.0);
  EXPECT_FALSE(ex.dissipativity.dissipative);
}

TEST(JordanExample, RejectsNonPositiveEps) {
  EXPECT_EQ(code_of([] { jordan_example(0.0); }), ErrorCode::InvalidArgument);
}

TEST(Dissipativity, Examples) {
  CMatrix minus = -CMatrix::Identity(3, 3);
  Dissipativity d = is_dissipative(minus);
  EXPECT_TRUE(d.dissipative);
  EXPECT_NEAR(d.lambda_max, -1.0, 1e-14);

  CMatrix skew(2, 2);
  skew << 0.0, 1.0, -1.0, 0.0;
  EXPECT_TRUE(is_dissipative(skew).dissipative);
  Trajectory t = contraction_trajectory(skew, linspace(0.0, 5.0, 50));
  EXPECT_FALSE(t.first_exceed);
  EXPECT_NEAR(t.max_norm, 1.0, 1e-12);

  EXPECT_EQ(code_of([] { is_dissipative(CMatrix::Zero(2, 3)); }), ErrorCode::DimensionMismatch);
}

TEST(Linspace, Endpoints) {
  auto xs = linspace(-1.0, 1.0, 5);
  ASSERT_EQ(xs.size(), 5u);
  EXPECT_EQ(xs.front(), -1.0);
  EXPECT_EQ(xs.back(), 1.0);
  EXPECT_DOUBLE_EQ(xs[2], 0.0);
}

TEST(StripBound, DiagonalExample) {
  // H = diag(0, 1), A = E_12: alpha(z) A = e^{-iz} E_12, so |alpha(x + iy)| = e^{y}
  // and the bound max(1, e^{beta}) is attained on the top edge.
  CMatrix h = CMatrix::Zero(2, 2);
  h(1, 1) = 1.0;
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 1) = 1.0;
  StripGrid grid;
  grid.beta = 0.8;
  BoundReport r = strip_bound_check(a, h, grid);
  EXPECT_NEAR(r.norm_a, 1.0, 1e-14);
  EXPECT_NEAR(r.norm_a_beta, std::exp(0.8), 1e-12);
  EXPECT_NEAR(r.max_norm, std::exp(0.8), 1e-12);
  EXPECT_LE(r.slack, 1e-12);
  EXPECT_LE(r.covariance_residual, 1e-12);
}

TEST(StripBound, RandomCasesRespectBound) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    StripCase c = random_strip_case(seed, 3);
    EXPECT_TRUE(c.h.isApprox(c.h.adjoint()));
    EXPECT_GT(c.beta, 0.0);
    EXPECT_LE(c.beta, 2.0);
    StripGrid grid;
    grid.beta = c.beta;
    BoundReport r = strip_bound_check(c.a, c.h, grid, seed);
    EXPECT_LE(r.slack, 1e-8) << seed;
    EXPECT_LE(r.covariance_residual, 1e-10) << seed;
    EXPECT_EQ(r.grid_points, 400u);
  }
}

TEST(StripBound, Errors) {
  CMatrix h(2, 2);
  h << 0.0, 1.0, 0.0, 0.0;
  CMatrix a = CMatrix::Identity(2, 2);
  EXPECT_EQ(code_of([&] { strip_bound_check(a, h, {}); }), ErrorCode::NotHermitian);
  EXPECT_EQ(code_of([&] { strip_bound_check(CMatrix::Identity(3, 3), CMatrix::Identity(2, 2), {}); }),
            ErrorCode::DimensionMismatch);
  StripGrid bad;
  bad.beta = 0.0;
  EXPECT_EQ(code_of([&] { strip_bound_check(a, CMatrix::Identity(2, 2), bad); }), ErrorCode::InvalidArgument);
}

TEST(Euler, ConvergesMonotonically) {
  CMatrix a(2, 2);
  a << -1.0, 2.0, 0.0, -3.0;
  EulerTable t = euler_limit_check(a, 1.0, {4, 16, 64, 256, 1024});
  ASSERT_EQ(t.rows.size(), 5u);
  EXPECT_TRUE(t.monotone);
  EXPECT_LT(t.rows.back().error, 1e-3);
  // First-order method: quadrupling n roughly quarters the error.
  EXPECT_NEAR(t.rows[3].error / t.rows[4].error, 4.0, 0.5);

  CMatrix expected = a.exp();
  CMatrix approx = (CMatrix::Identity(2, 2) - a / 1024.0).inverse();
  CMatrix p = CMatrix::Identity(2, 2);
  for (int i = 0; i < 1024; ++i) p = p * approx;
  EXPECT_NEAR(t.rows.back().error, Eigen::JacobiSVD<CMatrix>(p - expected).singularValues()(0), 1e-12);
}

TEST(Euler, Errors) {
  // 1 - (t/n) A = 0 for A = (n/t) 1.
  CMatrix a = 4.0 * CMatrix::Identity(2, 2);
  EXPECT_EQ(code_of([&] { euler_limit_check(a, 1.0, {4}); }), ErrorCode::SingularResolvent);
  EXPECT_EQ(code_of([&] { euler_limit_check(CMatrix::Zero(2, 3), 1.0, {4}); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] { euler_limit_check(a, -1.0, {4}); }), ErrorCode::InvalidArgument);
}

TEST(OperatorNorm, MatchesSingularValues) {
  CMatrix m(2, 2);
  m << 3.0, 0.0, 4.0, 5.0;
  // Singular values of [[3, 0], [4, 5]] are sqrt(45) and sqrt(5).
  EXPECT_NEAR(operator_norm(m), std::sqrt(45.0), 1e-12);
}
