#include "wedge/matrix_lab.hpp"

#include <cmath>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "wedge/error.hpp"

namespace wedge {

using Complex = std::complex<double>;

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

Dissipativity is_dissipative(const CMatrix& y, double tol) {
  if (y.rows() != y.cols()) throw Error(ErrorCode::DimensionMismatch, "is_dissipative: matrix not square");
  CMatrix herm = (y + y.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  double lmax = es.eigenvalues().maxCoeff();
  return {lmax <= tol, lmax};
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out;
  if (n == 1) return {a};
  for (std::size_t i = 0; i < n; ++i) out.push_back(a + (b - a) * double(i) / double(n - 1));
  return out;
}

Trajectory contraction_trajectory(const CMatrix& y, const std::vector<double>& t_grid, double tol) {
  if (y.rows() != y.cols()) throw Error(ErrorCode::DimensionMismatch, "contraction_trajectory: matrix not square");
  Trajectory tr;
  for (double t : t_grid) {
    CMatrix ty = t * y;
    double norm = operator_norm(ty.exp());
    tr.points.push_back({t, norm});
    if (!tr.first_exceed && norm > 1.0 + tol) tr.first_exceed = t;
    if (norm > tr.max_norm) {
      tr.max_norm = norm;
      tr.t_at_max = t;
    }
  }
  return tr;
}

void StripGrid::validate() const {
  if (!(beta > 0)) throw Error(ErrorCode::InvalidArgument, "strip width beta must be positive");
  if (nx < 2 || ny < 2) throw Error(ErrorCode::InvalidArgument, "strip grid needs nx, ny >= 2");
  if (!(x_range >= 0)) throw Error(ErrorCode::InvalidArgument, "x_range must be nonnegative");
}

BoundReport strip_bound_check(const CMatrix& a, const CMatrix& h, const StripGrid& grid, std::uint64_t seed,
                              int covariance_pairs) {
  grid.validate();
  const Eigen::Index n = h.rows();
  if (h.cols() != n || a.rows() != n || a.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "strip_bound_check: A and H must be square of equal size");
  }
  double herm_defect = operator_norm(h - h.adjoint());
  if (herm_defect > 1e-12 * std::max(1.0, operator_norm(h))) {
    throw Error(ErrorCode::NotHermitian, "H differs from its adjoint by " + std::to_string(herm_defect));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const CMatrix& v = es.eigenvectors();
  const Eigen::VectorXd& lambda = es.eigenvalues();
  const CMatrix b = v.adjoint() * a * v;

  // alpha(z) in the eigenbasis of H: B_jk e^{iz(l_j - l_k)}.
  auto alpha = [&](Complex z) {
    CMatrix m(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k) m(j, k) = b(j, k) * std::exp(Complex(0, 1) * z * (lambda(j) - lambda(k)));
    return CMatrix(v * m * v.adjoint());
  };

  BoundReport r;
  r.norm_a = operator_norm(a);
  CMatrix beta_h = grid.beta * h;
  r.norm_a_beta = operator_norm((-beta_h).exp() * a * beta_h.exp());
  r.bound = std::max(r.norm_a, r.norm_a_beta);
  for (double x : linspace(-grid.x_range, grid.x_range, static_cast<std::size_t>(grid.nx)))
    for (double y : linspace(0.0, grid.beta, static_cast<std::size_t>(grid.ny))) {
      r.max_norm = std::max(r.max_norm, operator_norm(alpha(Complex(x, y))));
      ++r.grid_points;
    }
  r.slack = r.bound > 0 ? (r.max_norm - r.bound) / r.bound : r.max_norm;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(-grid.x_range, grid.x_range), uy(0.0, grid.beta), ut(-1.0, 1.0);
  for (int i = 0; i < covariance_pairs; ++i) {
    Complex z(ux(rng), uy(rng));
    double t = ut(rng);
    CMatrix gen = Complex(0, t) * h;
    CMatrix u = gen.exp();
    CMatrix az = alpha(z);
    double res = operator_norm(alpha(z + t) - u * az * u.adjoint()) / std::max(1.0, operator_norm(az));
    r.covariance_residual = std::max(r.covariance_residual, res);
    ++r.covariance_pairs;
  }
  return r;
}

StripCase random_strip_case(std::uint64_t seed, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "random_strip_case: n must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  StripCase c;
  c.a = CMatrix(n, n);
  c.h = CMatrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c.a(i, j) = Complex(u(rng), u(rng));
  for (int i = 0; i < n; ++i) {
    c.h(i, i) = u(rng);
    for (int j = i + 1; j < n; ++j) {
      c.h(i, j) = Complex(u(rng), u(rng));
      c.h(j, i) = std::conj(c.h(i, j));
    }
  }
  c.beta = 2.0 - std::uniform_real_distribution<double>(0.0, 2.0)(rng);
  return c;
}

EulerTable euler_limit_check(const CMatrix& a, double t, const std::vector<int>& n_list) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "euler_limit_check: matrix not square");
  if (!(t > 0)) throw Error(ErrorCode::InvalidArgument, "euler_limit_check: t must be positive");
  EulerTable table;
  table.dissipative = is_dissipative(a, 1e-12).dissipative;
  const CMatrix id = CMatrix::Identity(a.rows(), a.cols());
  CMatrix ta = t * a;
  const CMatrix target = ta.exp();
  for (int n : n_list) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "euler_limit_check: n must be positive");
    Eigen::FullPivLU<CMatrix> lu(id - (t / n) * a);
    if (!lu.isInvertible()) {
      throw Error(ErrorCode::SingularResolvent, "1 - (t/n) A is singular at n = " + std::to_string(n));
    }
    CMatrix step = lu.inverse();
    CMatrix power = id;
    for (int e = n; e > 0; e >>= 1) {
      if (e & 1) power = power * step;
      step = step * step;
    }
    double err = operator_norm(power - target);
    if (!table.rows.empty() && err > table.rows.back().error) table.monotone = false;
    table.rows.push_back({n, err});
  }
  return table;
}

JordanExample jordan_example(double eps, std::size_t grid_points) {
  if (!(eps > 0)) throw Error(ErrorCode::InvalidArgument, "jordan_example: eps must be positive");
  JordanExample ex;
  ex.eps = eps;
  ex.g = CMatrix(2, 2);
  ex.g << eps, 1.0, 0.0, eps;
  ex.g_norm = operator_norm(ex.g);
  ex.g_norm_closed_form = std::sqrt(eps * eps + 0.5 + std::sqrt(0.25 + eps * eps));
  // eps^{-1} g = 1 + N with N nilpotent, so log(g / |g|) = log(eps / |g|) 1 + N.
  ex.y = CMatrix::Identity(2, 2) * std::log(eps / ex.g_norm);
  ex.y(0, 1) += 1.0 / eps;
  ex.exp_norm = operator_norm(ex.y.exp());
  ex.dissipativity = is_dissipative(ex.y);
  ex.lambda_max_closed_form = std::log(eps / ex.g_norm) + 1.0 / (2.0 * eps);
  ex.trajectory = contraction_trajectory(ex.y, linspace(0.0, 1.0, grid_points));
  return ex;
}

}  // namespace wedge
