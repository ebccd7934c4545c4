#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

namespace wedge {

using CMatrix = Eigen::MatrixXcd;

/// Largest singular value.
double operator_norm(const CMatrix& m);

struct Dissipativity {
  bool dissipative = false;
  double lambda_max = 0.0;  // of (Y + Y^*) / 2
};
Dissipativity is_dissipative(const CMatrix& y, double tol = 1e-12);

struct TrajectoryPoint {
  double t;
  double norm;  // |e^{tY}|
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  std::optional<double> first_exceed;  // first t with norm > 1 + tol
  double max_norm = 0.0;
  double t_at_max = 0.0;
};

Trajectory contraction_trajectory(const CMatrix& y, const std::vector<double>& t_grid, double tol = 1e-9);
/// n equally spaced points from a to b inclusive.
std::vector<double> linspace(double a, double b, std::size_t n);

/// Closed strip 0 <= Im z <= beta, sampled on an nx-by-ny grid with
/// Re z in [-x_range, x_range].
struct StripGrid {
  double beta = 1.0;
  int nx = 20;
  int ny = 20;
  double x_range = 2.0;

  void validate() const;
};

struct BoundReport {
  double norm_a = 0.0;
  double norm_a_beta = 0.0;
  double bound = 0.0;     // max(|A|, |A_beta|)
  double max_norm = 0.0;  // max over the grid of |alpha(z)|
  double slack = 0.0;     // (max_norm - bound) / bound
  double covariance_residual = 0.0;
  std::size_t grid_points = 0;
  std::size_t covariance_pairs = 0;
};

/// alpha(z) = e^{izH} A e^{-izH} over the strip grid, compared with
/// max(|A|, |e^{-beta H} A e^{beta H}|). Covariance is checked at
/// `covariance_pairs` seeded (z, t) with U_t from an independent exponential.
/// Throws NotHermitian.
BoundReport strip_bound_check(const CMatrix& a, const CMatrix& h, const StripGrid& grid, std::uint64_t seed = 0,
                              int covariance_pairs = 16);

struct StripCase {
  CMatrix a, h;
  double beta;
};
/// Entries of A and H uniform in [-1, 1] (H made Hermitian), beta in (0, 2].
StripCase random_strip_case(std::uint64_t seed, int n);

struct EulerRow {
  int n;
  double error;  // |(1 - (t/n) A)^{-n} - e^{tA}|
};

struct EulerTable {
  std::vector<EulerRow> rows;
  bool monotone = true;
  bool dissipative = false;
};

/// Throws SingularResolvent when 1 - (t/n) A is not invertible.
EulerTable euler_limit_check(const CMatrix& a, double t, const std::vector<int>& n_list);

/// The 2x2 matrix g = [[eps, 1], [0, eps]], its normalization s = g / |g| and
/// the logarithm Y = log(eps / |g|) 1 + [[0, 1/eps], [0, 0]] of s.
struct JordanExample {
  double eps = 0.0;
  CMatrix g, y;
  double g_norm = 0.0;
  double g_norm_closed_form = 0.0;  // sqrt(eps^2 + 1/2 + sqrt(1/4 + eps^2))
  double exp_norm = 0.0;            // |e^Y|
  Dissipativity dissipativity;
  double lambda_max_closed_form = 0.0;  // log(eps / |g|) + 1 / (2 eps)
  Trajectory trajectory;
};

JordanExample jordan_example(double eps, std::size_t grid_points = 1000);

}  // namespace wedge
