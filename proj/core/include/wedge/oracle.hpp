#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wedge/wedge.hpp"

namespace wedge {

struct ComplexVector {
  Eigen::VectorXd real_part;
  Eigen::VectorXd imag_part;
};

struct OracleConfig {
  int samples = 257;  // grid points on [0, pi], endpoints included
  double tol = 1e-9;
  std::uint64_t seed = 1;

  void validate() const;  // throws InvalidArgument
};

/// Evaluates y -> e^{i y h_op} x. Uses exact eigenprojections when h_op
/// diagonalizes over Q, the complex matrix exponential otherwise.
class WickPropagator {
 public:
  explicit WickPropagator(const QMatrix& h_op);
  ComplexVector apply(const Eigen::VectorXd& x, double y) const;
  bool spectral() const { return spectral_; }

 private:
  bool spectral_ = false;
  Eigen::MatrixXd eigvecs_, eigvecs_inv_;
  Eigen::VectorXd eigvals_;
  Eigen::MatrixXd h_;
};

ComplexVector wick_flow(const QMatrix& h_op, const QVector& x, double y);

struct TubeVerdict {
  bool member = false;
  /// Smallest cone margin of the imaginary part over the grid (positive
  /// infinity if it vanished everywhere).
  double margin = 0.0;
  double parity_residual = 0.0;  // |e^{i pi h} x - tau x| / (1 + |x|)
  std::optional<double> witness_y;  // set when the cone condition failed
  bool parity_failed = false;
};

/// Numeric membership in the tube trace by sampling y on the grid.
class TubeOracle {
 public:
  TubeOracle(const TubeDatum& datum, const OracleConfig& config);

  TubeVerdict check(const Eigen::VectorXd& x) const;
  TubeVerdict check(const QVector& x) const;
  ComplexVector flow(const Eigen::VectorXd& x, double y) const;

 private:
  OracleConfig config_;
  NumericCone cone_;
  Eigen::MatrixXd tau_;
  WickPropagator propagator_;
  std::vector<Eigen::MatrixXcd> grid_flows_;  // generic path only
};

TubeVerdict tube_membership(const TubeDatum& datum, const QVector& x, const OracleConfig& config = {});

struct Disagreement {
  std::size_t index;
  std::string kind;
  QVector x;
  bool exact_member;
  TubeVerdict oracle;
};

struct AgreementReport {
  std::size_t total = 0;
  std::size_t compared = 0;
  std::size_t excluded = 0;  // exact non-members within the margin buffer
  std::size_t exact_members = 0;
  std::size_t disagreements = 0;
  std::map<std::string, std::size_t> by_kind;
  std::vector<Disagreement> examples;  // first few disagreements, in sample order
  OracleConfig config;

  bool ok() const { return disagreements == 0; }
  double agreement() const { return compared == 0 ? 1.0 : 1.0 - double(disagreements) / double(compared); }
};

/// Compares the closed-form tube cone with the oracle on `count` seeded
/// samples. Throws InvarianceFailed if the datum's cone certificates fail.
AgreementReport fuzz_compare(const TubeDatum& datum, const OracleConfig& config = {}, std::size_t count = 1000);
AgreementReport fuzz_compare(const ModularDatum& datum, const OracleConfig& config = {}, std::size_t count = 1000);

/// Signed distance proxy of x to the closed-form cone, from its exact split
/// x = x_plus + x_edge + x_minus + r with r orthogonal to the support:
/// the most negative of -|r|, the margin of x_plus in C_plus and of x_minus
/// in C_minus (each scaled by the part's norm), all over |x|.
double closed_form_margin(const SplitCone& cone, const QVector& x);

}  // namespace wedge
