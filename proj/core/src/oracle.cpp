#include "wedge/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "wedge/error.hpp"

namespace wedge {

void OracleConfig::validate() const {
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "oracle grid needs at least 2 samples");
  if (!(tol > 0)) throw Error(ErrorCode::InvalidArgument, "oracle tolerance must be positive");
}

// ---------------------------------------------------------------------------
// Wick rotation

WickPropagator::WickPropagator(const QMatrix& h_op) : h_(to_eigen(h_op)) {
  if (!h_op.is_square()) throw Error(ErrorCode::DimensionMismatch, "h_op must be square");
  const std::size_t n = h_op.rows();
  GradedDecomposition pieces = eigenspaces(LinearEndo{h_op, EndoKind::Generic});
  if (!pieces.complete) return;
  Basis eigvecs;
  std::vector<double> vals;
  for (const auto& p : pieces.pieces) {
    for (const auto& v : p.basis) {
      eigvecs.push_back(v);
      vals.push_back(p.eigenvalue.get_d());
    }
  }
  QMatrix v = QMatrix::from_columns(eigvecs, n);
  eigvecs_ = to_eigen(v);
  eigvecs_inv_ = to_eigen(*inverse(v));
  eigvals_ = Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
  spectral_ = true;
}

ComplexVector WickPropagator::apply(const Eigen::VectorXd& x, double y) const {
  if (spectral_) {
    Eigen::VectorXd c = eigvecs_inv_ * x;
    Eigen::VectorXd cr = (y * eigvals_).array().cos() * c.array();
    Eigen::VectorXd ci = (y * eigvals_).array().sin() * c.array();
    return {eigvecs_ * cr, eigvecs_ * ci};
  }
  Eigen::MatrixXcd gen = std::complex<double>(0.0, y) * h_.cast<std::complex<double>>();
  Eigen::VectorXcd z = gen.exp() * x.cast<std::complex<double>>();
  return {z.real(), z.imag()};
}

ComplexVector wick_flow(const QMatrix& h_op, const QVector& x, double y) {
  if (x.size() != h_op.cols()) throw Error(ErrorCode::DimensionMismatch, "wick_flow: vector length");
  return WickPropagator(h_op).apply(to_eigen(x), y);
}

// ---------------------------------------------------------------------------
// Tube membership

namespace {

double grid_point(int k, int samples) { return std::numbers::pi * double(k) / double(samples - 1); }

}  // namespace

TubeOracle::TubeOracle(const TubeDatum& datum, const OracleConfig& config)
    : config_(config), cone_(datum.cone), tau_(to_eigen(datum.tau)), propagator_(datum.h_op) {
  config_.validate();
  if (datum.h_op.rows() != datum.dim() || datum.cone.ambient_dim() != datum.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "oracle datum shapes disagree");
  }
  if (!propagator_.spectral()) {
    Eigen::MatrixXcd h = to_eigen(datum.h_op).cast<std::complex<double>>();
    for (int k = 0; k < config_.samples; ++k) {
      Eigen::MatrixXcd gen = std::complex<double>(0.0, grid_point(k, config_.samples)) * h;
      grid_flows_.push_back(gen.exp());
    }
  }
}

ComplexVector TubeOracle::flow(const Eigen::VectorXd& x, double y) const { return propagator_.apply(x, y); }

TubeVerdict TubeOracle::check(const Eigen::VectorXd& x) const {
  TubeVerdict v;
  const double nx = x.norm();
  const double vanish = config_.tol * (1.0 + nx);
  v.margin = std::numeric_limits<double>::infinity();
  ComplexVector at_pi;
  for (int k = 0; k < config_.samples; ++k) {
    const double y = grid_point(k, config_.samples);
    ComplexVector z;
    if (grid_flows_.empty()) {
      z = propagator_.apply(x, y);
    } else {
      Eigen::VectorXcd w = grid_flows_[static_cast<std::size_t>(k)] * x.cast<std::complex<double>>();
      z = {w.real(), w.imag()};
    }
    if (k == config_.samples - 1) at_pi = z;
    if (z.imag_part.norm() <= vanish) continue;
    double m = cone_.margin(z.imag_part);
    if (m < v.margin) {
      v.margin = m;
      if (m < -config_.tol) v.witness_y = y;
    }
  }
  Eigen::VectorXd diff = at_pi.real_part - tau_ * x;
  v.parity_residual = std::sqrt(diff.squaredNorm() + at_pi.imag_part.squaredNorm()) / (1.0 + nx);
  v.parity_failed = v.parity_residual > config_.tol;
  v.member = !v.witness_y && !v.parity_failed;
  return v;
}

TubeVerdict TubeOracle::check(const QVector& x) const { return check(to_eigen(x)); }

TubeVerdict tube_membership(const TubeDatum& datum, const QVector& x, const OracleConfig& config) {
  if (x.size() != datum.dim()) throw Error(ErrorCode::DimensionMismatch, "tube_membership: vector length");
  return TubeOracle(datum, config).check(x);
}

// ---------------------------------------------------------------------------
// Closed-form margin

namespace {

class ClosedFormProbe {
 public:
  explicit ClosedFormProbe(const SplitCone& cone)
      : cone_(cone), plus_(cone.c_plus_ambient()), minus_(cone.c_minus_ambient()) {
    basis_ = cone.q_plus;
    basis_.insert(basis_.end(), cone.edge.begin(), cone.edge.end());
    basis_.insert(basis_.end(), cone.q_minus.begin(), cone.q_minus.end());
    if (!basis_.empty()) left_inv_ = left_inverse(basis_, cone.dim);
  }

  double margin(const QVector& x) const {
    const std::size_t n = cone_.dim;
    const double nx = to_eigen(x).norm();
    if (nx == 0) return 0.0;
    QVector c = basis_.empty() ? QVector{} : left_inv_.apply(x);
    QVector r = sub(x, combine(basis_, c, n));
    const std::size_t np = cone_.q_plus.size();
    const std::size_t ne = cone_.edge.size();
    QVector cp(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(np));
    QVector cm(c.begin() + static_cast<std::ptrdiff_t>(np + ne), c.end());
    double worst = -to_eigen(r).norm();
    auto part = [&](const NumericCone& cone, const Basis& b, const QVector& coeffs) {
      Eigen::VectorXd xp = to_eigen(combine(b, coeffs, n));
      double norm = xp.norm();
      if (norm > 0) worst = std::min(worst, cone.margin(xp) * norm);
    };
    part(plus_, cone_.q_plus, cp);
    part(minus_, cone_.q_minus, cm);
    return worst / nx;
  }

 private:
  const SplitCone& cone_;
  NumericCone plus_, minus_;
  Basis basis_;
  QMatrix left_inv_;
};

std::vector<QVector> part_generators(const ConvexCone& cone) {
  if (cone.is_polyhedral()) return generators(cone);
  return {cone.as_quadratic().axis};
}

}  // namespace

double closed_form_margin(const SplitCone& cone, const QVector& x) {
  if (x.size() != cone.dim) throw Error(ErrorCode::DimensionMismatch, "closed_form_margin: vector length");
  return ClosedFormProbe(cone).margin(x);
}

// ---------------------------------------------------------------------------
// Fuzzing

AgreementReport fuzz_compare(const TubeDatum& datum, const OracleConfig& config, std::size_t count) {
  config.validate();
  const std::size_t n = datum.dim();
  Certificate reflect = certify_invariance(datum.cone, Rational(-1) * datum.tau, InvarianceMode::Reflect);
  Certificate flow = certify_invariance(datum.cone, datum.h_op, InvarianceMode::Flow);
  if (!reflect.passed()) throw Error(ErrorCode::InvarianceFailed, "refusing to fuzz: " + reflect.detail);
  if (!flow.passed()) throw Error(ErrorCode::InvarianceFailed, "refusing to fuzz: " + flow.detail);
  if (!is_pointed(datum.cone)) throw Error(ErrorCode::InvarianceFailed, "refusing to fuzz: cone is not pointed");

  SplitCone closed = tube_inv(datum);
  ClosedFormProbe probe(closed);
  TubeOracle oracle(datum, config);

  std::vector<QVector> cone_gens = part_generators(closed.c_plus_ambient());
  for (const auto& g : part_generators(closed.c_minus_ambient())) cone_gens.push_back(g);
  std::vector<QVector> gens = cone_gens;
  for (const auto& e : closed.edge) {
    gens.push_back(e);
    gens.push_back(negate(e));
  }

  std::mt19937_64 rng(config.seed);
  auto rint = [&rng](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  auto uniform = [&]() {
    QVector v(n);
    for (auto& x : v) x = Rational(rint(-5, 5));
    return v;
  };
  auto span_sample = [&](const Basis& b) {
    QVector v = zero_vector(n);
    for (const auto& e : b) axpy(v, Rational(rint(-4, 4)), e);
    return v;
  };
  auto interior = [&]() {
    QVector v = zero_vector(n);
    for (const auto& g : cone_gens) axpy(v, Rational(rint(1, 5)), g);
    for (const auto& e : closed.edge) axpy(v, Rational(rint(-5, 5)), e);
    return v;
  };
  auto pick = [&]() { return gens[static_cast<std::size_t>(rint(0, long(gens.size()) - 1))]; };

  static const char* kKinds[] = {"generator", "interior", "inward", "outward", "structured", "uniform"};
  AgreementReport report;
  report.config = config;
  for (std::size_t i = 0; i < count; ++i) {
    std::string kind = kKinds[i % 6];
    QVector x;
    if (gens.empty() && kind != "structured") kind = "uniform";
    if (kind == "generator") {
      x = pick();
    } else if (kind == "interior") {
      x = interior();
    } else if (kind == "inward") {
      x = pick();
      axpy(x, Rational(1, 100), interior());
    } else if (kind == "outward") {
      x = pick();
      axpy(x, Rational(1, 100), uniform());
    } else if (kind == "structured") {
      x = add(add(span_sample(closed.q_plus), span_sample(closed.edge)), span_sample(closed.q_minus));
    } else {
      x = uniform();
    }
    ++report.total;
    const bool exact = contains(closed, x);
    if (!exact && probe.margin(x) >= -10.0 * config.tol) {
      ++report.excluded;
      continue;
    }
    ++report.compared;
    if (exact) ++report.exact_members;
    TubeVerdict verdict = oracle.check(x);
    if (verdict.member != exact) {
      ++report.disagreements;
      ++report.by_kind[kind];
      if (report.examples.size() < 10) report.examples.push_back({i, kind, x, exact, verdict});
    }
  }
  return report;
}

AgreementReport fuzz_compare(const ModularDatum& datum, const OracleConfig& config, std::size_t count) {
  return fuzz_compare(tube_datum(datum), config, count);
}

}  // namespace wedge
