#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wedge/linalg.hpp"

namespace wedge {

/// H-representation {x : e.x = 0 for e in equalities, f.x >= 0 for f in facets}.
/// Produced by double description, so the facet list is irredundant.
struct HRep {
  Basis equalities;
  std::vector<QVector> facets;
};

/// Minimal V-representation: cone = span(lineality) + cone(rays), rays extreme
/// modulo the lineality space, stored as primitive integer vectors in
/// lexicographic order.
struct ConeGenerators {
  Basis lineality;
  std::vector<QVector> rays;

  std::vector<QVector> all_generators() const;  // rays, then +/- lineality
};

struct PolyhedralCone {
  std::vector<QVector> generators;  // as supplied
  HRep hrep;
  ConeGenerators minimal;
};

/// {x in span(support) : x^T form x >= 0, functional . x >= 0}, where the form
/// restricted to the support has exactly one positive square and the
/// functional is Q-dual to a timelike vector, so the set is one closed nappe
/// (plus the radical of the form, if any).
struct QuadraticCone {
  QMatrix form;
  QVector functional;
  Basis support;
  bool explicit_support = false;

  // Derived, in support coordinates.
  QMatrix support_form;
  QVector support_functional;
  QVector axis;  // ambient timelike vector inside the cone
};

enum class Membership { Inside, Boundary, Outside };
const char* to_string(Membership m);

/// Pointed or non-pointed closed convex cone, polyhedral or quadratic.
/// Immutable after construction; all derived data is computed eagerly.
class ConvexCone {
 public:
  static ConvexCone zero(std::size_t dim);
  static ConvexCone polyhedral(std::size_t dim, std::vector<QVector> generators);
  static ConvexCone quadratic(QMatrix form, QVector functional, std::optional<Basis> support = {});

  std::size_t ambient_dim() const { return dim_; }
  bool is_polyhedral() const { return std::holds_alternative<PolyhedralCone>(data_); }
  bool is_quadratic() const { return std::holds_alternative<QuadraticCone>(data_); }
  const PolyhedralCone& as_polyhedral() const { return std::get<PolyhedralCone>(data_); }
  const QuadraticCone& as_quadratic() const { return std::get<QuadraticCone>(data_); }
  /// True for the zero cone {0}.
  bool is_zero() const;

  /// Non-zero for finitely generated stand-ins of non-polyhedral cones: the
  /// numeric slack that sampled invariance checks may use.
  const Rational& approximation_tolerance() const { return approx_tol_; }
  bool approximate() const { return approx_tol_ != 0; }
  ConvexCone with_approximation(Rational tol) const;

  ConvexCone negated() const;
  /// Image under an invertible linear map.
  ConvexCone image(const QMatrix& m) const;

  friend bool operator==(const ConvexCone& a, const ConvexCone& b);

 private:
  std::size_t dim_ = 0;
  std::variant<PolyhedralCone, QuadraticCone> data_;
  Rational approx_tol_ = 0;
};

// --- exact LP and double description -------------------------------------

/// A nonnegative solution of a * lambda = b, if one exists (exact phase-I
/// simplex, Bland's rule).
std::optional<QVector> lp_feasible(const QMatrix& a, const QVector& b);
/// x in cone(generators), decided by LP.
bool lp_in_cone(const std::vector<QVector>& generators, const QVector& x, std::size_t dim);

/// Generators of {x : inequalities . x >= 0, equalities . x = 0}.
ConeGenerators double_description(const std::vector<QVector>& inequalities, const Basis& equalities,
                                  std::size_t dim);
/// H-representation of cone(generators).
HRep facets_of(const std::vector<QVector>& generators, std::size_t dim);

// --- cone operations -------------------------------------------------------

Membership membership(const ConvexCone& cone, const QVector& x);
bool contains(const ConvexCone& cone, const QVector& x);

/// The cone intersected with span(subspace), in the coordinates of the given
/// subspace basis. Degenerate quadratic restrictions come back polyhedral.
ConvexCone intersect_subspace(const ConvexCone& cone, const Basis& subspace);
/// Inverse of the coordinate change in intersect_subspace.
ConvexCone embed(const ConvexCone& sub_cone, const Basis& subspace, std::size_t ambient_dim);

/// Set equality, decided exactly (polyhedral by mutual containment, quadratic
/// by comparing supports, forms up to positive scale, and nappes). Mixed
/// variants compare unequal.
bool same_cone(const ConvexCone& a, const ConvexCone& b);

struct Inertia {
  std::size_t positive = 0, negative = 0, zero = 0;
};
/// Sylvester inertia of a symmetric matrix via exact congruence diagonalization.
Inertia inertia(const QMatrix& symmetric);

bool is_pointed(const ConvexCone& cone);
Basis linear_span(const ConvexCone& cone);
/// cone intersected with -cone.
Basis lineality(const ConvexCone& cone);

/// Polyhedral generators if the cone is polyhedral (rays then +/- lineality).
std::vector<QVector> generators(const ConvexCone& cone);

enum class InvarianceMode { Flow, Reflect };
enum class CertificateKind { Exact, Numeric, Failed };
const char* to_string(CertificateKind k);

struct Certificate {
  CertificateKind kind = CertificateKind::Failed;
  std::string detail;
  double max_violation = 0.0;  // numeric mode only
  bool passed() const { return kind != CertificateKind::Failed; }
};

struct NumericOptions {
  double tol = 1e-9;
  std::vector<double> times{1.0, -1.0, 0.5, -0.5, 2.0, -2.0};
  int quadratic_samples = 64;
  unsigned seed = 7;
};

/// Reflect: checks a(cone) = cone. Flow: checks e^{t a}(cone) = cone for all
/// real t, exactly where a complete criterion exists and by sampling
/// otherwise.
Certificate certify_invariance(const ConvexCone& cone, const QMatrix& a, InvarianceMode mode,
                               const NumericOptions& options = {});

// --- floating-point view ---------------------------------------------------

/// Floating image of a cone used for margin queries. margin(v) is scale
/// invariant: >= 0 inside, < 0 outside, roughly a signed distance for unit v.
class NumericCone {
 public:
  explicit NumericCone(const ConvexCone& cone);
  double margin(const Eigen::VectorXd& v) const;
  std::size_t ambient_dim() const { return dim_; }

 private:
  std::size_t dim_;
  bool quadratic_;
  Eigen::MatrixXd facets_;        // unit rows
  Eigen::MatrixXd equalities_;    // orthonormal rows
  Eigen::MatrixXd support_;       // orthonormal columns
  Eigen::MatrixXd form_;
  Eigen::VectorXd functional_;
  double form_norm_ = 1.0;
};

Eigen::MatrixXd to_eigen(const QMatrix& m);
Eigen::VectorXd to_eigen(const QVector& v);

}  // namespace wedge
