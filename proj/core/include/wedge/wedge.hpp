#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wedge/algebra.hpp"
#include "wedge/cone.hpp"

namespace wedge {

/// Lie algebra with an involutive automorphism tau, an element h fixed by tau,
/// and a pointed cone C_U invariant under -tau and e^{t ad h}.
struct ModularDatum {
  std::string name;
  LieAlgebra algebra;
  LinearEndo tau;
  QVector h_elem;
  ConvexCone cone;

  friend bool operator==(const ModularDatum&, const ModularDatum&) = default;
};

/// Vector-space data (E, tau, h_op, W) of the abelian tube construction.
struct TubeDatum {
  QMatrix tau;
  QMatrix h_op;
  ConvexCone cone;

  std::size_t dim() const { return tau.rows(); }

  friend bool operator==(const TubeDatum&, const TubeDatum&) = default;
};

/// The same datum seen as a vector space with h_op = ad h.
TubeDatum tube_datum(const ModularDatum& datum);

/// Direct sum C_plus + span(edge) + C_minus with C_plus in span(q_plus) and
/// C_minus in span(q_minus); c_plus and c_minus are stored in the coordinates
/// of those (canonical echelon) bases.
struct SplitCone {
  std::size_t dim = 0;
  Basis q_plus, edge, q_minus;
  ConvexCone c_plus, c_minus;

  ConvexCone c_plus_ambient() const;
  ConvexCone c_minus_ambient() const;
  bool polyhedral() const { return c_plus.is_polyhedral() && c_minus.is_polyhedral(); }
  /// Generators of the whole cone; requires polyhedral().
  std::vector<QVector> generators() const;
  /// The sum as one polyhedral cone; requires polyhedral().
  ConvexCone assembled() const;
  /// Support of the sum.
  Basis span() const;
  /// wedge intersected with -wedge.
  Basis lineality() const;

  friend bool operator==(const SplitCone&, const SplitCone&) = default;
};

Membership membership(const SplitCone& cone, const QVector& x);
bool contains(const SplitCone& cone, const QVector& x);

struct Check {
  bool passed = false;
  CertificateKind kind = CertificateKind::Exact;
  std::string detail;
};

struct ClosureVerdict {
  std::map<std::string, Check> relations;
  bool ok() const;
};

struct LieWedgeVerdict {
  bool passed = false;
  CertificateKind kind = CertificateKind::Exact;  // weakest certificate used
  std::vector<std::string> details;
};

struct WedgeReport {
  std::string name;
  SplitCone wedge;
  Basis span_plus, span_minus;  // C_plus - C_plus and C_minus - C_minus, ambient
  Basis g_red_basis;            // span_minus, edge, span_plus
  Basis unit_algebra;
  std::map<std::string, Check> checks;
  bool isolated = false;                // C_plus = C_minus = {0}
  bool invariance_uncertified = false;  // some datum certificate is only numeric

  bool ok() const;
};

/// Throws unless tau is an involutive automorphism fixing h and ad h is
/// semisimple with rational spectrum. Invariance certificates are not
/// thrown on; they land in the report.
WedgeReport structure_wedge(const ModularDatum& datum, const NumericOptions& options = {});

/// (W cap q_1) + E_0^+ + (-W cap q_-1), with q_{+-1} = ker(h_op -+ 1) cap ker(tau + 1)
/// and E_0^+ = ker(h_op) cap ker(tau - 1).
SplitCone tube_inv(std::size_t space_dim, const QMatrix& tau, const QMatrix& h_op, const ConvexCone& cone);
SplitCone tube_inv(const TubeDatum& datum);

ClosureVerdict verify_g_red(const WedgeReport& report, const LieAlgebra& algebra);

/// e^{ad x} W = W for every x in the edge basis.
LieWedgeVerdict verify_lie_wedge(const WedgeReport& report, const LieAlgebra& algebra,
                                 const NumericOptions& options = {});
LieWedgeVerdict verify_lie_wedge(const LieAlgebra& algebra, const ConvexCone& wedge, const Basis& edge_basis,
                                 const NumericOptions& options = {});

/// h cap g_0(h).
Basis unit_algebra(const ModularDatum& datum);

/// Datum-level certificates: tau fixes h, -tau and e^{t ad h} preserve the
/// cone, the cone is pointed, the algebra satisfies Jacobi.
std::map<std::string, Check> certify_datum(const ModularDatum& datum, const NumericOptions& options = {});
/// The same certificates for a bare tube datum: tau involutive and commuting
/// with h_op, cone invariance, pointedness.
std::map<std::string, Check> certify_tube(const TubeDatum& datum, const NumericOptions& options = {});

}  // namespace wedge
