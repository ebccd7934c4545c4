#include "wedge/wedge.hpp"

#include "wedge/error.hpp"

namespace wedge {

namespace {

Basis concat(std::initializer_list<const Basis*> parts) {
  Basis out;
  for (const Basis* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

Check from_certificate(const Certificate& c) { return {c.passed(), c.kind, c.detail}; }

Check exact_check(bool ok, std::string detail) { return {ok, CertificateKind::Exact, std::move(detail)}; }

// Weakest of two certificate kinds: Failed < Numeric < Exact.
CertificateKind weaker(CertificateKind a, CertificateKind b) {
  auto rank_of = [](CertificateKind k) { return k == CertificateKind::Failed ? 0 : k == CertificateKind::Numeric ? 1 : 2; };
  return rank_of(a) <= rank_of(b) ? a : b;
}

SplitCone make_split(std::size_t n, Basis q_plus, Basis edge, Basis q_minus, const ConvexCone& cone) {
  SplitCone s;
  s.dim = n;
  s.c_plus = intersect_subspace(cone, q_plus);
  s.c_minus = intersect_subspace(cone.negated(), q_minus);
  s.q_plus = std::move(q_plus);
  s.edge = std::move(edge);
  s.q_minus = std::move(q_minus);
  return s;
}

void check_shapes(std::size_t n, const QMatrix& tau, const QMatrix& h_op, const ConvexCone& cone) {
  if (tau.rows() != n || tau.cols() != n || h_op.rows() != n || h_op.cols() != n || cone.ambient_dim() != n) {
    throw Error(ErrorCode::DimensionMismatch, "tau, h and the cone must act on the same space");
  }
}

}  // namespace

TubeDatum tube_datum(const ModularDatum& datum) {
  return {datum.tau.matrix, ad(datum.algebra, datum.h_elem).matrix, datum.cone};
}

// ---------------------------------------------------------------------------
// SplitCone

ConvexCone SplitCone::c_plus_ambient() const { return embed(c_plus, q_plus, dim); }
ConvexCone SplitCone::c_minus_ambient() const { return embed(c_minus, q_minus, dim); }

std::vector<QVector> SplitCone::generators() const {
  if (!polyhedral()) throw Error(ErrorCode::InvalidArgument, "split cone has a quadratic part");
  std::vector<QVector> g = wedge::generators(c_plus_ambient());
  for (const auto& v : wedge::generators(c_minus_ambient())) g.push_back(v);
  for (const auto& e : edge) {
    g.push_back(e);
    g.push_back(negate(e));
  }
  return g;
}

ConvexCone SplitCone::assembled() const { return ConvexCone::polyhedral(dim, generators()); }

Basis SplitCone::span() const {
  Basis p = linear_span(c_plus_ambient());
  Basis m = linear_span(c_minus_ambient());
  return span_basis(concat({&p, &edge, &m}), dim);
}

Basis SplitCone::lineality() const {
  Basis p = wedge::lineality(c_plus_ambient());
  Basis m = wedge::lineality(c_minus_ambient());
  return span_basis(concat({&p, &edge, &m}), dim);
}

Membership membership(const SplitCone& cone, const QVector& x) {
  if (x.size() != cone.dim) throw Error(ErrorCode::DimensionMismatch, "membership: vector length");
  Basis all = concat({&cone.q_plus, &cone.edge, &cone.q_minus});
  auto c = coordinates(all, x, cone.dim);
  if (!c) return Membership::Outside;
  const std::size_t np = cone.q_plus.size();
  const std::size_t ne = cone.edge.size();
  QVector cp(c->begin(), c->begin() + static_cast<std::ptrdiff_t>(np));
  QVector cm(c->begin() + static_cast<std::ptrdiff_t>(np + ne), c->end());
  Membership mp = membership(cone.c_plus, cp);
  Membership mm = membership(cone.c_minus, cm);
  if (mp == Membership::Outside || mm == Membership::Outside) return Membership::Outside;
  if (mp == Membership::Inside && mm == Membership::Inside) return Membership::Inside;
  return Membership::Boundary;
}

bool contains(const SplitCone& cone, const QVector& x) { return membership(cone, x) != Membership::Outside; }

// ---------------------------------------------------------------------------
// Reports

bool ClosureVerdict::ok() const {
  for (const auto& [name, c] : relations) {
    if (!c.passed) return false;
  }
  return true;
}

bool WedgeReport::ok() const {
  for (const auto& [name, c] : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::map<std::string, Check> certify_datum(const ModularDatum& datum, const NumericOptions& options) {
  const std::size_t n = datum.algebra.dim();
  std::map<std::string, Check> out;
  ValidationReport v = validate(datum.algebra);
  std::string algebra_detail = "antisymmetry and Jacobi hold";
  if (!v.ok()) {
    const auto& names = datum.algebra.basis_names();
    algebra_detail = std::to_string(v.antisymmetry.size()) + " antisymmetry and " + std::to_string(v.jacobi.size()) +
                     " Jacobi failures";
    if (!v.jacobi.empty()) {
      const auto& f = v.jacobi.front();
      algebra_detail += "; first Jacobi failure at (" + names[f.i] + ", " + names[f.j] + ", " + names[f.k] + ")";
    } else {
      const auto& f = v.antisymmetry.front();
      algebra_detail += "; first antisymmetry failure at (" + names[f.i] + ", " + names[f.j] + ")";
    }
  }
  out["datum.algebra_valid"] = exact_check(v.ok(), algebra_detail);
  bool involutive = datum.tau.matrix * datum.tau.matrix == QMatrix::identity(n);
  bool automorphism = is_automorphism(datum.algebra, datum.tau.matrix);
  out["datum.tau_automorphism"] = exact_check(involutive && automorphism,
                                              !involutive     ? "tau^2 != id"
                                              : !automorphism ? "tau does not preserve the bracket"
                                                              : "tau is an involutive automorphism");
  bool fixed = datum.tau.matrix.apply(datum.h_elem) == datum.h_elem;
  out["datum.h_fixed"] = exact_check(fixed, fixed ? "tau(h) = h" : "tau(h) != h");
  out["datum.reflect_invariance"] = from_certificate(
      certify_invariance(datum.cone, Rational(-1) * datum.tau.matrix, InvarianceMode::Reflect, options));
  out["datum.flow_invariance"] = from_certificate(
      certify_invariance(datum.cone, ad(datum.algebra, datum.h_elem).matrix, InvarianceMode::Flow, options));
  bool pointed = is_pointed(datum.cone);
  out["datum.pointed"] = exact_check(pointed, pointed ? "cone is pointed" : "cone contains a line");
  return out;
}

std::map<std::string, Check> certify_tube(const TubeDatum& datum, const NumericOptions& options) {
  const std::size_t n = datum.dim();
  if (datum.h_op.rows() != n || datum.h_op.cols() != n || datum.tau.cols() != n || datum.cone.ambient_dim() != n) {
    throw Error(ErrorCode::DimensionMismatch, "tube datum shapes disagree");
  }
  std::map<std::string, Check> out;
  bool involutive = datum.tau * datum.tau == QMatrix::identity(n);
  out["tube.tau_involution"] = exact_check(involutive, involutive ? "tau^2 = id" : "tau^2 != id");
  bool commute = datum.tau * datum.h_op == datum.h_op * datum.tau;
  out["tube.commute"] = exact_check(commute, commute ? "tau commutes with h_op" : "tau and h_op do not commute");
  out["tube.reflect_invariance"] =
      from_certificate(certify_invariance(datum.cone, Rational(-1) * datum.tau, InvarianceMode::Reflect, options));
  out["tube.flow_invariance"] =
      from_certificate(certify_invariance(datum.cone, datum.h_op, InvarianceMode::Flow, options));
  bool pointed = is_pointed(datum.cone);
  out["tube.pointed"] = exact_check(pointed, pointed ? "cone is pointed" : "cone contains a line");
  return out;
}

// ---------------------------------------------------------------------------
// Constructions

SplitCone tube_inv(std::size_t space_dim, const QMatrix& tau, const QMatrix& h_op, const ConvexCone& cone) {
  check_shapes(space_dim, tau, h_op, cone);
  if (!(tau * tau == QMatrix::identity(space_dim))) throw Error(ErrorCode::NotInvolution, "tau^2 != id");
  if (!(tau * h_op == h_op * tau)) throw Error(ErrorCode::NotCompatible, "h does not commute with tau");
  const QMatrix id = QMatrix::identity(space_dim);
  auto solutions = [&](const QMatrix& a, const QMatrix& b) { return span_basis(kernel(vstack({a, b})), space_dim); };
  return make_split(space_dim, solutions(h_op - id, tau + id), solutions(h_op, tau - id),
                    solutions(h_op + id, tau + id), cone);
}

SplitCone tube_inv(const TubeDatum& datum) { return tube_inv(datum.dim(), datum.tau, datum.h_op, datum.cone); }

Basis unit_algebra(const ModularDatum& datum) {
  const std::size_t n = datum.algebra.dim();
  Basis fixed = tau_split(datum.tau.matrix).h_part;
  Basis centralizer = kernel(ad(datum.algebra, datum.h_elem).matrix);
  return intersect_spans(fixed, centralizer, n);
}

WedgeReport structure_wedge(const ModularDatum& datum, const NumericOptions& options) {
  const std::size_t n = datum.algebra.dim();
  if (datum.h_elem.size() != n) throw Error(ErrorCode::DimensionMismatch, "h has the wrong length");
  const LinearEndo adh = ad(datum.algebra, datum.h_elem);
  check_shapes(n, datum.tau.matrix, adh.matrix, datum.cone);
  TauSplit split = tau_split(datum.algebra, datum.tau);
  if (datum.tau.matrix.apply(datum.h_elem) != datum.h_elem) throw Error(ErrorCode::NotCompatible, "tau(h) != h");
  GradedDecomposition grading = eigenspaces(adh, {}, true);

  WedgeReport r;
  r.name = datum.name;
  r.checks = certify_datum(datum, options);
  r.invariance_uncertified = r.checks["datum.reflect_invariance"].kind == CertificateKind::Numeric ||
                             r.checks["datum.flow_invariance"].kind == CertificateKind::Numeric;

  r.wedge = make_split(n, intersect_spans(grading.piece(1), split.q_part, n),
                       intersect_spans(grading.piece(0), split.h_part, n),
                       intersect_spans(grading.piece(-1), split.q_part, n), datum.cone);
  const SplitCone& w = r.wedge;
  ConvexCone plus = w.c_plus_ambient();
  ConvexCone minus = w.c_minus_ambient();
  r.span_plus = linear_span(plus);
  r.span_minus = linear_span(minus);
  r.g_red_basis = concat({&r.span_minus, &w.edge, &r.span_plus});
  r.unit_algebra = unit_algebra(datum);
  r.isolated = plus.is_zero() && minus.is_zero();

  SplitCone other = tube_inv(tube_datum(datum));
  bool agree = other == w && same_cone(other.c_plus_ambient(), plus) && same_cone(other.c_minus_ambient(), minus);
  r.checks["route_agreement"] =
      exact_check(agree, agree ? "eigenspace route and stacked-kernel route give identical cone data"
                               : "eigenspace route and stacked-kernel route disagree");

  bool edge_ok = same_span(w.lineality(), r.unit_algebra, n);
  r.checks["edge_identity"] = exact_check(edge_ok, edge_ok ? "wedge cap -wedge = h cap g_0(h)"
                                                           : "lineality of the wedge differs from h cap g_0(h)");
  bool direct = rank(QMatrix::from_columns(r.g_red_basis, n)) == r.g_red_basis.size();
  r.checks["direct_sum"] = exact_check(direct, direct ? "supports are independent" : "supports overlap");
  r.checks["c_plus_pointed"] = exact_check(is_pointed(plus), "C_plus pointedness");
  r.checks["c_minus_pointed"] = exact_check(is_pointed(minus), "C_minus pointedness");

  for (const auto& [name, c] : verify_g_red(r, datum.algebra).relations) r.checks["g_red." + name] = c;

  LieWedgeVerdict lw = verify_lie_wedge(r, datum.algebra, options);
  std::string detail;
  for (const auto& d : lw.details) detail += (detail.empty() ? "" : "; ") + d;
  r.checks["lie_wedge"] = {lw.passed, lw.kind, detail.empty() ? "edge is empty" : detail};
  return r;
}

// ---------------------------------------------------------------------------
// Verification

ClosureVerdict verify_g_red(const WedgeReport& report, const LieAlgebra& algebra) {
  const std::size_t n = algebra.dim();
  const Basis& qp = report.span_plus;
  const Basis& qm = report.span_minus;
  const Basis& h0 = report.wedge.edge;
  ClosureVerdict v;

  auto closed = [&](const Basis& xs, const Basis& ys, const Basis& target, const std::string& what) {
    for (const auto& x : xs)
      for (const auto& y : ys) {
        QVector b = algebra.bracket(x, y);
        if (!in_span(target, b, n)) {
          return exact_check(false, what + " fails: [" + format_vector(x) + ", " + format_vector(y) +
                                        "] = " + format_vector(b));
        }
      }
    return exact_check(true, what + " holds");
  };

  v.relations["q_plus_abelian"] = closed(qp, qp, {}, "[q+, q+] = 0");
  v.relations["q_minus_abelian"] = closed(qm, qm, {}, "[q-, q-] = 0");
  v.relations["mixed_in_edge"] = closed(qm, qp, h0, "[q-, q+] in h0");
  Basis mixed;
  for (const auto& a : qp)
    for (const auto& b : qm) mixed.push_back(algebra.bracket(a, b));
  Check plus = closed(mixed, qp, qp, "[[q+, q-], q+] in q+");
  Check minus = closed(mixed, qm, qm, "[[q+, q-], q-] in q-");
  v.relations["double_bracket"] = plus.passed ? minus : plus;
  Check gp = closed(h0, qp, qp, "[h0, q+] in q+");
  Check gm = closed(h0, qm, qm, "[h0, q-] in q-");
  v.relations["grading"] = gp.passed ? gm : gp;
  return v;
}

LieWedgeVerdict verify_lie_wedge(const LieAlgebra& algebra, const ConvexCone& wedge, const Basis& edge_basis,
                                 const NumericOptions& options) {
  LieWedgeVerdict v;
  v.passed = true;
  for (const auto& x : edge_basis) {
    Certificate c = certify_invariance(wedge, ad(algebra, x).matrix, InvarianceMode::Flow, options);
    v.kind = weaker(v.kind, c.kind);
    v.passed = v.passed && c.passed();
    v.details.push_back("ad " + format_vector(x) + ": " + c.detail);
  }
  return v;
}

LieWedgeVerdict verify_lie_wedge(const WedgeReport& report, const LieAlgebra& algebra,
                                 const NumericOptions& options) {
  const SplitCone& w = report.wedge;
  if (w.polyhedral()) return verify_lie_wedge(algebra, w.assembled(), w.edge, options);

  // The grading is preserved by ad x for x in the edge, so e^{ad x} acts on
  // each summand separately.
  const std::size_t n = algebra.dim();
  LieWedgeVerdict v;
  v.passed = true;
  auto restricted = [&](const QMatrix& a, const Basis& sub) -> std::optional<QMatrix> {
    QMatrix r(sub.size(), sub.size());
    for (std::size_t j = 0; j < sub.size(); ++j) {
      auto c = coordinates(sub, a.apply(sub[j]), n);
      if (!c) return std::nullopt;
      for (std::size_t i = 0; i < sub.size(); ++i) r(i, j) = (*c)[i];
    }
    return r;
  };
  for (const auto& x : w.edge) {
    QMatrix a = ad(algebra, x).matrix;
    auto rp = restricted(a, w.q_plus);
    auto re = restricted(a, w.edge);
    auto rm = restricted(a, w.q_minus);
    std::string head = "ad " + format_vector(x) + ": ";
    if (!rp || !re || !rm) {
      v.passed = false;
      v.kind = CertificateKind::Failed;
      v.details.push_back(head + "does not preserve the grading");
      continue;
    }
    for (auto [cone, r, label] : {std::tuple{&w.c_plus, &*rp, "C_plus"}, std::tuple{&w.c_minus, &*rm, "C_minus"}}) {
      if (r->rows() == 0) continue;
      Certificate c = certify_invariance(*cone, *r, InvarianceMode::Flow, options);
      v.kind = weaker(v.kind, c.kind);
      v.passed = v.passed && c.passed();
      v.details.push_back(head + label + ": " + c.detail);
    }
  }
  return v;
}

}  // namespace wedge
