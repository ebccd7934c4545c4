#include "wedge/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "wedge/error.hpp"

namespace wedge {

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Inside: return "Inside";
    case Membership::Boundary: return "Boundary";
    case Membership::Outside: return "Outside";
  }
  return "?";
}

const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::Exact: return "exact";
    case CertificateKind::Numeric: return "numeric";
    case CertificateKind::Failed: return "failed";
  }
  return "?";
}

std::vector<QVector> ConeGenerators::all_generators() const {
  std::vector<QVector> g = rays;
  for (const auto& l : lineality) {
    g.push_back(l);
    g.push_back(negate(l));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Exact LP

std::optional<QVector> lp_feasible(const QMatrix& a, const QVector& b) {
  const std::size_t m = a.rows();
  const std::size_t k = a.cols();
  if (b.size() != m) throw Error(ErrorCode::DimensionMismatch, "lp_feasible: rhs length");
  // Tableau [A | I | b], artificial basis.
  const std::size_t cols = k + m + 1;
  QMatrix t(m, cols);
  for (std::size_t i = 0; i < m; ++i) {
    bool flip = b[i] < 0;
    for (std::size_t j = 0; j < k; ++j) t(i, j) = flip ? Rational(-a(i, j)) : a(i, j);
    t(i, k + i) = 1;
    t(i, cols - 1) = flip ? Rational(-b[i]) : b[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = k + i;
  QVector cost(cols, Rational(0));  // reduced costs of the phase-I objective
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) cost[j] -= t(i, j);
    cost[cols - 1] -= t(i, cols - 1);
  }
  for (;;) {
    std::size_t enter = k;
    for (std::size_t j = 0; j < k; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == k) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t(i, enter) <= 0) continue;
      Rational ratio = t(i, cols - 1) / t(i, enter);
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen for phase I
    Rational piv = t(leave, enter);
    for (std::size_t j = 0; j < cols; ++j) t(leave, j) /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t(i, enter) == 0) continue;
      Rational f = t(i, enter);
      for (std::size_t j = 0; j < cols; ++j) {
        if (t(leave, j) != 0) t(i, j) -= f * t(leave, j);
      }
    }
    Rational f = cost[enter];
    for (std::size_t j = 0; j < cols; ++j) {
      if (t(leave, j) != 0) cost[j] -= f * t(leave, j);
    }
    basis[leave] = enter;
  }
  if (cost[cols - 1] != 0) return std::nullopt;
  QVector lambda(k, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < k) lambda[basis[i]] = t(i, cols - 1);
  }
  return lambda;
}

bool lp_in_cone(const std::vector<QVector>& generators, const QVector& x, std::size_t dim) {
  if (generators.empty()) return is_zero(x);
  return lp_feasible(QMatrix::from_columns(generators, dim), x).has_value();
}

// ---------------------------------------------------------------------------
// Double description

namespace {

struct DdRay {
  QVector v;
  std::vector<bool> tight;
};

bool lex_less(const QVector& a, const QVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<QVector> sorted_unique(std::vector<QVector> vs) {
  std::sort(vs.begin(), vs.end(), lex_less);
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

}  // namespace

ConeGenerators double_description(const std::vector<QVector>& inequalities, const Basis& equalities,
                                  std::size_t dim) {
  // Work inside the solution space of the equalities: x = N c.
  Basis null_basis;
  if (equalities.empty()) {
    for (std::size_t i = 0; i < dim; ++i) null_basis.push_back(unit_vector(dim, i));
  } else {
    null_basis = kernel(QMatrix::from_rows(equalities, dim));
  }
  const std::size_t m = null_basis.size();
  ConeGenerators out;
  if (m == 0) return out;
  QMatrix n_mat = QMatrix::from_columns(null_basis, dim);

  std::vector<QVector> rows;
  for (const auto& a : inequalities) {
    if (a.size() != dim) throw Error(ErrorCode::DimensionMismatch, "double_description: inequality length");
    rows.push_back(n_mat.apply_left(a));
  }
  const std::size_t count = rows.size();

  Basis lin;
  for (std::size_t i = 0; i < m; ++i) lin.push_back(unit_vector(m, i));
  std::vector<DdRay> rays;

  for (std::size_t k = 0; k < count; ++k) {
    const QVector& a = rows[k];
    if (is_zero(a)) {
      for (auto& r : rays) r.tight[k] = true;
      continue;
    }
    std::size_t pick = lin.size();
    for (std::size_t i = 0; i < lin.size(); ++i) {
      if (dot(a, lin[i]) != 0) {
        pick = i;
        break;
      }
    }
    if (pick < lin.size()) {
      QVector l = lin[pick];
      Rational al = dot(a, l);
      if (al < 0) {
        l = negate(l);
        al = -al;
      }
      for (std::size_t i = 0; i < lin.size(); ++i) {
        if (i == pick) continue;
        Rational s = dot(a, lin[i]);
        if (s != 0) {
          axpy(lin[i], -s / al, l);
          lin[i] = primitive(lin[i]);
        }
      }
      for (auto& r : rays) {
        Rational s = dot(a, r.v);
        if (s != 0) {
          axpy(r.v, -s / al, l);
          r.v = primitive(r.v);
        }
        r.tight[k] = true;
      }
      lin.erase(lin.begin() + static_cast<std::ptrdiff_t>(pick));
      DdRay nr{primitive(l), std::vector<bool>(count, false)};
      for (std::size_t j = 0; j < k; ++j) nr.tight[j] = true;
      rays.push_back(std::move(nr));
      continue;
    }

    std::vector<Rational> val(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) val[i] = dot(a, rays[i].v);
    const std::size_t pointed_dim = m - lin.size();
    const std::size_t need = pointed_dim >= 2 ? pointed_dim - 2 : 0;

    std::vector<DdRay> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (val[i] >= 0) {
        DdRay r = rays[i];
        if (val[i] == 0) r.tight[k] = true;
        next.push_back(std::move(r));
      }
    }
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (val[p] <= 0) continue;
      for (std::size_t q = 0; q < rays.size(); ++q) {
        if (val[q] >= 0) continue;
        std::vector<bool> common(count, false);
        std::size_t n_common = 0;
        for (std::size_t j = 0; j < k; ++j) {
          if (rays[p].tight[j] && rays[q].tight[j]) {
            common[j] = true;
            ++n_common;
          }
        }
        if (n_common < need) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          bool superset = true;
          for (std::size_t j = 0; j < k; ++j) {
            if (common[j] && !rays[r].tight[j]) {
              superset = false;
              break;
            }
          }
          if (superset) adjacent = false;
        }
        if (!adjacent) continue;
        QVector v = scale(val[p], rays[q].v);
        axpy(v, -val[q], rays[p].v);
        common[k] = true;
        next.push_back({primitive(v), std::move(common)});
      }
    }
    rays = std::move(next);
  }

  std::vector<QVector> ray_vs;
  for (const auto& r : rays) ray_vs.push_back(primitive(combine(null_basis, r.v, dim)));
  out.rays = sorted_unique(std::move(ray_vs));
  std::vector<QVector> lin_vs;
  for (const auto& l : lin) lin_vs.push_back(combine(null_basis, l, dim));
  out.lineality = span_basis(lin_vs, dim);
  for (auto& l : out.lineality) l = primitive(l);
  return out;
}

HRep facets_of(const std::vector<QVector>& generators, std::size_t dim) {
  ConeGenerators polar = double_description(generators, {}, dim);
  return {std::move(polar.lineality), std::move(polar.rays)};
}

// ---------------------------------------------------------------------------
// ConvexCone

Inertia inertia(const QMatrix& symmetric) {
  if (!symmetric.is_square()) throw Error(ErrorCode::DimensionMismatch, "inertia of non-square matrix");
  QMatrix s = symmetric;
  const std::size_t n = s.rows();
  Inertia out;
  auto swap_index = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < n; ++c) std::swap(s(i, c), s(j, c));
    for (std::size_t r = 0; r < n; ++r) std::swap(s(r, i), s(r, j));
  };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i) {
      if (s(i, i) != 0) {
        piv = i;
        break;
      }
    }
    if (piv == n) {
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          if (s(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
        }
      if (pi == n) {
        out.zero += n - k;
        break;
      }
      // Congruence by e_i -> e_i + e_j makes the diagonal entry 2 s_ij.
      for (std::size_t c = 0; c < n; ++c) s(pi, c) += s(pj, c);
      for (std::size_t r = 0; r < n; ++r) s(r, pi) += s(r, pj);
      piv = pi;
    }
    swap_index(k, piv);
    const Rational d = s(k, k);
    if (d > 0) ++out.positive;
    else ++out.negative;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (s(i, k) == 0) continue;
      Rational f = s(i, k) / d;
      for (std::size_t j = k + 1; j < n; ++j) s(i, j) -= f * s(k, j);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      s(i, k) = 0;
      s(k, i) = 0;
    }
  }
  return out;
}

namespace {

QuadraticCone build_quadratic(QMatrix form, QVector functional, Basis support, bool explicit_support) {
  const std::size_t n = form.rows();
  if (!form.is_square() || functional.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "quadratic cone: form/functional shape");
  }
  if (!(form == form.transpose())) throw Error(ErrorCode::InvalidCone, "quadratic form is not symmetric");
  for (const auto& s : support) {
    if (s.size() != n) throw Error(ErrorCode::DimensionMismatch, "quadratic cone: support vector length");
  }
  if (support.empty()) throw Error(ErrorCode::InvalidCone, "quadratic cone with empty support");
  if (rank(QMatrix::from_columns(support, n)) != support.size()) {
    throw Error(ErrorCode::InvalidCone, "quadratic cone support is not linearly independent");
  }
  QMatrix s = QMatrix::from_columns(support, n);
  QuadraticCone q;
  q.support_form = s.transpose() * form * s;
  q.support_functional = s.apply_left(functional);
  Inertia in = inertia(q.support_form);
  if (in.positive != 1) {
    throw Error(ErrorCode::InvalidCone, "form has " + std::to_string(in.positive) +
                                            " positive squares on the support; Lorentz signature needs exactly 1");
  }
  auto u = solve(q.support_form, q.support_functional);
  if (!u || dot(*u, q.support_form.apply(*u)) <= 0) {
    throw Error(ErrorCode::InvalidCone, "functional is not dual to a timelike vector");
  }
  q.axis = s.apply(*u);
  q.form = std::move(form);
  q.functional = std::move(functional);
  q.support = std::move(support);
  q.explicit_support = explicit_support;
  return q;
}

}  // namespace

ConvexCone ConvexCone::zero(std::size_t dim) { return polyhedral(dim, {}); }

ConvexCone ConvexCone::polyhedral(std::size_t dim, std::vector<QVector> generators) {
  for (const auto& g : generators) {
    if (g.size() != dim) throw Error(ErrorCode::DimensionMismatch, "cone generator length");
    if (wedge::is_zero(g)) throw Error(ErrorCode::InvalidCone, "cone generators must be nonzero");
  }
  ConvexCone c;
  c.dim_ = dim;
  PolyhedralCone p;
  p.hrep = facets_of(generators, dim);
  p.minimal = double_description(p.hrep.facets, p.hrep.equalities, dim);
  p.generators = std::move(generators);
  c.data_ = std::move(p);
  return c;
}

ConvexCone ConvexCone::quadratic(QMatrix form, QVector functional, std::optional<Basis> support) {
  const std::size_t n = form.rows();
  bool explicit_support = support.has_value();
  Basis s;
  if (support) {
    s = *support;
  } else {
    for (std::size_t i = 0; i < n; ++i) s.push_back(unit_vector(n, i));
  }
  ConvexCone c;
  c.dim_ = n;
  c.data_ = build_quadratic(std::move(form), std::move(functional), std::move(s), explicit_support);
  return c;
}

bool ConvexCone::is_zero() const {
  return is_polyhedral() && as_polyhedral().minimal.rays.empty() && as_polyhedral().minimal.lineality.empty();
}

ConvexCone ConvexCone::with_approximation(Rational tol) const {
  if (sgn(tol) < 0) throw Error(ErrorCode::InvalidArgument, "approximation tolerance must be nonnegative");
  ConvexCone c = *this;
  c.approx_tol_ = std::move(tol);
  return c;
}

ConvexCone ConvexCone::negated() const {
  ConvexCone c;
  if (is_polyhedral()) {
    std::vector<QVector> g;
    for (const auto& v : as_polyhedral().generators) g.push_back(wedge::negate(v));
    c = polyhedral(dim_, std::move(g));
  } else {
    const auto& q = as_quadratic();
    c.dim_ = dim_;
    c.data_ = build_quadratic(q.form, wedge::negate(q.functional), q.support, q.explicit_support);
  }
  c.approx_tol_ = approx_tol_;
  return c;
}

ConvexCone ConvexCone::image(const QMatrix& m) const {
  if (m.rows() != dim_ || m.cols() != dim_) throw Error(ErrorCode::DimensionMismatch, "cone image: map shape");
  ConvexCone c;
  if (is_polyhedral()) {
    std::vector<QVector> g;
    for (const auto& v : as_polyhedral().generators) g.push_back(m.apply(v));
    c = polyhedral(dim_, std::move(g));
  } else {
    auto inv = inverse(m);
    if (!inv) throw Error(ErrorCode::InvalidArgument, "image of a quadratic cone needs an invertible map");
    const auto& q = as_quadratic();
    Basis support;
    for (const auto& s : q.support) support.push_back(m.apply(s));
    c.dim_ = dim_;
    c.data_ = build_quadratic(inv->transpose() * q.form * *inv, inv->apply_left(q.functional), std::move(support),
                              true);
  }
  c.approx_tol_ = approx_tol_;
  return c;
}

bool operator==(const ConvexCone& a, const ConvexCone& b) {
  if (a.dim_ != b.dim_ || a.approx_tol_ != b.approx_tol_ || a.data_.index() != b.data_.index()) return false;
  if (a.is_polyhedral()) return a.as_polyhedral().generators == b.as_polyhedral().generators;
  const auto& qa = a.as_quadratic();
  const auto& qb = b.as_quadratic();
  return qa.form == qb.form && qa.functional == qb.functional && qa.support == qb.support &&
         qa.explicit_support == qb.explicit_support;
}

// ---------------------------------------------------------------------------
// Operations

Membership membership(const ConvexCone& cone, const QVector& x) {
  if (x.size() != cone.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "membership: vector length");
  if (cone.is_polyhedral()) {
    const HRep& h = cone.as_polyhedral().hrep;
    for (const auto& e : h.equalities) {
      if (dot(e, x) != 0) return Membership::Outside;
    }
    bool strict = true;
    for (const auto& f : h.facets) {
      int s = sign(dot(f, x));
      if (s < 0) return Membership::Outside;
      if (s == 0) strict = false;
    }
    return strict ? Membership::Inside : Membership::Boundary;
  }
  const auto& q = cone.as_quadratic();
  auto c = coordinates(q.support, x, cone.ambient_dim());
  if (!c) return Membership::Outside;
  int qs = sign(dot(*c, q.support_form.apply(*c)));
  int ls = sign(dot(q.support_functional, *c));
  if (qs < 0 || ls < 0) return Membership::Outside;
  if (qs > 0 && ls > 0) return Membership::Inside;
  return Membership::Boundary;
}

bool contains(const ConvexCone& cone, const QVector& x) { return membership(cone, x) != Membership::Outside; }

namespace {

// Generators of rad(M) intersected with {l >= 0}, in the coordinates of M.
std::vector<QVector> halfspace_of_subspace(const Basis& sub, const QVector& functional) {
  std::vector<QVector> gens;
  std::size_t pick = sub.size();
  for (std::size_t i = 0; i < sub.size(); ++i) {
    if (dot(functional, sub[i]) != 0) {
      pick = i;
      break;
    }
  }
  if (pick == sub.size()) {
    for (const auto& v : sub) {
      gens.push_back(v);
      gens.push_back(negate(v));
    }
    return gens;
  }
  QVector r0 = sub[pick];
  Rational l0 = dot(functional, r0);
  if (l0 < 0) {
    r0 = negate(r0);
    l0 = -l0;
  }
  gens.push_back(r0);
  for (std::size_t i = 0; i < sub.size(); ++i) {
    if (i == pick) continue;
    QVector v = sub[i];
    axpy(v, -dot(functional, v) / l0, r0);
    gens.push_back(v);
    gens.push_back(negate(v));
  }
  return gens;
}

}  // namespace

ConvexCone intersect_subspace(const ConvexCone& cone, const Basis& subspace) {
  const std::size_t n = cone.ambient_dim();
  const std::size_t k = subspace.size();
  for (const auto& b : subspace) {
    if (b.size() != n) throw Error(ErrorCode::DimensionMismatch, "intersect_subspace: basis vector length");
  }
  if (k == 0) return ConvexCone::zero(0);
  QMatrix b = QMatrix::from_columns(subspace, n);
  if (rank(b) != k) throw Error(ErrorCode::InvalidArgument, "intersect_subspace: basis is not independent");

  if (cone.is_polyhedral()) {
    const HRep& h = cone.as_polyhedral().hrep;
    std::vector<QVector> ineq;
    Basis eq;
    for (const auto& f : h.facets) ineq.push_back(b.apply_left(f));
    for (const auto& e : h.equalities) eq.push_back(b.apply_left(e));
    ConeGenerators g = double_description(ineq, eq, k);
    return ConvexCone::polyhedral(k, g.all_generators());
  }

  const auto& q = cone.as_quadratic();
  // K = span(B) intersected with span(S), in B coordinates.
  QMatrix joint(n, k + q.support.size());
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < n; ++r) joint(r, c) = subspace[c][r];
  for (std::size_t c = 0; c < q.support.size(); ++c)
    for (std::size_t r = 0; r < n; ++r) joint(r, k + c) = -q.support[c][r];
  std::vector<QVector> kvs;
  for (const auto& v : kernel(joint)) kvs.push_back(QVector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k)));
  Basis kb = span_basis(kvs, k);
  if (kb.empty()) return ConvexCone::zero(k);

  QMatrix form_b = b.transpose() * q.form * b;
  QVector func_b = b.apply_left(q.functional);
  QMatrix kmat = QMatrix::from_columns(kb, k);
  QMatrix restricted = kmat.transpose() * form_b * kmat;
  QVector func_k = kmat.apply_left(func_b);
  Inertia in = inertia(restricted);

  auto to_b = [&](const std::vector<QVector>& gens_k) {
    std::vector<QVector> out;
    for (const auto& g : gens_k) {
      QVector v = primitive(kmat.apply(g));
      if (!is_zero(v)) out.push_back(v);
    }
    return out;
  };

  if (in.positive == 0) {
    // Form is negative semidefinite here: only its radical can satisfy Q >= 0.
    return ConvexCone::polyhedral(k, to_b(halfspace_of_subspace(kernel(restricted), func_k)));
  }
  if (in.positive == 1 && in.negative == 0) {
    // Q >= 0 everywhere on K: the cone is the half-space {l >= 0}.
    Basis all;
    for (std::size_t i = 0; i < kb.size(); ++i) all.push_back(unit_vector(kb.size(), i));
    return ConvexCone::polyhedral(k, to_b(halfspace_of_subspace(all, func_k)));
  }
  if (in.positive == 1) {
    return ConvexCone::quadratic(form_b, func_b, kb);
  }
  throw Error(ErrorCode::UnsupportedRestriction, "restricted form has more than one positive square");
}

ConvexCone embed(const ConvexCone& sub_cone, const Basis& subspace, std::size_t ambient_dim) {
  const std::size_t k = subspace.size();
  if (sub_cone.ambient_dim() != k) throw Error(ErrorCode::DimensionMismatch, "embed: cone/subspace dimension");
  if (k == 0) return ConvexCone::zero(ambient_dim);
  QMatrix b = QMatrix::from_columns(subspace, ambient_dim);
  if (sub_cone.is_polyhedral()) {
    std::vector<QVector> g;
    for (const auto& v : sub_cone.as_polyhedral().generators) g.push_back(b.apply(v));
    return ConvexCone::polyhedral(ambient_dim, std::move(g)).with_approximation(sub_cone.approximation_tolerance());
  }
  const auto& q = sub_cone.as_quadratic();
  QMatrix p = left_inverse(subspace, ambient_dim);
  Basis support;
  for (const auto& s : q.support) support.push_back(b.apply(s));
  return ConvexCone::quadratic(p.transpose() * q.form * p, p.apply_left(q.functional), std::move(support))
      .with_approximation(sub_cone.approximation_tolerance());
}

bool same_cone(const ConvexCone& a, const ConvexCone& b) {
  const std::size_t n = a.ambient_dim();
  if (n != b.ambient_dim()) return false;
  if (a.is_polyhedral() && b.is_polyhedral()) {
    for (const auto& g : a.as_polyhedral().minimal.all_generators()) {
      if (!contains(b, g)) return false;
    }
    for (const auto& g : b.as_polyhedral().minimal.all_generators()) {
      if (!contains(a, g)) return false;
    }
    return true;
  }
  if (a.is_quadratic() && b.is_quadratic()) {
    const auto& qa = a.as_quadratic();
    const auto& qb = b.as_quadratic();
    if (!same_span(qa.support, qb.support, n)) return false;
    QMatrix s = QMatrix::from_columns(qa.support, n);
    QMatrix fb = s.transpose() * qb.form * s;
    const QMatrix& fa = qa.support_form;
    Rational ratio = 0;
    for (std::size_t i = 0; i < fa.rows() && ratio == 0; ++i)
      for (std::size_t j = 0; j < fa.cols(); ++j) {
        if (fa(i, j) != 0) {
          ratio = fb(i, j) / fa(i, j);
          break;
        }
      }
    if (ratio <= 0 || !(fb == ratio * fa)) return false;
    return dot(qb.functional, qa.axis) > 0;
  }
  return false;
}

bool is_pointed(const ConvexCone& cone) {
  if (cone.is_polyhedral()) {
    const auto& gens = cone.as_polyhedral().generators;
    if (gens.empty()) return true;
    // Pointed iff no convex combination of generators vanishes.
    const std::size_t n = cone.ambient_dim();
    QMatrix a(n + 1, gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) {
      for (std::size_t i = 0; i < n; ++i) a(i, j) = gens[j][i];
      a(n, j) = 1;
    }
    QVector rhs = zero_vector(n + 1);
    rhs[n] = 1;
    return !lp_feasible(a, rhs).has_value();
  }
  return kernel(cone.as_quadratic().support_form).empty();
}

Basis linear_span(const ConvexCone& cone) {
  if (cone.is_polyhedral()) return span_basis(cone.as_polyhedral().generators, cone.ambient_dim());
  return span_basis(cone.as_quadratic().support, cone.ambient_dim());
}

Basis lineality(const ConvexCone& cone) {
  const std::size_t n = cone.ambient_dim();
  if (cone.is_polyhedral()) {
    const HRep& h = cone.as_polyhedral().hrep;
    std::vector<QVector> rows = h.equalities;
    rows.insert(rows.end(), h.facets.begin(), h.facets.end());
    if (rows.empty()) {
      Basis all;
      for (std::size_t i = 0; i < n; ++i) all.push_back(unit_vector(n, i));
      return all;
    }
    return span_basis(kernel(QMatrix::from_rows(rows, n)), n);
  }
  const auto& q = cone.as_quadratic();
  std::vector<QVector> vs;
  for (const auto& r : kernel(q.support_form)) vs.push_back(combine(q.support, r, n));
  return span_basis(vs, n);
}

std::vector<QVector> generators(const ConvexCone& cone) {
  if (!cone.is_polyhedral()) throw Error(ErrorCode::InvalidArgument, "quadratic cone has no finite generator set");
  return cone.as_polyhedral().minimal.all_generators();
}

// ---------------------------------------------------------------------------
// Invariance certificates

Eigen::MatrixXd to_eigen(const QMatrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j).get_d();
  return e;
}

Eigen::VectorXd to_eigen(const QVector& v) {
  Eigen::VectorXd e(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) e(i) = v[i].get_d();
  return e;
}

namespace {

// R with a S = S R, if a maps span(S) into itself.
std::optional<QMatrix> restrict_to(const QMatrix& a, const Basis& s, std::size_t n) {
  QMatrix r(s.size(), s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    auto c = coordinates(s, a.apply(s[j]), n);
    if (!c) return std::nullopt;
    for (std::size_t i = 0; i < s.size(); ++i) r(i, j) = (*c)[i];
  }
  return r;
}

std::optional<Rational> proportionality(const QMatrix& m, const QMatrix& base) {
  Rational ratio;
  bool found = false;
  for (std::size_t i = 0; i < base.rows() && !found; ++i)
    for (std::size_t j = 0; j < base.cols(); ++j) {
      if (base(i, j) != 0) {
        ratio = m(i, j) / base(i, j);
        found = true;
        break;
      }
    }
  if (!found) return m.is_zero() ? std::optional<Rational>(Rational(0)) : std::nullopt;
  if (!(m == ratio * base)) return std::nullopt;
  return ratio;
}

std::vector<Eigen::VectorXd> numeric_samples(const ConvexCone& cone, const NumericOptions& options) {
  std::vector<Eigen::VectorXd> pts;
  if (cone.is_polyhedral()) {
    for (const auto& g : cone.as_polyhedral().minimal.all_generators()) pts.push_back(to_eigen(g));
    return pts;
  }
  const auto& q = cone.as_quadratic();
  const std::size_t s = q.support.size();
  Eigen::MatrixXd smat = to_eigen(QMatrix::from_columns(q.support, cone.ambient_dim()));
  Eigen::MatrixXd form = to_eigen(q.support_form);
  Eigen::VectorXd func = to_eigen(q.support_functional);
  auto u = to_eigen(*coordinates(q.support, q.axis, cone.ambient_dim()));
  pts.push_back(smat * u);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  int attempts = 0;
  while (static_cast<int>(pts.size()) < options.quadratic_samples && attempts < 100 * options.quadratic_samples) {
    ++attempts;
    Eigen::VectorXd c(s);
    for (std::size_t i = 0; i < s; ++i) c(i) = unif(rng) * 2.0 * u.norm();
    if (c.dot(form * c) >= 0 && func.dot(c) >= 0) pts.push_back(smat * c);
  }
  return pts;
}

Certificate numeric_flow(const ConvexCone& cone, const QMatrix& a, const NumericOptions& options,
                         const std::string& reason) {
  NumericCone nc(cone);
  Eigen::MatrixXd ad = to_eigen(a);
  double tol = std::max(options.tol, cone.approximation_tolerance().get_d());
  double worst = 0.0;
  for (const auto& p : numeric_samples(cone, options)) {
    for (double t : options.times) {
      Eigen::MatrixXd flow = (t * ad).exp();
      double m = nc.margin(flow * p);
      if (std::isfinite(m)) worst = std::min(worst, m);
    }
  }
  Certificate c;
  c.max_violation = -worst;
  if (-worst <= tol) {
    c.kind = CertificateKind::Numeric;
    c.detail = reason + "; sampled flow stays inside within " + std::to_string(tol);
  } else {
    c.kind = CertificateKind::Failed;
    c.detail = reason + "; sampled flow leaves the cone by " + std::to_string(-worst);
  }
  return c;
}

}  // namespace

Certificate certify_invariance(const ConvexCone& cone, const QMatrix& a, InvarianceMode mode,
                               const NumericOptions& options) {
  const std::size_t n = cone.ambient_dim();
  if (a.rows() != n || a.cols() != n) throw Error(ErrorCode::DimensionMismatch, "certify_invariance: map shape");
  Certificate cert;

  if (mode == InvarianceMode::Reflect) {
    if (cone.is_polyhedral()) {
      const auto gens = cone.as_polyhedral().minimal.all_generators();
      std::vector<QVector> images;
      for (const auto& g : gens) images.push_back(a.apply(g));
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (!lp_in_cone(gens, images[i], n)) {
          cert.detail = "reflect certificate failed: image of generator " + format_vector(gens[i]) + " leaves the cone";
          return cert;
        }
        if (!lp_in_cone(images, gens[i], n)) {
          cert.detail = "reflect certificate failed: generator " + format_vector(gens[i]) + " not in the image cone";
          return cert;
        }
      }
      cert.kind = CertificateKind::Exact;
      cert.detail = "image generators mutually contained";
      return cert;
    }
    const auto& q = cone.as_quadratic();
    auto r = restrict_to(a, q.support, n);
    if (!r || !inverse(*r)) {
      cert.detail = "reflect certificate failed: map does not preserve the support";
      return cert;
    }
    auto ratio = proportionality(r->transpose() * q.support_form * *r, q.support_form);
    if (!ratio || *ratio <= 0) {
      cert.detail = "reflect certificate failed: form not preserved up to a positive scalar";
      return cert;
    }
    if (dot(q.functional, a.apply(q.axis)) <= 0) {
      cert.detail = "reflect certificate failed: map exchanges the two nappes";
      return cert;
    }
    cert.kind = CertificateKind::Exact;
    cert.detail = "form preserved up to factor " + format_rational(*ratio) + ", nappe preserved";
    return cert;
  }

  if (cone.is_polyhedral()) {
    // e^{tA}C = C for all t iff +/-A g lies in the tangent cone C + R g at
    // every generator g.
    const auto gens = cone.as_polyhedral().minimal.all_generators();
    std::string failure;
    for (const auto& g : gens) {
      std::vector<QVector> tangent = gens;
      tangent.push_back(g);
      tangent.push_back(negate(g));
      QVector ag = a.apply(g);
      if (!lp_in_cone(tangent, ag, n) || !lp_in_cone(tangent, negate(ag), n)) {
        failure = "tangent-cone criterion fails at generator " + format_vector(g);
        break;
      }
    }
    if (failure.empty()) {
      cert.kind = CertificateKind::Exact;
      cert.detail = "tangent-cone criterion holds at every generator";
      return cert;
    }
    return numeric_flow(cone, a, options, failure);
  }

  const auto& q = cone.as_quadratic();
  auto r = restrict_to(a, q.support, n);
  if (r) {
    auto mu = proportionality(r->transpose() * q.support_form + q.support_form * *r, q.support_form);
    if (mu) {
      cert.kind = CertificateKind::Exact;
      cert.detail = "conformal Killing criterion A^T Q + Q A = " + format_rational(*mu) + " Q";
      return cert;
    }
    return numeric_flow(cone, a, options, "conformal Killing criterion fails");
  }
  return numeric_flow(cone, a, options, "flow does not preserve the support");
}

// ---------------------------------------------------------------------------
// NumericCone

namespace {

Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& cols) {
  if (cols.cols() == 0) return Eigen::MatrixXd(cols.rows(), 0);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(cols);
  return qr.householderQ() * Eigen::MatrixXd::Identity(cols.rows(), cols.cols());
}

constexpr double kSubspaceSlack = 1e-12;

}  // namespace

NumericCone::NumericCone(const ConvexCone& cone) : dim_(cone.ambient_dim()), quadratic_(cone.is_quadratic()) {
  const std::size_t n = dim_;
  if (!quadratic_) {
    const HRep& h = cone.as_polyhedral().hrep;
    facets_.resize(static_cast<Eigen::Index>(h.facets.size()), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < h.facets.size(); ++i) {
      Eigen::VectorXd f = to_eigen(h.facets[i]);
      facets_.row(static_cast<Eigen::Index>(i)) = f.transpose() / f.norm();
    }
    Eigen::MatrixXd eq(n, h.equalities.size());
    for (std::size_t i = 0; i < h.equalities.size(); ++i) eq.col(static_cast<Eigen::Index>(i)) = to_eigen(h.equalities[i]);
    equalities_ = orthonormal_columns(eq).transpose();
    return;
  }
  const auto& q = cone.as_quadratic();
  Eigen::MatrixXd s(n, q.support.size());
  for (std::size_t i = 0; i < q.support.size(); ++i) s.col(static_cast<Eigen::Index>(i)) = to_eigen(q.support[i]);
  support_ = orthonormal_columns(s);
  form_ = to_eigen(q.form);
  functional_ = to_eigen(q.functional);
  Eigen::MatrixXd restricted = support_.transpose() * form_ * support_;
  form_norm_ = restricted.norm();
  if (form_norm_ == 0) form_norm_ = 1;
  double fn = (support_.transpose() * functional_).norm();
  if (fn > 0) functional_ /= fn;
}

double NumericCone::margin(const Eigen::VectorXd& v) const {
  double nv = v.norm();
  if (nv == 0 || !std::isfinite(nv)) return std::numeric_limits<double>::infinity();
  Eigen::VectorXd u = v / nv;
  if (!quadratic_) {
    if (equalities_.rows() > 0) {
      double off = (equalities_ * u).norm();
      if (off > kSubspaceSlack) return -off;
    }
    if (facets_.rows() == 0) return 1.0;
    return (facets_ * u).minCoeff();
  }
  Eigen::VectorXd pu = support_ * (support_.transpose() * u);
  double off = (u - pu).norm();
  if (off > kSubspaceSlack) return -off;
  double qv = pu.dot(form_ * pu) / form_norm_;
  double lv = functional_.dot(pu);
  return std::min(qv, lv);
}

}  // namespace wedge
