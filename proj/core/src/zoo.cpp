#include "wedge/zoo.hpp"

#include <algorithm>

#include "wedge/error.hpp"

namespace wedge {

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

QVector vec(std::initializer_list<long> xs) {
  QVector v;
  for (long x : xs) v.push_back(Rational(x));
  return v;
}

QVector flatten(const QMatrix& m) {
  QVector v;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
  return v;
}

// Structure constants of the matrix Lie algebra spanned by `mats`.
LieAlgebra matrix_algebra(std::vector<std::string> names, const std::vector<QMatrix>& mats) {
  const std::size_t n = mats.size();
  const std::size_t flat = mats.front().rows() * mats.front().cols();
  Basis flat_basis;
  for (const auto& m : mats) flat_basis.push_back(flatten(m));
  LieAlgebra g(std::move(names));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto c = coordinates(flat_basis, flatten(mats[i] * mats[j] - mats[j] * mats[i]), flat);
      if (!c) throw Error(ErrorCode::InvalidArgument, "matrix span is not closed under commutators");
      g.set_bracket(i, j, *c);
    }
  return g;
}

// Matrix of X -> d X d^{-1} on span(mats), d diagonal with entries +-1.
QMatrix conjugation_action(const std::vector<QMatrix>& mats, const QMatrix& d) {
  const std::size_t n = mats.size();
  const std::size_t flat = mats.front().rows() * mats.front().cols();
  Basis flat_basis;
  for (const auto& m : mats) flat_basis.push_back(flatten(m));
  QMatrix out(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    auto c = coordinates(flat_basis, flatten(d * mats[j] * d), flat);
    if (!c) throw Error(ErrorCode::InvalidArgument, "conjugation leaves the matrix span");
    for (std::size_t i = 0; i < n; ++i) out(i, j) = (*c)[i];
  }
  return out;
}

struct PoincareMatrices {
  std::vector<std::string> names;
  std::vector<QMatrix> mats;
};

PoincareMatrices poincare_matrices(std::size_t d) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "Poincare algebra needs d >= 2");
  PoincareMatrices p;
  auto eta = [](std::size_t a, std::size_t b) { return a != b ? 0 : (a == 0 ? 1 : -1); };
  for (std::size_t mu = 0; mu < d; ++mu) {
    QMatrix t(d + 1, d + 1);
    t(mu, d) = 1;
    p.names.push_back("e" + std::to_string(mu));
    p.mats.push_back(std::move(t));
  }
  for (std::size_t mu = 0; mu < d; ++mu)
    for (std::size_t nu = mu + 1; nu < d; ++nu) {
      // M e_rho = eta(mu, rho) e_nu - eta(nu, rho) e_mu
      QMatrix m(d + 1, d + 1);
      for (std::size_t rho = 0; rho < d; ++rho) {
        m(nu, rho) += eta(mu, rho);
        m(mu, rho) -= eta(nu, rho);
      }
      p.names.push_back("M" + std::to_string(mu) + std::to_string(nu));
      p.mats.push_back(std::move(m));
    }
  return p;
}

ZooEntry affine_entry() {
  LieAlgebra g({"h", "p"});
  g.set_bracket(0, 1, vec({0, 1}));
  ZooEntry e;
  e.name = "aff";
  e.reference = "affine group of the line; positive translations P >= 0";
  e.datum = {"aff", g, make_involution(QMatrix::diagonal(vec({1, -1}))), vec({1, 0}),
             ConvexCone::polyhedral(2, {vec({0, 1})})};
  e.expected = {{vec({0, 1})}, {}, {vec({1, 0})}, 2};
  return e;
}

ZooEntry dilation_entry() {
  LieAlgebra g({"e1", "e2", "h"});
  g.set_bracket(2, 0, vec({1, 0, 0}));
  g.set_bracket(2, 1, vec({0, 1, 0}));
  ZooEntry e;
  e.name = "dilation";
  e.reference = "R^2 semidirect dilations; cone is a ray in the (-1)-eigenspace of tau";
  e.datum = {"dilation", g, make_involution(QMatrix::diagonal(vec({1, -1, 1}))), vec({0, 0, 1}),
             ConvexCone::polyhedral(3, {vec({0, 1, 0})})};
  e.expected = {{vec({0, 1, 0})}, {}, {vec({0, 0, 1})}, 2};
  return e;
}

ZooEntry poincare_entry(std::size_t d) {
  PoincareMatrices p = poincare_matrices(d);
  const std::size_t n = p.mats.size();
  QVector diag(d + 1, Rational(1));
  diag[0] = -1;
  diag[1] = -1;
  QMatrix tau = conjugation_action(p.mats, QMatrix::diagonal(diag));
  QVector h = zero_vector(n);
  h[d] = 1;  // M01 follows the translations
  QMatrix form(n, n);
  form(0, 0) = 1;
  for (std::size_t mu = 1; mu < d; ++mu) form(mu, mu) = -1;
  QVector functional = zero_vector(n);
  functional[0] = 1;
  Basis support;
  for (std::size_t mu = 0; mu < d; ++mu) support.push_back(unit_vector(n, mu));

  ZooEntry e;
  e.name = "poincare" + std::to_string(d);
  e.reference = "Poincare algebra in dimension " + std::to_string(d) +
                ", boost generator, closed forward light cone of translations";
  e.datum = {e.name, matrix_algebra(p.names, p.mats), make_involution(tau), h,
             ConvexCone::quadratic(form, functional, support)};
  QVector plus = zero_vector(n), minus = zero_vector(n);
  plus[0] = 1;
  plus[1] = 1;
  minus[0] = -1;
  minus[1] = 1;
  Basis edge;
  for (std::size_t mu = 2; mu < d; ++mu) edge.push_back(unit_vector(n, mu));
  edge.push_back(h);
  std::size_t idx = d;
  for (std::size_t mu = 0; mu < d; ++mu)
    for (std::size_t nu = mu + 1; nu < d; ++nu, ++idx) {
      if (mu >= 2) edge.push_back(unit_vector(n, idx));
    }
  e.expected = {{plus}, {minus}, edge, edge.size() + 2};
  return e;
}

ZooEntry sl2_entry() {
  ZooEntry e;
  e.name = "sl2";
  e.reference = "sl(2,R) with tau flipping the off-diagonal entries; elliptic cone -a^2 - bc >= 0, b - c >= 0";
  QMatrix form(3, 3);
  form(0, 0) = -1;
  form(1, 2) = q(-1, 2);
  form(2, 1) = q(-1, 2);
  e.datum = {"sl2", sl2_algebra(), make_involution(QMatrix::diagonal(vec({1, -1, -1}))),
             {q(1, 2), q(0), q(0)}, ConvexCone::quadratic(form, vec({0, 1, -1}))};
  e.expected = {{vec({0, 1, 0})}, {vec({0, 0, 1})}, {vec({1, 0, 0})}, 3};
  return e;
}

// Boundary rays (a, 1 + w, -1 + w) with (a, w) = ((1 - s^2), 2s) / (1 + s^2).
std::vector<QVector> sl2_boundary_rays() {
  std::vector<Rational> slopes = {q(0), q(1, 5), q(1, 3), q(1, 2), q(1), q(2), q(3), q(5)};
  std::vector<QVector> rays;
  auto add_ray = [&rays](const Rational& a, const Rational& w) {
    rays.push_back(primitive({a, 1 + w, w - 1}));
  };
  for (const auto& s0 : slopes) {
    for (int sgn : {1, -1}) {
      if (s0 == 0 && sgn < 0) continue;
      Rational s = sgn * s0;
      Rational den = 1 + s * s;
      add_ray((1 - s * s) / den, 2 * s / den);
    }
  }
  add_ray(q(-1), q(0));  // s = infinity
  return rays;
}

ZooEntry sl2_approx_entry() {
  ZooEntry e;
  e.name = "sl2_approx";
  e.reference = "sl(2,R) elliptic cone replaced by an inscribed cone on 16 rational boundary rays";
  e.datum = {"sl2_approx", sl2_algebra(), make_involution(QMatrix::diagonal(vec({1, -1, -1}))),
             {q(1, 2), q(0), q(0)},
             ConvexCone::polyhedral(3, sl2_boundary_rays()).with_approximation(q(1, 20))};
  e.expected = {{vec({0, 1, 0})}, {vec({0, 0, 1})}, {vec({1, 0, 0})}, 3};
  return e;
}

ZooEntry sl2_degenerate_entry() {
  ZooEntry e;
  e.name = "sl2_degenerate";
  e.reference = "sl(2,R) with tau = id; the only pointed -tau-invariant cone is {0}";
  e.datum = {"sl2_degenerate", sl2_algebra(), make_involution(QMatrix::identity(3)), {q(1, 2), q(0), q(0)},
             ConvexCone::zero(3)};
  e.expected = {{}, {}, {vec({1, 0, 0})}, 1};
  return e;
}

ZooEntry rx_action_entry() {
  LieAlgebra g({"u1", "u2", "u3", "u4", "u5", "h"});
  const std::vector<long> weights = {1, -1, 0, 1, 1};
  for (std::size_t i = 0; i < weights.size(); ++i) {
    QVector v = zero_vector(6);
    v[i] = weights[i];
    g.set_bracket(5, i, v);
  }
  ZooEntry e;
  e.name = "rx_action";
  e.reference = "R^5 semidirect a one-parameter group with weights (1, -1, 0, 1, 1)";
  e.datum = {"rx_action", g, make_involution(QMatrix::diagonal(vec({-1, -1, 1, 1, -1, 1}))),
             vec({0, 0, 0, 0, 0, 1}),
             ConvexCone::polyhedral(6, {vec({1, 0, 0, 0, 1, 0}), vec({1, 0, 0, 0, -1, 0}), vec({0, -1, 0, 0, 0, 0}),
                                        vec({1, 0, 0, 1, 0, 0}), vec({1, 0, 0, -1, 0, 0})})};
  e.expected = {{vec({1, 0, 0, 0, 1, 0}), vec({1, 0, 0, 0, -1, 0})},
                {vec({0, 1, 0, 0, 0, 0})},
                {vec({0, 0, 1, 0, 0, 0}), vec({0, 0, 0, 0, 0, 1})},
                5};
  return e;
}

}  // namespace

LieAlgebra poincare_algebra(std::size_t d) {
  PoincareMatrices p = poincare_matrices(d);
  return matrix_algebra(p.names, p.mats);
}

LieAlgebra sl2_algebra() {
  LieAlgebra g({"H", "E", "F"});
  g.set_bracket(0, 1, vec({0, 2, 0}));
  g.set_bracket(0, 2, vec({0, 0, -2}));
  g.set_bracket(1, 2, vec({1, 0, 0}));
  return g;
}

std::vector<std::string> zoo_names() {
  return {"aff", "dilation", "poincare3", "poincare4", "sl2", "sl2_approx", "sl2_degenerate", "rx_action"};
}

ZooEntry zoo_entry(const std::string& name) {
  if (name == "aff") return affine_entry();
  if (name == "dilation") return dilation_entry();
  if (name == "poincare3") return poincare_entry(3);
  if (name == "poincare4") return poincare_entry(4);
  if (name == "sl2") return sl2_entry();
  if (name == "sl2_approx") return sl2_approx_entry();
  if (name == "sl2_degenerate") return sl2_degenerate_entry();
  if (name == "rx_action") return rx_action_entry();
  throw Error(ErrorCode::InvalidArgument, "unknown zoo entry '" + name + "'");
}

std::vector<ZooEntry> zoo() {
  std::vector<ZooEntry> out;
  for (const auto& n : zoo_names()) out.push_back(zoo_entry(n));
  return out;
}

std::vector<QVector> normalized_rays(std::vector<QVector> rays) {
  for (auto& r : rays) r = primitive(r);
  std::sort(rays.begin(), rays.end());
  return rays;
}

ExpectationMismatch compare_expected(const WedgeReport& report, const ExpectedWedge& expected) {
  ExpectationMismatch m;
  const std::size_t n = report.wedge.dim;
  auto check_part = [&](const ConvexCone& c, const std::vector<QVector>& rays, const std::string& label) {
    if (!c.is_polyhedral()) {
      m.problems.push_back(label + " is not polyhedral");
      return;
    }
    const ConeGenerators& g = c.as_polyhedral().minimal;
    if (!g.lineality.empty()) m.problems.push_back(label + " contains a line");
    if (normalized_rays(g.rays) != normalized_rays(rays)) m.problems.push_back(label + " rays differ");
  };
  check_part(report.wedge.c_plus_ambient(), expected.c_plus_rays, "C_plus");
  check_part(report.wedge.c_minus_ambient(), expected.c_minus_rays, "C_minus");
  if (report.wedge.edge.size() != expected.edge.size() || !same_span(report.wedge.edge, expected.edge, n)) {
    m.problems.push_back("edge differs");
  }
  if (report.g_red_basis.size() != expected.g_red_dim) {
    m.problems.push_back("g_red has dimension " + std::to_string(report.g_red_basis.size()) + ", expected " +
                         std::to_string(expected.g_red_dim));
  }
  return m;
}

}  // namespace wedge
