#include "wedge/algebra.hpp"

#include <algorithm>

#include "wedge/error.hpp"
#include "wedge/polynomial.hpp"

namespace wedge {

LieAlgebra::LieAlgebra(std::vector<std::string> basis_names) : names_(std::move(basis_names)) {
  const std::size_t n = names_.size();
  table_.assign(n, std::vector<QVector>(n, zero_vector(n)));
}

LieAlgebra LieAlgebra::abelian(std::size_t dim) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < dim; ++i) names.push_back("x" + std::to_string(i));
  return LieAlgebra(std::move(names));
}

LieAlgebra LieAlgebra::from_table(std::vector<std::string> basis_names, std::vector<std::vector<QVector>> table) {
  const std::size_t n = basis_names.size();
  if (table.size() != n) throw Error(ErrorCode::DimensionMismatch, "bracket table has wrong row count");
  for (const auto& row : table) {
    if (row.size() != n) throw Error(ErrorCode::DimensionMismatch, "bracket table has wrong column count");
    for (const auto& v : row) {
      if (v.size() != n) throw Error(ErrorCode::DimensionMismatch, "bracket value has wrong length");
    }
  }
  LieAlgebra g;
  g.names_ = std::move(basis_names);
  g.table_ = std::move(table);
  return g;
}

void LieAlgebra::set_bracket(std::size_t i, std::size_t j, const QVector& value) {
  if (i >= dim() || j >= dim() || value.size() != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "set_bracket: index or length out of range");
  }
  if (i == j && !is_zero(value)) throw Error(ErrorCode::InvalidArgument, "[x, x] must vanish");
  table_[i][j] = value;
  table_[j][i] = negate(value);
}

QVector LieAlgebra::bracket(const QVector& x, const QVector& y) const {
  if (x.size() != dim() || y.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "bracket argument length");
  QVector out = zero_vector(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (y[j] == 0) continue;
      axpy(out, x[i] * y[j], table_[i][j]);
    }
  }
  return out;
}

LinearEndo make_involution(QMatrix m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "involution must be square");
  if (!(m * m == QMatrix::identity(m.rows()))) throw Error(ErrorCode::NotInvolution, "tau^2 != id");
  return {std::move(m), EndoKind::Involution};
}

LinearEndo make_derivation(const LieAlgebra& algebra, QMatrix m) {
  if (m.rows() != algebra.dim() || !m.is_square()) throw Error(ErrorCode::DimensionMismatch, "derivation shape");
  if (!is_derivation(algebra, m)) throw Error(ErrorCode::InvalidArgument, "Leibniz rule fails");
  return {std::move(m), EndoKind::Derivation};
}

ValidationReport validate(const LieAlgebra& g) {
  ValidationReport report;
  const std::size_t n = g.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      if (!is_zero(add(g.bracket(i, j), g.bracket(j, i)))) report.antisymmetry.push_back({i, j});
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        auto e = [n](std::size_t a) { return unit_vector(n, a); };
        QVector s = g.bracket(e(i), g.bracket(j, k));
        s = add(s, g.bracket(e(j), g.bracket(k, i)));
        s = add(s, g.bracket(e(k), g.bracket(i, j)));
        if (!is_zero(s)) report.jacobi.push_back({i, j, k, s});
      }
  return report;
}

LinearEndo ad(const LieAlgebra& g, const QVector& x) {
  const std::size_t n = g.dim();
  if (x.size() != n) throw Error(ErrorCode::DimensionMismatch, "ad: vector length");
  QMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    QVector col = g.bracket(x, unit_vector(n, j));
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
  }
  return {std::move(m), EndoKind::Derivation};
}

bool is_automorphism(const LieAlgebra& g, const QMatrix& m) {
  const std::size_t n = g.dim();
  if (m.rows() != n || m.cols() != n) return false;
  if (!inverse(m)) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      QVector lhs = m.apply(g.bracket(i, j));
      QVector rhs = g.bracket(m.col(i), m.col(j));
      if (lhs != rhs) return false;
    }
  return true;
}

bool is_derivation(const LieAlgebra& g, const QMatrix& m) {
  const std::size_t n = g.dim();
  if (m.rows() != n || m.cols() != n) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      QVector lhs = m.apply(g.bracket(i, j));
      QVector rhs = add(g.bracket(m.col(i), unit_vector(n, j)), g.bracket(unit_vector(n, i), m.col(j)));
      if (lhs != rhs) return false;
    }
  return true;
}

Basis GradedDecomposition::piece(const Rational& lambda) const {
  for (const auto& p : pieces) {
    if (p.eigenvalue == lambda) return p.basis;
  }
  return {};
}

GradedDecomposition eigenspaces(const LinearEndo& a, const std::optional<std::vector<Rational>>& spectrum_hint,
                                bool require_complete) {
  const QMatrix& m = a.matrix;
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "eigenspaces of non-square operator");
  const std::size_t n = m.rows();
  std::vector<Rational> spectrum =
      spectrum_hint ? *spectrum_hint : rational_roots(characteristic_polynomial(m));
  std::sort(spectrum.begin(), spectrum.end());
  spectrum.erase(std::unique(spectrum.begin(), spectrum.end()), spectrum.end());

  GradedDecomposition out;
  std::size_t total = 0;
  for (const auto& lambda : spectrum) {
    Basis k = kernel(m - lambda * QMatrix::identity(n));
    if (k.empty()) continue;
    total += k.size();
    out.pieces.push_back({lambda, std::move(k)});
  }
  out.complete = (total == n);
  if (require_complete && !out.complete) {
    throw Error(ErrorCode::NotSemisimple, "eigenspaces span " + std::to_string(total) + " of " + std::to_string(n) +
                                              " dimensions");
  }
  return out;
}

TauSplit tau_split(const QMatrix& tau) {
  if (!tau.is_square()) throw Error(ErrorCode::DimensionMismatch, "tau must be square");
  const std::size_t n = tau.rows();
  if (!(tau * tau == QMatrix::identity(n))) throw Error(ErrorCode::NotInvolution, "tau^2 != id");
  TauSplit s;
  s.h_part = kernel(tau - QMatrix::identity(n));
  s.q_part = kernel(tau + QMatrix::identity(n));
  return s;
}

TauSplit tau_split(const LieAlgebra& g, const LinearEndo& tau) {
  if (tau.matrix.rows() != g.dim()) throw Error(ErrorCode::DimensionMismatch, "tau size differs from algebra");
  TauSplit s = tau_split(tau.matrix);
  if (!is_automorphism(g, tau.matrix)) throw Error(ErrorCode::NotAutomorphism, "tau does not preserve the bracket");
  return s;
}

std::vector<SpectralComponent> spectral_decompose(const QMatrix& h_op, const QMatrix& tau, const QVector& x) {
  const std::size_t n = h_op.rows();
  if (!h_op.is_square() || tau.rows() != n || !tau.is_square() || x.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "spectral_decompose: shapes disagree");
  }
  if (!(tau * tau == QMatrix::identity(n))) throw Error(ErrorCode::NotInvolution, "tau^2 != id");
  if (!(tau * h_op == h_op * tau)) throw Error(ErrorCode::NotCompatible, "tau does not commute with h");
  if (is_zero(x)) return {};

  // Krylov basis of the cyclic span of x and the minimal polynomial of x.
  Basis krylov{x};
  Polynomial minpoly;
  for (;;) {
    QVector next = h_op.apply(krylov.back());
    auto coeffs = coordinates(krylov, next, n);
    if (coeffs) {
      minpoly.assign(krylov.size() + 1, Rational(0));
      for (std::size_t i = 0; i < krylov.size(); ++i) minpoly[i] = -(*coeffs)[i];
      minpoly.back() = 1;
      break;
    }
    krylov.push_back(std::move(next));
  }

  const std::size_t k = krylov.size();
  if (static_cast<std::size_t>(degree(squarefree_part(minpoly))) < k) {
    throw Error(ErrorCode::NotSemisimple, "h is not semisimple on the cyclic span of x");
  }
  std::vector<Rational> roots = rational_roots(minpoly);
  if (roots.size() < k) throw Error(ErrorCode::NonIntegerSpectrum, "h has irrational eigenvalues on the span of x");
  for (const auto& r : roots) {
    if (r.get_den() != 1) {
      throw Error(ErrorCode::NonIntegerSpectrum, "eigenvalue " + format_rational(r) + " is not an integer");
    }
  }

  std::vector<SpectralComponent> out;
  for (const auto& r : roots) {
    QVector xn = x;
    for (const auto& s : roots) {
      if (s == r) continue;
      QVector y = sub(h_op.apply(xn), scale(s, xn));
      xn = scale(1 / (r - s), y);
    }
    if (is_zero(xn)) continue;
    long weight = r.get_num().get_si();
    QVector expected = (weight % 2 == 0) ? xn : negate(xn);
    if (tau.apply(xn) != expected) {
      throw Error(ErrorCode::NotCompatible, "component of weight " + std::to_string(weight) +
                                                " has the wrong tau-parity (e^{pi i h} x != tau x)");
    }
    out.push_back({weight, std::move(xn)});
  }
  return out;
}

std::vector<SpectralComponent> spectral_decompose(const LieAlgebra& g, const QVector& h_elem, const LinearEndo& tau,
                                                  const QVector& x) {
  if (!is_automorphism(g, tau.matrix)) throw Error(ErrorCode::NotAutomorphism, "tau does not preserve the bracket");
  return spectral_decompose(ad(g, h_elem).matrix, tau.matrix, x);
}

LieAlgebra change_of_basis(const LieAlgebra& g, const QMatrix& basis) {
  const std::size_t n = g.dim();
  if (basis.rows() != n || basis.cols() != n) throw Error(ErrorCode::DimensionMismatch, "change_of_basis shape");
  auto inv = inverse(basis);
  if (!inv) throw Error(ErrorCode::InvalidArgument, "change_of_basis: matrix is singular");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("b" + std::to_string(i));
  LieAlgebra out(std::move(names));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      out.set_bracket(i, j, inv->apply(g.bracket(basis.col(i), basis.col(j))));
    }
  return out;
}

QMatrix conjugate_endo(const QMatrix& m, const QMatrix& basis) {
  auto inv = inverse(basis);
  if (!inv) throw Error(ErrorCode::InvalidArgument, "conjugate_endo: matrix is singular");
  return *inv * m * basis;
}

}  // namespace wedge
