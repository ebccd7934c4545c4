#include "wedge/linalg.hpp"

#include <stdexcept>

namespace wedge {

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::diagonal(const QVector& d) {
  QMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, std::size_t cols) {
  QMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("from_rows: ragged input");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& cols, std::size_t rows) {
  QMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw std::invalid_argument("from_columns: ragged input");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

QVector QMatrix::row(std::size_t r) const {
  return QVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

QVector QMatrix::col(std::size_t c) const {
  QVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

QVector QMatrix::apply(const QVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("apply: size mismatch");
  QVector out(rows_, Rational(0));
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational s = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      const Rational& a = (*this)(r, c);
      if (a != 0 && v[c] != 0) s += a * v[c];
    }
    out[r] = s;
  }
  return out;
}

QVector QMatrix::apply_left(const QVector& v) const {
  if (v.size() != rows_) throw std::invalid_argument("apply_left: size mismatch");
  QVector out(cols_, Rational(0));
  for (std::size_t r = 0; r < rows_; ++r) {
    if (v[r] == 0) continue;
    for (std::size_t c = 0; c < cols_; ++c) {
      const Rational& a = (*this)(r, c);
      if (a != 0) out[c] += v[r] * a;
    }
  }
  return out;
}

bool QMatrix::is_zero() const {
  for (const auto& x : data_) {
    if (x != 0) return false;
  }
  return true;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  QMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b(k, j) != 0) m(i, j) += aik * b(k, j);
      }
    }
  return m;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum: shape mismatch");
  QMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j) + b(i, j);
  return m;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix difference: shape mismatch");
  QMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j) - b(i, j);
  return m;
}

QMatrix operator*(const Rational& s, const QMatrix& a) {
  QMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = s * a(i, j);
  return m;
}

QMatrix vstack(const std::vector<QMatrix>& blocks) {
  if (blocks.empty()) return {};
  std::size_t cols = blocks.front().cols();
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw std::invalid_argument("vstack: column mismatch");
    rows += b.rows();
  }
  QMatrix m(rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r0 + r, c) = b(r, c);
    r0 += b.rows();
  }
  return m;
}

RowEchelon rref(QMatrix m) {
  RowEchelon out;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
    std::size_t p = lead_row;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != lead_row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(lead_row, j));
    }
    Rational inv = 1 / m(lead_row, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(lead_row, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || m(r, c) == 0) continue;
      Rational f = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (m(lead_row, j) != 0) m(r, j) -= f * m(lead_row, j);
      }
    }
    out.pivots.push_back(c);
    ++lead_row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

Basis kernel(const QMatrix& m) {
  RowEchelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  Basis basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

Basis span_basis(const std::vector<QVector>& vectors, std::size_t dim) {
  if (vectors.empty()) return {};
  RowEchelon e = rref(QMatrix::from_rows(vectors, dim));
  Basis b;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) b.push_back(e.reduced.row(r));
  return b;
}

Basis independent_subset(const std::vector<QVector>& vectors, std::size_t dim) {
  if (vectors.empty()) return {};
  RowEchelon e = rref(QMatrix::from_columns(vectors, dim));
  Basis b;
  for (auto p : e.pivots) b.push_back(vectors[p]);
  return b;
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: size mismatch");
  QMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  RowEchelon e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  QVector x(a.cols(), Rational(0));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, a.cols());
  return x;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse: matrix not square");
  std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  RowEchelon e = rref(std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
  return inv;
}

std::optional<QVector> coordinates(const Basis& basis, const QVector& v, std::size_t dim) {
  if (basis.empty()) {
    if (is_zero(v)) return QVector{};
    return std::nullopt;
  }
  return solve(QMatrix::from_columns(basis, dim), v);
}

bool in_span(const Basis& basis, const QVector& v, std::size_t dim) {
  return coordinates(basis, v, dim).has_value();
}

QVector combine(const Basis& basis, const QVector& coeffs, std::size_t dim) {
  if (basis.size() != coeffs.size()) throw std::invalid_argument("combine: size mismatch");
  QVector v(dim, Rational(0));
  for (std::size_t i = 0; i < basis.size(); ++i) axpy(v, coeffs[i], basis[i]);
  return v;
}

Basis intersect_spans(const Basis& a, const Basis& b, std::size_t dim) {
  if (a.empty() || b.empty()) return {};
  // Solve A s = B t, i.e. [A | -B] (s, t) = 0, then map s back through A.
  QMatrix m(dim, a.size() + b.size());
  for (std::size_t c = 0; c < a.size(); ++c)
    for (std::size_t r = 0; r < dim; ++r) m(r, c) = a[c][r];
  for (std::size_t c = 0; c < b.size(); ++c)
    for (std::size_t r = 0; r < dim; ++r) m(r, a.size() + c) = -b[c][r];
  std::vector<QVector> vs;
  for (const auto& k : kernel(m)) {
    QVector s(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(a.size()));
    vs.push_back(combine(a, s, dim));
  }
  return span_basis(vs, dim);
}

bool spans_contained(const Basis& inner, const Basis& outer, std::size_t dim) {
  for (const auto& v : inner) {
    if (!in_span(outer, v, dim)) return false;
  }
  return true;
}

bool same_span(const Basis& a, const Basis& b, std::size_t dim) {
  return span_basis(a, dim) == span_basis(b, dim);
}

QMatrix left_inverse(const Basis& basis, std::size_t dim) {
  QMatrix b = QMatrix::from_columns(basis, dim);
  QMatrix bt = b.transpose();
  auto gram_inv = inverse(bt * b);
  if (!gram_inv) throw std::invalid_argument("left_inverse: basis is not independent");
  return *gram_inv * bt;
}

std::string format_matrix(const QMatrix& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) s += "; ";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) s += " ";
      s += format_rational(m(r, c));
    }
  }
  return s + "]";
}

}  // namespace wedge
