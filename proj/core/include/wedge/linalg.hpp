#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wedge/rational.hpp"

namespace wedge {

/// A list of vectors spanning a subspace. Unless stated otherwise the vectors
/// are linearly independent.
using Basis = std::vector<QVector>;

/// Dense row-major matrix over Q.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  static QMatrix identity(std::size_t n);
  static QMatrix diagonal(const QVector& d);
  static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols);
  static QMatrix from_columns(const std::vector<QVector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  QVector row(std::size_t r) const;
  QVector col(std::size_t c) const;
  QMatrix transpose() const;
  QVector apply(const QVector& v) const;
  /// v^T M (as a row vector)
  QVector apply_left(const QVector& v) const;
  bool is_zero() const;

  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

QMatrix operator*(const QMatrix& a, const QMatrix& b);
QMatrix operator+(const QMatrix& a, const QMatrix& b);
QMatrix operator-(const QMatrix& a, const QMatrix& b);
QMatrix operator*(const Rational& s, const QMatrix& a);
/// Stacks row blocks with equal column counts.
QMatrix vstack(const std::vector<QMatrix>& blocks);

struct RowEchelon {
  QMatrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

RowEchelon rref(QMatrix m);
std::size_t rank(const QMatrix& m);

/// Canonical basis of {x : m x = 0}: one vector per free column, with a 1 in
/// that column.
Basis kernel(const QMatrix& m);

/// Canonical (reduced echelon) basis of span(vectors).
Basis span_basis(const std::vector<QVector>& vectors, std::size_t dim);
/// Maximal linearly independent subset, in input order.
Basis independent_subset(const std::vector<QVector>& vectors, std::size_t dim);

std::optional<QVector> solve(const QMatrix& a, const QVector& b);
std::optional<QMatrix> inverse(const QMatrix& m);

/// Coefficients c with sum_i c_i basis[i] = v, if v lies in the span.
std::optional<QVector> coordinates(const Basis& basis, const QVector& v, std::size_t dim);
bool in_span(const Basis& basis, const QVector& v, std::size_t dim);
QVector combine(const Basis& basis, const QVector& coeffs, std::size_t dim);

Basis intersect_spans(const Basis& a, const Basis& b, std::size_t dim);
bool same_span(const Basis& a, const Basis& b, std::size_t dim);
bool spans_contained(const Basis& inner, const Basis& outer, std::size_t dim);

/// A matrix P with P * B = I for B = [basis columns]; B must be independent.
QMatrix left_inverse(const Basis& basis, std::size_t dim);

std::string format_matrix(const QMatrix& m);

}  // namespace wedge
