#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wedge/linalg.hpp"

namespace wedge {

/// Finite-dimensional real Lie algebra given by exact structure constants.
///
/// The bracket table is stored densely: bracket(i, j) is the coordinate vector
/// of [b_i, b_j]. Builder-constructed algebras are antisymmetric by
/// construction; from_table() accepts arbitrary tables so that validate() can
/// report broken input documents.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  explicit LieAlgebra(std::vector<std::string> basis_names);

  static LieAlgebra abelian(std::size_t dim);
  static LieAlgebra from_table(std::vector<std::string> basis_names, std::vector<std::vector<QVector>> table);

  /// Sets [b_i, b_j] = value and [b_j, b_i] = -value.
  void set_bracket(std::size_t i, std::size_t j, const QVector& value);

  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& basis_names() const { return names_; }
  const QVector& bracket(std::size_t i, std::size_t j) const { return table_[i][j]; }
  QVector bracket(const QVector& x, const QVector& y) const;

  friend bool operator==(const LieAlgebra&, const LieAlgebra&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<QVector>> table_;
};

enum class EndoKind { Generic, Involution, Derivation };

/// Linear endomorphism of the ambient coordinate space, tagged with the role it
/// plays. make_* functions check the tag's invariant exactly.
struct LinearEndo {
  QMatrix matrix;
  EndoKind kind = EndoKind::Generic;

  std::size_t dim() const { return matrix.rows(); }
  QVector operator()(const QVector& v) const { return matrix.apply(v); }
  friend bool operator==(const LinearEndo&, const LinearEndo&) = default;
};

LinearEndo make_involution(QMatrix m);
LinearEndo make_derivation(const LieAlgebra& algebra, QMatrix m);

struct AntisymmetryFailure {
  std::size_t i, j;
};
struct JacobiFailure {
  std::size_t i, j, k;
  QVector sum;
};

struct ValidationReport {
  std::vector<AntisymmetryFailure> antisymmetry;
  std::vector<JacobiFailure> jacobi;
  bool ok() const { return antisymmetry.empty() && jacobi.empty(); }
};

ValidationReport validate(const LieAlgebra& algebra);

/// Matrix of y -> [x, y].
LinearEndo ad(const LieAlgebra& algebra, const QVector& x);

bool is_automorphism(const LieAlgebra& algebra, const QMatrix& m);
bool is_derivation(const LieAlgebra& algebra, const QMatrix& m);

struct EigenPiece {
  Rational eigenvalue;
  Basis basis;
};

struct GradedDecomposition {
  std::vector<EigenPiece> pieces;  // ascending eigenvalue
  bool complete = false;

  /// Basis of the eigenspace for `lambda`, empty if lambda is not an eigenvalue.
  Basis piece(const Rational& lambda) const;
};

/// Exact kernels ker(A - lambda) for each lambda of the hint, or for every
/// rational eigenvalue of A when no hint is given. Throws NotSemisimple when
/// `require_complete` is set and the pieces do not span.
GradedDecomposition eigenspaces(const LinearEndo& a, const std::optional<std::vector<Rational>>& spectrum_hint = {},
                                bool require_complete = false);

struct TauSplit {
  Basis h_part;  // ker(tau - 1)
  Basis q_part;  // ker(tau + 1)
};

/// Checks that tau is an involutive automorphism, then splits.
TauSplit tau_split(const LieAlgebra& algebra, const LinearEndo& tau);
/// Same, for a bare involution of a vector space.
TauSplit tau_split(const QMatrix& tau);

struct SpectralComponent {
  long weight;
  QVector component;
};

/// Finite decomposition x = sum_n x_n with h_op x_n = n x_n and
/// tau x_n = (-1)^n x_n. Throws NonIntegerSpectrum, NotSemisimple or
/// NotCompatible. Components are ordered by ascending weight; zero components
/// are omitted.
std::vector<SpectralComponent> spectral_decompose(const QMatrix& h_op, const QMatrix& tau, const QVector& x);
std::vector<SpectralComponent> spectral_decompose(const LieAlgebra& algebra, const QVector& h_elem,
                                                  const LinearEndo& tau, const QVector& x);

/// Structure constants in the basis whose i-th vector is column i of `basis`.
LieAlgebra change_of_basis(const LieAlgebra& algebra, const QMatrix& basis);
/// P^{-1} M P
QMatrix conjugate_endo(const QMatrix& m, const QMatrix& basis);

}  // namespace wedge
