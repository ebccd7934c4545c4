#pragma once

#include <vector>

#include "wedge/linalg.hpp"

namespace wedge {

/// Univariate polynomial over Q, coefficients stored lowest degree first.
/// The zero polynomial is the empty vector.
using Polynomial = std::vector<Rational>;

Polynomial trim(Polynomial p);
int degree(const Polynomial& p);
Rational evaluate(const Polynomial& p, const Rational& x);
Polynomial derivative(const Polynomial& p);
Polynomial multiply(const Polynomial& a, const Polynomial& b);
/// Quotient and remainder; b must be nonzero.
std::pair<Polynomial, Polynomial> divide(const Polynomial& a, const Polynomial& b);
/// Monic gcd (zero if both inputs are zero).
Polynomial gcd(Polynomial a, Polynomial b);
Polynomial squarefree_part(const Polynomial& p);

/// det(x I - m), computed exactly (Faddeev-LeVerrier).
Polynomial characteristic_polynomial(const QMatrix& m);

/// Distinct rational roots, ascending.
std::vector<Rational> rational_roots(const Polynomial& p);

/// Multiplicity of `root` as a zero of p.
int root_multiplicity(Polynomial p, const Rational& root);

}  // namespace wedge
