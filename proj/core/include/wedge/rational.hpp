#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace wedge {

using Rational = mpq_class;
using Integer = mpz_class;

/// Dense exact vector. Coordinates are with respect to whatever basis the
/// owning object fixes.
using QVector = std::vector<Rational>;

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws
/// std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" text: q > 0, gcd-reduced, "/1" omitted.
std::string format_rational(const Rational& value);

int sign(const Rational& value);

QVector zero_vector(std::size_t n);
QVector unit_vector(std::size_t n, std::size_t i);
bool is_zero(const QVector& v);

Rational dot(const QVector& a, const QVector& b);
QVector add(const QVector& a, const QVector& b);
QVector sub(const QVector& a, const QVector& b);
QVector scale(const Rational& s, const QVector& v);
QVector negate(const QVector& v);
/// a += s * b
void axpy(QVector& a, const Rational& s, const QVector& b);

/// Positive multiple of v with coprime integer entries. Zero stays zero.
QVector primitive(const QVector& v);

std::vector<double> to_double(const QVector& v);
std::string format_vector(const QVector& v);

}  // namespace wedge
