#include "wedge/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace wedge {

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  Integer p(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  Integer q(std::string(den), 10);
  if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) {
  Rational r = value;
  r.canonicalize();
  return r.get_str(10);
}

int sign(const Rational& value) { return sgn(value); }

QVector zero_vector(std::size_t n) { return QVector(n, Rational(0)); }

QVector unit_vector(std::size_t n, std::size_t i) {
  QVector v(n, Rational(0));
  v.at(i) = 1;
  return v;
}

bool is_zero(const QVector& v) {
  for (const auto& x : v) {
    if (x != 0) return false;
  }
  return true;
}

Rational dot(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  }
  return s;
}

QVector add(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("add: size mismatch");
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVector sub(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sub: size mismatch");
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVector scale(const Rational& s, const QVector& v) {
  QVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

QVector negate(const QVector& v) {
  QVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
  return r;
}

void axpy(QVector& a, const Rational& s, const QVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("axpy: size mismatch");
  if (s == 0) return;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] != 0) a[i] += s * b[i];
  }
}

QVector primitive(const QVector& v) {
  Integer den_lcm = 1;
  for (const auto& x : v) {
    if (x != 0) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
  }
  Integer num_gcd = 0;
  for (const auto& x : v) {
    if (x == 0) continue;
    Integer n = x.get_num() * (den_lcm / x.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
  }
  if (num_gcd == 0) return v;
  QVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) {
      r[i] = 0;
      continue;
    }
    Integer n = v[i].get_num() * (den_lcm / v[i].get_den());
    r[i] = Rational(Integer(n / num_gcd));
  }
  return r;
}

std::vector<double> to_double(const QVector& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].get_d();
  return r;
}

std::string format_vector(const QVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_rational(v[i]);
  }
  return s + ")";
}

}  // namespace wedge
