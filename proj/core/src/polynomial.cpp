#include "wedge/polynomial.hpp"

#include <algorithm>
#include <set>

#include "wedge/error.hpp"

namespace wedge {

Polynomial trim(Polynomial p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int degree(const Polynomial& p) {
  auto t = trim(p);
  return static_cast<int>(t.size()) - 1;
}

Rational evaluate(const Polynomial& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial derivative(const Polynomial& p) {
  Polynomial d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  return trim(d);
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return trim(r);
}

std::pair<Polynomial, Polynomial> divide(const Polynomial& a, const Polynomial& b) {
  Polynomial bt = trim(b);
  if (bt.empty()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  Polynomial r = trim(a);
  if (r.size() < bt.size()) return {{}, r};
  Polynomial q(r.size() - bt.size() + 1, Rational(0));
  while (!r.empty() && r.size() >= bt.size()) {
    std::size_t shift = r.size() - bt.size();
    Rational f = r.back() / bt.back();
    q[shift] = f;
    for (std::size_t i = 0; i < bt.size(); ++i) r[shift + i] -= f * bt[i];
    r = trim(r);
  }
  return {trim(q), r};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  a = trim(a);
  b = trim(b);
  while (!b.empty()) {
    auto r = divide(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  Rational lead = a.back();
  for (auto& c : a) c /= lead;
  return a;
}

Polynomial squarefree_part(const Polynomial& p) {
  Polynomial t = trim(p);
  if (degree(t) <= 0) return t;
  Polynomial g = gcd(t, derivative(t));
  return divide(t, g).first;
}

Polynomial characteristic_polynomial(const QMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "characteristic polynomial of non-square matrix");
  std::size_t n = m.rows();
  Polynomial c(n + 1, Rational(0));
  c[n] = 1;
  QMatrix mk(n, n);
  QMatrix id = QMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk + c[n - k + 1] * id;
    QMatrix amk = m * mk;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += amk(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

namespace {

std::vector<Integer> divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<std::pair<Integer, int>> factors;
  Integer d = 2;
  const Integer limit = 1000000;
  while (d * d <= n && d <= limit) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) factors.emplace_back(d, e);
    d += (d == 2) ? 1 : 2;
  }
  if (n > 1) {
    if (d * d <= n && mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) {
      throw Error(ErrorCode::InvalidArgument, "coefficient too large to factor for rational root search");
    }
    factors.emplace_back(n, 1);
  }
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : factors) {
    std::size_t base = divs.size();
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

}  // namespace

std::vector<Rational> rational_roots(const Polynomial& p) {
  Polynomial f = squarefree_part(p);
  if (degree(f) <= 0) return {};
  std::vector<Rational> roots;
  // Integer primitive form.
  Integer lcm = 1;
  for (const auto& c : f) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> coeffs;
  for (const auto& c : f) coeffs.push_back(Integer(c * lcm));
  std::size_t low = 0;
  while (coeffs[low] == 0) ++low;
  if (low > 0) roots.push_back(0);
  if (low + 1 < coeffs.size()) {
    std::set<Rational> found;
    auto nums = divisors(coeffs[low]);
    auto dens = divisors(coeffs.back());
    for (const auto& q : dens)
      for (const auto& pnum : nums)
        for (int s : {1, -1}) {
          Rational cand(pnum * s, q);
          cand.canonicalize();
          if (found.count(cand)) continue;
          if (evaluate(f, cand) == 0) found.insert(cand);
        }
    roots.insert(roots.end(), found.begin(), found.end());
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

int root_multiplicity(Polynomial p, const Rational& root) {
  p = trim(p);
  int m = 0;
  const Polynomial lin{-root, Rational(1)};
  while (!p.empty() && evaluate(p, root) == 0) {
    p = divide(p, lin).first;
    ++m;
  }
  return m;
}

}  // namespace wedge
