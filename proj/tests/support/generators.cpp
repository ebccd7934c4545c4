#include "generators.hpp"

namespace wedge::testing {

Rational Rng::rational(long lo, long hi, long max_den) {
  Rational q(uniform(lo, hi), uniform(1, max_den));
  q.canonicalize();
  return q;
}

QVector Rng::vector(std::size_t n, long lo, long hi) {
  QVector v(n);
  for (auto& x : v) x = Rational(uniform(lo, hi));
  return v;
}

QMatrix Rng::matrix(std::size_t rows, std::size_t cols, long lo, long hi) {
  QMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = Rational(uniform(lo, hi));
  return m;
}

QMatrix Rng::invertible(std::size_t n) {
  QMatrix l = QMatrix::identity(n), u = QMatrix::identity(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < r; ++c) {
      l(r, c) = Rational(uniform(-1, 1));
      u(c, r) = Rational(uniform(-1, 1));
    }
  return l * u;
}

namespace {

AbelianCase build_abelian(Rng& rng, std::vector<long> weights, std::vector<long> parities) {
  const std::size_t n = weights.size();
  AbelianCase c;
  c.weights = weights;
  c.parities = parities;
  c.basis = rng.invertible(n);
  QMatrix p_inv = *inverse(c.basis);
  QVector d(n), s(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = Rational(weights[i]);
    s[i] = Rational(parities[i]);
  }
  c.datum.h_op = c.basis * QMatrix::diagonal(d) * p_inv;
  c.datum.tau = c.basis * QMatrix::diagonal(s) * p_inv;

  std::vector<long> sigma(n);
  for (auto& x : sigma) x = rng.coin() ? 1 : -1;
  std::vector<QVector> gens;
  for (std::size_t i = 0; i < n; ++i) {
    if (parities[i] == -1 && (gens.empty() || rng.coin())) gens.push_back(scale(Rational(sigma[i]), unit_vector(n, i)));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (parities[j] != -1) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (parities[k] != 1 || weights[k] != weights[j] || !rng.coin()) continue;
      QVector base = scale(Rational(sigma[j]), unit_vector(n, j));
      gens.push_back(add(base, unit_vector(n, k)));
      gens.push_back(sub(base, unit_vector(n, k)));
    }
  }
  for (auto& g : gens) g = c.basis.apply(g);
  c.datum.cone = ConvexCone::polyhedral(n, gens);
  return c;
}

}  // namespace

AbelianCase random_abelian(std::uint64_t seed, std::size_t max_dim) {
  Rng rng(seed);
  const std::size_t n = static_cast<std::size_t>(rng.uniform(2, long(max_dim)));
  std::vector<long> weights(n), parities(n);
  for (std::size_t i = 0; i < n; ++i) {
    weights[i] = rng.uniform(-2, 2);
    parities[i] = rng.coin() ? 1 : -1;
  }
  parities[0] = -1;
  return build_abelian(rng, weights, parities);
}

WeightTwoCase random_weight_two(std::uint64_t seed) {
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const std::size_t n = static_cast<std::size_t>(rng.uniform(3, 7));
  std::vector<long> weights(n), parities(n);
  for (std::size_t i = 0; i < n; ++i) {
    weights[i] = rng.uniform(-2, 2);
    parities[i] = rng.coin() ? 1 : -1;
  }
  parities[0] = -1;
  weights[n - 1] = rng.coin() ? 2 : -2;
  parities[n - 1] = 1;

  WeightTwoCase out;
  out.data = build_abelian(rng, weights, parities);
  out.weight = weights[n - 1];
  SplitCone closed = tube_inv(out.data.datum);
  QVector m = zero_vector(n);
  for (const auto& g : closed.generators()) axpy(m, Rational(rng.uniform(0, 3)), g);
  long c = rng.uniform(1, 3) * (rng.coin() ? 1 : -1);
  out.x = add(m, scale(Rational(c), out.data.basis.col(n - 1)));
  return out;
}

SpectralTriple random_spectral_triple(std::uint64_t seed, bool compatible) {
  Rng rng(seed);
  const std::size_t n = static_cast<std::size_t>(rng.uniform(2, 6));
  std::vector<long> weights(n), coeffs(n);
  QVector d(n), s(n);
  for (std::size_t i = 0; i < n; ++i) {
    weights[i] = rng.uniform(-2, 2);
    coeffs[i] = rng.uniform(-3, 3);
    d[i] = Rational(weights[i]);
    s[i] = Rational(weights[i] % 2 == 0 ? 1 : -1);
  }
  if (!compatible) {
    std::size_t bad = static_cast<std::size_t>(rng.uniform(0, long(n) - 1));
    s[bad] = -s[bad];
    if (coeffs[bad] == 0) coeffs[bad] = 1;
  }
  QMatrix p = rng.invertible(n);
  QMatrix p_inv = *inverse(p);
  SpectralTriple t;
  t.h_op = p * QMatrix::diagonal(d) * p_inv;
  t.tau = p * QMatrix::diagonal(s) * p_inv;
  t.x = zero_vector(n);
  t.expected_components.assign(5, zero_vector(n));
  for (std::size_t i = 0; i < n; ++i) {
    QVector part = scale(Rational(coeffs[i]), p.col(i));
    t.x = add(t.x, part);
    t.expected_components[static_cast<std::size_t>(weights[i] + 2)] =
        add(t.expected_components[static_cast<std::size_t>(weights[i] + 2)], part);
  }
  return t;
}

}  // namespace wedge::testing
