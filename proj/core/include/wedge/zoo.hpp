#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wedge/wedge.hpp"

namespace wedge {

/// What structure_wedge should return for a datum. Rays are compared up to
/// positive scaling and order.
struct ExpectedWedge {
  std::vector<QVector> c_plus_rays;
  std::vector<QVector> c_minus_rays;
  Basis edge;
  std::size_t g_red_dim = 0;

  friend bool operator==(const ExpectedWedge&, const ExpectedWedge&) = default;
};

struct ZooEntry {
  std::string name;
  std::string reference;  // which classical example the entry models
  ModularDatum datum;
  ExpectedWedge expected;
};

std::vector<std::string> zoo_names();
/// Throws InvalidArgument for unknown names.
ZooEntry zoo_entry(const std::string& name);
std::vector<ZooEntry> zoo();

/// Poincare algebra of d-dimensional Minkowski space: translations e_0..e_{d-1}
/// first, then M_{mu nu} (mu < nu) in lexicographic order.
LieAlgebra poincare_algebra(std::size_t d);
/// sl(2,R) in the basis (H, E, F).
LieAlgebra sl2_algebra();

/// Primitive rays sorted lexicographically, for order-free comparison.
std::vector<QVector> normalized_rays(std::vector<QVector> rays);

struct ExpectationMismatch {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};
ExpectationMismatch compare_expected(const WedgeReport& report, const ExpectedWedge& expected);

}  // namespace wedge
