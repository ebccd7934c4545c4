#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "wedge/error.hpp"
#include "wedge/io.hpp"
#include "wedge/zoo.hpp"

using namespace wedge;

namespace {

QVector v(std::initializer_list<long> xs) {
  QVector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Zoo, NamesAreUniqueAndResolvable) {
  auto names = zoo_names();
  EXPECT_EQ(names.size(), 8u);
  for (const auto& n : names) EXPECT_EQ(zoo_entry(n).name, n);
  EXPECT_THROW(zoo_entry("nope"), Error);
}

TEST(Zoo, EveryEntryMatchesItsExpectation) {
  for (const auto& e : zoo()) {
    EXPECT_TRUE(validate(e.datum.algebra).ok()) << e.name;
    WedgeReport r = structure_wedge(e.datum);
    EXPECT_TRUE(r.ok()) << e.name;
    ExpectationMismatch m = compare_expected(r, e.expected);
    EXPECT_TRUE(m.ok()) << e.name << ": " << (m.problems.empty() ? "" : m.problems.front());
    EXPECT_TRUE(verify_g_red(r, e.datum.algebra).ok()) << e.name;
    EXPECT_TRUE(verify_lie_wedge(r, e.datum.algebra).passed) << e.name;
    EXPECT_EQ(r.g_red_basis.size(), e.expected.g_red_dim) << e.name;
  }
}

TEST(Zoo, ClassicalWedges) {
  WedgeReport sl2 = structure_wedge(zoo_entry("sl2").datum);
  EXPECT_TRUE(same_cone(sl2.wedge.c_plus_ambient(), ConvexCone::polyhedral(3, {v({0, 1, 0})})));
  EXPECT_TRUE(same_cone(sl2.wedge.c_minus_ambient(), ConvexCone::polyhedral(3, {v({0, 0, 1})})));

  WedgeReport p4 = structure_wedge(zoo_entry("poincare4").datum);
  EXPECT_EQ(p4.unit_algebra.size(), 4u);
  EXPECT_EQ(p4.wedge.c_plus_ambient().ambient_dim(), 10u);
}

TEST(Zoo, CompareExpectedReportsMismatch) {
  ZooEntry e = zoo_entry("aff");
  WedgeReport r = structure_wedge(e.datum);
  ExpectedWedge wrong = e.expected;
  wrong.c_plus_rays = {v({1, 1})};
  EXPECT_FALSE(compare_expected(r, wrong).ok());
  wrong = e.expected;
  wrong.g_red_dim = 5;
  EXPECT_FALSE(compare_expected(r, wrong).ok());
}

TEST(Zoo, NormalizedRaysIgnoreScaleAndOrder) {
  EXPECT_EQ(normalized_rays({v({0, 2}), v({3, 0})}), normalized_rays({v({1, 0}), v({0, 5})}));
}

TEST(Zoo, ShippedFilesMatchBuiltins) {
  for (const auto& e : zoo()) {
    const std::string path = std::string(WEDGE_ZOO_DIR) + "/" + e.name + ".json";
    EXPECT_EQ(slurp(path), dump(datum_to_json(zoo_document(e)))) << path;
    DatumDocument doc = load_datum(path);
    EXPECT_EQ(doc.datum, e.datum) << e.name;
    ASSERT_TRUE(doc.expected) << e.name;
    EXPECT_EQ(*doc.expected, e.expected) << e.name;
  }
}
