#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "wedge/matrix_lab.hpp"
#include "wedge/oracle.hpp"
#include "wedge/zoo.hpp"

namespace wedge {

using Json = nlohmann::json;

inline constexpr const char* kDatumSchema = "wedgectl/datum/1";
inline constexpr const char* kTubeSchema = "wedgectl/tube/1";

/// One input document: a datum plus the optional expected wedge.
struct DatumDocument {
  ModularDatum datum;
  std::optional<ExpectedWedge> expected;
  std::string reference;

  friend bool operator==(const DatumDocument&, const DatumDocument&) = default;
};

/// Throws ParseError with a "$.field[index]" path on any malformed input.
DatumDocument parse_datum(std::string_view text);
DatumDocument load_datum(const std::string& path);
Json datum_to_json(const DatumDocument& doc);
DatumDocument zoo_document(const ZooEntry& entry);

/// A bare vector-space datum (E, tau, h_op, W), for abelian examples.
struct TubeDocument {
  std::string name;
  TubeDatum datum;
  std::string reference;

  friend bool operator==(const TubeDocument&, const TubeDocument&) = default;
};

TubeDocument parse_tube(std::string_view text);
Json tube_to_json(const TubeDocument& doc);

/// Either kind of document, dispatched on "schema" (datum when absent).
using AnyDocument = std::variant<DatumDocument, TubeDocument>;
AnyDocument parse_document(std::string_view text);
AnyDocument load_document(const std::string& path);

/// Two-space indented, sorted keys, trailing newline.
std::string dump(const Json& j);

/// Parses {"real": [[...]], "imag": [[...]]} with floating entries; imag is
/// optional.
CMatrix parse_complex_matrix(const Json& j, const std::string& path = "$");
CMatrix load_complex_matrix(const std::string& path);

// Serialization building blocks.
Json to_json(const Rational& q);
Json to_json(const QVector& v);
Json to_json(const QMatrix& m);
Json basis_json(const Basis& b);
Json to_json(const ConvexCone& c);
Json to_json(const SplitCone& c);
Json to_json(const Check& c);
Json to_json(const std::map<std::string, Check>& checks);
Json to_json(const CMatrix& m);

Json report_json(const WedgeReport& report);
Json agreement_json(const AgreementReport& report);
Json tube_json(const TubeVerdict& v);
Json spectral_json(const std::vector<SpectralComponent>& parts);
Json dissipativity_json(const Dissipativity& d);
Json trajectory_json(const Trajectory& t);
Json bound_json(const BoundReport& b);
Json euler_json(const EulerTable& t);
Json jordan_example_json(const JordanExample& e);

std::string report_text(const WedgeReport& report);

}  // namespace wedge
