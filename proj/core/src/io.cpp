#include "wedge/io.hpp"

#include <fstream>
#include <sstream>

#include "wedge/error.hpp"

namespace wedge {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& reason) {
  throw Error(ErrorCode::ParseError, path + ": " + reason);
}

const Json& field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing field");
  return *it;
}

std::size_t parse_index(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::string parse_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

Rational parse_q(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(path, "malformed rational \"" + j.get<std::string>() + "\"");
  }
}

QVector parse_qvector(const Json& j, std::size_t n, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  if (j.size() != n) fail(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
  QVector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(parse_q(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

std::vector<QVector> parse_qvectors(const Json& j, std::size_t n, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of vectors");
  std::vector<QVector> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_qvector(j[i], n, path + "[" + std::to_string(i) + "]"));
  return out;
}

QMatrix parse_qmatrix(const Json& j, std::size_t n, const std::string& path) {
  return QMatrix::from_rows(parse_qvectors(j, n, path), n);
}

ConvexCone parse_cone(const Json& j, std::size_t n, const std::string& path) {
  std::string type = parse_string(field(j, "type", path), path + ".type");
  std::optional<Rational> approx;
  if (j.contains("approx_tol")) {
    approx = parse_q(j["approx_tol"], path + ".approx_tol");
    if (*approx < 0) fail(path + ".approx_tol", "must be nonnegative");
  }
  ConvexCone cone;
  try {
    if (type == "polyhedral") {
      cone = ConvexCone::polyhedral(n, parse_qvectors(field(j, "generators", path), n, path + ".generators"));
    } else if (type == "quadratic") {
      QMatrix form = parse_qmatrix(field(j, "form", path), n, path + ".form");
      if (form.rows() != n) fail(path + ".form", "expected " + std::to_string(n) + " rows");
      QVector functional = parse_qvector(field(j, "functional", path), n, path + ".functional");
      std::optional<Basis> support;
      if (j.contains("support")) support = parse_qvectors(j["support"], n, path + ".support");
      cone = ConvexCone::quadratic(std::move(form), std::move(functional), std::move(support));
    } else {
      fail(path + ".type", "unknown cone type \"" + type + "\" (polyhedral or quadratic)");
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail(path, e.what());
  }
  return approx ? cone.with_approximation(*approx) : cone;
}

ExpectedWedge parse_expected(const Json& j, std::size_t n, const std::string& path) {
  ExpectedWedge e;
  e.c_plus_rays = parse_qvectors(field(j, "c_plus", path), n, path + ".c_plus");
  e.c_minus_rays = parse_qvectors(field(j, "c_minus", path), n, path + ".c_minus");
  e.edge = parse_qvectors(field(j, "edge", path), n, path + ".edge");
  e.g_red_dim = parse_index(field(j, "g_red_dim", path), path + ".g_red_dim");
  return e;
}

DatumDocument datum_document(const Json& j) {
  const std::string root = "$";
  if (!j.is_object()) fail(root, "expected an object");
  DatumDocument doc;
  doc.datum.name = parse_string(field(j, "name", root), "$.name");
  const std::size_t n = parse_index(field(j, "dim", root), "$.dim");
  if (n == 0) fail("$.dim", "must be positive");

  const Json& basis = field(j, "basis", root);
  if (!basis.is_array() || basis.size() != n) fail("$.basis", "expected " + std::to_string(n) + " basis names");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(parse_string(basis[i], "$.basis[" + std::to_string(i) + "]"));
  LieAlgebra g(names);

  const Json& brackets = field(j, "brackets", root);
  if (!brackets.is_array()) fail("$.brackets", "expected an array");
  for (std::size_t b = 0; b < brackets.size(); ++b) {
    const std::string p = "$.brackets[" + std::to_string(b) + "]";
    std::size_t i = parse_index(field(brackets[b], "i", p), p + ".i");
    std::size_t k = parse_index(field(brackets[b], "j", p), p + ".j");
    if (i >= n || k >= n) fail(p, "basis index out of range");
    if (i >= k) fail(p, "expected i < j");
    const Json& coeffs = field(brackets[b], "coeffs", p);
    if (!coeffs.is_object()) fail(p + ".coeffs", "expected an object {index: \"p/q\"}");
    QVector v = zero_vector(n);
    for (auto it = coeffs.begin(); it != coeffs.end(); ++it) {
      std::size_t idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoul(it.key(), &used);
        if (used != it.key().size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        fail(p + ".coeffs", "key \"" + it.key() + "\" is not a basis index");
      }
      if (idx >= n) fail(p + ".coeffs." + it.key(), "basis index out of range");
      v[idx] = parse_q(it.value(), p + ".coeffs." + it.key());
    }
    if (!is_zero(g.bracket(i, k))) fail(p, "bracket given twice");
    g.set_bracket(i, k, v);
  }
  doc.datum.algebra = std::move(g);
  doc.datum.tau = {parse_qmatrix(field(j, "tau", root), n, "$.tau"), EndoKind::Involution};
  if (doc.datum.tau.matrix.rows() != n) fail("$.tau", "expected " + std::to_string(n) + " rows");
  doc.datum.h_elem = parse_qvector(field(j, "h", root), n, "$.h");
  doc.datum.cone = parse_cone(field(j, "cone", root), n, "$.cone");
  if (j.contains("expected")) doc.expected = parse_expected(j["expected"], n, "$.expected");
  if (j.contains("reference")) doc.reference = parse_string(j["reference"], "$.reference");
  return doc;
}

TubeDocument tube_document(const Json& j) {
  const std::string root = "$";
  TubeDocument doc;
  doc.name = parse_string(field(j, "name", root), "$.name");
  const std::size_t n = parse_index(field(j, "dim", root), "$.dim");
  if (n == 0) fail("$.dim", "must be positive");
  doc.datum.tau = parse_qmatrix(field(j, "tau", root), n, "$.tau");
  if (doc.datum.tau.rows() != n) fail("$.tau", "expected " + std::to_string(n) + " rows");
  doc.datum.h_op = parse_qmatrix(field(j, "h_op", root), n, "$.h_op");
  if (doc.datum.h_op.rows() != n) fail("$.h_op", "expected " + std::to_string(n) + " rows");
  doc.datum.cone = parse_cone(field(j, "cone", root), n, "$.cone");
  if (j.contains("reference")) doc.reference = parse_string(j["reference"], "$.reference");
  return doc;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
}

std::string schema_of(const Json& j) {
  if (!j.is_object()) fail("$", "expected an object");
  if (!j.contains("schema")) return kDatumSchema;
  std::string s = parse_string(j["schema"], "$.schema");
  if (s != kDatumSchema && s != kTubeSchema) {
    fail("$.schema", "unsupported schema \"" + s + "\" (expected " + kDatumSchema + " or " + kTubeSchema + ")");
  }
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class F>
auto with_path(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ParseError) throw;
    std::string what = e.what();
    const std::string prefix = std::string(to_string(ErrorCode::ParseError)) + ": ";
    if (what.rfind(prefix, 0) == 0) what = what.substr(prefix.size());
    throw Error(ErrorCode::ParseError, path + ": " + what);
  }
}

}  // namespace

DatumDocument parse_datum(std::string_view text) {
  Json j = parse_json(text);
  if (schema_of(j) != kDatumSchema) fail("$.schema", std::string("expected ") + kDatumSchema);
  return datum_document(j);
}

TubeDocument parse_tube(std::string_view text) {
  Json j = parse_json(text);
  if (schema_of(j) != kTubeSchema) fail("$.schema", std::string("expected ") + kTubeSchema);
  return tube_document(j);
}

AnyDocument parse_document(std::string_view text) {
  Json j = parse_json(text);
  if (schema_of(j) == kTubeSchema) return tube_document(j);
  return datum_document(j);
}

DatumDocument load_datum(const std::string& path) {
  return with_path(path, [&] { return parse_datum(read_file(path)); });
}

AnyDocument load_document(const std::string& path) {
  return with_path(path, [&] { return parse_document(read_file(path)); });
}

DatumDocument zoo_document(const ZooEntry& entry) { return {entry.datum, entry.expected, entry.reference}; }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Serialization

Json to_json(const Rational& q) { return format_rational(q); }

Json to_json(const QVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json to_json(const QMatrix& m) {
  Json a = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(to_json(m.row(r)));
  return a;
}

Json basis_json(const Basis& b) {
  Json a = Json::array();
  for (const auto& v : b) a.push_back(to_json(v));
  return a;
}

Json to_json(const ConvexCone& c) {
  Json j;
  if (c.is_polyhedral()) {
    j["type"] = "polyhedral";
    j["generators"] = basis_json(c.as_polyhedral().generators);
  } else {
    const auto& q = c.as_quadratic();
    j["type"] = "quadratic";
    j["form"] = to_json(q.form);
    j["functional"] = to_json(q.functional);
    if (q.explicit_support) j["support"] = basis_json(q.support);
  }
  if (c.approximate()) j["approx_tol"] = to_json(c.approximation_tolerance());
  return j;
}

namespace {

Json cone_summary(const ConvexCone& c) {
  Json j;
  j["pointed"] = is_pointed(c);
  if (c.is_polyhedral()) {
    j["type"] = "polyhedral";
    j["rays"] = basis_json(c.as_polyhedral().minimal.rays);
    j["lineality"] = basis_json(c.as_polyhedral().minimal.lineality);
  } else {
    j["type"] = "quadratic";
    j["cone"] = to_json(c);
  }
  return j;
}

}  // namespace

Json to_json(const SplitCone& c) {
  Json j;
  j["dim"] = c.dim;
  j["c_plus"] = cone_summary(c.c_plus_ambient());
  j["c_minus"] = cone_summary(c.c_minus_ambient());
  j["edge"] = basis_json(c.edge);
  j["q_plus"] = basis_json(c.q_plus);
  j["q_minus"] = basis_json(c.q_minus);
  if (c.polyhedral()) j["generators"] = basis_json(c.generators());
  return j;
}

Json to_json(const Check& c) {
  return {{"passed", c.passed}, {"certificate", to_string(c.kind)}, {"detail", c.detail}};
}

Json to_json(const std::map<std::string, Check>& checks) {
  Json j = Json::object();
  for (const auto& [name, c] : checks) j[name] = to_json(c);
  return j;
}

Json to_json(const CMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array(), ir = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ir);
  }
  return {{"real", re}, {"imag", im}};
}

Json datum_to_json(const DatumDocument& doc) {
  const ModularDatum& d = doc.datum;
  const std::size_t n = d.algebra.dim();
  Json j;
  j["schema"] = kDatumSchema;
  j["name"] = d.name;
  j["dim"] = n;
  j["basis"] = d.algebra.basis_names();
  Json brackets = Json::array();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k) {
      const QVector& v = d.algebra.bracket(i, k);
      if (is_zero(v)) continue;
      Json coeffs = Json::object();
      for (std::size_t c = 0; c < n; ++c) {
        if (v[c] != 0) coeffs[std::to_string(c)] = to_json(v[c]);
      }
      brackets.push_back({{"i", i}, {"j", k}, {"coeffs", coeffs}});
    }
  j["brackets"] = brackets;
  j["tau"] = to_json(d.tau.matrix);
  j["h"] = to_json(d.h_elem);
  j["cone"] = to_json(d.cone);
  if (doc.expected) {
    j["expected"] = {{"c_plus", basis_json(doc.expected->c_plus_rays)},
                     {"c_minus", basis_json(doc.expected->c_minus_rays)},
                     {"edge", basis_json(doc.expected->edge)},
                     {"g_red_dim", doc.expected->g_red_dim}};
  }
  if (!doc.reference.empty()) j["reference"] = doc.reference;
  return j;
}

Json tube_to_json(const TubeDocument& doc) {
  Json j;
  j["schema"] = kTubeSchema;
  j["name"] = doc.name;
  j["dim"] = doc.datum.dim();
  j["tau"] = to_json(doc.datum.tau);
  j["h_op"] = to_json(doc.datum.h_op);
  j["cone"] = to_json(doc.datum.cone);
  if (!doc.reference.empty()) j["reference"] = doc.reference;
  return j;
}

CMatrix parse_complex_matrix(const Json& j, const std::string& path) {
  auto rows_of = [&](const Json& a, const std::string& p) {
    if (!a.is_array() || a.empty()) fail(p, "expected a nonempty array of rows");
    std::vector<std::vector<double>> rows;
    for (std::size_t r = 0; r < a.size(); ++r) {
      const std::string rp = p + "[" + std::to_string(r) + "]";
      if (!a[r].is_array() || a[r].size() != a.size()) fail(rp, "expected a row of length " + std::to_string(a.size()));
      std::vector<double> row;
      for (std::size_t c = 0; c < a[r].size(); ++c) {
        if (!a[r][c].is_number()) fail(rp + "[" + std::to_string(c) + "]", "expected a number");
        row.push_back(a[r][c].get<double>());
      }
      rows.push_back(row);
    }
    return rows;
  };
  auto re = rows_of(field(j, "real", path), path + ".real");
  const Eigen::Index n = static_cast<Eigen::Index>(re.size());
  CMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = re[r][c];
  if (j.contains("imag")) {
    auto im = rows_of(j["imag"], path + ".imag");
    if (static_cast<Eigen::Index>(im.size()) != n) fail(path + ".imag", "size differs from the real part");
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) m(r, c) += std::complex<double>(0.0, im[r][c]);
  }
  return m;
}

CMatrix load_complex_matrix(const std::string& path) {
  return with_path(path, [&] { return parse_complex_matrix(parse_json(read_file(path)), "$"); });
}

// ---------------------------------------------------------------------------
// Reports

Json report_json(const WedgeReport& r) {
  Json j;
  j["schema"] = "wedgectl/wedge-report/1";
  j["name"] = r.name;
  j["verdict"] = r.ok() ? "pass" : "fail";
  j["wedge"] = to_json(r.wedge);
  j["span_plus"] = basis_json(r.span_plus);
  j["span_minus"] = basis_json(r.span_minus);
  j["g_red_basis"] = basis_json(r.g_red_basis);
  j["g_red_dim"] = r.g_red_basis.size();
  j["edge_dim"] = r.wedge.edge.size();
  j["unit_algebra"] = basis_json(r.unit_algebra);
  j["checks"] = to_json(r.checks);
  j["flags"] = {{"isolated", r.isolated}, {"invariance_uncertified", r.invariance_uncertified}};
  return j;
}

Json tube_json(const TubeVerdict& v) {
  Json j;
  j["member"] = v.member;
  j["margin"] = std::isfinite(v.margin) ? Json(v.margin) : Json(nullptr);
  j["parity_residual"] = v.parity_residual;
  j["parity_failed"] = v.parity_failed;
  j["witness_y"] = v.witness_y ? Json(*v.witness_y) : Json(nullptr);
  return j;
}

Json agreement_json(const AgreementReport& r) {
  Json j;
  j["schema"] = "wedgectl/agreement/1";
  j["verdict"] = r.ok() ? "pass" : "fail";
  j["total"] = r.total;
  j["compared"] = r.compared;
  j["excluded"] = r.excluded;
  j["exact_members"] = r.exact_members;
  j["disagreements"] = r.disagreements;
  j["agreement"] = r.agreement();
  j["disagreements_by_kind"] = r.by_kind;
  j["config"] = {{"samples", r.config.samples}, {"tol", r.config.tol}, {"seed", r.config.seed}};
  Json ex = Json::array();
  for (const auto& d : r.examples) {
    ex.push_back({{"index", d.index}, {"kind", d.kind}, {"x", to_json(d.x)}, {"exact_member", d.exact_member},
                  {"oracle", tube_json(d.oracle)}});
  }
  j["examples"] = ex;
  return j;
}

Json spectral_json(const std::vector<SpectralComponent>& parts) {
  Json a = Json::array();
  for (const auto& p : parts) a.push_back({{"weight", p.weight}, {"component", to_json(p.component)}});
  return a;
}

Json dissipativity_json(const Dissipativity& d) {
  return {{"dissipative", d.dissipative}, {"lambda_max", d.lambda_max}};
}

Json trajectory_json(const Trajectory& t) {
  Json pts = Json::array();
  for (const auto& p : t.points) pts.push_back({p.t, p.norm});
  return {{"points", pts},
          {"max_norm", t.max_norm},
          {"t_at_max", t.t_at_max},
          {"first_exceed", t.first_exceed ? Json(*t.first_exceed) : Json(nullptr)}};
}

Json bound_json(const BoundReport& b) {
  return {{"norm_a", b.norm_a},           {"norm_a_beta", b.norm_a_beta},
          {"bound", b.bound},             {"max_norm", b.max_norm},
          {"slack", b.slack},             {"covariance_residual", b.covariance_residual},
          {"grid_points", b.grid_points}, {"covariance_pairs", b.covariance_pairs}};
}

Json euler_json(const EulerTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) rows.push_back({{"n", r.n}, {"error", r.error}});
  return {{"rows", rows}, {"monotone", t.monotone}, {"dissipative", t.dissipative}};
}

Json jordan_example_json(const JordanExample& e) {
  return {{"eps", e.eps},
          {"g", to_json(e.g)},
          {"y", to_json(e.y)},
          {"g_norm", e.g_norm},
          {"g_norm_closed_form", e.g_norm_closed_form},
          {"exp_y_norm", e.exp_norm},
          {"dissipativity", dissipativity_json(e.dissipativity)},
          {"lambda_max_closed_form", e.lambda_max_closed_form},
          {"max_norm", e.trajectory.max_norm},
          {"t_at_max", e.trajectory.t_at_max},
          {"first_exceed", e.trajectory.first_exceed ? Json(*e.trajectory.first_exceed) : Json(nullptr)},
          {"grid_points", e.trajectory.points.size()}};
}

std::string report_text(const WedgeReport& r) {
  std::ostringstream out;
  auto rays = [](const ConvexCone& c) {
    if (!c.is_polyhedral()) return std::string("quadratic cone");
    const auto& m = c.as_polyhedral().minimal;
    if (m.rays.empty() && m.lineality.empty()) return std::string("{0}");
    std::string s;
    for (const auto& v : m.rays) s += (s.empty() ? "" : " ") + format_vector(v);
    for (const auto& v : m.lineality) s += (s.empty() ? "" : " ") + std::string("+-") + format_vector(v);
    return s;
  };
  out << "wedge report: " << r.name << "\n";
  out << "  C+    : " << rays(r.wedge.c_plus_ambient()) << "\n";
  out << "  C-    : " << rays(r.wedge.c_minus_ambient()) << "\n";
  out << "  edge  : dim " << r.wedge.edge.size();
  for (const auto& v : r.wedge.edge) out << " " << format_vector(v);
  out << "\n  g_red : dim " << r.g_red_basis.size() << "\n";
  if (r.isolated) out << "  note  : C+ = C- = {0}; the wedge is the subalgebra h_0(h)\n";
  if (r.invariance_uncertified) out << "  note  : cone invariance is certified numerically only\n";
  out << "  checks:\n";
  for (const auto& [name, c] : r.checks) {
    out << "    " << (c.passed ? "ok  " : "FAIL") << " " << name << " [" << to_string(c.kind) << "] " << c.detail
        << "\n";
  }
  out << "  verdict: " << (r.ok() ? "pass" : "fail") << "\n";
  return out.str();
}

}  // namespace wedge
