// wedgectl: command line front end for the wedge library.
//
// Exit codes: 0 all verdicts pass, 1 a verdict failed (or a mathematical
// precondition was violated), 2 usage or parse error.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "wedge/error.hpp"
#include "wedge/io.hpp"

namespace fs = std::filesystem;
using namespace wedge;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Tolerance {
  double value = 1e-9;
  std::string source = "default";

  Json json() const { return {{"value", value}, {"source", source}}; }
};

Tolerance default_tolerance() {
  Tolerance t;
  if (const char* env = std::getenv("WEDGECTL_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0)) {
      throw UsageError(std::string("WEDGECTL_TOL must be a positive number, got \"") + env + "\"");
    }
    t.value = v;
    t.source = "WEDGECTL_TOL";
  }
  return t;
}

struct Input {
  std::string label;
  AnyDocument doc;
};

std::vector<Input> resolve_inputs(const std::string& source) {
  if (source.rfind("zoo:", 0) == 0) {
    return {{source, zoo_document(zoo_entry(source.substr(4)))}};
  }
  if (fs::is_directory(source)) {
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(source)) {
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path().string());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw UsageError("no .json documents in directory " + source);
    std::vector<Input> out;
    for (const auto& f : files) out.push_back({f, load_document(f)});
    return out;
  }
  return {{source, load_document(source)}};
}

QVector parse_vector_arg(const std::string& text, std::size_t n) {
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  QVector v;
  std::string tok;
  while (in >> tok) {
    try {
      v.push_back(parse_rational(tok));
    } catch (const std::invalid_argument&) {
      throw UsageError("--vector: malformed rational \"" + tok + "\"");
    }
  }
  if (v.size() != n) {
    throw UsageError("--vector: expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
  }
  return v;
}

std::string doc_name(const AnyDocument& d) {
  return std::visit(
      [](const auto& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, DatumDocument>) {
          return x.datum.name;
        } else {
          return x.name;
        }
      },
      d);
}

TubeDatum as_tube(const AnyDocument& d) {
  if (const auto* m = std::get_if<DatumDocument>(&d)) return tube_datum(m->datum);
  return std::get<TubeDocument>(d).datum;
}

bool all_passed(const std::map<std::string, Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const auto& kv) { return kv.second.passed; });
}

std::string checks_text(const std::map<std::string, Check>& checks) {
  std::ostringstream out;
  for (const auto& [name, c] : checks) {
    out << "  " << (c.passed ? "ok  " : "FAIL") << " " << name << " [" << to_string(c.kind) << "] " << c.detail
        << "\n";
  }
  return out.str();
}

// One processed document: its JSON report, its text rendering, and the verdict.
struct Outcome {
  Json json;
  std::string text;
  int code = kPass;
};

Outcome error_outcome(const std::string& label, const Error& e) {
  Outcome o;
  o.code = e.code() == ErrorCode::ParseError ? kUsage : kFail;
  o.json = {{"input", label}, {"verdict", "error"}, {"error", {{"code", to_string(e.code())}, {"message", e.what()}}}};
  o.text = label + ": error: " + e.what() + "\n";
  return o;
}

struct Emitter {
  std::string format = "text";

  int emit(const std::string& kind, const std::vector<Outcome>& outcomes) const {
    int code = kPass;
    for (const auto& o : outcomes) code = std::max(code, o.code);
    if (format == "json") {
      if (outcomes.size() == 1) {
        std::cout << dump(outcomes.front().json);
      } else {
        Json results = Json::array();
        for (const auto& o : outcomes) results.push_back(o.json);
        std::cout << dump({{"schema", "wedgectl/batch/1"},
                           {"command", kind},
                           {"results", results},
                           {"verdict", code == kPass ? "pass" : "fail"}});
      }
    } else {
      for (const auto& o : outcomes) std::cout << o.text;
    }
    return code;
  }
};

template <class F>
int run_each(const std::string& kind, const std::string& source, const Emitter& emitter, F&& process) {
  std::vector<Outcome> outcomes;
  std::vector<Input> inputs;
  try {
    inputs = resolve_inputs(source);
  } catch (const Error& e) {
    // An unreadable or malformed input is a parse problem regardless of its code.
    if (e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::ParseError) {
      std::cerr << "wedgectl: " << e.what() << "\n";
      return kUsage;
    }
    throw;
  }
  for (const auto& in : inputs) {
    try {
      outcomes.push_back(process(in));
    } catch (const UsageError&) {
      throw;
    } catch (const Error& e) {
      outcomes.push_back(error_outcome(in.label, e));
    }
  }
  return emitter.emit(kind, outcomes);
}

// ---------------------------------------------------------------------------
// Subcommands on documents

Outcome cmd_check(const Input& in, const Tolerance& tol) {
  NumericOptions opts;
  opts.tol = tol.value;
  std::map<std::string, Check> checks;
  if (const auto* d = std::get_if<DatumDocument>(&in.doc)) {
    checks = certify_datum(d->datum, opts);
  } else {
    checks = certify_tube(std::get<TubeDocument>(in.doc).datum, opts);
  }
  Outcome o;
  o.code = all_passed(checks) ? kPass : kFail;
  o.json = {{"schema", "wedgectl/check/1"},
            {"input", in.label},
            {"name", doc_name(in.doc)},
            {"checks", to_json(checks)},
            {"tolerance", tol.json()},
            {"verdict", o.code == kPass ? "pass" : "fail"}};
  o.text = "check: " + doc_name(in.doc) + " (" + in.label + ")\n" + checks_text(checks) +
           "  verdict: " + (o.code == kPass ? "pass" : "fail") + "\n";
  return o;
}

Outcome cmd_wedge(const Input& in, const Tolerance& tol) {
  NumericOptions opts;
  opts.tol = tol.value;
  Outcome o;
  if (const auto* d = std::get_if<DatumDocument>(&in.doc)) {
    WedgeReport report = structure_wedge(d->datum, opts);
    if (d->expected) {
      ExpectationMismatch mismatch = compare_expected(report, *d->expected);
      std::string detail = "matches the expected wedge";
      if (!mismatch.ok()) {
        detail.clear();
        for (const auto& p : mismatch.problems) detail += (detail.empty() ? "" : "; ") + p;
      }
      report.checks["expected"] = {mismatch.ok(), CertificateKind::Exact, detail};
    }
    o.code = report.ok() ? kPass : kFail;
    o.json = report_json(report);
    o.json["input"] = in.label;
    o.json["tolerance"] = tol.json();
    o.text = report_text(report);
    return o;
  }
  const TubeDocument& t = std::get<TubeDocument>(in.doc);
  auto checks = certify_tube(t.datum, opts);
  SplitCone cone = tube_inv(t.datum);
  o.code = all_passed(checks) ? kPass : kFail;
  o.json = {{"schema", "wedgectl/tube-report/1"}, {"input", in.label}, {"name", t.name},
            {"cone", to_json(cone)},              {"checks", to_json(checks)}, {"tolerance", tol.json()},
            {"verdict", o.code == kPass ? "pass" : "fail"}};
  o.text = "tube report: " + t.name + "\n  q+ dim " + std::to_string(cone.q_plus.size()) + ", edge dim " +
           std::to_string(cone.edge.size()) + ", q- dim " + std::to_string(cone.q_minus.size()) + "\n" +
           checks_text(checks) + "  verdict: " + (o.code == kPass ? "pass" : "fail") + "\n";
  return o;
}

Outcome cmd_tube(const Input& in, const Tolerance& tol, const std::optional<std::string>& vector,
                 const OracleConfig& config) {
  TubeDatum datum = as_tube(in.doc);
  NumericOptions opts;
  opts.tol = tol.value;
  auto checks = certify_tube(datum, opts);
  SplitCone cone = tube_inv(datum);
  Outcome o;
  o.json = {{"schema", "wedgectl/tube/1"}, {"input", in.label}, {"name", doc_name(in.doc)},
            {"cone", to_json(cone)},       {"checks", to_json(checks)}, {"tolerance", tol.json()}};
  std::ostringstream text;
  text << "tube: " << doc_name(in.doc) << "\n"
       << "  q+   : " << cone.q_plus.size() << " dims\n"
       << "  edge : " << cone.edge.size() << " dims\n"
       << "  q-   : " << cone.q_minus.size() << " dims\n"
       << checks_text(checks);
  bool ok = all_passed(checks);
  if (vector) {
    QVector x = parse_vector_arg(*vector, datum.dim());
    bool exact = contains(cone, x);
    TubeVerdict v = tube_membership(datum, x, config);
    double margin = closed_form_margin(cone, x);
    bool agree = exact == v.member;
    // Points inside the boundary buffer cannot be resolved numerically.
    bool buffered = !exact && margin >= -10.0 * config.tol;
    ok = ok && (agree || buffered);
    o.json["query"] = {{"x", to_json(x)},
                       {"exact_member", exact},
                       {"closed_form_margin", margin},
                       {"oracle", tube_json(v)},
                       {"agree", agree},
                       {"within_buffer", buffered},
                       {"config", {{"samples", config.samples}, {"tol", config.tol}, {"seed", config.seed}}}};
    text << "  x      : " << format_vector(x) << "\n"
         << "  exact  : " << (exact ? "member" : "not a member") << " (margin " << margin << ")\n"
         << "  oracle : " << (v.member ? "member" : "not a member");
    if (v.witness_y) text << " (witness y = " << *v.witness_y << ")";
    if (v.parity_failed) text << " (parity residual " << v.parity_residual << ")";
    text << "\n";
  }
  o.code = ok ? kPass : kFail;
  o.json["verdict"] = ok ? "pass" : "fail";
  text << "  verdict: " << (ok ? "pass" : "fail") << "\n";
  o.text = text.str();
  return o;
}

Outcome cmd_oracle(const Input& in, const OracleConfig& config, std::size_t count, const Tolerance& tol) {
  AgreementReport r = fuzz_compare(as_tube(in.doc), config, count);
  Outcome o;
  o.code = r.ok() ? kPass : kFail;
  o.json = agreement_json(r);
  o.json["input"] = in.label;
  o.json["name"] = doc_name(in.doc);
  o.json["tolerance"] = tol.json();
  std::ostringstream text;
  text << "oracle: " << doc_name(in.doc) << " (samples " << config.samples << ", tol " << config.tol << ", seed "
       << config.seed << ")\n"
       << "  total " << r.total << ", compared " << r.compared << ", excluded " << r.excluded << ", exact members "
       << r.exact_members << "\n"
       << "  disagreements " << r.disagreements << ", agreement " << 100.0 * r.agreement() << "%\n";
  for (const auto& d : r.examples) {
    text << "    #" << d.index << " " << d.kind << " x = " << format_vector(d.x)
         << " exact=" << (d.exact_member ? "member" : "outside") << " oracle=" << (d.oracle.member ? "member" : "outside")
         << "\n";
  }
  text << "  verdict: " << (r.ok() ? "pass" : "fail") << "\n";
  o.text = text.str();
  return o;
}

Outcome cmd_decompose(const Input& in, const std::string& vector, const Tolerance& tol) {
  TubeDatum datum = as_tube(in.doc);
  QVector x = parse_vector_arg(vector, datum.dim());
  std::vector<SpectralComponent> parts;
  if (const auto* d = std::get_if<DatumDocument>(&in.doc)) {
    parts = spectral_decompose(d->datum.algebra, d->datum.h_elem, d->datum.tau, x);
  } else {
    parts = spectral_decompose(datum.h_op, datum.tau, x);
  }
  QVector sum = zero_vector(datum.dim());
  bool eigen_ok = true, parity_ok = true;
  for (const auto& p : parts) {
    sum = add(sum, p.component);
    eigen_ok = eigen_ok && datum.h_op.apply(p.component) == scale(Rational(p.weight), p.component);
    Rational sign = p.weight % 2 == 0 ? Rational(1) : Rational(-1);
    parity_ok = parity_ok && datum.tau.apply(p.component) == scale(sign, p.component);
  }
  bool reassembled = sum == x;
  ComplexVector at_pi = wick_flow(datum.h_op, x, std::numbers::pi);
  Eigen::VectorXd diff = at_pi.real_part - to_eigen(datum.tau.apply(x));
  double residual = std::sqrt(diff.squaredNorm() + at_pi.imag_part.squaredNorm());
  bool numeric_ok = residual < tol.value;
  bool ok = reassembled && eigen_ok && parity_ok && numeric_ok;

  Outcome o;
  o.code = ok ? kPass : kFail;
  o.json = {{"schema", "wedgectl/decompose/1"},
            {"input", in.label},
            {"name", doc_name(in.doc)},
            {"x", to_json(x)},
            {"components", spectral_json(parts)},
            {"reassembly_exact", reassembled},
            {"eigen_equations_exact", eigen_ok},
            {"parities_exact", parity_ok},
            {"numeric_parity_residual", residual},
            {"tolerance", tol.json()},
            {"verdict", ok ? "pass" : "fail"}};
  std::ostringstream text;
  text << "decompose: " << doc_name(in.doc) << " x = " << format_vector(x) << "\n";
  for (const auto& p : parts) text << "  weight " << p.weight << ": " << format_vector(p.component) << "\n";
  text << "  reassembly " << (reassembled ? "exact" : "FAILED") << ", eigen equations "
       << (eigen_ok ? "exact" : "FAILED") << ", parities " << (parity_ok ? "exact" : "FAILED") << "\n"
       << "  |e^{i pi h} x - tau x| = " << residual << "\n"
       << "  verdict: " << (ok ? "pass" : "fail") << "\n";
  o.text = text.str();
  return o;
}

// ---------------------------------------------------------------------------
// Matrix lab

struct MatrixSource {
  std::string file;
  std::optional<std::uint64_t> random_seed;
  int n = 4;
  std::string preset;
};

CMatrix load_matrix(const MatrixSource& src) {
  int given = !src.file.empty() + bool(src.random_seed) + !src.preset.empty();
  if (given != 1) throw UsageError("give exactly one of --matrix, --random, --preset");
  if (!src.file.empty()) return load_complex_matrix(src.file);
  if (src.random_seed) return random_strip_case(*src.random_seed, src.n).a;
  if (src.preset == "minus-identity") return -CMatrix::Identity(src.n, src.n);
  throw UsageError("unknown preset \"" + src.preset + "\" (known: minus-identity)");
}

Json source_json(const MatrixSource& src) {
  if (!src.file.empty()) return {{"matrix", src.file}};
  if (src.random_seed) return {{"random_seed", *src.random_seed}, {"n", src.n}};
  return {{"preset", src.preset}, {"n", src.n}};
}

void add_source_options(CLI::App* app, MatrixSource& src) {
  app->add_option("--matrix", src.file, "JSON file {\"real\": [[..]], \"imag\": [[..]]}")->check(CLI::ExistingFile);
  app->add_option("--random", src.random_seed, "seed for a random matrix with entries in [-1, 1]");
  app->add_option("--preset", src.preset, "named matrix: minus-identity");
  app->add_option("--n", src.n, "size for --random and --preset")->check(CLI::Range(1, 64));
}

Outcome single(Json json, bool ok, std::string text) {
  json["verdict"] = ok ? "pass" : "fail";
  return {std::move(json), std::move(text) + "  verdict: " + (ok ? "pass" : "fail") + "\n", ok ? kPass : kFail};
}

std::string num(double x) {
  std::ostringstream s;
  s.precision(12);
  s << x;
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wedgectl: wedges, tubes and oracles for involutive Lie algebra data"};
  app.require_subcommand(1);
  app.fallthrough();
  Emitter emitter;
  app.add_option("--format", emitter.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.footer(
      "Inputs: a datum file, zoo:<name>, or a directory of .json files (batch).\n"
      "WEDGECTL_TOL overrides the default numeric tolerance 1e-9.\n"
      "Exit codes: 0 all pass, 1 a verdict failed, 2 usage or parse error.");

  std::string input;
  auto add_input = [&input](CLI::App* sub) {
    sub->add_option("input", input, "datum file, zoo:<name>, or directory")->required();
  };

  auto* check = app.add_subcommand("check", "validate the algebra and certify the datum");
  add_input(check);

  auto* wedge_cmd = app.add_subcommand("wedge", "compute the structure wedge and run all verifications");
  add_input(wedge_cmd);

  OracleConfig config;
  std::optional<double> oracle_tol;
  std::size_t count = 1000;
  auto add_oracle_options = [&](CLI::App* sub) {
    sub->add_option("--samples", config.samples, "grid points on [0, pi]")->capture_default_str();
    sub->add_option("--tol", oracle_tol, "oracle tolerance (default from WEDGECTL_TOL or 1e-9)");
    sub->add_option("--seed", config.seed, "sampling seed")->capture_default_str();
  };

  std::optional<std::string> tube_vector;
  auto* tube = app.add_subcommand("tube", "closed-form tube cone, optionally testing one vector");
  add_input(tube);
  tube->add_option("--vector", tube_vector, "comma-separated rationals");
  add_oracle_options(tube);

  auto* oracle = app.add_subcommand("oracle", "compare the closed form with the Wick-rotation oracle");
  add_input(oracle);
  add_oracle_options(oracle);
  oracle->add_option("--count", count, "number of fuzz samples")->capture_default_str();

  std::string decompose_vector;
  auto* decompose = app.add_subcommand("decompose", "split a vector into ad h eigencomponents");
  add_input(decompose);
  decompose->add_option("--vector", decompose_vector, "comma-separated rationals")->required();

  std::string zoo_name, zoo_out;
  auto* zoo_cmd = app.add_subcommand("zoo", "list the zoo, print one entry, or write all entries");
  zoo_cmd->add_option("name", zoo_name, "entry to print as a datum document");
  zoo_cmd->add_option("--out", zoo_out, "write every entry to DIR/<name>.json");

  auto* matrix = app.add_subcommand("matrix", "floating-point matrix checks");
  matrix->require_subcommand(1);
  MatrixSource src;
  auto* dissipative = matrix->add_subcommand("dissipative", "is (Y + Y*)/2 negative semidefinite");
  add_source_options(dissipative, src);

  double t_max = 1.0;
  std::size_t points = 1000;
  auto* trajectory = matrix->add_subcommand("trajectory", "|e^{tY}| on a t-grid");
  add_source_options(trajectory, src);
  trajectory->add_option("--t-max", t_max, "grid end")->capture_default_str();
  trajectory->add_option("--points", points, "grid points")->check(CLI::Range(2, 1000000))->capture_default_str();

  std::uint64_t strip_seed = 0;
  int strip_cases = 50, strip_n = 4;
  StripGrid grid;
  auto* strip = matrix->add_subcommand("strip", "strip bound for e^{izH} A e^{-izH} on seeded random cases");
  strip->add_option("--seed", strip_seed, "first seed")->capture_default_str();
  strip->add_option("--cases", strip_cases, "number of cases")->check(CLI::Range(1, 100000))->capture_default_str();
  strip->add_option("--n", strip_n, "matrix size")->check(CLI::Range(1, 64))->capture_default_str();
  strip->add_option("--nx", grid.nx, "grid points along Re z")->capture_default_str();
  strip->add_option("--ny", grid.ny, "grid points along Im z")->capture_default_str();

  double euler_t = 1.0;
  std::vector<int> euler_n{4, 16, 64, 256, 1024};
  auto* euler = matrix->add_subcommand("euler", "(1 - (t/n) A)^{-n} against e^{tA}");
  add_source_options(euler, src);
  euler->add_option("--t", euler_t, "time")->capture_default_str();
  euler->add_option("--steps", euler_n, "list of n")->delimiter(',')->capture_default_str();

  double eps = 0.1;
  auto* ex57 = matrix->add_subcommand("example57", "normalized Jordan block whose logarithm is not dissipative");
  ex57->alias("jordan");
  ex57->add_option("--eps", eps, "diagonal entry")->check(CLI::PositiveNumber)->capture_default_str();
  ex57->add_option("--points", points, "t-grid points")->check(CLI::Range(2, 1000000))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    Tolerance tol = default_tolerance();
    config.tol = tol.value;
    if (oracle_tol) {
      config.tol = *oracle_tol;
      tol = {*oracle_tol, "flag"};
    }
    config.validate();

    if (check->parsed()) {
      return run_each("check", input, emitter, [&](const Input& in) { return cmd_check(in, tol); });
    }
    if (wedge_cmd->parsed()) {
      return run_each("wedge", input, emitter, [&](const Input& in) { return cmd_wedge(in, tol); });
    }
    if (tube->parsed()) {
      return run_each("tube", input, emitter,
                      [&](const Input& in) { return cmd_tube(in, tol, tube_vector, config); });
    }
    if (oracle->parsed()) {
      return run_each("oracle", input, emitter,
                      [&](const Input& in) { return cmd_oracle(in, config, count, tol); });
    }
    if (decompose->parsed()) {
      return run_each("decompose", input, emitter,
                      [&](const Input& in) { return cmd_decompose(in, decompose_vector, tol); });
    }
    if (zoo_cmd->parsed()) {
      if (!zoo_out.empty()) {
        fs::create_directories(zoo_out);
        for (const auto& e : zoo()) {
          std::ofstream(fs::path(zoo_out) / (e.name + ".json")) << dump(datum_to_json(zoo_document(e)));
        }
        std::cout << "wrote " << zoo().size() << " entries to " << zoo_out << "\n";
        return kPass;
      }
      if (zoo_name.empty()) {
        if (emitter.format == "json") {
          Json list = Json::array();
          for (const auto& e : zoo()) list.push_back({{"name", e.name}, {"reference", e.reference}});
          std::cout << dump({{"schema", "wedgectl/zoo-list/1"}, {"entries", list}});
        } else {
          for (const auto& e : zoo()) std::cout << e.name << "\t" << e.reference << "\n";
        }
        return kPass;
      }
      std::cout << dump(datum_to_json(zoo_document(zoo_entry(zoo_name))));
      return kPass;
    }

    std::vector<Outcome> out;
    std::string kind = "matrix";
    if (dissipative->parsed()) {
      CMatrix y = load_matrix(src);
      Dissipativity d = is_dissipative(y);
      out.push_back(single({{"schema", "wedgectl/dissipative/1"}, {"source", source_json(src)},
                            {"result", dissipativity_json(d)}},
                           d.dissipative,
                           "dissipative: lambda_max((Y + Y*)/2) = " + num(d.lambda_max) + "\n"));
    } else if (trajectory->parsed()) {
      CMatrix y = load_matrix(src);
      Trajectory t = contraction_trajectory(y, linspace(0.0, t_max, points));
      std::string text = "trajectory: max |e^{tY}| = " + num(t.max_norm) + " at t = " + num(t.t_at_max) + "\n";
      if (t.first_exceed) text += "  first exceeds 1 at t = " + num(*t.first_exceed) + "\n";
      out.push_back(single({{"schema", "wedgectl/trajectory/1"}, {"source", source_json(src)},
                            {"result", trajectory_json(t)}},
                           !t.first_exceed, text));
    } else if (strip->parsed()) {
      Json cases = Json::array();
      double worst_slack = -1e300, worst_cov = 0.0;
      for (int i = 0; i < strip_cases; ++i) {
        std::uint64_t seed = strip_seed + static_cast<std::uint64_t>(i);
        StripCase c = random_strip_case(seed, strip_n);
        StripGrid g = grid;
        g.beta = c.beta;
        BoundReport b = strip_bound_check(c.a, c.h, g, seed);
        worst_slack = std::max(worst_slack, b.slack);
        worst_cov = std::max(worst_cov, b.covariance_residual);
        Json bj = bound_json(b);
        bj["seed"] = seed;
        bj["beta"] = c.beta;
        cases.push_back(bj);
      }
      bool ok = worst_slack <= 1e-8 && worst_cov <= 1e-10;
      out.push_back(single({{"schema", "wedgectl/strip/1"},
                            {"cases", cases},
                            {"max_slack", worst_slack},
                            {"max_covariance_residual", worst_cov},
                            {"thresholds", {{"slack", 1e-8}, {"covariance", 1e-10}}}},
                           ok,
                           "strip: " + std::to_string(strip_cases) + " cases, n = " + std::to_string(strip_n) +
                               ", max slack " + num(worst_slack) + ", max covariance residual " + num(worst_cov) +
                               "\n"));
    } else if (euler->parsed()) {
      CMatrix a = load_matrix(src);
      EulerTable t = euler_limit_check(a, euler_t, euler_n);
      std::string text = "euler: t = " + num(euler_t) + "\n";
      for (const auto& r : t.rows) text += "  n = " + std::to_string(r.n) + "  error " + num(r.error) + "\n";
      text += std::string("  monotone: ") + (t.monotone ? "yes" : "no") + "\n";
      out.push_back(single({{"schema", "wedgectl/euler/1"}, {"source", source_json(src)}, {"t", euler_t},
                            {"result", euler_json(t)}},
                           t.monotone, text));
    } else if (ex57->parsed()) {
      JordanExample e = jordan_example(eps, points);
      bool contraction = e.exp_norm <= 1.0 + 1e-12;
      bool not_dissipative = e.dissipativity.lambda_max > 0;
      bool leaves = e.trajectory.max_norm >= 1.0 + 1e-6;
      std::string text = "jordan block: eps = " + num(eps) + "\n" + "  |e^Y| = " + num(e.exp_norm) + "\n" +
                         "  lambda_max((Y + Y*)/2) = " + num(e.dissipativity.lambda_max) + "\n" +
                         "  max_t |e^{tY}| = " + num(e.trajectory.max_norm) + " at t = " + num(e.trajectory.t_at_max) +
                         "\n";
      Json j = {{"schema", "wedgectl/jordan-example/1"},
                {"result", jordan_example_json(e)},
                {"checks",
                 {{"exp_y_contraction", contraction},
                  {"generator_not_dissipative", not_dissipative},
                  {"trajectory_leaves_unit_ball", leaves}}}};
      out.push_back(single(j, contraction && not_dissipative && leaves, text));
    }
    return emitter.emit(kind, out);
  } catch (const UsageError& e) {
    std::cerr << "wedgectl: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "wedgectl: " << e.what() << "\n";
    return e.code() == ErrorCode::ParseError || e.code() == ErrorCode::InvalidArgument ? kUsage : kFail;
  }
}
