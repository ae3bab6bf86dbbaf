#include "ghor/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ghor/central.hpp"
#include "ghor/errors.hpp"
#include "ghor/instances.hpp"
#include "ghor/verify.hpp"

namespace ghor {

namespace {

struct Options {
  bool json = false;
  std::string data_dir;
  int degree = 0;
  int nmax = 4;
  int bound = 0;
  int rewrite_depth = -1;
  int class_bound = 3;
  std::string instance;
  std::vector<std::string> arrows;
  std::string emit_dir;
  int polygon = 2;
  int radius = 2;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::optional<std::string> data_dir(const Options& o) {
  if (!o.data_dir.empty()) return o.data_dir;
  if (const char* env = std::getenv(kDataDirEnv); env && *env) return std::string(env);
  return std::nullopt;
}

SuiteEntry resolve(const Options& o) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::is_regular_file(o.instance, ec)) {
    std::ifstream in(o.instance);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& ex) {
      throw ParseError(o.instance + ": invalid JSON: " + ex.what());
    }
    SuiteEntry e = entry_from_json(j, fs::path(o.instance).stem().string());
    e.origin = o.instance;
    return e;
  }
  LoadedSuite suite = load_suite(data_dir(o));
  for (auto& e : suite.entries)
    if (e.name == o.instance) return std::move(e);
  throw UsageError("unknown instance '" + o.instance + "' (not a file or suite name; see `ghor examples`)");
}

struct Emitter {
  const Options& o;
  std::ostream& out;
  std::string command;

  void report(const std::string& instance, nlohmann::json params, nlohmann::json results, const std::string& text,
              std::vector<std::string> notes = {}) {
    if (o.json) {
      nlohmann::json j{{"command", command}, {"instance", instance}, {"parameters", params},
                       {"results", results}, {"notes", notes}};
      out << j.dump(2) << "\n";
    } else {
      out << text;
      for (const auto& n : notes) out << "note: " << n << "\n";
    }
  }
};

std::string checks_text(const std::vector<CheckResult>& checks) {
  std::string s;
  for (const auto& c : checks) {
    s += "[" + std::string(status_name(c.status)) + "] ";
    if (!c.instance.empty()) s += c.instance + ": ";
    s += c.name + " - " + c.detail + "\n";
  }
  return s;
}

nlohmann::json checks_json(const std::vector<CheckResult>& checks) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : checks)
    j.push_back({{"check", c.name}, {"status", status_name(c.status)}, {"detail", c.detail}, {"data", c.data}});
  return j;
}

bool any_fail(const std::vector<CheckResult>& checks) {
  return std::any_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == Status::Fail; });
}

VerifyOptions verify_options(const Options& o) {
  VerifyOptions v;
  v.degree = o.degree;
  v.nmax = o.nmax;
  v.bound = o.bound;
  v.class_bound = o.class_bound;
  v.rewrite_depth = o.rewrite_depth;
  return v;
}

GeodesicOptions geodesic_options(const Options& o) {
  GeodesicOptions g;
  g.bound = o.bound;
  g.reps.rewrite_depth = o.rewrite_depth;
  return g;
}

int cmd_validate(const Options& o, Emitter& em) {
  SuiteEntry e = resolve(o);
  ValidationReport r = validate(e.quiver);
  std::string text;
  for (const auto& c : r.checks) text += std::string(c.passed ? "[pass] " : "[fail] ") + c.name + " - " + c.detail + "\n";
  em.report(e.name, nlohmann::json::object(), r.to_json(), text);
  return r.ok() ? 0 : 1;
}

int cmd_matchings(const Options& o, Emitter& em) {
  SuiteEntry e = resolve(o);
  MatchingIndex ix = classify(e.quiver);
  std::string text = std::to_string(ix.perfect.size()) + " perfect matchings, " + std::to_string(ix.simple.size()) +
                     " simple\n";
  std::vector<char> simple(ix.perfect.size(), 0);
  for (int k : ix.simple_in_perfect) simple[k] = 1;
  for (std::size_t k = 0; k < ix.perfect.size(); ++k)
    text += "  " + std::to_string(k) + " " + to_string(e.quiver, ix.perfect[k]) + (simple[k] ? "  simple" : "") + "\n";
  std::vector<std::string> notes;
  if (!ix.standing_assumption()) notes.push_back("some arrow lies in no perfect matching");
  if (!ix.simple_covers_arrows()) notes.push_back("some arrow lies in no simple matching; tau labels lose information");
  em.report(e.name, nlohmann::json::object(), ix.to_json(e.quiver), text, notes);
  return 0;
}

int cmd_label(const Options& o, Emitter& em) {
  SuiteEntry e = resolve(o);
  Path p = make_path(e.quiver, o.arrows);
  MatchingIndex ix = classify(e.quiver);
  ExponentVector eta = eta_bar(e.quiver, ix, p), tau = tau_bar(e.quiver, ix, p);
  nlohmann::json res{{"path", o.arrows}, {"eta", eta.exps}, {"tau", tau.exps}, {"eta_monomial", monomial(eta)},
                     {"tau_monomial", monomial(tau)}};
  std::string text = "eta " + to_string(eta) + "  (" + monomial(eta) + ")\n" + "tau " + to_string(tau) + "  (" +
                     monomial(tau) + ")\n";
  if (!p.arrows.empty() && is_closed(e.quiver, p)) {
    CycleTopology ct(e.quiver, ix);
    ClassVector cls = ct.cycle_class(p);
    bool contractible = ct.is_contractible(p);
    SigmaNormal sn = sigma_normal(tau);
    res["class"] = cls;
    res["contractible"] = contractible;
    res["sigma_normal"] = {{"reduced", sn.reduced.exps}, {"power", sn.power}};
    text += "class " + nlohmann::json(cls).dump() + (contractible ? ", contractible" : ", not contractible") + "\n";
  }
  em.report(e.name, nlohmann::json::object(), res, text);
  return 0;
}

int cmd_theorems(const Options& o, Emitter& em) {
  SuiteEntry e = resolve(o);
  static const std::set<std::string> keep{"unit cycle labels", "subdivision matchings", "class-label correspondence",
                                          "tau sufficiency", "simple matchings"};
  std::vector<CheckResult> checks;
  for (auto& c : verify_instance(e, verify_options(o)))
    if (keep.count(c.name) || c.name == "validation" && c.status == Status::Fail) checks.push_back(std::move(c));
  for (auto& c : checks) c.instance.clear();
  em.report(e.name, {{"class_bound", o.class_bound}, {"tau_length", 4}}, checks_json(checks), checks_text(checks));
  return any_fail(checks) ? 1 : 0;
}

int cmd_geodesic(const Options& o, Emitter& em) {
  SuiteEntry e = resolve(o);
  CycleTopology ct(e.quiver);
  GeodesicReport r = ct.is_geodesic_algebra(geodesic_options(o));
  std::string text = std::string(r.geodesic ? "geodesic: witnesses found" : "inconclusive: no witness family") +
                     " (bound " + std::to_string(r.bound) + ", cycles up to length " + std::to_string(r.max_length) +
                     ", representatives " + r.representatives + ")\n";
  for (const auto& w : r.witnesses) {
    text += "  direction " + std::to_string(w.k) + ": gamma " + to_string(e.quiver, w.gamma) + "; family";
    for (const auto& c : w.family) text += " [" + to_string(e.quiver, c) + "]";
    text += "\n";
  }
  if (!r.missing_gamma.empty()) text += "  no geodesic cycle in directions " + nlohmann::json(r.missing_gamma).dump() + "\n";
  if (!r.missing_family.empty())
    text += "  no parallel family in directions " + nlohmann::json(r.missing_family).dump() + "\n";
  em.report(e.name, {{"bound", r.bound}, {"rewrite_depth", o.rewrite_depth}}, r.to_json(e.quiver), text);
  return 0;
}

int cmd_center(const Options& o, Emitter& em) {
  SuiteEntry e = resolve(o);
  CycleTopology ct(e.quiver);
  CentralGeometry cg(ct);
  const int d = o.degree > 0 ? o.degree : cg.default_degree();
  SemigroupSample r = cg.center_sample(d), s = cg.cycle_algebra_sample(d);
  GeodesicReport geo = ct.is_geodesic_algebra(geodesic_options(o));
  std::vector<std::string> notes;
  if (!cg.mode_note().empty()) notes.push_back(cg.mode_note());
  if (!geo.geodesic) notes.push_back("not certified geodesic: the sample need not be the centre of the algebra");
  std::string text = "basis " + std::string(basis_name(cg.basis())) + ", degree <= " + std::to_string(d) + "\n" +
                     "centre sample: " + std::to_string(r.elements.size()) + " monomials, " +
                     std::to_string(r.generators.size()) + " irreducible\n";
  for (const auto& g : r.generators) text += "  " + to_string(g) + "  " + monomial(g) + "\n";
  text += "cycle algebra sample: " + std::to_string(s.elements.size()) + " monomials" +
          (r.elements == s.elements ? " (equal to the centre sample)" : "") + "\n";
  em.report(e.name, {{"degree", d}},
            {{"center", r.to_json()}, {"cycle_algebra", s.to_json()}, {"equal", r.elements == s.elements},
             {"certified_geodesic", geo.geodesic}},
            text, notes);
  return 0;
}

int cmd_dims(const Options& o, Emitter& em) {
  SuiteEntry e = resolve(o);
  CycleTopology ct(e.quiver);
  CentralGeometry cg(ct);
  const int d = o.degree > 0 ? o.degree : cg.default_degree();
  std::vector<ExponentVector> gens;
  for (const auto& g : cg.cycle_algebra_generators()) gens.push_back(g.label);
  LatticeSummary s = krull_dimension(gens), r = krull_dimension(cg.center_sample(d).elements);
  const int n = e.quiver.polygon().half_sides();
  nlohmann::json res{{"S", s.to_json()}, {"R", r.to_json()}, {"expected", n + 1}};
  std::string text = "rank S " + std::to_string(s.rank) + "\nrank R " + std::to_string(r.rank) + " (degree <= " +
                     std::to_string(d) + ")\n";
  std::vector<std::string> notes;
  if (gens.empty()) notes.push_back("no cycles: the cycle algebra is trivial");
  int rc = s.rank == r.rank ? 0 : 1;
  GeodesicReport geo = ct.is_geodesic_algebra(geodesic_options(o));
  try {
    TReport t = cg.t_subalgebra(geo.gammas);
    res["T"] = t.to_json();
    text += "rank T " + std::to_string(t.lattice.rank) + "\n";
    if (t.lattice.rank != s.rank) rc = 1;
  } catch (const PreconditionError& ex) {
    notes.push_back(std::string("T unavailable: ") + ex.what());
  }
  text += "N+1 = " + std::to_string(n + 1) + "\n";
  em.report(e.name, {{"degree", d}}, res, text, notes);
  return rc;
}

int cmd_noetherian(const Options& o, Emitter& em) {
  SuiteEntry e = resolve(o);
  CycleTopology ct(e.quiver);
  CentralGeometry cg(ct);
  const int d = o.degree > 0 ? o.degree : cg.default_degree();
  GeodesicReport geo = ct.is_geodesic_algebra(geodesic_options(o));
  DepictionReport r = cg.depiction_report(d, o.nmax, geo.gammas);
  std::string text = std::string(verdict_name(r.noetherian.verdict)) + " (nmax " + std::to_string(o.nmax) + ")\n";
  for (const auto& x : r.noetherian.entries) {
    text += "  " + to_string(e.quiver, x.generator.cycle) + "  " + to_string(x.generator.label) + ": ";
    if (x.power) text += "power " + std::to_string(*x.power) + " is central";
    else if (x.obstruction_vertex) text += "no power passes through vertex " + e.quiver.vertex_name(*x.obstruction_vertex);
    else text += "no central power up to " + std::to_string(o.nmax);
    text += "\n";
  }
  text += r.center_equals_cycle_algebra ? "R = S at all sampled degrees\n" : "R differs from S in the sample\n";
  em.report(e.name, {{"degree", d}, {"nmax", o.nmax}}, r.to_json(e.quiver), text, {r.note});
  return 0;
}

int cmd_examples(const Options& o, Emitter& em) {
  LoadedSuite suite = load_suite(data_dir(o));
  nlohmann::json res = nlohmann::json::array();
  std::string text;
  for (const auto& e : suite.entries) {
    res.push_back({{"name", e.name}, {"origin", e.origin}, {"note", e.note}, {"half_sides", e.quiver.polygon().half_sides()},
                   {"vertices", e.quiver.vertex_count()}, {"arrows", e.quiver.arrow_count()},
                   {"expect", e.expect.to_json()}});
    text += e.name + "  (N=" + std::to_string(e.quiver.polygon().half_sides()) + ", " +
            std::to_string(e.quiver.vertex_count()) + " vertices, " + std::to_string(e.quiver.arrow_count()) +
            " arrows)  " + e.note + "\n";
  }
  if (!o.emit_dir.empty()) {
    std::filesystem::create_directories(o.emit_dir);
    for (const auto& e : suite.entries) {
      if (e.origin != "built-in") continue;
      std::ofstream f(std::filesystem::path(o.emit_dir) / (e.name + ".json"));
      f << entry_to_json(e).dump(2) << "\n";
    }
    text += "wrote built-in instances to " + o.emit_dir + "\n";
  }
  std::vector<std::string> notes;
  for (const auto& [f, m] : suite.errors) notes.push_back(f + ": " + m);
  em.report("", {{"data_dir", data_dir(o).value_or("")}}, res, text, notes);
  return suite.errors.empty() ? 0 : 1;
}

int cmd_verify_all(const Options& o, Emitter& em, std::ostream& err) {
  LoadedSuite suite = load_suite(data_dir(o));
  SuiteReport r = verify_suite(suite, verify_options(o));
  std::string text = checks_text(r.checks);
  for (const auto& [f, m] : r.load_errors) text += "[fail] load " + f + " - " + m + "\n";
  text += std::to_string(r.count(Status::Pass)) + " passed, " + std::to_string(r.count(Status::Fail)) + " failed, " +
          std::to_string(r.count(Status::Inconclusive)) + " inconclusive\n";
  if (r.count(Status::Inconclusive)) {
    text += "inconclusive (bounded searches, not failures):\n";
    for (const auto& c : r.checks)
      if (c.status == Status::Inconclusive) text += "  " + c.instance + ": " + c.name + "\n";
  }
  for (const auto& [f, m] : r.load_errors) err << "error: " << f << ": " << m << "\n";
  em.report("suite", {{"degree", o.degree}, {"nmax", o.nmax}, {"bound", o.bound}, {"class_bound", o.class_bound},
                      {"rewrite_depth", o.rewrite_depth}, {"data_dir", data_dir(o).value_or("")}},
            r.to_json(), text);
  return r.ok() ? 0 : 1;
}

int cmd_dot(const Options& o, std::ostream& out) {
  out << resolve(o).quiver.to_dot();
  return 0;
}

int cmd_tessellation(const Options& o, Emitter& em) {
  Tessellation t{Polygon(o.polygon)};
  nlohmann::json j = t.dump(o.radius);
  em.report("", {{"half_sides", o.polygon}, {"radius", o.radius}}, j,
            std::to_string(j["tiles"].size()) + " tiles within distance " + std::to_string(o.radius) + "\n" +
                j.dump(1) + "\n");
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Ghor algebras on polygon surfaces: matchings, labels, cycle topology and centres", "ghor"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Emit JSON reports");
  app.add_option("--data-dir", o.data_dir, std::string("Extra instance directory (default: $") + kDataDirEnv + ")");

  auto instance_cmd = [&](const char* name, const char* help) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_option("instance", o.instance, "Instance file or suite name")->required();
    return c;
  };
  auto* validate_c = instance_cmd("validate", "Check the embedding and face data");
  auto* matchings_c = instance_cmd("matchings", "List perfect and simple matchings");
  auto* label_c = instance_cmd("label", "Labels, class and contractibility of a path");
  label_c->add_option("arrows", o.arrows, "Arrow names along the path")->required();
  auto* theorems_c = instance_cmd("theorems", "Unit cycles, subdivisions, class-label and tau checks");
  theorems_c->add_option("--bound", o.class_bound, "Class-label bound in longest-cycle multiples")->check(CLI::PositiveNumber);
  auto* geodesic_c = instance_cmd("geodesic", "Search for geodesic witness families");
  auto* center_c = instance_cmd("center", "Sample the centre and the cycle algebra");
  auto* dims_c = instance_cmd("dims", "Lattice ranks of S, R and T");
  auto* noeth_c = instance_cmd("noetherian", "Noetherian verdict and depiction evidence");
  noeth_c->add_option("--nmax", o.nmax, "Largest power tried")->check(CLI::PositiveNumber);
  auto* examples_c = app.add_subcommand("examples", "List suite instances");
  examples_c->add_option("--emit", o.emit_dir, "Write the built-in instances as files here");
  auto* verify_c = app.add_subcommand("verify-all", "Run every check on the whole suite");
  verify_c->add_option("--nmax", o.nmax, "Largest power tried")->check(CLI::PositiveNumber);
  verify_c->add_option("--class-bound", o.class_bound, "Class-label bound")->check(CLI::PositiveNumber);
  auto* dot_c = instance_cmd("dot", "Graphviz export with face annotations");
  auto* tess_c = app.add_subcommand("tessellation", "Dump the tile graph of the universal cover");
  tess_c->add_option("half_sides", o.polygon, "N for the 2N-gon")->required()->check(CLI::Range(2, 64));
  tess_c->add_option("--radius", o.radius, "Tile distance")->check(CLI::Range(0, 6));
  for (auto* c : {geodesic_c, center_c, dims_c, noeth_c, verify_c}) {
    c->add_option("--bound", o.bound, "Geodesic search bound in longest-cycle multiples (0: N+1)")
        ->check(CLI::NonNegativeNumber);
    c->add_option("--rewrite-depth", o.rewrite_depth, "Representative rewrite depth (-1: exact)");
  }
  for (auto* c : {center_c, dims_c, noeth_c, verify_c})
    c->add_option("--degree", o.degree, "Sample degree bound (0: default)")->check(CLI::NonNegativeNumber);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  auto t0 = std::chrono::steady_clock::now();
  CLI::App* sub = app.get_subcommands().front();
  Emitter em{o, out, sub->get_name()};
  int rc = 0;
  try {
    if (sub == validate_c) rc = cmd_validate(o, em);
    else if (sub == matchings_c) rc = cmd_matchings(o, em);
    else if (sub == label_c) rc = cmd_label(o, em);
    else if (sub == theorems_c) rc = cmd_theorems(o, em);
    else if (sub == geodesic_c) rc = cmd_geodesic(o, em);
    else if (sub == center_c) rc = cmd_center(o, em);
    else if (sub == dims_c) rc = cmd_dims(o, em);
    else if (sub == noeth_c) rc = cmd_noetherian(o, em);
    else if (sub == examples_c) rc = cmd_examples(o, em);
    else if (sub == verify_c) rc = cmd_verify_all(o, em, err);
    else if (sub == dot_c) rc = cmd_dot(o, out);
    else if (sub == tess_c) rc = cmd_tessellation(o, em);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << sub->get_name() << ": "
      << std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count() << " ms\n";
  return rc;
}

}  // namespace ghor
