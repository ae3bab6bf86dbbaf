#include "ghor/instances.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "ghor/errors.hpp"

namespace ghor {

namespace {

DimerQuiver assemble(int n, std::vector<std::string> vertices, const std::vector<Arrow>& arrows,
                     const std::vector<std::vector<std::string>>& faces, std::string name) {
  std::map<std::string, ArrowId> ids;
  for (std::size_t i = 0; i < arrows.size(); ++i) ids[arrows[i].name] = static_cast<ArrowId>(i);
  std::vector<std::vector<ArrowId>> fs;
  for (const auto& f : faces) {
    std::vector<ArrowId> face;
    for (const auto& a : f) face.push_back(ids.at(a));
    fs.push_back(face);
  }
  return DimerQuiver(Polygon(n), std::move(vertices), arrows, fs, std::move(name));
}

// Walk around the identified corner from the sector of corner j to the
// sector of corner 0, whichever way round is shorter.
CrossingWord corner_to_origin(const Polygon& p, int j) {
  const int n = p.half_sides(), m = 2 * n;
  CrossingWord forward;
  for (int c = j; c != 0; c = (c + n + 1) % m) forward.push_back(p.letter_of_side(c + 1));
  CrossingWord from_origin;
  for (int c = 0; c != j; c = (c + n + 1) % m) from_origin.push_back(p.letter_of_side(c + 1));
  CrossingWord backward = inverse(from_origin);
  return backward.size() < forward.size() ? backward : forward;
}

}  // namespace

DimerQuiver build_polynomial(int n) {
  Polygon p(n);
  std::vector<Arrow> arrows;
  CrossingWord u;
  for (int k = 1; k <= n; ++k) {
    int letter = k % 2 == 1 ? k : -k;
    u.push_back(letter);
    arrows.push_back({"x" + std::to_string(k), 0, 0, {letter}});
  }
  arrows.push_back({"y", 0, 0, inverse(u)});
  std::vector<std::string> a, b;
  for (int k = 1; k <= n; ++k) a.push_back("x" + std::to_string(k));
  for (int k = n; k >= 1; --k) b.push_back("x" + std::to_string(k));
  a.push_back("y");
  b.push_back("y");
  return assemble(n, {"v"}, arrows, {a, b}, "polynomial-" + std::to_string(n));
}

DimerQuiver build_conifold_generalization(int n) {
  if (n % 2 != 0) throw PreconditionError("the conifold generalization needs an even number of side pairs");
  Polygon p(n);
  const int m = 2 * n;
  auto name = [](int j) { return (j % 2 == 0 ? "a" : "b") + std::to_string(j); };
  std::vector<Arrow> arrows;
  for (int j = 0; j < m; ++j) {
    CrossingWord w = corner_to_origin(p, j);
    if (j % 2 == 0) arrows.push_back({name(j), 0, 1, w});
    else arrows.push_back({name(j), 1, 0, inverse(w)});
  }
  std::vector<std::vector<std::string>> faces;
  for (int s = 1; s <= n; ++s) {
    if (s % 2 == 1) faces.push_back({name(s - 1), name((s + n) % m), name((s + n - 1) % m), name(s % m)});
    else faces.push_back({name(s % m), name((s + n - 1) % m), name((s + n) % m), name(s - 1)});
  }
  return assemble(n, {"1", "2"}, arrows, faces, n == 4 ? "conifold-octagon" : "conifold-" + std::to_string(m) + "gon");
}

DimerQuiver build_conifold_torus() {
  DimerQuiver g = build_conifold_generalization(2);
  const std::map<std::string, std::string> rename{{"a0", "a1"}, {"a2", "a2"}, {"b3", "b1"}, {"b1", "b2"}};
  std::vector<Arrow> arrows;
  for (const Arrow& a : g.arrows()) {
    Arrow b = a;
    b.name = rename.at(a.name);
    arrows.push_back(b);
  }
  std::vector<std::vector<ArrowId>> faces = g.faces();
  return DimerQuiver(g.polygon(), {"1", "2"}, arrows, faces, "conifold");
}

DimerQuiver build_center_deficient() {
  std::vector<Arrow> arrows{{"x", 0, 0, {1}}, {"z", 0, 0, {2}}, {"u", 0, 1, {-1}}, {"v", 1, 0, {-2}}};
  return assemble(2, {"1", "2"}, arrows, {{"x", "z", "u", "v"}, {"x", "u", "v", "z"}}, "center-deficient");
}

namespace {

Expectations expect_from_theory(int n, int perfect, bool geodesic) {
  Expectations e;
  e.geodesic = geodesic;
  e.perfect = perfect;
  e.simple = perfect;
  e.dimension = n + 1;
  e.noetherian = "noetherian-certified-at-bound";
  e.center_equals_cycle_algebra = true;
  e.source = {{"geodesic", "witness search"},
              {"perfect", "hand count of one arrow per face pair"},
              {"simple", "every perfect matching is simple in this family"},
              {"dimension", "N+1 dimension formula"},
              {"noetherian", "R = S in this family"},
              {"center_equals_cycle_algebra", "R = S in this family"}};
  return e;
}

template <typename T>
void put(nlohmann::json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <typename T>
void get(const nlohmann::json& j, const char* key, std::optional<T>& v) {
  if (!j.contains(key)) return;
  try {
    v = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("expect.") + key + ": wrong type");
  }
}

}  // namespace

bool Expectations::empty() const {
  return !geodesic && !perfect && !simple && !dimension && !noetherian && !center_equals_cycle_algebra;
}

nlohmann::json Expectations::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  put(j, "geodesic", geodesic);
  put(j, "perfect", perfect);
  put(j, "simple", simple);
  put(j, "dimension", dimension);
  put(j, "noetherian", noetherian);
  put(j, "center_equals_cycle_algebra", center_equals_cycle_algebra);
  if (!source.empty()) j["source"] = source;
  return j;
}

Expectations Expectations::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("expect: not an object");
  Expectations e;
  get(j, "geodesic", e.geodesic);
  get(j, "perfect", e.perfect);
  get(j, "simple", e.simple);
  get(j, "dimension", e.dimension);
  get(j, "noetherian", e.noetherian);
  get(j, "center_equals_cycle_algebra", e.center_equals_cycle_algebra);
  std::optional<std::map<std::string, std::string>> src;
  get(j, "source", src);
  if (src) e.source = *src;
  static const std::set<std::string> verdicts{"noetherian-certified-at-bound", "nonnoetherian-certified",
                                              "inconclusive"};
  if (e.noetherian && !verdicts.count(*e.noetherian))
    throw ParseError("expect.noetherian: unknown verdict '" + *e.noetherian + "'");
  return e;
}

std::vector<SuiteEntry> instance_suite() {
  Expectations deficient;
  deficient.geodesic = false;
  deficient.perfect = 4;
  deficient.simple = 2;
  deficient.dimension = 3;
  deficient.noetherian = "nonnoetherian-certified";
  deficient.center_equals_cycle_algebra = false;
  deficient.source = {{"geodesic", "witness search finds no parallel family"},
                      {"perfect", "each arrow alone"},
                      {"simple", "removing u or v disconnects vertex 2"},
                      {"dimension", "N+1 dimension formula"},
                      {"noetherian", "x and z never pass through vertex 2"},
                      {"center_equals_cycle_algebra", "x is a cycle label missing from the centre"}};
  return {
      {"polynomial-2", build_polynomial(2), "k[x1,x2,y] on the torus", expect_from_theory(2, 3, true)},
      {"polynomial-3", build_polynomial(3), "k[x1,x2,x3,y] on the pinched genus-1 surface",
       expect_from_theory(3, 4, true)},
      {"polynomial-4", build_polynomial(4), "k[x1,..,x4,y] on the genus-2 surface", expect_from_theory(4, 5, true)},
      {"conifold", build_conifold_torus(), "conifold on the torus", expect_from_theory(2, 4, true)},
      {"conifold-octagon", build_conifold_generalization(4),
       "conifold generalization: half-diagonal quiver on the octagon",
       expect_from_theory(4, 8, true)},
      {"center-deficient", build_center_deficient(), "torus quiver with a non-simple two-cycle", deficient},
  };
}

nlohmann::json entry_to_json(const SuiteEntry& e) {
  nlohmann::json j = e.quiver.to_json();
  j["name"] = e.name;
  if (!e.note.empty()) j["note"] = e.note;
  if (!e.expect.empty()) j["expect"] = e.expect.to_json();
  return j;
}

SuiteEntry entry_from_json(const nlohmann::json& j, const std::string& fallback_name) {
  DimerQuiver q = DimerQuiver::from_json(j);
  SuiteEntry e{q.name().empty() ? fallback_name : q.name(), q, "", {}, "file"};
  if (j.contains("note")) {
    if (!j["note"].is_string()) throw ParseError("note: wrong type");
    e.note = j["note"].get<std::string>();
  }
  if (j.contains("expect")) e.expect = Expectations::from_json(j["expect"]);
  return e;
}

LoadedSuite load_suite(const std::optional<std::string>& dir) {
  LoadedSuite out;
  out.entries = instance_suite();
  if (!dir) return out;
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(*dir, ec)) {
    out.errors.emplace_back(*dir, "not a directory");
    return out;
  }
  std::vector<fs::path> files;
  for (const auto& it : fs::directory_iterator(*dir, ec))
    if (it.path().extension() == ".json") files.push_back(it.path());
  std::sort(files.begin(), files.end());
  std::map<std::string, std::size_t> builtin;
  for (std::size_t k = 0; k < out.entries.size(); ++k) builtin.emplace(out.entries[k].name, k);
  std::set<std::string> names;
  for (const auto& f : files) {
    try {
      std::ifstream in(f);
      if (!in) throw ParseError("cannot open file");
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error& ex) {
        throw ParseError(std::string("invalid JSON: ") + ex.what());
      }
      SuiteEntry e = entry_from_json(j, f.stem().string());
      e.origin = f.string();
      // a shipped copy of a built-in is the same instance, not a duplicate
      auto b = builtin.find(e.name);
      if (b != builtin.end() && out.entries[b->second].quiver == e.quiver && names.insert(e.name).second) continue;
      if (b != builtin.end() || !names.insert(e.name).second)
        throw ParseError("duplicate instance name '" + e.name + "'");
      out.entries.push_back(std::move(e));
    } catch (const Error& ex) {
      out.errors.emplace_back(f.string(), ex.what());
    }
  }
  return out;
}

}  // namespace ghor
