#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ghor/errors.hpp"
#include "ghor/instances.hpp"

using namespace ghor;

namespace {

std::vector<std::vector<ArrowId>> canonical_faces(std::vector<std::vector<ArrowId>> faces) {
  for (auto& f : faces) std::rotate(f.begin(), std::min_element(f.begin(), f.end()), f.end());
  std::sort(faces.begin(), faces.end());
  return faces;
}

DimerQuiver without_face(const DimerQuiver& q, int f) {
  auto faces = q.faces();
  faces.erase(faces.begin() + f);
  std::vector<std::string> vs;
  for (int v = 0; v < q.vertex_count(); ++v) vs.push_back(q.vertex_name(v));
  return DimerQuiver(q.polygon(), vs, q.arrows(), faces);
}

}  // namespace

TEST_CASE("suite instances validate") {
  for (const auto& e : instance_suite()) {
    CAPTURE(e.name);
    ValidationReport r = validate(e.quiver);
    for (const auto& c : r.checks) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.passed);
    }
  }
  for (int n = 2; n <= 7; ++n) CHECK(validate(build_polynomial(n)).ok());
  for (int n : {2, 4, 6}) CHECK(validate(build_conifold_generalization(n)).ok());
}

TEST_CASE("conifold euler characteristic") {
  auto r = validate(build_conifold_torus());
  CHECK(r.find("euler characteristic equals 2 - N")->detail == "V - E + F = 0, expected 0");
}

TEST_CASE("validation reports the failing check") {
  DimerQuiver q = build_conifold_torus();
  auto r = validate(without_face(q, 1));
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.find("every arrow lies in exactly two face incidences")->passed);
  CHECK(r.find("faces are directed cycles")->passed);

  // a crossing word that breaks the cover
  std::vector<Arrow> arrows = q.arrows();
  arrows[0].crossings.push_back(1);
  DimerQuiver bad(q.polygon(), {"1", "2"}, arrows, q.faces());
  auto r2 = validate(bad);
  CHECK_FALSE(r2.find("face crossing words abelianize to zero")->passed);
  CHECK_FALSE(r2.find("face crossing words are trivial in the cover")->passed);

  // abelianizes to zero but does not close up on the octagon
  DimerQuiver p4 = build_polynomial(4);
  std::vector<Arrow> a4 = p4.arrows();
  a4[0].crossings = {2, 1, -2};
  DimerQuiver skew(p4.polygon(), {"v"}, a4, p4.faces());
  auto r3 = validate(skew);
  CHECK(r3.find("face crossing words abelianize to zero")->passed);
  CHECK_FALSE(r3.find("face crossing words are trivial in the cover")->passed);
}

TEST_CASE("rotation system") {
  DimerQuiver q = build_conifold_torus();
  RotationSystem rs = rotation_system(q);
  REQUIRE(rs.sheets[0].size() == 1);
  const auto& order = rs.sheets[0][0];
  CHECK(order.size() == 4);
  for (std::size_t i = 0; i < order.size(); ++i) CHECK(order[i].out != order[(i + 1) % order.size()].out);
  CHECK(canonical_faces(faces_from_rotation(q, rs)) == canonical_faces(q.faces()));

  for (const auto& e : instance_suite()) {
    RotationSystem r = rotation_system(e.quiver);
    CHECK(canonical_faces(faces_from_rotation(e.quiver, r)) == canonical_faces(e.quiver.faces()));
    CHECK(r.pinch_count() == e.quiver.polygon().half_sides() % 2);
  }
  // the odd polygon pinches the single vertex into two sheets
  CHECK(rotation_system(build_polynomial(3)).sheets[0].size() == 2);
  CHECK(rotation_system(build_polynomial(4)).sheets[0].size() == 1);
}

TEST_CASE("rotation system rejects inconsistent corners") {
  DimerQuiver q = build_polynomial(2);
  // one face running around twice: every arrow borders a single face twice
  DimerQuiver doubled(q.polygon(), {"v"}, q.arrows(), {concat(q.face(0), q.face(0))});
  CHECK_THROWS_AS(rotation_system(doubled), EmbeddingError);
  CHECK_FALSE(validate(doubled).ok());
}

TEST_CASE("json round trip and parse errors") {
  for (const auto& e : instance_suite()) {
    auto j = e.quiver.to_json();
    CHECK(DimerQuiver::from_json(j) == e.quiver);
  }
  auto path = std::filesystem::temp_directory_path() / "ghor_roundtrip.json";
  build_conifold_torus().save(path.string());
  CHECK(DimerQuiver::load(path.string()) == build_conifold_torus());
  std::filesystem::remove(path);

  auto j = build_conifold_torus().to_json();
  j["arrows"][0]["tail"] = "nowhere";
  CHECK_THROWS_WITH_AS(DimerQuiver::from_json(j), "arrows[0].tail: unknown vertex 'nowhere'", ParseError);
  auto k = build_conifold_torus().to_json();
  k["faces"][1][0] = "c9";
  CHECK_THROWS_AS(DimerQuiver::from_json(k), ParseError);
  auto m = build_conifold_torus().to_json();
  m["arrows"][0]["crossings"] = {7};
  CHECK_THROWS_AS(DimerQuiver::from_json(m), ParseError);
  CHECK_THROWS_AS(DimerQuiver::load("/nonexistent/quiver.json"), ParseError);
}

TEST_CASE("paths compose or name the junction") {
  DimerQuiver q = build_conifold_torus();
  Path p = make_path(q, std::vector<std::string>{"a1", "b1", "a2"});
  CHECK(q.vertex_name(path_head(q, p)) == "2");
  CHECK_THROWS_WITH_AS(make_path(q, std::vector<std::string>{"a1", "a2"}),
                       "arrows 'a1' and 'a2' do not compose at position 1", CompositionError);
  CHECK(to_string(q, rotate_cycle(q, make_path(q, std::vector<std::string>{"a1", "b1"}), 1)) == "b1 a1");
}

TEST_CASE("dot export names every arrow") {
  std::string dot = build_conifold_torus().to_dot();
  for (const char* a : {"a1", "a2", "b1", "b2"}) CHECK(dot.find(a) != std::string::npos);
}

TEST_CASE("suite loading merges a directory") {
  namespace fs = std::filesystem;
  const std::size_t builtins = instance_suite().size();
  CHECK(builtins >= 5);
  CHECK(load_suite().entries.size() == builtins);

  // the shipped files are exactly the built-ins
  LoadedSuite shipped = load_suite(std::string(GHOR_SOURCE_DIR) + "/data/instances");
  CHECK(shipped.errors.empty());
  CHECK(shipped.entries.size() == builtins);
  LoadedSuite extra = load_suite(std::string(GHOR_SOURCE_DIR) + "/data/extra");
  CHECK(extra.errors.empty());
  REQUIRE(extra.entries.size() == builtins + 1);
  CHECK(extra.entries.back().name == "polynomial-5");
  CHECK(*extra.entries.back().expect.dimension == 6);

  fs::path dir = fs::temp_directory_path() / "ghor_suite";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto put = [&](const std::string& file, const nlohmann::json& j) { std::ofstream(dir / file) << j.dump(); };
  SuiteEntry e = instance_suite()[0];
  e.name = "mine";
  put("a.json", entry_to_json(e));
  put("b.json", entry_to_json(e));  // same name again
  e.name = "conifold";               // clashes with a different built-in
  put("c.json", entry_to_json(e));
  put("d.json", nlohmann::json{{"vertices", 3}});
  std::ofstream(dir / "e.json") << "{ not json";
  std::ofstream(dir / "notes.txt") << "ignored";
  LoadedSuite s = load_suite(dir.string());
  CHECK(s.entries.size() == builtins + 1);
  CHECK(s.entries.back().name == "mine");
  REQUIRE(s.errors.size() == 4);
  CHECK(s.errors[0].second.find("duplicate") != std::string::npos);
  CHECK(s.errors[1].second.find("duplicate") != std::string::npos);
  CHECK(s.errors[3].second.find("invalid JSON") != std::string::npos);
  CHECK(load_suite("/nonexistent/dir").errors.size() == 1);
  fs::remove_all(dir);
}

TEST_CASE("expectation tables round trip") {
  for (const auto& e : instance_suite()) {
    SuiteEntry back = entry_from_json(entry_to_json(e), "");
    CHECK(back.name == e.name);
    CHECK(back.quiver == e.quiver);
    CHECK(back.expect.to_json() == e.expect.to_json());
  }
  auto j = entry_to_json(instance_suite()[0]);
  j["expect"]["noetherian"] = "probably";
  CHECK_THROWS_AS(entry_from_json(j, ""), ParseError);
  j["expect"]["noetherian"] = 3;
  CHECK_THROWS_AS(entry_from_json(j, ""), ParseError);
}
