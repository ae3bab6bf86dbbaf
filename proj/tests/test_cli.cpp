#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ghor/cli.hpp"
#include "ghor/instances.hpp"

using namespace ghor;
namespace fs = std::filesystem;

namespace {

struct Run {
  int rc;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int rc = run_cli(args, out, err);
  return {rc, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("ghor_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const nlohmann::json& j) { std::ofstream(p) << j.dump(2); }

}  // namespace

TEST_CASE("usage errors") {
  Run r = run({"frobnicate"});
  CHECK(r.rc != 0);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(r.out.empty());
  CHECK(run({}).rc != 0);
  CHECK(run({"dims", "no-such-instance"}).rc != 0);
  CHECK(run({"label", "conifold", "a1", "a2"}).rc == 1);  // arrows do not compose
  CHECK(run({"--help"}).rc == 0);
}

TEST_CASE("dims reports N+1") {
  Run r = run({"dims", "polynomial-4"});
  CHECK(r.rc == 0);
  CHECK(r.out.find("rank S 5") != std::string::npos);
  CHECK(r.out.find("rank T 5") != std::string::npos);
  Run j = run({"--json", "dims", "conifold"});
  auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["command"] == "dims");
  CHECK(doc["results"]["S"]["rank"] == 3);
  CHECK(doc["results"]["R"]["rank"] == 3);
}

TEST_CASE("json reports are canonical and deterministic") {
  for (auto args : std::vector<std::vector<std::string>>{{"--json", "noetherian", "center-deficient"},
                                                         {"--json", "center", "conifold", "--degree", "4"},
                                                         {"--json", "geodesic", "polynomial-2"},
                                                         {"--json", "matchings", "conifold-octagon"},
                                                         {"--json", "label", "conifold", "a1", "b1"}}) {
    CAPTURE(args[1]);
    Run a = run(args), b = run(args);
    CHECK(a.rc == 0);
    CHECK(a.out == b.out);
    auto doc = nlohmann::json::parse(a.out);
    CHECK(doc.dump(2) + "\n" == a.out);
    CHECK(nlohmann::json::parse(doc.dump()) == doc);
  }
  auto doc = nlohmann::json::parse(run({"--json", "noetherian", "center-deficient"}).out);
  CHECK(doc["results"]["noetherian"]["verdict"] == "nonnoetherian-certified");
  CHECK(doc["results"]["noetherian"]["witness"]["cycle"] == nlohmann::json::array({"z"}));
}

TEST_CASE("verify-all passes and a corrupted expectation flips it") {
  Run ok = run({"verify-all"});
  CHECK(ok.rc == 0);
  CHECK(ok.out.find("0 failed") != std::string::npos);

  fs::path dir = scratch("fault");
  SuiteEntry e = instance_suite()[3];
  e.name = "conifold-copy";
  write(dir / "copy.json", entry_to_json(e));
  CHECK(run({"--data-dir", dir.string(), "verify-all"}).rc == 0);
  e.expect.dimension = 4;
  write(dir / "copy.json", entry_to_json(e));
  Run bad = run({"--data-dir", dir.string(), "verify-all"});
  CHECK(bad.rc == 1);
  CHECK(bad.out.find("[fail] conifold-copy: dimension") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("instances from files") {
  fs::path dir = scratch("files");
  Run emit = run({"examples", "--emit", dir.string()});
  CHECK(emit.rc == 0);
  CHECK(fs::exists(dir / "conifold.json"));
  Run v = run({"validate", (dir / "conifold-octagon.json").string()});
  CHECK(v.rc == 0);
  CHECK(v.out.find("[fail]") == std::string::npos);

  // a face dropped from the file fails validation
  auto j = nlohmann::json::parse(std::ifstream(dir / "conifold.json"));
  j["faces"].erase(1);
  j["name"] = "broken";
  write(dir / "broken.json", j);
  CHECK(run({"validate", (dir / "broken.json").string()}).rc == 1);
  fs::remove_all(dir);
}

TEST_CASE("dot and tessellation exports") {
  Run d = run({"dot", "conifold"});
  CHECK(d.out.rfind("digraph", 0) == 0);
  auto t = nlohmann::json::parse(run({"--json", "tessellation", "2", "--radius", "1"}).out);
  CHECK(t["results"]["tiles"].size() == 5);
}
