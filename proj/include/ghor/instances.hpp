#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghor/quiver.hpp"

namespace ghor {

// One vertex, loops x1..xN and y, faces x1..xN·y and xN..x1·y.
DimerQuiver build_polynomial(int n);

// Vertex 1 at the polygon centre, vertex 2 at the identified corner, one
// arrow per half-diagonal (even corners 1->2, odd corners 2->1) and one
// quadrilateral face per pair of opposite sides. Even N only.
DimerQuiver build_conifold_generalization(int n);

// The N=2 case above with the usual names a1, a2 (1->2) and b1, b2 (2->1).
DimerQuiver build_conifold_torus();

// Torus quiver whose two-cycle u·v is contained in no simple matching, so
// the centre misses some cycle monomials.
DimerQuiver build_center_deficient();

// Properties a suite run is expected to reproduce. Every value is recomputed
// by the harness; `source` says where each expected value comes from.
struct Expectations {
  std::optional<bool> geodesic;
  std::optional<int> perfect, simple, dimension;
  std::optional<std::string> noetherian;
  std::optional<bool> center_equals_cycle_algebra;
  std::map<std::string, std::string> source;

  bool empty() const;
  nlohmann::json to_json() const;
  static Expectations from_json(const nlohmann::json& j);
};

struct SuiteEntry {
  std::string name;
  DimerQuiver quiver;
  std::string note;
  Expectations expect;
  std::string origin = "built-in";
};

std::vector<SuiteEntry> instance_suite();

// An instance file is a quiver document with optional "note" and "expect" keys.
nlohmann::json entry_to_json(const SuiteEntry& e);
SuiteEntry entry_from_json(const nlohmann::json& j, const std::string& fallback_name);

struct LoadedSuite {
  std::vector<SuiteEntry> entries;
  std::vector<std::pair<std::string, std::string>> errors;  // file, message
};

// Built-ins plus every *.json file in dir (sorted by file name). Unreadable
// files and duplicate names are reported per file; the rest still loads. A
// file identical to the built-in of the same name is absorbed silently.
LoadedSuite load_suite(const std::optional<std::string>& dir = std::nullopt);

}  // namespace ghor
