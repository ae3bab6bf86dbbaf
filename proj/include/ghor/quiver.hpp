#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "ghor/polygon.hpp"
#include "ghor/tessellation.hpp"

namespace ghor {

using VertexId = int;
using ArrowId = int;

struct Arrow {
  std::string name;
  VertexId tail = 0;
  VertexId head = 0;
  CrossingWord crossings;
};

// A quiver drawn on the polygon surface: every arrow carries the word of
// sides it crosses, and faces are listed as cyclic arrow sequences.
class DimerQuiver {
 public:
  DimerQuiver(Polygon polygon, std::vector<std::string> vertices, std::vector<Arrow> arrows,
              std::vector<std::vector<ArrowId>> faces, std::string name = "");

  const std::string& name() const { return name_; }
  const Polygon& polygon() const { return polygon_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int arrow_count() const { return static_cast<int>(arrows_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }

  const std::string& vertex_name(VertexId v) const { return vertices_.at(v); }
  const Arrow& arrow(ArrowId a) const { return arrows_.at(a); }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<std::vector<ArrowId>>& faces() const { return faces_; }
  const std::vector<ArrowId>& face(int f) const { return faces_.at(f); }

  VertexId vertex_index(const std::string& name) const;
  ArrowId arrow_index(const std::string& name) const;
  const std::vector<ArrowId>& out_arrows(VertexId v) const { return out_.at(v); }
  const std::vector<ArrowId>& in_arrows(VertexId v) const { return in_.at(v); }

  // (face, position) for every occurrence of the arrow in a face.
  const std::vector<std::pair<int, int>>& incidences(ArrowId a) const { return incidences_.at(a); }
  // Distinct faces containing the arrow.
  std::vector<int> faces_of(ArrowId a) const;

  nlohmann::json to_json() const;
  static DimerQuiver from_json(const nlohmann::json& j);
  static DimerQuiver load(const std::string& path);
  void save(const std::string& path) const;
  std::string to_dot() const;

  friend bool operator==(const DimerQuiver& a, const DimerQuiver& b);

 private:
  Polygon polygon_;
  std::string name_;
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<ArrowId>> faces_;
  std::unordered_map<std::string, VertexId> vertex_ids_;
  std::unordered_map<std::string, ArrowId> arrow_ids_;
  std::vector<std::vector<ArrowId>> out_, in_;
  std::vector<std::vector<std::pair<int, int>>> incidences_;
};

struct Path {
  VertexId start = 0;
  std::vector<ArrowId> arrows;

  friend bool operator==(const Path&, const Path&) = default;
};

// Checks that consecutive arrows compose; throws CompositionError naming the
// first bad junction.
Path make_path(const DimerQuiver& q, std::vector<ArrowId> arrows);
Path make_path(const DimerQuiver& q, const std::vector<std::string>& names);
Path trivial_path(VertexId v);
VertexId path_head(const DimerQuiver& q, const Path& p);
bool is_closed(const DimerQuiver& q, const Path& p);
Path compose(const DimerQuiver& q, const Path& a, const Path& b);
Path rotate_cycle(const DimerQuiver& q, const Path& c, std::size_t k);
CrossingWord crossing_word(const DimerQuiver& q, const Path& p);
std::string to_string(const DimerQuiver& q, const Path& p);

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<Check> checks;

  bool ok() const;
  const Check* find(const std::string& name) const;
  nlohmann::json to_json() const;
};

// Faces are two-coloured so that every arrow borders one face of each
// colour; colour 0 is the class containing face 0. Empty when impossible.
std::vector<int> face_colouring(const DimerQuiver& q);

ValidationReport validate(const DimerQuiver& q, Tessellation& tess);
ValidationReport validate(const DimerQuiver& q);

// A dart is an arrow end at a vertex: the tail end is outgoing.
struct Dart {
  ArrowId arrow = 0;
  bool out = false;

  friend bool operator==(const Dart&, const Dart&) = default;
};

// Cyclic order of darts around each vertex, read off from the face corners.
// A vertex may split into several sheets (corner cycles) when the surface is
// pinched there.
struct RotationSystem {
  struct Place {
    VertexId vertex = 0;
    int sheet = 0;
    int index = 0;
  };

  std::vector<std::vector<std::vector<Dart>>> sheets;  // vertex -> sheet -> darts
  std::vector<int> face_colour;

  const Place& place(Dart d) const { return places_.at(2 * d.arrow + (d.out ? 0 : 1)); }
  const std::vector<Dart>& sheet_of(Dart d) const;
  int pinch_count() const;

  std::vector<Place> places_;
};

RotationSystem rotation_system(const DimerQuiver& q);

// Faces traced back from the rotation system, as cyclic arrow sequences.
std::vector<std::vector<ArrowId>> faces_from_rotation(const DimerQuiver& q, const RotationSystem& rs);

}  // namespace ghor
