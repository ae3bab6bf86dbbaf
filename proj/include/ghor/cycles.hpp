#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghor/labels.hpp"
#include "ghor/matchings.hpp"
#include "ghor/quiver.hpp"
#include "ghor/tessellation.hpp"

namespace ghor {

struct CycleRecord {
  Path path;
  CrossingWord word;
  ClassVector cls;
  ExponentVector eta, tau;
};

// Representatives of a cycle are the closed paths at its base with the same
// eta label. Exact mode enumerates that whole (finite) set; a nonnegative
// rewrite depth instead explores swaps of the two face-complements of an
// arrow, up to that many steps.
struct RepresentativeOptions {
  int rewrite_depth = -1;
  std::size_t cap = 20000;
};

struct Representatives {
  std::vector<Path> paths;
  bool complete = true;
};

struct GeodesicOptions {
  int bound = 0;  // multiples of the longest elementary cycle; 0 picks N+1
  RepresentativeOptions reps;
  std::size_t family_steps = 200000;
};

struct GeodesicWitness {
  int k = 0;  // direction 1..2N
  Path gamma;
  std::vector<Path> family;  // indexed by vertex
};

struct GeodesicReport {
  bool geodesic = false;  // false means no witness within the bound
  int bound = 0;
  int max_length = 0;
  std::string representatives;
  std::vector<GeodesicWitness> witnesses;
  // One geodesic cycle per direction k (index k-1), with or without a family.
  std::vector<std::optional<Path>> gammas;
  std::vector<int> missing_gamma;
  std::vector<int> missing_family;

  nlohmann::json to_json(const DimerQuiver& q) const;
};

struct Piece {
  enum class Kind { Column, Pillar };
  Kind kind = Kind::Column;
  std::vector<int> faces;
  std::vector<ArrowId> interior;
  std::vector<ArrowId> left_boundary;   // family arrows on colour-0 faces
  std::vector<ArrowId> right_boundary;  // family arrows on colour-1 faces
};

struct Subdivision {
  std::vector<Path> family;
  std::vector<char> family_arrow;
  std::vector<Piece> pieces;

  int columns() const;
  int pillars() const;
  nlohmann::json to_json(const DimerQuiver& q) const;
};

struct ClassLabelViolation {
  Path p, r;
  bool same_class = false;  // true: classes agree but labels are not sigma-equal
};

struct ClassLabelReport {
  int bound = 0;
  int max_length = 0;
  bool conditional = true;  // the instance is not certified geodesic
  bool truncated = false;
  std::size_t cycles = 0;
  std::size_t classes = 0;
  std::size_t label_classes = 0;
  std::vector<ClassLabelViolation> violations;

  nlohmann::json to_json(const DimerQuiver& q) const;
};

// Vertex-simple cycles (Johnson's circuit search over the arrow multigraph),
// each starting at its smallest vertex, sorted by length then arrow ids.
std::vector<Path> elementary_circuits(const DimerQuiver& q);

// Cycle-level topology of one quiver: lifts to the cover, representatives,
// strand crossings and the geodesic witness search.
class CycleTopology {
 public:
  explicit CycleTopology(DimerQuiver q);
  CycleTopology(DimerQuiver q, MatchingIndex ix);

  const DimerQuiver& quiver() const { return q_; }
  const MatchingIndex& index() const { return ix_; }
  const RotationSystem& rotation() const { return rs_; }
  Tessellation& cover() const { return tess_; }

  CycleRecord record(const Path& c) const;
  const std::vector<CycleRecord>& elementary_cycles() const;
  int longest_elementary_cycle() const;

  ClassVector cycle_class(const Path& c) const;
  bool is_contractible(const Path& c) const;
  bool lift_is_cyclic_subpath_free(const Path& p) const;
  Representatives representatives(const Path& c, const RepresentativeOptions& opt = {}) const;
  bool is_geodesic_cycle(const Path& c, const RepresentativeOptions& opt = {}) const;

  bool transversely_intersect(const Path& a, const Path& b) const;
  // Touching at a vertex while running in opposite directions.
  bool antiparallel_touch(const Path& a, const Path& b) const;
  bool parallel(const Path& a, const Path& b) const;

  GeodesicReport is_geodesic_algebra(const GeodesicOptions& opt = {}) const;

  Subdivision subdivision_from_family(const std::vector<Path>& family) const;
  Matching matching_from_subdivision(const Subdivision& s) const;

  ClassLabelReport verify_class_label_theorem(int bound, bool certified_geodesic) const;
  int64_t sigma_exponent(const Path& p, const Path& r) const;

  // Closed walks at v of length 1..max_length, in length then arrow order.
  std::vector<Path> closed_walks(VertexId v, int max_length, std::size_t cap, bool* truncated = nullptr) const;

 private:
  struct Meeting {
    int i = 0, j = 0, length = 0;
  };
  std::vector<Meeting> meetings(const Path& a, const Path& b) const;
  bool crossing_at(const Path& a, const Path& b, const Meeting& m) const;
  bool antiparallel_at(const Path& a, const Path& b, const Meeting& m) const;
  std::vector<Path> geodesic_candidates(VertexId v, int max_length, const RepresentativeOptions& opt) const;
  std::vector<Path> rewrite_closure(const Path& c, int depth, std::size_t cap, bool& complete) const;
  std::vector<int> strip_of_faces(const std::vector<char>& family_arrow) const;

  DimerQuiver q_;
  MatchingIndex ix_;
  RotationSystem rs_;
  mutable Tessellation tess_;
  mutable std::optional<std::vector<CycleRecord>> elementary_;
};

}  // namespace ghor
