#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ghor {

// A letter +k means the path leaves the polygon through side k, -k through
// side k+N. Sides are numbered 1..2N counterclockwise.
using CrossingWord = std::vector<int>;
using ClassVector = std::vector<std::int64_t>;

class Polygon {
 public:
  explicit Polygon(int half_sides);

  int half_sides() const { return n_; }
  int sides() const { return 2 * n_; }

  int letter_of_side(int side) const;
  int side_of_letter(int letter) const;
  bool is_letter(int letter) const { return letter != 0 && letter >= -n_ && letter <= n_; }
  void check(const CrossingWord& w) const;

  friend bool operator==(const Polygon&, const Polygon&) = default;

 private:
  int n_;
};

CrossingWord inverse(const CrossingWord& w);
CrossingWord concat(const CrossingWord& a, const CrossingWord& b);
CrossingWord free_reduce(const CrossingWord& w);
bool shortlex_less(const CrossingWord& a, const CrossingWord& b);
std::string to_string(const CrossingWord& w);

ClassVector abelianize(const CrossingWord& w, const Polygon& p);

// Sides crossed, in order, by a small loop around a corner of the polygon
// starting just inside `side`, taken for `steps` crossings.
std::vector<int> corner_walk(const Polygon& p, int side, int steps);

// The word read around the identified polygon vertex.
CrossingWord derive_vertex_relator(const Polygon& p);

// Longest common subword shared by two distinct cyclic positions of the
// relator and its inverse.
int max_piece_length(const CrossingWord& relator);
bool satisfies_c_sixth(const CrossingWord& relator);

// Greedy Dehn reduction; empty optional when the relator is not C'(1/6).
std::optional<CrossingWord> dehn_reduce(const CrossingWord& w, const CrossingWord& relator);

}  // namespace ghor
