#pragma once

#include <vector>

#include <json.hpp>

#include "ghor/quiver.hpp"

namespace ghor {

// Sorted arrow ids. Matchings compare lexicographically on these lists.
using Matching = std::vector<ArrowId>;

// Every face contains exactly one arrow of x. An arrow that runs twice
// around one face counts once for that face.
bool is_perfect_matching(const DimerQuiver& q, const Matching& x);

// Q minus x still reaches every vertex from every vertex.
bool is_simple(const DimerQuiver& q, const Matching& x);

// Exact cover with faces as items and arrows as options, canonically sorted.
std::vector<Matching> enumerate_perfect_matchings(const DimerQuiver& q);

struct MatchingIndex {
  std::vector<Matching> perfect;
  std::vector<Matching> simple;
  std::vector<int> simple_in_perfect;           // position of each simple matching in perfect
  std::vector<std::vector<char>> perfect_member;  // arrow -> membership over perfect
  std::vector<std::vector<char>> simple_member;   // arrow -> membership over simple
  std::vector<ArrowId> arrows_in_no_perfect;
  std::vector<ArrowId> arrows_in_no_simple;

  // Every arrow lies in some perfect matching.
  bool standing_assumption() const { return arrows_in_no_perfect.empty(); }
  bool simple_covers_arrows() const { return arrows_in_no_simple.empty(); }
  nlohmann::json to_json(const DimerQuiver& q) const;
};

MatchingIndex classify(const DimerQuiver& q);

std::string to_string(const DimerQuiver& q, const Matching& x);

}  // namespace ghor
