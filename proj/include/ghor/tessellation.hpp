#pragma once

#include <cstddef>
#include <functional>
#include <mutex>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "ghor/polygon.hpp"

namespace ghor {

struct WordHash {
  std::size_t operator()(const CrossingWord& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int l : w) h = (h ^ static_cast<std::size_t>(l + 64)) * 1099511628211ull;
    return h;
  }
};

// The group generated by the side pairings, with an exact canonical form.
// N=2 is abelian, N=3 splits as Z^2 * Z, N>=4 is C'(1/6) with pieces of
// length one, and each case gets its own normal form.
class DeckGroup {
 public:
  enum class Kind { Abelian, FreeProduct, SmallCancellation };

  explicit DeckGroup(Polygon p);

  const Polygon& polygon() const { return polygon_; }
  const CrossingWord& relator() const { return relator_; }
  Kind kind() const { return kind_; }

  CrossingWord normal_form(const CrossingWord& w) const;
  bool is_trivial(const CrossingWord& w) const { return normal_form(w).empty(); }
  bool equal(const CrossingWord& a, const CrossingWord& b) const;

 private:
  CrossingWord nf_abelian(const CrossingWord& w) const;
  CrossingWord nf_free_product(const CrossingWord& w) const;
  CrossingWord nf_small_cancellation(const CrossingWord& w) const;
  CrossingWord dehn(CrossingWord w) const;
  int rotation_at(const CrossingWord& w, std::size_t i) const;

  Polygon polygon_;
  CrossingWord relator_;
  Kind kind_;
  std::vector<CrossingWord> rotations_;
  std::unordered_map<int, int> rotation_by_prefix_;
};

struct TileId {
  CrossingWord word;  // canonical form of the deck transformation

  friend bool operator==(const TileId&, const TileId&) = default;
  friend bool operator<(const TileId& a, const TileId& b) { return shortlex_less(a.word, b.word); }
};

struct LiftedVertex {
  TileId tile;
  int vertex = 0;

  friend bool operator==(const LiftedVertex&, const LiftedVertex&) = default;
};

// Copies of the polygon in the universal cover, grown lazily on demand.
// Tiles are keyed by canonical deck words, so identifiers do not depend on
// the order in which queries arrive. Safe to share between threads.
class Tessellation {
 public:
  explicit Tessellation(Polygon p);

  const Polygon& polygon() const { return group_.polygon(); }
  const DeckGroup& group() const { return group_; }

  TileId base() const { return TileId{}; }
  TileId tile_of(const CrossingWord& w);
  TileId neighbor(const TileId& t, int side);
  TileId apply(const TileId& t, const CrossingWord& w);
  bool words_equal(const CrossingWord& a, const CrossingWord& b);

  // The tile moves by the crossings; the vertex component is carried along.
  LiftedVertex lift_path(const LiftedVertex& start, const CrossingWord& w);

  // Index-based fast path for hot loops; indices are private to this object.
  int index_of(const TileId& t);
  int step(int index, int letter);
  TileId tile_at(int index) const;

  std::size_t materialized() const;
  nlohmann::json dump(int radius);

 private:
  int intern(CrossingWord canonical);

  DeckGroup group_;
  mutable std::mutex mu_;
  std::vector<TileId> tiles_;
  std::vector<std::vector<int>> links_;
  std::unordered_map<CrossingWord, int, WordHash> index_;
};

}  // namespace ghor
