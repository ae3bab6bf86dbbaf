#include "ghor/tessellation.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "ghor/errors.hpp"

namespace ghor {

namespace {

int prefix_key(int a, int b) { return (a + 64) * 256 + (b + 64); }

// Generators of the Z^2 * Z splitting for N=3: x = g1 g2^-1, y = g3 g2^-1, b = g2.
struct Syllable {
  bool planar;  // true: x^m y^n, false: b^k
  std::int64_t m = 0, n = 0;
};

}  // namespace

DeckGroup::DeckGroup(Polygon p) : polygon_(p), relator_(derive_vertex_relator(p)) {
  const int n = p.half_sides();
  kind_ = n == 2 ? Kind::Abelian : n == 3 ? Kind::FreeProduct : Kind::SmallCancellation;
  if (kind_ != Kind::SmallCancellation) return;
  for (const CrossingWord& base : {relator_, inverse(relator_)}) {
    for (std::size_t i = 0; i < base.size(); ++i) {
      CrossingWord rot(base.begin() + i, base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + i);
      int key = prefix_key(rot[0], rot[1]);
      if (rotation_by_prefix_.count(key)) throw std::logic_error("relator has a piece of length two");
      rotation_by_prefix_[key] = static_cast<int>(rotations_.size());
      rotations_.push_back(std::move(rot));
    }
  }
}

CrossingWord DeckGroup::normal_form(const CrossingWord& w) const {
  polygon_.check(w);
  switch (kind_) {
    case Kind::Abelian: return nf_abelian(w);
    case Kind::FreeProduct: return nf_free_product(w);
    case Kind::SmallCancellation: return nf_small_cancellation(w);
  }
  return {};
}

bool DeckGroup::equal(const CrossingWord& a, const CrossingWord& b) const {
  return normal_form(a) == normal_form(b);
}

CrossingWord DeckGroup::nf_abelian(const CrossingWord& w) const {
  ClassVector c = abelianize(w, polygon_);
  CrossingWord out;
  for (int k = 0; k < polygon_.half_sides(); ++k) {
    int letter = c[k] >= 0 ? k + 1 : -(k + 1);
    for (std::int64_t i = 0; i < std::abs(c[k]); ++i) out.push_back(letter);
  }
  return out;
}

CrossingWord DeckGroup::nf_free_product(const CrossingWord& w) const {
  std::vector<Syllable> stack;
  auto push = [&](Syllable s) {
    if (!stack.empty() && stack.back().planar == s.planar) {
      stack.back().m += s.m;
      stack.back().n += s.n;
      if (stack.back().m == 0 && stack.back().n == 0) stack.pop_back();
    } else {
      stack.push_back(s);
    }
  };
  const Syllable bp{false, 1, 0}, bm{false, -1, 0};
  for (int l : w) {
    switch (l) {
      case 1: push({true, 1, 0}); push(bp); break;
      case -1: push(bm); push({true, -1, 0}); break;
      case 2: push(bp); break;
      case -2: push(bm); break;
      case 3: push({true, 0, 1}); push(bp); break;
      case -3: push(bm); push({true, 0, -1}); break;
      default: throw MalformedWord("letter out of range");
    }
  }
  CrossingWord out;
  auto repeat = [&](std::int64_t times, const CrossingWord& pos, const CrossingWord& neg) {
    const CrossingWord& unit = times >= 0 ? pos : neg;
    for (std::int64_t i = 0; i < std::abs(times); ++i) out.insert(out.end(), unit.begin(), unit.end());
  };
  for (const Syllable& s : stack) {
    if (s.planar) {
      repeat(s.m, {1, -2}, {2, -1});
      repeat(s.n, {3, -2}, {2, -3});
    } else {
      repeat(s.m, {2}, {-2});
    }
  }
  return free_reduce(out);
}

int DeckGroup::rotation_at(const CrossingWord& w, std::size_t i) const {
  if (i + 1 >= w.size()) return -1;
  auto it = rotation_by_prefix_.find(prefix_key(w[i], w[i + 1]));
  return it == rotation_by_prefix_.end() ? -1 : it->second;
}

CrossingWord DeckGroup::dehn(CrossingWord w) const {
  const std::size_t half = polygon_.half_sides();
  const std::size_t len = relator_.size();
  w = free_reduce(w);
  for (std::size_t i = 0; i + 1 < w.size();) {
    int ri = rotation_at(w, i);
    if (ri < 0) {
      ++i;
      continue;
    }
    const CrossingWord& rot = rotations_[ri];
    std::size_t k = 0;
    while (k < len && i + k < w.size() && w[i + k] == rot[k]) ++k;
    if (k <= half) {
      ++i;
      continue;
    }
    CrossingWord next(w.begin(), w.begin() + i);
    for (std::size_t j = len; j > k; --j) next.push_back(-rot[j - 1]);
    next.insert(next.end(), w.begin() + i + k, w.end());
    w = free_reduce(next);
    i = i > len ? i - len : 0;
  }
  return w;
}

CrossingWord DeckGroup::nf_small_cancellation(const CrossingWord& input) const {
  const std::size_t half = polygon_.half_sides();
  CrossingWord w = dehn(input);
  for (;;) {
    std::unordered_set<CrossingWord, WordHash> seen{w};
    std::vector<CrossingWord> frontier{w};
    CrossingWord best = w;
    bool shortened = false;
    while (!frontier.empty() && !shortened) {
      CrossingWord x = std::move(frontier.back());
      frontier.pop_back();
      for (std::size_t i = 0; i + half <= x.size(); ++i) {
        int ri = rotation_at(x, i);
        if (ri < 0) continue;
        const CrossingWord& rot = rotations_[ri];
        std::size_t k = 0;
        while (k < half && x[i + k] == rot[k]) ++k;
        if (k < half) continue;
        CrossingWord y(x.begin(), x.begin() + i);
        for (std::size_t j = rot.size(); j > half; --j) y.push_back(-rot[j - 1]);
        y.insert(y.end(), x.begin() + i + half, x.end());
        y = dehn(y);
        if (y.size() < x.size()) {
          w = std::move(y);
          shortened = true;
          break;
        }
        if (seen.insert(y).second) {
          if (shortlex_less(y, best)) best = y;
          frontier.push_back(std::move(y));
        }
      }
    }
    if (!shortened) return best;
  }
}

Tessellation::Tessellation(Polygon p) : group_(p) { intern({}); }

int Tessellation::intern(CrossingWord canonical) {
  auto it = index_.find(canonical);
  if (it != index_.end()) return it->second;
  int idx = static_cast<int>(tiles_.size());
  index_.emplace(canonical, idx);
  tiles_.push_back(TileId{std::move(canonical)});
  links_.emplace_back(polygon().sides(), -1);
  return idx;
}

TileId Tessellation::tile_of(const CrossingWord& w) {
  CrossingWord nf = group_.normal_form(w);
  std::lock_guard lock(mu_);
  return tiles_[intern(std::move(nf))];
}

int Tessellation::index_of(const TileId& t) {
  {
    std::lock_guard lock(mu_);
    auto it = index_.find(t.word);
    if (it != index_.end()) return it->second;
  }
  CrossingWord nf = group_.normal_form(t.word);
  std::lock_guard lock(mu_);
  return intern(std::move(nf));
}

int Tessellation::step(int index, int letter) {
  const Polygon& p = polygon();
  const int side = p.side_of_letter(letter);
  CrossingWord word;
  {
    std::lock_guard lock(mu_);
    int known = links_.at(index)[side - 1];
    if (known >= 0) return known;
    word = tiles_[index].word;
  }
  word.push_back(letter);
  CrossingWord nf = group_.normal_form(word);
  std::lock_guard lock(mu_);
  int next = intern(std::move(nf));
  links_[index][side - 1] = next;
  links_[next][p.side_of_letter(-letter) - 1] = index;
  return next;
}

TileId Tessellation::tile_at(int index) const {
  std::lock_guard lock(mu_);
  return tiles_.at(index);
}

TileId Tessellation::neighbor(const TileId& t, int side) {
  return tile_at(step(index_of(t), polygon().letter_of_side(side)));
}

TileId Tessellation::apply(const TileId& t, const CrossingWord& w) {
  polygon().check(w);
  int idx = index_of(t);
  for (int l : w) idx = step(idx, l);
  return tile_at(idx);
}

bool Tessellation::words_equal(const CrossingWord& a, const CrossingWord& b) {
  return apply(base(), a) == apply(base(), b);
}

LiftedVertex Tessellation::lift_path(const LiftedVertex& start, const CrossingWord& w) {
  return LiftedVertex{apply(start.tile, w), start.vertex};
}

std::size_t Tessellation::materialized() const {
  std::lock_guard lock(mu_);
  return tiles_.size();
}

nlohmann::json Tessellation::dump(int radius) {
  const Polygon& p = polygon();
  std::vector<std::pair<int, int>> order;  // (depth, index)
  std::unordered_map<int, int> depth{{index_of(base()), 0}};
  std::deque<int> queue{index_of(base())};
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    order.emplace_back(depth[cur], cur);
    if (depth[cur] == radius) continue;
    for (int side = 1; side <= p.sides(); ++side) {
      int nb = step(cur, p.letter_of_side(side));
      if (depth.emplace(nb, depth[cur] + 1).second) queue.push_back(nb);
    }
  }
  std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return tile_at(a.second) < tile_at(b.second);
  });
  nlohmann::json tiles = nlohmann::json::array();
  for (auto [d, idx] : order) {
    nlohmann::json nbs = nlohmann::json::array();
    for (int side = 1; side <= p.sides(); ++side) nbs.push_back(tile_at(step(idx, p.letter_of_side(side))).word);
    tiles.push_back({{"id", tile_at(idx).word}, {"depth", d}, {"neighbors", nbs}});
  }
  return {{"polygon_half_sides", p.half_sides()},
          {"radius", radius},
          {"relator", group_.relator()},
          {"tiles", tiles}};
}

}  // namespace ghor
