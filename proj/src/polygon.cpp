#include "ghor/polygon.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ghor/errors.hpp"

namespace ghor {

Polygon::Polygon(int half_sides) : n_(half_sides) {
  if (half_sides < 2) throw MalformedWord("polygon needs at least 4 sides, got 2N with N=" + std::to_string(half_sides));
}

int Polygon::letter_of_side(int side) const {
  if (side < 1 || side > 2 * n_) throw MalformedWord("side " + std::to_string(side) + " out of range");
  return side <= n_ ? side : -(side - n_);
}

int Polygon::side_of_letter(int letter) const {
  if (!is_letter(letter)) throw MalformedWord("letter " + std::to_string(letter) + " out of range");
  return letter > 0 ? letter : n_ - letter;
}

void Polygon::check(const CrossingWord& w) const {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!is_letter(w[i])) {
      throw MalformedWord("letter " + std::to_string(w[i]) + " at position " + std::to_string(i) +
                          " is outside ±[1," + std::to_string(n_) + "]");
    }
  }
}

CrossingWord inverse(const CrossingWord& w) {
  CrossingWord out(w.rbegin(), w.rend());
  for (int& l : out) l = -l;
  return out;
}

CrossingWord concat(const CrossingWord& a, const CrossingWord& b) {
  CrossingWord out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

CrossingWord free_reduce(const CrossingWord& w) {
  CrossingWord out;
  out.reserve(w.size());
  for (int l : w) {
    if (!out.empty() && out.back() == -l) out.pop_back();
    else out.push_back(l);
  }
  return out;
}

namespace {
int letter_rank(int l) { return 2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0); }
}  // namespace

bool shortlex_less(const CrossingWord& a, const CrossingWord& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return letter_rank(a[i]) < letter_rank(b[i]);
  }
  return false;
}

std::string to_string(const CrossingWord& w) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ',';
    if (w[i] > 0) os << '+';
    os << w[i];
  }
  os << ')';
  return os.str();
}

ClassVector abelianize(const CrossingWord& w, const Polygon& p) {
  p.check(w);
  ClassVector v(p.half_sides(), 0);
  for (int l : w) v[std::abs(l) - 1] += l > 0 ? 1 : -1;
  return v;
}

std::vector<int> corner_walk(const Polygon& p, int side, int steps) {
  const int n = p.half_sides();
  std::vector<int> out;
  int s = side - 1;
  for (int j = 0; j < steps; ++j) {
    out.push_back(s + 1);
    s = (s + n + 1) % (2 * n);
  }
  return out;
}

CrossingWord derive_vertex_relator(const Polygon& p) {
  const int n = p.half_sides();
  CrossingWord r;
  for (int start : {1, n + 1}) {
    for (int side : corner_walk(p, start, n)) r.push_back(p.letter_of_side(side));
  }
  return r;
}

namespace {

std::vector<CrossingWord> cyclic_rotations(const CrossingWord& r) {
  std::vector<CrossingWord> out;
  for (const CrossingWord& base : {r, inverse(r)}) {
    for (std::size_t i = 0; i < base.size(); ++i) {
      CrossingWord rot(base.begin() + i, base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + i);
      out.push_back(std::move(rot));
    }
  }
  return out;
}

}  // namespace

int max_piece_length(const CrossingWord& relator) {
  auto rots = cyclic_rotations(relator);
  int best = 0;
  for (std::size_t i = 0; i < rots.size(); ++i) {
    for (std::size_t j = i + 1; j < rots.size(); ++j) {
      if (rots[i] == rots[j]) continue;
      int k = 0;
      while (k < static_cast<int>(relator.size()) && rots[i][k] == rots[j][k]) ++k;
      best = std::max(best, k);
    }
  }
  return best;
}

bool satisfies_c_sixth(const CrossingWord& relator) {
  return !relator.empty() && 6 * max_piece_length(relator) < static_cast<int>(relator.size());
}

std::optional<CrossingWord> dehn_reduce(const CrossingWord& w, const CrossingWord& relator) {
  if (!satisfies_c_sixth(free_reduce(relator))) return std::nullopt;
  const auto rots = cyclic_rotations(relator);
  const int len = static_cast<int>(relator.size());
  std::map<std::pair<int, int>, std::vector<int>> by_prefix;
  for (int i = 0; i < static_cast<int>(rots.size()); ++i) by_prefix[{rots[i][0], rots[i][1]}].push_back(i);

  CrossingWord cur = free_reduce(w);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < cur.size() && !changed; ++i) {
      auto it = by_prefix.find({cur[i], cur[i + 1]});
      if (it == by_prefix.end()) continue;
      for (int ri : it->second) {
        const CrossingWord& rot = rots[ri];
        int k = 0;
        while (k < len && i + k < cur.size() && cur[i + k] == rot[k]) ++k;
        if (2 * k <= len) continue;
        CrossingWord rest(rot.begin() + k, rot.end());
        CrossingWord next(cur.begin(), cur.begin() + i);
        for (int l : inverse(rest)) next.push_back(l);
        next.insert(next.end(), cur.begin() + i + k, cur.end());
        cur = free_reduce(next);
        changed = true;
        break;
      }
    }
  }
  return cur;
}

}  // namespace ghor
