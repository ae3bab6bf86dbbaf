#include "ghor/cycles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include "ghor/errors.hpp"

namespace ghor {

namespace {

bool path_less(const Path& a, const Path& b) {
  if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
  if (a.arrows != b.arrows) return a.arrows < b.arrows;
  return a.start < b.start;
}

std::int64_t lift_key(int tile, VertexId v) { return (static_cast<std::int64_t>(tile) << 20) | v; }

nlohmann::json path_json(const DimerQuiver& q, const Path& p) {
  nlohmann::json j = nlohmann::json::array();
  for (ArrowId a : p.arrows) j.push_back(q.arrow(a).name);
  return j;
}

void require_closed(const DimerQuiver& q, const Path& c) {
  if (c.arrows.empty()) throw PreconditionError("expected a cycle, got a trivial path");
  make_path(q, c.arrows);
  if (q.arrow(c.arrows.front()).tail != c.start || !is_closed(q, c)) throw PreconditionError("path is not a cycle");
}

}  // namespace

CycleTopology::CycleTopology(DimerQuiver q) : CycleTopology(q, classify(q)) {}

CycleTopology::CycleTopology(DimerQuiver q, MatchingIndex ix)
    : q_(std::move(q)), ix_(std::move(ix)), rs_(rotation_system(q_)), tess_(q_.polygon()) {}

CycleRecord CycleTopology::record(const Path& c) const {
  CycleRecord r;
  r.path = c;
  r.word = crossing_word(q_, c);
  r.cls = abelianize(r.word, q_.polygon());
  r.eta = eta_bar(q_, ix_, c);
  r.tau = tau_bar(q_, ix_, c);
  return r;
}

std::vector<Path> elementary_circuits(const DimerQuiver& q) {
  const int n = q.vertex_count();
  std::vector<Path> found;
  for (VertexId s = 0; s < n; ++s) {
    // strongly connected component of s among vertices >= s (Tarjan)
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<char> on_stack(n, 0);
    std::vector<VertexId> stack;
    int counter = 0, comps = 0;
    std::function<void(VertexId)> tarjan = [&](VertexId v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = 1;
      for (ArrowId a : q.out_arrows(v)) {
        VertexId w = q.arrow(a).head;
        if (w < s) continue;
        if (index[w] < 0) {
          tarjan(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      }
      if (low[v] == index[v]) {
        VertexId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = comps;
        } while (w != v);
        ++comps;
      }
    };
    tarjan(s);
    auto inside = [&](VertexId w) { return w >= s && comp[w] == comp[s]; };

    // Johnson's circuit search rooted at s
    std::vector<char> blocked(n, 0);
    std::vector<std::set<VertexId>> b_lists(n);
    std::vector<ArrowId> arrows;
    std::function<void(VertexId)> unblock = [&](VertexId u) {
      blocked[u] = 0;
      auto pending = std::move(b_lists[u]);
      b_lists[u].clear();
      for (VertexId w : pending)
        if (blocked[w]) unblock(w);
    };
    std::function<bool(VertexId)> circuit = [&](VertexId v) {
      bool closed = false;
      blocked[v] = 1;
      for (ArrowId a : q.out_arrows(v)) {
        VertexId w = q.arrow(a).head;
        if (!inside(w)) continue;
        if (w == s) {
          arrows.push_back(a);
          found.push_back(Path{s, arrows});
          arrows.pop_back();
          closed = true;
        } else if (!blocked[w]) {
          arrows.push_back(a);
          if (circuit(w)) closed = true;
          arrows.pop_back();
        }
      }
      if (closed) {
        unblock(v);
      } else {
        for (ArrowId a : q.out_arrows(v)) {
          VertexId w = q.arrow(a).head;
          if (inside(w)) b_lists[w].insert(v);
        }
      }
      return closed;
    };
    circuit(s);
  }
  std::sort(found.begin(), found.end(), path_less);
  return found;
}

const std::vector<CycleRecord>& CycleTopology::elementary_cycles() const {
  if (elementary_) return *elementary_;
  std::vector<CycleRecord> out;
  for (const auto& p : elementary_circuits(q_)) out.push_back(record(p));
  elementary_ = std::move(out);
  return *elementary_;
}

int CycleTopology::longest_elementary_cycle() const {
  int m = 0;
  for (const auto& c : elementary_cycles()) m = std::max(m, static_cast<int>(c.path.arrows.size()));
  return m;
}

ClassVector CycleTopology::cycle_class(const Path& c) const {
  require_closed(q_, c);
  return abelianize(crossing_word(q_, c), q_.polygon());
}

bool CycleTopology::is_contractible(const Path& c) const {
  require_closed(q_, c);
  return tess_.words_equal(crossing_word(q_, c), {});
}

bool CycleTopology::lift_is_cyclic_subpath_free(const Path& p) const {
  int tile = tess_.index_of(tess_.base());
  VertexId v = p.start;
  std::unordered_set<std::int64_t> seen{lift_key(tile, v)};
  for (ArrowId a : p.arrows) {
    for (int l : q_.arrow(a).crossings) tile = tess_.step(tile, l);
    v = q_.arrow(a).head;
    if (!seen.insert(lift_key(tile, v)).second) return false;
  }
  return true;
}

std::vector<Path> CycleTopology::rewrite_closure(const Path& c, int depth, std::size_t cap, bool& complete) const {
  // the two face-complements of each arrow are equal modulo ker eta
  std::vector<std::pair<std::vector<ArrowId>, std::vector<ArrowId>>> swaps;
  for (ArrowId a = 0; a < q_.arrow_count(); ++a) {
    const auto& inc = q_.incidences(a);
    if (inc.size() != 2) continue;
    std::vector<ArrowId> comp[2];
    for (int s = 0; s < 2; ++s) {
      const auto& f = q_.face(inc[s].first);
      for (std::size_t k = 1; k < f.size(); ++k) comp[s].push_back(f[(inc[s].second + k) % f.size()]);
    }
    if (comp[0] != comp[1]) swaps.emplace_back(comp[0], comp[1]);
  }
  std::set<std::vector<ArrowId>> seen{c.arrows};
  std::vector<std::vector<ArrowId>> frontier{c.arrows};
  for (int d = 0; d < depth && !frontier.empty(); ++d) {
    std::vector<std::vector<ArrowId>> next;
    for (const auto& w : frontier) {
      for (const auto& [x, y] : swaps) {
        for (int dir = 0; dir < 2; ++dir) {
          const auto& from = dir ? y : x;
          const auto& to = dir ? x : y;
          if (from.size() > w.size()) continue;
          for (std::size_t i = 0; i + from.size() <= w.size(); ++i) {
            if (!std::equal(from.begin(), from.end(), w.begin() + i)) continue;
            std::vector<ArrowId> r(w.begin(), w.begin() + i);
            r.insert(r.end(), to.begin(), to.end());
            r.insert(r.end(), w.begin() + i + from.size(), w.end());
            if (seen.insert(r).second) next.push_back(r);
            if (seen.size() >= cap) {
              complete = false;
              return {};
            }
          }
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<Path> out;
  for (const auto& w : seen) out.push_back(Path{c.start, w});
  return out;
}

Representatives CycleTopology::representatives(const Path& c, const RepresentativeOptions& opt) const {
  require_closed(q_, c);
  Representatives out;
  if (opt.rewrite_depth >= 0) {
    out.paths = rewrite_closure(c, opt.rewrite_depth, opt.cap, out.complete);
    // rewriting never reaches every representative; record it as partial
    out.complete = out.complete && !out.paths.empty();
    std::sort(out.paths.begin(), out.paths.end(), path_less);
    return out;
  }
  ExponentVector remaining = eta_bar(q_, ix_, c);
  std::vector<char> usable(q_.arrow_count(), 1);
  for (ArrowId a = 0; a < q_.arrow_count(); ++a) {
    const auto& col = ix_.perfect_member[a];
    if (std::none_of(col.begin(), col.end(), [](char x) { return x; })) {
      // a label-free arrow makes the fibre infinite
      usable[a] = 0;
      out.complete = false;
    }
  }
  std::vector<ArrowId> walk;
  std::function<bool(VertexId)> dfs = [&](VertexId v) {
    if (remaining.degree() == 0) {
      if (v == c.start && !walk.empty()) out.paths.push_back(Path{c.start, walk});
      return out.paths.size() < opt.cap;
    }
    for (ArrowId a : q_.out_arrows(v)) {
      if (!usable[a]) continue;
      const auto& col = ix_.perfect_member[a];
      bool fits = true;
      for (std::size_t i = 0; i < col.size(); ++i)
        if (col[i] && remaining.exps[i] == 0) fits = false;
      if (!fits) continue;
      for (std::size_t i = 0; i < col.size(); ++i) remaining.exps[i] -= col[i];
      walk.push_back(a);
      bool go_on = dfs(q_.arrow(a).head);
      walk.pop_back();
      for (std::size_t i = 0; i < col.size(); ++i) remaining.exps[i] += col[i];
      if (!go_on) return false;
    }
    return true;
  };
  if (!dfs(c.start)) out.complete = false;
  std::sort(out.paths.begin(), out.paths.end(), path_less);
  return out;
}

bool CycleTopology::is_geodesic_cycle(const Path& c, const RepresentativeOptions& opt) const {
  Representatives reps = representatives(c, opt);
  if (!reps.complete || reps.paths.empty()) return false;
  for (const auto& r : reps.paths) {
    for (std::size_t k = 0; k < r.arrows.size(); ++k) {
      if (!lift_is_cyclic_subpath_free(rotate_cycle(q_, r, k))) return false;
    }
  }
  return true;
}

std::vector<CycleTopology::Meeting> CycleTopology::meetings(const Path& a, const Path& b) const {
  const int m1 = static_cast<int>(a.arrows.size()), m2 = static_cast<int>(b.arrows.size());
  std::vector<Meeting> out;
  auto at1 = [&](int i) { return a.arrows[((i % m1) + m1) % m1]; };
  auto at2 = [&](int j) { return b.arrows[((j % m2) + m2) % m2]; };
  for (int i = 0; i < m1; ++i) {
    for (int j = 0; j < m2; ++j) {
      if (q_.arrow(at1(i)).tail != q_.arrow(at2(j)).tail) continue;
      if (at1(i - 1) == at2(j - 1)) continue;  // inside a shared run
      int k = 0;
      while (k < m1 * m2 && at1(i + k) == at2(j + k)) ++k;
      if (k == m1 * m2) continue;
      out.push_back({i, j, k});
    }
  }
  return out;
}

bool CycleTopology::crossing_at(const Path& a, const Path& b, const Meeting& m) const {
  const int m1 = static_cast<int>(a.arrows.size()), m2 = static_cast<int>(b.arrows.size());
  auto at1 = [&](int i) { return a.arrows[((i % m1) + m1) % m1]; };
  auto at2 = [&](int j) { return b.arrows[((j % m2) + m2) % m2]; };
  auto same_sheet = [&](std::initializer_list<Dart> ds) {
    const auto& p0 = rs_.place(*ds.begin());
    return std::all_of(ds.begin(), ds.end(), [&](Dart d) {
      const auto& p = rs_.place(d);
      return p.vertex == p0.vertex && p.sheet == p0.sheet;
    });
  };
  auto offset = [&](Dart from, Dart to) {
    const auto& pf = rs_.place(from);
    int deg = static_cast<int>(rs_.sheets[pf.vertex][pf.sheet].size());
    return (rs_.place(to).index - pf.index + deg) % deg;
  };
  if (m.length == 0) {
    Dart in1{at1(m.i - 1), false}, out1{at1(m.i), true}, in2{at2(m.j - 1), false}, out2{at2(m.j), true};
    if (!same_sheet({in1, out1, in2, out2})) return false;
    int span = offset(out1, in1);
    bool in_side = offset(out1, in2) < span, out_side = offset(out1, out2) < span;
    return in_side != out_side;
  }
  Dart s{at1(m.i), true}, d1{at1(m.i - 1), false}, d2{at2(m.j - 1), false};
  Dart t{at1(m.i + m.length - 1), false}, e1{at1(m.i + m.length), true}, e2{at2(m.j + m.length), true};
  if (!same_sheet({s, d1, d2}) || !same_sheet({t, e1, e2})) return false;
  bool first_left_at_start = offset(s, d1) < offset(s, d2);
  bool first_left_at_end = offset(t, e1) > offset(t, e2);
  return first_left_at_start != first_left_at_end;
}

bool CycleTopology::antiparallel_at(const Path& a, const Path& b, const Meeting& m) const {
  if (m.length != 0) return false;
  const int m1 = static_cast<int>(a.arrows.size()), m2 = static_cast<int>(b.arrows.size());
  Dart in1{a.arrows[(m.i + m1 - 1) % m1], false}, out1{a.arrows[m.i], true};
  Dart in2{b.arrows[(m.j + m2 - 1) % m2], false}, out2{b.arrows[m.j], true};
  const auto& p = rs_.place(out1);
  for (Dart d : {in1, in2, out2})
    if (rs_.place(d).vertex != p.vertex || rs_.place(d).sheet != p.sheet) return false;
  int deg = static_cast<int>(rs_.sheets[p.vertex][p.sheet].size());
  auto off = [&](Dart d) { return (rs_.place(d).index - p.index + deg) % deg; };
  int span = off(in1);
  bool left = off(in2) < span;
  if (left != (off(out2) < span)) return false;  // a crossing, not a touch
  // walk from out1 into the arc holding the other strand
  bool in_first = left ? off(in2) < off(out2) : off(in2) > off(out2);
  return in_first;
}

bool CycleTopology::transversely_intersect(const Path& a, const Path& b) const {
  require_closed(q_, a);
  require_closed(q_, b);
  for (const auto& m : meetings(a, b))
    if (crossing_at(a, b, m)) return true;
  return false;
}

bool CycleTopology::antiparallel_touch(const Path& a, const Path& b) const {
  require_closed(q_, a);
  require_closed(q_, b);
  for (const auto& m : meetings(a, b))
    if (antiparallel_at(a, b, m)) return true;
  return false;
}

bool CycleTopology::parallel(const Path& a, const Path& b) const {
  return !transversely_intersect(a, b) && !antiparallel_touch(a, b);
}

std::vector<Path> CycleTopology::closed_walks(VertexId v, int max_length, std::size_t cap, bool* truncated) const {
  std::vector<Path> out;
  std::vector<ArrowId> walk;
  bool cut = false;
  std::function<void(VertexId)> dfs = [&](VertexId u) {
    if (cut) return;
    if (!walk.empty() && u == v) {
      if (out.size() >= cap) {
        cut = true;
        return;
      }
      out.push_back(Path{v, walk});
    }
    if (static_cast<int>(walk.size()) == max_length) return;
    for (ArrowId a : q_.out_arrows(u)) {
      walk.push_back(a);
      dfs(q_.arrow(a).head);
      walk.pop_back();
    }
  };
  dfs(v);
  if (truncated) *truncated = cut;
  std::sort(out.begin(), out.end(), path_less);
  return out;
}

std::vector<Path> CycleTopology::geodesic_candidates(VertexId v, int length, const RepresentativeOptions& opt) const {
  // closed walks of exactly this length whose lift from v never revisits
  std::vector<Path> out;
  std::vector<ArrowId> walk;
  std::unordered_set<std::int64_t> seen;
  std::function<void(VertexId, int)> dfs = [&](VertexId u, int tile) {
    if (static_cast<int>(walk.size()) == length) {
      if (u == v) out.push_back(Path{v, walk});
      return;
    }
    for (ArrowId a : q_.out_arrows(u)) {
      int t = tile;
      for (int l : q_.arrow(a).crossings) t = tess_.step(t, l);
      VertexId w = q_.arrow(a).head;
      if (!seen.insert(lift_key(t, w)).second) continue;
      walk.push_back(a);
      dfs(w, t);
      walk.pop_back();
      seen.erase(lift_key(t, w));
    }
  };
  int base = tess_.index_of(tess_.base());
  seen.insert(lift_key(base, v));
  dfs(v, base);
  std::vector<Path> geodesic;
  for (auto& p : out)
    if (is_geodesic_cycle(p, opt)) geodesic.push_back(std::move(p));
  return geodesic;
}

GeodesicReport CycleTopology::is_geodesic_algebra(const GeodesicOptions& opt) const {
  const int n = q_.polygon().half_sides();
  GeodesicReport rep;
  rep.bound = opt.bound > 0 ? opt.bound : n + 1;
  rep.max_length = rep.bound * longest_elementary_cycle();
  rep.representatives =
      opt.reps.rewrite_depth < 0 ? "exact" : "rewrite depth " + std::to_string(opt.reps.rewrite_depth);

  std::map<std::pair<VertexId, int>, std::vector<Path>> memo;
  auto candidates = [&](VertexId v, int len) -> const std::vector<Path>& {
    auto key = std::make_pair(v, len);
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, geodesic_candidates(v, len, opt.reps)).first;
    return it->second;
  };
  std::map<std::pair<VertexId, std::vector<ArrowId>>, bool> geodesic_memo;
  auto geodesic = [&](const Path& c) {
    auto key = std::make_pair(c.start, c.arrows);
    auto it = geodesic_memo.find(key);
    if (it == geodesic_memo.end()) it = geodesic_memo.emplace(key, is_geodesic_cycle(c, opt.reps)).first;
    return it->second;
  };

  const int vcount = q_.vertex_count();
  auto find_family = [&](const Path& gamma, std::vector<Path>& family) {
    std::vector<std::optional<Path>> chosen(vcount);
    chosen[gamma.start] = gamma;
    std::size_t steps = 0;
    std::function<bool(VertexId)> place = [&](VertexId j) -> bool {
      if (j == vcount) return true;
      if (chosen[j]) return place(j + 1);
      auto fits = [&](const Path& c) {
        if (++steps > opt.family_steps) return false;
        for (VertexId i = 0; i < vcount; ++i)
          if (chosen[i] && !parallel(*chosen[i], c)) return false;
        return true;
      };
      auto attempt = [&](const Path& c) {
        if (!fits(c)) return false;
        chosen[j] = c;
        if (place(j + 1)) return true;
        chosen[j].reset();
        return false;
      };
      // rotations of cycles already in the family come first
      std::vector<Path> rotations;
      for (VertexId i = 0; i < vcount; ++i) {
        if (!chosen[i]) continue;
        for (std::size_t k = 0; k < chosen[i]->arrows.size(); ++k) {
          Path r = rotate_cycle(q_, *chosen[i], k);
          if (r.start == j && std::find(rotations.begin(), rotations.end(), r) == rotations.end()) rotations.push_back(r);
        }
      }
      for (const auto& r : rotations)
        if (geodesic(r) && attempt(r)) return true;
      for (int len = 1; len <= rep.max_length && steps <= opt.family_steps; ++len)
        for (const auto& c : candidates(j, len))
          if (attempt(c)) return true;
      return false;
    };
    if (!place(0)) return false;
    family.clear();
    for (auto& c : chosen) family.push_back(*c);
    return true;
  };

  rep.gammas.assign(2 * n, std::nullopt);
  for (int k = 1; k <= 2 * n; ++k) {
    ClassVector target(n, 0);
    if (k <= n) target[k - 1] = 1;
    else target[k - n - 1] = -1;
    bool any_gamma = false, done = false;
    for (int len = 1; len <= rep.max_length && !done; ++len) {
      for (VertexId v = 0; v < vcount && !done; ++v) {
        for (const auto& c : candidates(v, len)) {
          if (abelianize(crossing_word(q_, c), q_.polygon()) != target) continue;
          any_gamma = true;
          if (!rep.gammas[k - 1]) rep.gammas[k - 1] = c;
          std::vector<Path> family;
          if (find_family(c, family)) {
            rep.gammas[k - 1] = c;
            rep.witnesses.push_back({k, c, family});
            done = true;
            break;
          }
        }
      }
    }
    if (!done) (any_gamma ? rep.missing_family : rep.missing_gamma).push_back(k);
  }
  rep.geodesic = rep.missing_gamma.empty() && rep.missing_family.empty();
  return rep;
}

nlohmann::json GeodesicReport::to_json(const DimerQuiver& q) const {
  nlohmann::json j;
  j["verdict"] = geodesic ? "geodesic" : "inconclusive";
  j["bound"] = bound;
  j["max_cycle_length"] = max_length;
  j["representatives"] = representatives;
  j["witnesses"] = nlohmann::json::array();
  for (const auto& w : witnesses) {
    nlohmann::json f = nlohmann::json::array();
    for (const auto& c : w.family) f.push_back({{"vertex", q.vertex_name(c.start)}, {"cycle", path_json(q, c)}});
    j["witnesses"].push_back({{"direction", w.k}, {"gamma", path_json(q, w.gamma)},
                              {"gamma_vertex", q.vertex_name(w.gamma.start)}, {"family", f}});
  }
  j["gammas"] = nlohmann::json::array();
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    if (gammas[k]) j["gammas"].push_back({{"direction", k + 1}, {"cycle", path_json(q, *gammas[k])},
                                          {"vertex", q.vertex_name(gammas[k]->start)}});
  }
  j["directions_without_geodesic_cycle"] = missing_gamma;
  j["directions_without_parallel_family"] = missing_family;
  return j;
}

std::vector<int> CycleTopology::strip_of_faces(const std::vector<char>& family_arrow) const {
  std::vector<int> parent(q_.face_count());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (ArrowId a = 0; a < q_.arrow_count(); ++a) {
    if (family_arrow[a]) continue;
    auto fs = q_.faces_of(a);
    for (std::size_t i = 1; i < fs.size(); ++i) parent[find(fs[i])] = find(fs[0]);
  }
  std::vector<int> id(q_.face_count(), -1), out(q_.face_count());
  int next = 0;
  for (int f = 0; f < q_.face_count(); ++f) {
    int r = find(f);
    if (id[r] < 0) id[r] = next++;
    out[f] = id[r];
  }
  return out;
}

namespace {

// Start position and length of the single maximal run of family arrows in a
// face, or nullopt when there is not exactly one run.
std::optional<std::pair<int, int>> single_run(const std::vector<ArrowId>& face, const std::vector<char>& fam) {
  const int m = static_cast<int>(face.size());
  int starts = 0, start = -1, count = 0;
  for (int i = 0; i < m; ++i) {
    if (!fam[face[i]]) continue;
    ++count;
    if (!fam[face[(i + m - 1) % m]]) {
      ++starts;
      start = i;
    }
  }
  if (starts != 1 || count == m) return std::nullopt;
  return std::make_pair(start, count);
}

}  // namespace

Subdivision CycleTopology::subdivision_from_family(const std::vector<Path>& family) const {
  if (static_cast<int>(family.size()) != q_.vertex_count())
    throw PreconditionError("a family needs one cycle per vertex");
  for (VertexId i = 0; i < q_.vertex_count(); ++i) {
    const Path& c = family[i];
    require_closed(q_, c);
    if (c.start != i) throw PreconditionError("family cycle " + std::to_string(i) + " is not based at its vertex");
    if (!is_geodesic_cycle(c)) throw PreconditionError("family cycle " + to_string(q_, c) + " is not geodesic");
    for (VertexId j = 0; j < i; ++j)
      if (!parallel(family[j], c))
        throw PreconditionError("family cycles " + to_string(q_, family[j]) + " and " + to_string(q_, c) +
                                " are not parallel");
  }
  Subdivision sub;
  sub.family = family;
  sub.family_arrow.assign(q_.arrow_count(), 0);
  for (const auto& c : family)
    for (ArrowId a : c.arrows) sub.family_arrow[a] = 1;

  std::vector<int> strip = strip_of_faces(sub.family_arrow);
  int strips = strip.empty() ? 0 : *std::max_element(strip.begin(), strip.end()) + 1;
  sub.pieces.resize(strips);
  for (int f = 0; f < q_.face_count(); ++f) sub.pieces[strip[f]].faces.push_back(f);

  const int base = tess_.index_of(tess_.base());
  for (int s = 0; s < strips; ++s) {
    Piece& piece = sub.pieces[s];
    std::set<ArrowId> interior, left, right;
    for (int f : piece.faces) {
      if (!single_run(q_.face(f), sub.family_arrow))
        throw ConstructionGap("strip " + std::to_string(s) + ": face " + std::to_string(f) +
                              " does not meet the family in a single boundary run");
      for (ArrowId a : q_.face(f)) {
        if (!sub.family_arrow[a]) interior.insert(a);
        else (rs_.face_colour[f] == 0 ? left : right).insert(a);
      }
    }
    piece.interior.assign(interior.begin(), interior.end());
    piece.left_boundary.assign(left.begin(), left.end());
    piece.right_boundary.assign(right.begin(), right.end());

    // lift the strip face by face across interior arrows, then compare the
    // lifted vertices of the two sides
    std::map<int, std::vector<int>> corner;  // face -> tile at the tail of each position
    auto place = [&](int f, int pos, int tile) {
      const auto& face = q_.face(f);
      std::vector<int> t(face.size());
      for (std::size_t k = 0; k < face.size(); ++k) {
        std::size_t p = (pos + k) % face.size();
        t[p] = tile;
        for (int l : q_.arrow(face[p]).crossings) tile = tess_.step(tile, l);
      }
      corner[f] = t;
    };
    std::vector<int> queue{piece.faces.front()};
    place(piece.faces.front(), 0, base);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int f = queue[qi];
      const auto& face = q_.face(f);
      for (std::size_t p = 0; p < face.size(); ++p) {
        ArrowId a = face[p];
        if (sub.family_arrow[a]) continue;
        for (auto [g, gp] : q_.incidences(a)) {
          if (corner.count(g)) continue;
          place(g, gp, corner[f][p]);
          queue.push_back(g);
        }
      }
    }
    std::set<std::int64_t> side[2];
    for (int f : piece.faces) {
      const auto& face = q_.face(f);
      for (std::size_t p = 0; p < face.size(); ++p) {
        if (!sub.family_arrow[face[p]]) continue;
        int tail_tile = corner[f][p];
        int head_tile = corner[f][(p + 1) % face.size()];
        auto& bucket = side[rs_.face_colour[f] == 0 ? 0 : 1];
        bucket.insert(lift_key(tail_tile, q_.arrow(face[p]).tail));
        bucket.insert(lift_key(head_tile, q_.arrow(face[p]).head));
      }
    }
    bool meet = std::any_of(side[0].begin(), side[0].end(), [&](std::int64_t x) { return side[1].count(x) > 0; });
    piece.kind = meet ? Piece::Kind::Pillar : Piece::Kind::Column;
  }
  return sub;
}

Matching CycleTopology::matching_from_subdivision(const Subdivision& sub) const {
  if (sub.family_arrow.size() != static_cast<std::size_t>(q_.arrow_count()))
    throw PreconditionError("subdivision belongs to a different quiver");
  for (int mirrored = 0; mirrored < 2; ++mirrored) {
    std::set<ArrowId> chosen;
    for (const auto& piece : sub.pieces) {
      for (int f : piece.faces) {
        const auto& face = q_.face(f);
        auto run = single_run(face, sub.family_arrow);
        if (!run) throw ConstructionGap("face " + std::to_string(f) + " has no single boundary run");
        const int m = static_cast<int>(face.size());
        ArrowId after = face[(run->first + run->second) % m];
        ArrowId before = face[(run->first + m - 1) % m];
        bool take_after = (rs_.face_colour[f] == 0) != (mirrored == 1);
        chosen.insert(take_after ? after : before);
      }
    }
    Matching x(chosen.begin(), chosen.end());
    if (is_perfect_matching(q_, x) && is_simple(q_, x)) return x;
  }
  throw ConstructionGap("the transversal rule does not give a simple matching for this subdivision");
}

int Subdivision::columns() const {
  return static_cast<int>(std::count_if(pieces.begin(), pieces.end(), [](const Piece& p) { return p.kind == Piece::Kind::Column; }));
}

int Subdivision::pillars() const { return static_cast<int>(pieces.size()) - columns(); }

nlohmann::json Subdivision::to_json(const DimerQuiver& q) const {
  auto names = [&](const std::vector<ArrowId>& ids) {
    nlohmann::json j = nlohmann::json::array();
    for (ArrowId a : ids) j.push_back(q.arrow(a).name);
    return j;
  };
  nlohmann::json j;
  j["family"] = nlohmann::json::array();
  for (const auto& c : family) j["family"].push_back(path_json(q, c));
  j["pieces"] = nlohmann::json::array();
  for (const auto& p : pieces) {
    j["pieces"].push_back({{"kind", p.kind == Piece::Kind::Column ? "column" : "pillar"},
                           {"faces", p.faces},
                           {"interior", names(p.interior)},
                           {"left_boundary", names(p.left_boundary)},
                           {"right_boundary", names(p.right_boundary)}});
  }
  return j;
}

ClassLabelReport CycleTopology::verify_class_label_theorem(int bound, bool certified_geodesic) const {
  ClassLabelReport rep;
  rep.bound = bound;
  rep.max_length = bound * longest_elementary_cycle();
  rep.conditional = !certified_geodesic;
  std::vector<CycleRecord> cycles;
  const std::size_t cap = 400000;
  for (VertexId v = 0; v < q_.vertex_count(); ++v) {
    bool cut = false;
    for (const auto& c : closed_walks(v, rep.max_length, cap, &cut)) cycles.push_back(record(c));
    rep.truncated = rep.truncated || cut;
  }
  rep.cycles = cycles.size();
  std::map<ClassVector, std::map<std::vector<int64_t>, std::size_t>> by_class;
  std::map<std::vector<int64_t>, std::map<ClassVector, std::size_t>> by_label;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    auto normal = sigma_normal(cycles[i].tau).reduced.exps;
    by_class[cycles[i].cls].emplace(normal, i);
    by_label[normal].emplace(cycles[i].cls, i);
  }
  rep.classes = by_class.size();
  rep.label_classes = by_label.size();
  for (const auto& [cls, labels] : by_class) {
    if (labels.size() < 2) continue;
    auto it = labels.begin();
    std::size_t first = it->second;
    for (++it; it != labels.end(); ++it) rep.violations.push_back({cycles[first].path, cycles[it->second].path, true});
  }
  for (const auto& [label, classes] : by_label) {
    if (classes.size() < 2) continue;
    auto it = classes.begin();
    std::size_t first = it->second;
    for (++it; it != classes.end(); ++it) rep.violations.push_back({cycles[first].path, cycles[it->second].path, false});
  }
  return rep;
}

nlohmann::json ClassLabelReport::to_json(const DimerQuiver& q) const {
  nlohmann::json j;
  j["bound"] = bound;
  j["max_cycle_length"] = max_length;
  j["conditional"] = conditional;
  j["truncated"] = truncated;
  j["cycles"] = cycles;
  j["classes"] = classes;
  j["label_classes"] = label_classes;
  j["violations"] = nlohmann::json::array();
  for (const auto& v : violations) {
    j["violations"].push_back({{"p", path_json(q, v.p)},
                               {"p_vertex", q.vertex_name(v.p.start)},
                               {"q", path_json(q, v.r)},
                               {"q_vertex", q.vertex_name(v.r.start)},
                               {"kind", v.same_class ? "same class, labels differ" : "same label, classes differ"}});
  }
  return j;
}

int64_t CycleTopology::sigma_exponent(const Path& p, const Path& r) const {
  if (cycle_class(p) != cycle_class(r)) throw PreconditionError("cycles have different classes");
  auto l = sigma_equal(tau_bar(q_, ix_, p), tau_bar(q_, ix_, r));
  if (!l) throw TheoremViolation("same class but labels are not sigma-equal: " + to_string(q_, p) + " vs " + to_string(q_, r));
  return *l;
}

}  // namespace ghor
