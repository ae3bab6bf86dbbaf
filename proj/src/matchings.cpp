#include "ghor/matchings.hpp"

#include <algorithm>

#include "ghor/exact_cover.hpp"

namespace ghor {

bool is_perfect_matching(const DimerQuiver& q, const Matching& x) {
  std::vector<int> hits(q.face_count(), 0);
  std::vector<char> used(q.arrow_count(), 0);
  for (ArrowId a : x) {
    if (a < 0 || a >= q.arrow_count() || used[a]) return false;
    used[a] = 1;
    for (int f : q.faces_of(a)) ++hits[f];
  }
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

namespace {

std::vector<char> reach(const DimerQuiver& q, const std::vector<char>& removed, bool forward) {
  std::vector<char> seen(q.vertex_count(), 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (ArrowId a : forward ? q.out_arrows(v) : q.in_arrows(v)) {
      if (removed[a]) continue;
      VertexId w = forward ? q.arrow(a).head : q.arrow(a).tail;
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace

bool is_simple(const DimerQuiver& q, const Matching& x) {
  if (q.vertex_count() == 0) return false;
  std::vector<char> removed(q.arrow_count(), 0);
  for (ArrowId a : x) removed.at(a) = 1;
  auto all = [](const std::vector<char>& s) { return std::all_of(s.begin(), s.end(), [](char c) { return c; }); };
  return all(reach(q, removed, true)) && all(reach(q, removed, false));
}

std::vector<Matching> enumerate_perfect_matchings(const DimerQuiver& q) {
  ExactCover dlx(q.face_count());
  std::vector<ArrowId> arrow_of;
  for (ArrowId a = 0; a < q.arrow_count(); ++a) {
    auto fs = q.faces_of(a);
    if (fs.empty()) continue;
    dlx.add_option(fs);
    arrow_of.push_back(a);
  }
  std::vector<Matching> out;
  for (const auto& sol : dlx.all_solutions()) {
    Matching m;
    for (int o : sol) m.push_back(arrow_of[o]);
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

MatchingIndex classify(const DimerQuiver& q) {
  MatchingIndex ix;
  ix.perfect = enumerate_perfect_matchings(q);
  for (std::size_t i = 0; i < ix.perfect.size(); ++i) {
    if (is_simple(q, ix.perfect[i])) {
      ix.simple.push_back(ix.perfect[i]);
      ix.simple_in_perfect.push_back(static_cast<int>(i));
    }
  }
  ix.perfect_member.assign(q.arrow_count(), std::vector<char>(ix.perfect.size(), 0));
  ix.simple_member.assign(q.arrow_count(), std::vector<char>(ix.simple.size(), 0));
  for (std::size_t i = 0; i < ix.perfect.size(); ++i)
    for (ArrowId a : ix.perfect[i]) ix.perfect_member[a][i] = 1;
  for (std::size_t i = 0; i < ix.simple.size(); ++i)
    for (ArrowId a : ix.simple[i]) ix.simple_member[a][i] = 1;
  for (ArrowId a = 0; a < q.arrow_count(); ++a) {
    auto any = [](const std::vector<char>& v) { return std::any_of(v.begin(), v.end(), [](char c) { return c; }); };
    if (!any(ix.perfect_member[a])) ix.arrows_in_no_perfect.push_back(a);
    if (!any(ix.simple_member[a])) ix.arrows_in_no_simple.push_back(a);
  }
  return ix;
}

std::string to_string(const DimerQuiver& q, const Matching& x) {
  std::string s = "{";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += q.arrow(x[i]).name;
  }
  return s + "}";
}

nlohmann::json MatchingIndex::to_json(const DimerQuiver& q) const {
  auto names = [&](const std::vector<ArrowId>& ids) {
    nlohmann::json j = nlohmann::json::array();
    for (ArrowId a : ids) j.push_back(q.arrow(a).name);
    return j;
  };
  nlohmann::json j;
  j["perfect_count"] = perfect.size();
  j["simple_count"] = simple.size();
  j["perfect"] = nlohmann::json::array();
  for (const auto& m : perfect) j["perfect"].push_back(names(m));
  j["simple"] = nlohmann::json::array();
  for (const auto& m : simple) j["simple"].push_back(names(m));
  j["standing_assumption"] = standing_assumption();
  j["arrows_in_no_perfect"] = names(arrows_in_no_perfect);
  j["arrows_in_no_simple"] = names(arrows_in_no_simple);
  return j;
}

}  // namespace ghor
