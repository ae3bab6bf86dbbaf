#include <doctest.h>

#include <random>

#include "ghor/exact_cover.hpp"
#include "ghor/instances.hpp"
#include "ghor/matchings.hpp"
#include "support/naive_matchings.hpp"

using namespace ghor;

namespace {

std::vector<std::string> names(const DimerQuiver& q, const std::vector<Matching>& ms) {
  std::vector<std::string> out;
  for (const auto& m : ms) out.push_back(to_string(q, m));
  std::sort(out.begin(), out.end());
  return out;
}

DimerQuiver one_vertex(int n, int arrows, std::vector<std::vector<ArrowId>> faces) {
  std::vector<Arrow> as;
  for (int i = 0; i < arrows; ++i) as.push_back({"t" + std::to_string(i), 0, 0, {}});
  return DimerQuiver(Polygon(n), {"v"}, as, std::move(faces));
}

}  // namespace

TEST_CASE("exact cover on a textbook instance") {
  // Knuth's seven-column example has the single cover {A D, B G, C E F}
  ExactCover x(7);
  x.add_option({2, 4, 5});
  x.add_option({0, 3, 6});
  x.add_option({1, 2, 5});
  x.add_option({0, 3});
  x.add_option({1, 6});
  x.add_option({3, 4, 6});
  CHECK(x.all_solutions() == std::vector<std::vector<int>>{{0, 3, 4}});
  ExactCover none(2);
  none.add_option({0});
  CHECK(none.all_solutions().empty());
  CHECK(ExactCover(0).all_solutions().size() == 1);
}

TEST_CASE("perfect matchings of the small instances") {
  auto p2 = build_polynomial(2);
  CHECK(names(p2, enumerate_perfect_matchings(p2)) == std::vector<std::string>{"{x1}", "{x2}", "{y}"});
  auto con = build_conifold_torus();
  CHECK(names(con, enumerate_perfect_matchings(con)) == std::vector<std::string>{"{a1}", "{a2}", "{b1}", "{b2}"});
  CHECK(classify(build_polynomial(3)).perfect.size() == 4);
  CHECK(classify(build_polynomial(3)).simple.size() == 4);
}

TEST_CASE("exact cover agrees with subset brute force") {
  for (const auto& e : instance_suite()) {
    if (e.quiver.arrow_count() > 12) continue;
    CAPTURE(e.name);
    auto fast = enumerate_perfect_matchings(e.quiver);
    CHECK(fast == oracle::naive_perfect_matchings(e.quiver));
    for (const auto& m : fast) {
      CHECK(is_perfect_matching(e.quiver, m));
      CHECK(is_simple(e.quiver, m) == oracle::naive_simple(e.quiver, m));
    }
  }
  // random face systems on loops, including repeated arrows within a face
  std::mt19937 rng(17);
  for (int t = 0; t < 300; ++t) {
    int arrows = 3 + static_cast<int>(rng() % 8);
    int faces = 1 + static_cast<int>(rng() % 5);
    std::vector<std::vector<ArrowId>> fs(faces);
    for (int a = 0; a < arrows; ++a) {
      fs[rng() % faces].push_back(a);
      fs[rng() % faces].push_back(a);
    }
    std::erase_if(fs, [](const auto& f) { return f.empty(); });
    DimerQuiver q = one_vertex(2, arrows, fs);
    REQUIRE(enumerate_perfect_matchings(q) == oracle::naive_perfect_matchings(q));
  }
}

TEST_CASE("simple matchings") {
  auto con = build_conifold_torus();
  CHECK(is_simple(con, {con.arrow_index("a1")}));
  auto p2 = build_polynomial(2);
  CHECK(is_simple(p2, {p2.arrow_index("y")}));
  std::vector<Arrow> one_way{{"f", 0, 1, {}}, {"g", 1, 0, {}}};
  DimerQuiver line(Polygon(2), {"1", "2"}, one_way, {{0, 1}, {0, 1}});
  CHECK_FALSE(is_simple(line, {1}));

  for (const auto& e : instance_suite()) {
    CAPTURE(e.name);
    MatchingIndex ix = classify(e.quiver);
    for (std::size_t i = 0; i < ix.simple.size(); ++i) CHECK(ix.perfect[ix.simple_in_perfect[i]] == ix.simple[i]);
    CHECK(ix.standing_assumption());
  }
  auto cd = build_center_deficient();
  MatchingIndex ix = classify(cd);
  CHECK(names(cd, ix.simple) == std::vector<std::string>{"{x}", "{z}"});
  CHECK(ix.perfect.size() > ix.simple.size());
  CHECK_FALSE(ix.simple_covers_arrows());
  auto oct = build_conifold_generalization(4);
  MatchingIndex io = classify(oct);
  CHECK(io.perfect.size() == 8);
  CHECK(io.simple.size() == 8);
  for (const auto& m : io.perfect) CHECK(m.size() == 2);
}

TEST_CASE("unit cycles meet every perfect matching once") {
  for (const auto& e : instance_suite()) {
    MatchingIndex ix = classify(e.quiver);
    for (const auto& face : e.quiver.faces()) {
      std::vector<int> sum(ix.perfect.size(), 0);
      for (ArrowId a : face)
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += ix.perfect_member[a][i];
      CHECK(sum == std::vector<int>(ix.perfect.size(), 1));
    }
  }
}

TEST_CASE("arrows outside the standing assumption are reported") {
  // faces {p,m,s,s}, {m,r}, {r,p}: s alone covers the first face, so p and m
  // are never matched
  DimerQuiver q = one_vertex(2, 4, {{0, 1, 3, 3}, {1, 2}, {2, 0}});
  MatchingIndex ix = classify(q);
  CHECK(names(q, ix.perfect) == std::vector<std::string>{"{t2,t3}"});
  CHECK(ix.arrows_in_no_perfect == std::vector<ArrowId>{0, 1});
  CHECK_FALSE(ix.standing_assumption());
  CHECK(ix.to_json(q)["arrows_in_no_perfect"] == nlohmann::json{"t0", "t1"});
}
