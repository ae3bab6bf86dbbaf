#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "ghor/errors.hpp"
#include "ghor/tessellation.hpp"
#include "support/ball_oracle.hpp"
#include "support/words.hpp"

using namespace ghor;

namespace {

// Independent corner bookkeeping: polygon corners v_0..v_{2N-1}, side s runs
// from v_{s-1} to v_s, and side s is glued to side s+N by a translation.
std::vector<std::vector<int>> corner_cycles_by_hand(int n) {
  const int m = 2 * n;
  std::vector<std::vector<int>> cycles;
  std::vector<bool> used(m, false);
  for (int start = 0; start < m; ++start) {
    if (used[start]) continue;
    std::vector<int> sides;
    int corner = start;
    while (!used[corner]) {
      used[corner] = true;
      int exit_side = corner + 1;  // side leaving this corner
      sides.push_back(exit_side);
      corner = (exit_side - 1 + n + 1) % m;  // start of side s maps to end of side s+N
    }
    cycles.push_back(sides);
  }
  return cycles;
}

}  // namespace

TEST_CASE("abelianize counts signed crossings") {
  Polygon oct(4);
  CHECK(abelianize({1}, oct) == ClassVector{1, 0, 0, 0});
  CHECK(abelianize({1, -1}, oct) == ClassVector{0, 0, 0, 0});
  CHECK(abelianize({}, Polygon(3)) == ClassVector{0, 0, 0});
  CHECK(abelianize({-3, 2, -3}, oct) == ClassVector{0, 1, -2, 0});
  CHECK_THROWS_AS(abelianize({5}, oct), MalformedWord);
  CHECK_THROWS_AS(abelianize({0}, oct), MalformedWord);
  CHECK_THROWS_AS(Polygon(1), MalformedWord);
}

TEST_CASE("abelianize is additive over concatenation") {
  std::mt19937 rng(7);
  for (int n = 2; n <= 6; ++n) {
    Polygon p(n);
    for (int t = 0; t < 200; ++t) {
      auto a = testwords::random_word(rng, n, 12);
      auto b = testwords::random_word(rng, n, 12);
      ClassVector ca = abelianize(a, p), cb = abelianize(b, p), cab = abelianize(concat(a, b), p);
      for (int k = 0; k < n; ++k) CHECK(cab[k] == ca[k] + cb[k]);
      ClassVector ci = abelianize(inverse(a), p);
      for (int k = 0; k < n; ++k) CHECK(ci[k] == -ca[k]);
    }
  }
}

TEST_CASE("vertex relator matches the corner walk") {
  CHECK(derive_vertex_relator(Polygon(2)) == CrossingWord{1, -2, -1, 2});
  for (int n = 2; n <= 9; ++n) {
    Polygon p(n);
    CrossingWord r = derive_vertex_relator(p);
    CHECK(r.size() == static_cast<std::size_t>(2 * n));
    CHECK(abelianize(r, p) == ClassVector(n, 0));
    auto cycles = corner_cycles_by_hand(n);
    CHECK(cycles.size() == (n % 2 == 0 ? 1u : 2u));
    CrossingWord expected;
    if (n % 2 == 0) {
      for (int s : cycles[0]) expected.push_back(p.letter_of_side(s));
    } else {
      // read the second corner class starting where side N+1 leaves it
      for (int s : cycles[0]) expected.push_back(p.letter_of_side(s));
      auto& c = cycles[1];
      auto at = std::find(c.begin(), c.end(), n + 1);
      REQUIRE(at != c.end());
      std::rotate(c.begin(), at, c.end());
      for (int s : c) expected.push_back(p.letter_of_side(s));
    }
    CHECK(r == expected);
  }
}

TEST_CASE("small cancellation holds exactly from N=4") {
  for (int n = 2; n <= 9; ++n) {
    CrossingWord r = derive_vertex_relator(Polygon(n));
    CHECK(max_piece_length(r) == 1);
    CHECK(satisfies_c_sixth(r) == (n >= 4));
  }
}

TEST_CASE("dehn reduction") {
  CrossingWord r2 = derive_vertex_relator(Polygon(2));
  CrossingWord r3 = derive_vertex_relator(Polygon(3));
  CrossingWord r4 = derive_vertex_relator(Polygon(4));
  CHECK_FALSE(dehn_reduce({1, 2}, r2).has_value());
  CHECK_FALSE(dehn_reduce({1, 2}, r3).has_value());
  CHECK(dehn_reduce(r4, r4)->empty());
  CHECK(dehn_reduce(inverse(r4), r4)->empty());

  Tessellation t(Polygon(4));
  CrossingWord noisy{2, 3};
  for (int i = 0; i < 5; ++i) noisy.push_back(r4[i]);
  noisy.push_back(-1);
  auto red = dehn_reduce(noisy, r4);
  REQUIRE(red.has_value());
  CHECK(red->size() < noisy.size());
  CHECK(t.words_equal(*red, noisy));
}

TEST_CASE("dehn triviality agrees with the ball closure") {
  // A loop of length <= 8 stays inside the ball of radius 4.
  for (int n : {4, 5}) {
    CrossingWord r = derive_vertex_relator(Polygon(n));
    oracle::Ball ball(n, r, 4);
    const int id = ball.class_of({});
    std::mt19937 rng(11 + n);
    int trivial_seen = 0;
    auto check = [&](const CrossingWord& w) {
      bool dehn_trivial = dehn_reduce(w, r)->empty();
      bool ball_trivial = ball.class_of(w) == id;
      trivial_seen += ball_trivial;
      REQUIRE(dehn_trivial == ball_trivial);
    };
    testwords::for_each_word(n, n == 4 ? 6 : 5, check);
    for (int t = 0; t < 20000; ++t) check(testwords::random_word(rng, n, 8));
    for (int t = 0; t < 2000; ++t) check(testwords::random_relator_product(rng, r, 8));
    CHECK(trivial_seen > 0);
  }
}

TEST_CASE("words_equal on small examples") {
  Tessellation oct(Polygon(4));
  CHECK_FALSE(oct.words_equal({1, 2}, {2, 1}));
  CHECK(oct.words_equal(derive_vertex_relator(Polygon(4)), {}));
  Tessellation sq(Polygon(2));
  CHECK(sq.words_equal({1, 2}, {2, 1}));
  Tessellation hex(Polygon(3));
  CHECK(hex.words_equal(derive_vertex_relator(Polygon(3)), {}));
  CHECK_FALSE(hex.words_equal({1, 3}, {3, 1}));
  CHECK_THROWS_AS(oct.words_equal({9}, {}), MalformedWord);
}

TEST_CASE("lifting the vertex relator closes up") {
  for (int n = 2; n <= 7; ++n) {
    Tessellation t{Polygon(n)};
    LiftedVertex v{t.tile_of({1, -2}), 3};
    CHECK(t.lift_path(v, derive_vertex_relator(Polygon(n))) == v);
    CHECK(t.lift_path(v, inverse(derive_vertex_relator(Polygon(n)))) == v);
    CHECK_FALSE(t.lift_path(v, {1}) == v);
  }
}

TEST_CASE("normal forms agree with the ball closure on short words") {
  for (int n = 2; n <= 5; ++n) {
    const int len = n <= 3 ? 5 : 4;
    oracle::Ball ball(n, derive_vertex_relator(Polygon(n)), len);
    DeckGroup g{Polygon(n)};
    std::map<int, CrossingWord> by_class;
    std::map<CrossingWord, int> by_form;
    testwords::for_each_word(n, len, [&](const CrossingWord& w) {
      int c = ball.class_of(w);
      CrossingWord f = g.normal_form(w);
      auto [it1, fresh1] = by_class.emplace(c, f);
      auto [it2, fresh2] = by_form.emplace(f, c);
      REQUIRE(it1->second == f);
      REQUIRE(it2->second == c);
    });
  }
}

TEST_CASE("normal forms are canonical under inserted relators") {
  std::mt19937 rng(3);
  for (int n = 2; n <= 6; ++n) {
    Polygon p(n);
    DeckGroup g(p);
    CrossingWord r = g.relator();
    for (int t = 0; t < 300; ++t) {
      CrossingWord w = testwords::random_word(rng, n, 14);
      CrossingWord nf = g.normal_form(w);
      CHECK(g.normal_form(nf) == nf);
      CHECK(abelianize(nf, p) == abelianize(w, p));
      CrossingWord noisy = testwords::insert_relators(rng, w, r, 3);
      CHECK(g.normal_form(noisy) == nf);
      if (n >= 4) {
        CHECK(dehn_reduce(concat(w, inverse(nf)), r)->empty());
        if (n % 2 == 0) CHECK(nf.size() <= dehn_reduce(w, r)->size());
      }
      CrossingWord other = testwords::random_word(rng, n, 14);
      if (g.normal_form(other) != nf && n >= 4) {
        CHECK_FALSE(dehn_reduce(concat(w, inverse(other)), r)->empty());
      }
    }
  }
}

TEST_CASE("tile identifiers do not depend on query order") {
  std::mt19937 rng(5);
  for (int n : {2, 3, 4}) {
    std::vector<CrossingWord> queries;
    for (int i = 0; i < 60; ++i) queries.push_back(testwords::random_word(rng, n, 10));
    Tessellation a{Polygon(n)}, b{Polygon(n)};
    std::vector<TileId> ra, rb(queries.size());
    for (auto& q : queries) ra.push_back(a.tile_of(q));
    for (std::size_t i = queries.size(); i-- > 0;) rb[i] = b.apply(b.base(), queries[i]);
    CHECK(ra == rb);
    CHECK(a.dump(2) == b.dump(2));
  }
}

TEST_CASE("tessellation dump lists neighbours by side") {
  Tessellation t{Polygon(2)};
  auto j = t.dump(1);
  CHECK(j["tiles"].size() == 5);
  CHECK(j["tiles"][0]["depth"] == 0);
  CHECK(j["tiles"][0]["neighbors"].size() == 4);
  Tessellation oct{Polygon(4)};
  CHECK(oct.dump(2)["tiles"].size() == 1 + 8 + 8 * 7);
}
