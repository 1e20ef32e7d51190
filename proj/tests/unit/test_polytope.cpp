#include <doctest.h>

#include <algorithm>
#include <random>

#include "rotset/errors.hpp"
#include "rotset/examples.hpp"
#include "rotset/polytope.hpp"
#include "rotset/structure.hpp"

using namespace rotset;

namespace {

HomologyVector v2(Rational a, Rational b) { return HomologyVector(1, {a, b}); }

Polytope poly(std::vector<HomologyVector> pts) { return Polytope::hull(pts); }

Polytope unit_triangle() { return poly({v2(0, 0), v2(1, 0), v2(0, 1)}); }
Polytope square(Rational x, Rational y) {
  return poly({v2(x, y), v2(x + 1, y), v2(x, y + 1), v2(x + 1, y + 1)});
}

Piece piece(Polytope p, std::string tag) { return Piece{std::move(p), {}, std::move(tag)}; }

HomologyVector random_point(std::mt19937_64& rng, int g, long range) {
  HomologyVector v(g);
  for (std::size_t i = 0; i < v.dim(); ++i)
    v[i] = Rational(static_cast<long>(rng() % (2 * range * 4 + 1)) - range * 4, 4);
  return v;
}

std::vector<Polytope> test_polytopes() {
  std::mt19937_64 rng(21);
  std::vector<Polytope> out{unit_triangle(), square(0, 0), poly({v2(0, 0), v2(2, 2)}), Polytope::point(v2(1, -1))};
  for (int i = 0; i < 8; ++i) {
    int g = 1 + static_cast<int>(i % 2);
    std::vector<HomologyVector> pts;
    for (int k = 0; k < 6; ++k) pts.push_back(random_point(rng, g, 2));
    out.push_back(Polytope::hull(pts));
  }
  return out;
}

}  // namespace

TEST_CASE("hull keeps exactly the extreme points") {
  CHECK(poly({v2(0, 0)}).vertices() == std::vector{v2(0, 0)});
  CHECK(poly({v2(0, 0), v2(1, 0), v2(2, 0)}).vertices() == std::vector{v2(0, 0), v2(2, 0)});
  auto t = poly({v2(0, 0), v2(1, 0), v2(0, 1), v2(Rational(1, 4), Rational(1, 4))});
  CHECK(t.vertices() == std::vector{v2(0, 0), v2(0, 1), v2(1, 0)});
  CHECK(t.dimension() == 2);
  CHECK(poly({v2(0, 0), v2(0, 0)}).dimension() == 0);
}

TEST_CASE("hull rejects empty input") {
  std::vector<HomologyVector> none;
  CHECK_THROWS_AS(Polytope::hull(none), ValidationError);
}

TEST_CASE("membership") {
  CHECK(contains(unit_triangle(), v2(Rational(1, 3), Rational(1, 3))));
  CHECK_FALSE(contains(unit_triangle(), v2(1, 1)));
  CHECK(contains(poly({v2(0, 0), v2(2, 2)}), v2(1, 1)));
}

TEST_CASE("distance") {
  auto n = NormSpec::linf(1);
  CHECK(distance(v2(Rational(1, 3), Rational(1, 3)), unit_triangle(), n) == 0);
  CHECK(distance(v2(3, -4), Polytope::point(v2(0, 0)), n) == 4);
  CHECK(distance(v2(2, Rational(1, 2)), square(0, 0), n) == 1);
}

TEST_CASE("distance to a union") {
  auto n = NormSpec::linf(1);
  auto pts = reduce_union({piece(Polytope::point(v2(0, 0)), "a"), piece(Polytope::point(v2(10, 0)), "b")});
  CHECK(distance_to_union(v2(4, 0), pts, n) == 4);
  CHECK(distance_to_union(v2(10, 0), pts, n) == 0);
  auto squares = reduce_union({piece(square(0, 0), "a"), piece(square(5, 5), "b")});
  CHECK(distance_to_union(v2(3, 3), squares, n) == 2);
  CHECK_THROWS_AS(distance_to_union(v2(0, 0), PolytopeUnion{}, n), ValidationError);
}

TEST_CASE("exposed points") {
  auto seg = poly({v2(0, 0), v2(2, 2)});
  CHECK(exposed_points(seg) == seg.vertices());
  CHECK(exposed_points(unit_triangle()).size() == 3);
  auto t = poly({v2(0, 0), v2(1, 0), v2(0, 1), v2(Rational(1, 2), Rational(1, 2))});
  CHECK(exposed_points(t) == std::vector{v2(0, 0), v2(0, 1), v2(1, 0)});
}

TEST_CASE("reduce_union") {
  auto sub = poly({v2(0, 0), v2(1, 0), v2(0, 1)});
  auto r = reduce_union({piece(square(0, 0), "sq"), piece(sub, "tri")});
  REQUIRE(r.size() == 1);
  CHECK(r.pieces()[0].tag == "sq");
  CHECK(reduce_union({piece(square(0, 0), "a"), piece(square(5, 5), "b")}).size() == 2);
}

TEST_CASE("nested paths leave only the maximal path hull") {
  // sharp g=2: the source-hub-sink path contains every shorter one
  auto dag = scc_condense(gen_sharp(2));
  std::vector<Piece> pieces;
  std::vector<HomologyVector> acc;
  for (const auto& c : dag.classes) {
    for (const auto& v : c.rho.vertices()) acc.push_back(v);
    pieces.push_back(piece(Polytope::hull(acc), "prefix" + std::to_string(pieces.size())));
  }
  auto r = reduce_union(pieces);
  REQUIRE(r.size() == 1);
  CHECK(r.pieces()[0].tag == pieces.back().tag);
}

TEST_CASE("interior point") {
  CHECK(interior_point(poly({v2(0, 0), v2(1, 0)})) == v2(Rational(1, 2), 0));
  CHECK(interior_point(unit_triangle()) == v2(Rational(1, 3), Rational(1, 3)));
  CHECK(interior_point(square(0, 0)) == v2(Rational(1, 2), Rational(1, 2)));
  CHECK_THROWS_AS(interior_point(Polytope::point(v2(1, 1))), ValidationError);
  CHECK(interior_point(Polytope::point(v2(1, 1)), true) == v2(1, 1));
}

TEST_CASE("separating direction and convex combination") {
  auto t = unit_triangle();
  auto c = separating_direction(t, v2(1, 1));
  REQUIRE(c.has_value());
  Rational cx = (*c)[0] + (*c)[1];
  for (const auto& v : t.vertices()) CHECK(cx > (*c)[0] * v[0] + (*c)[1] * v[1]);
  CHECK_FALSE(separating_direction(t, v2(0, 0)).has_value());

  auto w = convex_combination(t.vertices(), v2(Rational(1, 4), Rational(1, 4)));
  REQUIRE(w.has_value());
  HomologyVector sum(1);
  Rational total = 0;
  for (std::size_t i = 0; i < w->size(); ++i) {
    CHECK((*w)[i] >= 0);
    sum += (*w)[i] * t.vertices()[i];
    total += (*w)[i];
  }
  CHECK(total == 1);
  CHECK(sum == v2(Rational(1, 4), Rational(1, 4)));
}

TEST_CASE("property: hull is idempotent") {
  for (const auto& p : test_polytopes()) CHECK(Polytope::hull(p.vertices()) == p);
}

TEST_CASE("property: distance zero iff membership") {
  std::mt19937_64 rng(22);
  for (const auto& p : test_polytopes()) {
    auto n = NormSpec::linf(p.genus());
    for (int i = 0; i < 500; ++i) {
      auto x = random_point(rng, p.genus(), 3);
      if (i % 5 == 0) {
        // bias some queries into the polytope
        auto b = interior_point(p, true);
        x = (x + b * Rational(3)) / Rational(4);
      }
      CHECK((distance(x, p, n) == 0) == contains(p, x));
    }
  }
}

TEST_CASE("property: exposed points equal the vertex set") {
  for (const auto& p : test_polytopes()) CHECK(exposed_points(p) == p.vertices());
}

TEST_CASE("property: reduce_union is a closure operator") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Piece> pieces;
    for (int k = 0; k < 5; ++k) {
      std::vector<HomologyVector> pts;
      int npts = 1 + static_cast<int>(rng() % 4);
      for (int j = 0; j < npts; ++j) pts.push_back(random_point(rng, 1, 2));
      pieces.push_back(piece(Polytope::hull(pts), "p" + std::to_string(k)));
    }
    // include a piece nested in another
    pieces.push_back(piece(Polytope::point(pieces[0].polytope.vertices().front()), "nested"));
    auto once = reduce_union(pieces);
    auto twice = reduce_union(once.pieces());
    CHECK(canonical_pieces(once) == canonical_pieces(twice));
    for (std::size_t i = 0; i < once.size(); ++i)
      for (std::size_t j = 0; j < once.size(); ++j)
        if (i != j) CHECK_FALSE(is_subset(once.pieces()[i].polytope, once.pieces()[j].polytope));
    for (int q = 0; q < 100; ++q) {
      auto x = random_point(rng, 1, 2);
      bool before = std::any_of(pieces.begin(), pieces.end(), [&](const Piece& p) { return contains(p.polytope, x); });
      CHECK(before == contains(once, x));
    }
  }
}

TEST_CASE("block sup norm spec matches the homology block norm") {
  std::vector<HomologyVector> b1{HomologyVector(2, {1, 1, 0, 0}), HomologyVector(2, {0, 1, 0, 0})};
  BlockDecomposition d(2, {Subspace(2, b1)});
  auto n = NormSpec::block_sup(d);
  std::mt19937_64 rng(24);
  for (int i = 0; i < 100; ++i) {
    auto x = random_point(rng, 2, 3);
    CHECK(n.norm(x) == block_sup_norm(x, d.completed()));
  }
}
