#include <doctest.h>

#include <random>

#include "rotset/errors.hpp"
#include "rotset/homology.hpp"

using namespace rotset;

namespace {

HomologyVector vec(int g, std::vector<long> xs) {
  std::vector<Rational> c;
  for (auto x : xs) c.emplace_back(x);
  return HomologyVector(g, c);
}

HomologyVector random_vector(std::mt19937_64& rng, int g) {
  HomologyVector v(g);
  for (std::size_t i = 0; i < v.dim(); ++i)
    v[i] = Rational(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 9) + 1);
  return v;
}

Rational random_scalar(std::mt19937_64& rng) {
  return Rational(static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 7) + 1);
}

}  // namespace

TEST_CASE("wedge on the standard symplectic basis") {
  CHECK(wedge(vec(1, {1, 0}), vec(1, {0, 1})) == 1);
  CHECK(wedge(vec(1, {1, 0}), vec(1, {1, 0})) == 0);
  CHECK(wedge(vec(2, {1, 2, 0, 0}), vec(2, {3, 4, 0, 0})) == -2);
}

TEST_CASE("wedge rejects mismatched dimensions with both lengths") {
  try {
    wedge(vec(1, {1, 0}), vec(2, {1, 0, 0, 0}));
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(e.details()["left"] == 2);
    CHECK(e.details()["right"] == 4);
  }
}

TEST_CASE("block sup-norm") {
  BlockDecomposition full(1, {Subspace::full(1)});
  CHECK(block_sup_norm(HomologyVector(1), full) == 0);
  CHECK(block_sup_norm(vec(1, {3, -5}), full) == 5);

  std::vector<std::size_t> a{0, 1}, b{2, 3};
  BlockDecomposition planes(2, {Subspace::coordinates(2, a), Subspace::coordinates(2, b)});
  CHECK(block_sup_norm(vec(2, {1, 1, 7, 0}), planes) == 7);
}

TEST_CASE("block sup-norm outside the blocks reports the residual") {
  std::vector<std::size_t> a{0, 1};
  BlockDecomposition d(2, {Subspace::coordinates(2, a)});
  try {
    block_sup_norm(vec(2, {1, 1, 3, 0}), d);
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(e.details().contains("residual"));
  }
}

TEST_CASE("span_of") {
  CHECK(span_of({}, 1).dim() == 0);
  std::vector<HomologyVector> colinear{vec(1, {1, 0}), vec(1, {2, 0})};
  auto s = span_of(colinear, 1);
  CHECK(s.dim() == 1);
  CHECK(s.basis().front() == vec(1, {1, 0}));
  std::vector<HomologyVector> two{vec(2, {1, 0, 0, 0}), vec(2, {0, 1, 0, 0})};
  CHECK(span_of(two, 2).dim() == 2);
}

TEST_CASE("validate_decomposition") {
  std::vector<std::size_t> p1{0, 1}, p2{2, 3}, p3{1, 2};
  SUBCASE("standard splitting passes every check") {
    std::vector<Subspace> spans{Subspace::coordinates(2, p1), Subspace::coordinates(2, p2)};
    auto r = validate_decomposition(spans, 2);
    CHECK(r.orthogonal.ok);
    CHECK(r.direct_sum.ok);
    CHECK(r.symplectic.ok);
    CHECK(r.spans_all.ok);
  }
  SUBCASE("lines are never symplectic") {
    std::vector<std::size_t> x{0}, y{1};
    std::vector<Subspace> spans{Subspace::coordinates(1, x), Subspace::coordinates(1, y)};
    auto r = validate_decomposition(spans, 1);
    CHECK_FALSE(r.symplectic.ok);
    CHECK_FALSE(r.symplectic.witness.empty());
  }
  SUBCASE("overlapping planes fail the direct-sum check with a witness") {
    std::vector<Subspace> spans{Subspace::coordinates(2, p1), Subspace::coordinates(2, p3)};
    auto r = validate_decomposition(spans, 2);
    CHECK_FALSE(r.direct_sum.ok);
    REQUIRE(r.direct_sum.vector.has_value());
    CHECK_FALSE(r.direct_sum.vector->is_zero());
    CHECK(spans[0].contains(*r.direct_sum.vector));
    CHECK(spans[1].contains(*r.direct_sum.vector));
  }
}

TEST_CASE("wedge is antisymmetric and bilinear") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    int g = 1 + static_cast<int>(rng() % 4);
    auto a = random_vector(rng, g), b = random_vector(rng, g), c = random_vector(rng, g);
    auto l = random_scalar(rng);
    CHECK(wedge(a, b) == -wedge(b, a));
    CHECK(wedge(a + l * c, b) == wedge(a, b) + l * wedge(c, b));
  }
}

TEST_CASE("block sup-norm satisfies the norm axioms") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 300; ++i) {
    // a skewed but direct splitting of Q^4
    std::vector<HomologyVector> b1{vec(2, {1, 2, 0, 0}), vec(2, {0, 1, 1, 0})};
    std::vector<HomologyVector> b2{vec(2, {0, 0, 1, 1}), vec(2, {1, 0, 0, 3})};
    BlockDecomposition d(2, {Subspace(2, b1), Subspace(2, b2)});
    auto x = random_vector(rng, 2), y = random_vector(rng, 2);
    auto l = random_scalar(rng);
    CHECK(block_sup_norm(x, d) >= 0);
    CHECK((block_sup_norm(x, d) == 0) == x.is_zero());
    CHECK(block_sup_norm(l * x, d) == abs(l) * block_sup_norm(x, d));
    CHECK(block_sup_norm(x + y, d) <= block_sup_norm(x, d) + block_sup_norm(y, d));
  }
}

TEST_CASE("coordinate planes form a symplectic orthogonal splitting for g <= 10") {
  for (int g = 1; g <= 10; ++g) {
    std::vector<Subspace> spans;
    for (int i = 0; i < g; ++i) {
      std::vector<std::size_t> idx{2 * static_cast<std::size_t>(i), 2 * static_cast<std::size_t>(i) + 1};
      spans.push_back(Subspace::coordinates(g, idx));
    }
    auto r = validate_decomposition(spans, g);
    CHECK(r.orthogonal.ok);
    CHECK(r.direct_sum.ok);
    CHECK(r.symplectic.ok);
    CHECK(r.spans_all.ok);
  }
}

TEST_CASE("completed decomposition spans everything") {
  std::vector<std::size_t> p{2, 3};
  BlockDecomposition d(3, {Subspace::coordinates(3, p)});
  auto full = d.completed();
  CHECK(full.total_dim() == 6);
  auto parts = full.decompose(vec(3, {1, 2, 3, 4, 5, 6}));
  CHECK(parts.parts.front() == vec(3, {0, 0, 3, 4, 0, 0}));
}
