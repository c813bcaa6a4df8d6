#include <doctest.h>

#include <cmath>

#include "shadowlp/errors.hpp"
#include "shadowlp/oracle.hpp"
#include "test_util.hpp"

using namespace shadowlp;
using testutil::box_folded;
using testutil::folded_from_rows;
using testutil::perturbed_random_folded;

TEST_CASE("square catalog: four feasible vertices, two singular pairs") {
  FoldedLP square = box_folded(2, 0.0, 1.0);
  VertexCatalog cat = enumerate_vertices(square);
  CHECK(cat.num_singular == 2);  // the {e_i, -e_i} pairs
  CHECK(cat.vertices.size() == 4);
  int feasible = 0;
  for (const auto& v : cat.vertices)
    if (v.feasible) ++feasible;
  CHECK(feasible == 4);
}

TEST_CASE("triangle catalog has three feasible vertices") {
  const double s = 1.0 / std::sqrt(2.0);
  // x >= 0 box with the diagonal halfplane; box top/right rows stay slack
  FoldedLP tri = folded_from_rows({{s, s}}, {s}, 2, 0.0, 2.0);
  VertexCatalog cat = enumerate_vertices(tri);
  int feasible = 0;
  for (const auto& v : cat.vertices)
    if (v.feasible) ++feasible;
  CHECK(feasible == 3);
}

TEST_CASE("empty region has no feasible vertex") {
  const double s = 1.0 / std::sqrt(2.0);
  FoldedLP empty = folded_from_rows({{s, s}}, {-5.0}, 2, 0.0, 1.0);
  VertexCatalog cat = enumerate_vertices(empty);
  for (const auto& v : cat.vertices) CHECK_FALSE(v.feasible);
  CHECK_FALSE(solve_by_enumeration(empty, {1.0, 1.0}).has_value());
}

TEST_CASE("enumeration maximizes and breaks ties lexicographically") {
  FoldedLP square = box_folded(2, 0.0, 1.0);
  auto best = solve_by_enumeration(square, {1.0, 1.0});
  REQUIRE(best.has_value());
  CHECK(best->value == doctest::Approx(2.0));
  CHECK(best->point[0] == doctest::Approx(1.0));
  CHECK(best->point[1] == doctest::Approx(1.0));

  auto tied = solve_by_enumeration(square, {-1.0, 0.0});
  REQUIRE(tied.has_value());
  CHECK(tied->value == doctest::Approx(0.0));
  CHECK(tied->point[0] == doctest::Approx(0.0));
  // the two x1 = 0 vertices tie; rows {1,2} beat {2,3}
  CHECK(tied->basis == std::vector<int>{1, 2});
}

TEST_CASE("maximality holds against every catalog vertex") {
  RngState rng{31, 0};
  for (int trial = 0; trial < 20; ++trial) {
    FoldedLP folded = perturbed_random_folded(4, 3, rng);
    Vector obj = sample_sphere_uniform(3, rng);
    auto best = solve_by_enumeration(folded, obj);
    REQUIRE(best.has_value());
    for (const auto& v : enumerate_vertices(folded).vertices)
      if (v.feasible) CHECK(best->value >= dot(obj, v.point) - 1e-12);
  }
}

TEST_CASE("growing the right-hand side never shrinks the optimum") {
  RngState rng{32, 0};
  for (int trial = 0; trial < 100; ++trial) {
    FoldedLP folded = perturbed_random_folded(4, 2, rng);
    Vector obj = sample_sphere_uniform(2, rng);
    auto before = solve_by_enumeration(folded, obj);
    REQUIRE(before.has_value());
    FoldedLP grown = folded;
    for (std::size_t r = 0; r < grown.rows(); ++r)
      grown.b_bar[r] += rng.next_unit() * 0.2;
    auto after = solve_by_enumeration(grown, obj);
    REQUIRE(after.has_value());
    CHECK(after->value >= before->value - 1e-12);
  }
}

TEST_CASE("exhaustive walk on the square") {
  FoldedLP square = box_folded(2, 0.0, 1.0);

  auto stay = exhaustive_shadow_path(square, {0.6, 0.8}, {1.0, 2.0}, 10.0);
  REQUIRE(stay.size() == 1);
  CHECK(stay[0] == std::vector<int>{0, 1});

  // ray (0.6 - t, 0.8 - 2t) crosses ++, +-, -- : (1,1) -> (1,0) -> (0,0)
  auto walk = exhaustive_shadow_path(square, {0.6, 0.8}, {-1.0, -2.0}, 1e3);
  REQUIRE(walk.size() == 3);
  CHECK(walk[0] == std::vector<int>{0, 1});
  CHECK(walk[1] == std::vector<int>{0, 3});
  CHECK(walk[2] == std::vector<int>{2, 3});

  auto frozen = exhaustive_shadow_path(square, {0.6, 0.8}, {-1.0, -2.0}, 0.0);
  REQUIRE(frozen.size() == 1);
  CHECK(frozen[0] == std::vector<int>{0, 1});
}

TEST_CASE("enumeration budget is enforced") {
  FoldedLP square = box_folded(2, 0.0, 1.0);
  CHECK_THROWS_AS(enumerate_vertices(square, 3), EnumerationTooLarge);
}

TEST_CASE("degenerate corner makes the cone walk ambiguous") {
  // diagonal through the corner (0,1): three bases share that vertex, and a
  // direction at 120 degrees sits strictly inside two of their cones
  const double s = 1.0 / std::sqrt(2.0);
  FoldedLP cut = folded_from_rows({{s, s}}, {s}, 2, 0.0, 1.0);
  Vector z{-0.5, std::sqrt(3.0) / 2.0};
  CHECK_THROWS_AS(exhaustive_shadow_path(cut, z, {1.0, 0.0}, 1.0), AmbiguousCone);
}
