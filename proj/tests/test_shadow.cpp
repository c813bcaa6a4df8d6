#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "shadowlp/errors.hpp"
#include "shadowlp/oracle.hpp"
#include "shadowlp/shadow.hpp"
#include "test_util.hpp"

using namespace shadowlp;
using testutil::box_folded;
using testutil::perturbed_random_folded;

namespace {

ShadowState state_at(const FoldedLP& folded, std::vector<int> rows, Vector z, Vector c) {
  ShadowState s;
  s.basis = make_basis(folded, std::move(rows));
  s.aux = std::move(z);
  s.target = std::move(c);
  return s;
}

std::vector<std::vector<int>> visited_bases(const Basis& start, const ShadowState& end) {
  std::vector<std::vector<int>> seq{start.rows};
  std::vector<int> rows = start.rows;
  for (const PivotRecord& r : end.trace.records) {
    rows.erase(std::find(rows.begin(), rows.end(), r.leaving));
    rows.push_back(r.entering);
    std::sort(rows.begin(), rows.end());
    seq.push_back(rows);
  }
  return seq;
}

}  // namespace

TEST_CASE("multipliers on identity and signed bases") {
  FoldedLP square = box_folded(2, 0.0, 1.0);
  ShadowState id = state_at(square, {0, 1}, {1, 1}, {1, 1});
  Vector m = multipliers(id, {1.0, 1.0});
  CHECK(m[0] == doctest::Approx(1.0));
  CHECK(m[1] == doctest::Approx(1.0));

  // rows e1 and -e2 give the diag(1,-1) basis at vertex (1, 0)
  ShadowState mixed = state_at(square, {0, 3}, {1, 1}, {1, 1});
  CHECK(mixed.basis.vertex[0] == doctest::Approx(1.0));
  CHECK(mixed.basis.vertex[1] == doctest::Approx(0.0));
  Vector m2 = multipliers(mixed, {2.0, 3.0});
  CHECK(m2[0] == doctest::Approx(2.0));
  CHECK(m2[1] == doctest::Approx(-3.0));
}

TEST_CASE("multiplier residual vanishes on a random basis") {
  RngState rng{21, 0};
  FoldedLP folded = perturbed_random_folded(4, 3, rng);
  VertexCatalog cat = enumerate_vertices(folded);
  int checked = 0;
  for (const VertexEntry& v : cat.vertices) {
    if (!v.feasible) continue;
    ShadowState s = state_at(folded, v.rows, {1, 1, 1}, {1, 0, 0});
    Vector obj = {0.3, -0.7, 0.2};
    Vector m = multipliers(s, obj);
    for (std::size_t j = 0; j < 3; ++j) {
      double back = 0.0;
      for (std::size_t i = 0; i < 3; ++i)
        back += m[i] * folded.a_bar(static_cast<std::size_t>(s.basis.rows[i]), j);
      CHECK(std::abs(back - obj[j]) < 1e-9);
    }
    if (++checked == 5) break;
  }
  CHECK(checked > 0);
}

TEST_CASE("ratio test on the identity basis") {
  FoldedLP square = box_folded(2, 0.0, 1.0);

  auto one_negative = ratio_test(state_at(square, {0, 1}, {1, 1}, {-1, 0}));
  CHECK_FALSE(one_negative.optimal);
  CHECK(one_negative.lambda == doctest::Approx(1.0));
  CHECK(one_negative.position == 0);

  auto optimal = ratio_test(state_at(square, {0, 1}, {1, 1}, {1, 1}));
  CHECK(optimal.optimal);

  auto two_candidates = ratio_test(state_at(square, {0, 1}, {2, 1}, {-1, -1}));
  CHECK_FALSE(two_candidates.optimal);
  CHECK(two_candidates.lambda == doctest::Approx(1.0));
  CHECK(two_candidates.position == 1);
}

TEST_CASE("pivot on the square relaxes x1<=1 and lands at (0,1)") {
  FoldedLP square = box_folded(2, 0.0, 1.0);
  ShadowState s = state_at(square, {0, 1}, {0.6, 0.8}, {-1.0, 0.1});
  auto rt = ratio_test(s);
  REQUIRE_FALSE(rt.optimal);
  CHECK(rt.position == 0);
  pivot_step(s, rt.lambda, rt.position, square);
  CHECK(s.basis.vertex[0] == doctest::Approx(0.0));
  CHECK(s.basis.vertex[1] == doctest::Approx(1.0));
  CHECK(s.basis.rows == std::vector<int>{1, 2});
  REQUIRE(s.trace.records.size() == 1);
  CHECK(s.trace.records[0].leaving == 0);
  CHECK(s.trace.records[0].entering == 2);
  // (0,1) is already optimal for (-1, 0.1)
  CHECK(ratio_test(s).optimal);
}

TEST_CASE("pivot exchanges exactly one tight constraint") {
  RngState rng{22, 0};
  FoldedLP folded = perturbed_random_folded(4, 2, rng);
  Vector theta = sample_sphere_uniform(2, rng);
  std::vector<int> rows;
  for (std::size_t j = 0; j < 2; ++j)
    rows.push_back(static_cast<int>(theta[j] >= 0 ? 4 + j : 6 + j));
  ShadowState s = state_at(folded, rows, theta, scaled(theta, -1.0));
  auto rt = ratio_test(s);
  REQUIRE_FALSE(rt.optimal);
  std::vector<int> before = s.basis.rows;
  pivot_step(s, rt.lambda, rt.position, folded);
  std::vector<int> gone, added;
  std::set_difference(before.begin(), before.end(), s.basis.rows.begin(),
                      s.basis.rows.end(), std::back_inserter(gone));
  std::set_difference(s.basis.rows.begin(), s.basis.rows.end(), before.begin(),
                      before.end(), std::back_inserter(added));
  REQUIRE(gone.size() == 1);
  REQUIRE(added.size() == 1);
  CHECK(gone[0] == s.trace.records[0].leaving);
  CHECK(added[0] == s.trace.records[0].entering);
}

TEST_CASE("perturbation makes the blocking minimum unique") {
  RngState rng{23, 0};
  int examined = 0;
  for (int trial = 0; trial < 100; ++trial) {
    FoldedLP folded = perturbed_random_folded(4, 2, rng);
    Vector theta = sample_sphere_uniform(2, rng);
    std::vector<int> rows;
    for (std::size_t j = 0; j < 2; ++j)
      rows.push_back(static_cast<int>(theta[j] >= 0 ? 4 + j : 6 + j));
    ShadowState s = state_at(folded, rows, theta, scaled(theta, -1.0));
    auto rt = ratio_test(s);
    if (rt.optimal) continue;

    Vector e(2, 0.0);
    e[static_cast<std::size_t>(rt.position)] = -1.0;
    Vector w = s.basis.factors.solve_right(e);
    std::vector<double> ratios;
    for (std::size_t r = 0; r < folded.rows(); ++r) {
      if (std::binary_search(s.basis.rows.begin(), s.basis.rows.end(),
                             static_cast<int>(r)))
        continue;
      double along = dot(folded.a_bar.row(r), w);
      if (along <= 1e-12) continue;
      ratios.push_back((folded.b_bar[r] - dot(folded.a_bar.row(r), s.basis.vertex)) /
                       along);
    }
    REQUIRE_FALSE(ratios.empty());
    std::sort(ratios.begin(), ratios.end());
    if (ratios.size() > 1) CHECK(ratios[1] - ratios[0] > 1e-9);
    ++examined;
  }
  CHECK(examined > 50);
}

TEST_CASE("path on the square: already optimal, two pivots, truncated at zero") {
  FoldedLP square = box_folded(2, 0.0, 1.0);
  Basis corner = make_basis(square, {0, 1});

  auto [s1, r1] = follow_shadow_path(square, corner, {0.6, 0.8}, {1.0, 2.0}, 1e9, 100);
  CHECK(r1 == StopReason::OptimalForTarget);
  CHECK(s1.pivot_count == 0);

  auto [s2, r2] = follow_shadow_path(square, corner, {0.6, 0.8}, {-1.0, -2.0}, 1e9, 100);
  CHECK(r2 == StopReason::OptimalForTarget);
  CHECK(s2.pivot_count == 2);
  // normal-cone walk: (1,1) -> (1,0) -> (0,0)
  auto seq = visited_bases(corner, s2);
  REQUIRE(seq.size() == 3);
  CHECK(seq[0] == std::vector<int>{0, 1});
  CHECK(seq[1] == std::vector<int>{0, 3});
  CHECK(seq[2] == std::vector<int>{2, 3});
  CHECK(s2.basis.vertex[0] == doctest::Approx(0.0));
  CHECK(s2.basis.vertex[1] == doctest::Approx(0.0));

  auto [s3, r3] = follow_shadow_path(square, corner, {0.6, 0.8}, {-1.0, -2.0}, 0.0, 100);
  CHECK(r3 == StopReason::TruncatedAtT);
  CHECK(s3.pivot_count == 0);
}

TEST_CASE("infeasible start is rejected") {
  FoldedLP square = box_folded(2, 0.0, 1.0);
  Basis corner = make_basis(square, {0, 1});
  FoldedLP shrunk = square;
  shrunk.b_bar[0] = 0.5;  // vertex (1,1) now violates x1 <= 0.5
  CHECK_THROWS_AS(
      follow_shadow_path(shrunk, corner, {0.6, 0.8}, {1.0, 0.0}, 1e9, 100),
      InfeasibleStart);
}

TEST_CASE("pivot budget stops the walk") {
  FoldedLP square = box_folded(2, 0.0, 1.0);
  Basis corner = make_basis(square, {0, 1});
  auto [s, r] = follow_shadow_path(square, corner, {0.6, 0.8}, {-1.0, -2.0}, 1e9, 1);
  CHECK(r == StopReason::PivotBudget);
  CHECK(s.pivot_count == 1);
}

TEST_CASE("truncation certifies the stop objective") {
  RngState rng{24, 0};
  int truncated = 0;
  for (int trial = 0; trial < 40; ++trial) {
    FoldedLP folded = perturbed_random_folded(5, 2, rng);
    Vector theta = sample_sphere_uniform(2, rng);
    if (std::abs(theta[0]) < 1e-9 || std::abs(theta[1]) < 1e-9) continue;
    Vector target = sample_sphere_uniform(2, rng);
    std::vector<int> rows;
    for (std::size_t j = 0; j < 2; ++j)
      rows.push_back(static_cast<int>(theta[j] >= 0 ? 5 + j : 7 + j));
    Basis start = make_basis(folded, rows);
    if (folded.max_violation(start.vertex) > 1e-9) continue;
    const double t_stop = 0.35;
    auto [s, r] = follow_shadow_path(folded, start, theta, target, t_stop, 500);
    if (r != StopReason::TruncatedAtT) continue;
    ++truncated;
    Vector stop_obj = axpy(theta, t_stop, target);
    Vector m = multipliers(s, stop_obj);
    for (double v : m) CHECK(v >= -1e-9);
  }
  CHECK(truncated > 0);
}

TEST_CASE("objective rises and auxiliary falls along every trace") {
  RngState rng{25, 0};
  for (int trial = 0; trial < 50; ++trial) {
    FoldedLP folded = perturbed_random_folded(5, 3, rng);
    Vector theta = sample_sphere_uniform(3, rng);
    Vector target = sample_sphere_uniform(3, rng);
    std::vector<int> rows;
    bool tiny = false;
    for (std::size_t j = 0; j < 3; ++j) {
      if (std::abs(theta[j]) < 1e-9) tiny = true;
      rows.push_back(static_cast<int>(theta[j] >= 0 ? 5 + j : 8 + j));
    }
    if (tiny) continue;
    Basis start = make_basis(folded, rows);
    if (folded.max_violation(start.vertex) > 1e-9) continue;
    auto [s, r] = follow_shadow_path(folded, start, theta, target, 1e9, 1000);
    CHECK(r == StopReason::OptimalForTarget);

    CHECK(s.trace.start_objective == doctest::Approx(dot(target, start.vertex)));
    double prev_obj = s.trace.start_objective;
    double prev_aux = s.trace.start_aux;
    for (const PivotRecord& rec : s.trace.records) {
      CHECK(rec.lambda >= 0.0);
      CHECK(rec.objective_value >= prev_obj - 1e-9);
      CHECK(rec.aux_value <= prev_aux + 1e-9);
      prev_obj = rec.objective_value;
      prev_aux = rec.aux_value;
    }
    CHECK(folded.max_violation(s.basis.vertex) <= 1e-8);
  }
}

TEST_CASE("engine path equals the exhaustive normal-cone walk") {
  RngState rng{26, 0};
  int trials = 0, matches = 0;
  while (trials < 30) {
    FoldedLP folded =
        perturbed_random_folded(1 + rng.next_u64() % 4, 2, rng);
    Vector theta = sample_sphere_uniform(2, rng);
    Vector target = sample_sphere_uniform(2, rng);
    if (std::abs(theta[0]) < 1e-6 || std::abs(theta[1]) < 1e-6) continue;
    auto start_opt = solve_by_enumeration(folded, theta);
    REQUIRE(start_opt.has_value());
    Basis start;
    try {
      start = make_basis(folded, start_opt->basis);
    } catch (const SingularBasis&) {
      continue;
    }
    ++trials;
    try {
      auto [s, r] = follow_shadow_path(folded, start, theta, target, 1e6, 1000);
      auto engine_seq = visited_bases(start, s);
      auto oracle_seq = exhaustive_shadow_path(folded, theta, target, 1e6);
      if (engine_seq == oracle_seq) ++matches;
    } catch (const Error&) {
    }
  }
  CHECK(matches >= 29);
}

TEST_CASE("trace csv lists one line per pivot") {
  FoldedLP square = box_folded(2, 0.0, 1.0);
  Basis corner = make_basis(square, {0, 1});
  auto [s, r] = follow_shadow_path(square, corner, {0.6, 0.8}, {-1.0, -2.0}, 1e9, 100);
  REQUIRE(r == StopReason::OptimalForTarget);
  std::string csv = trace_csv(s);
  CHECK(csv.find("pivot,leaving,entering,lambda,t,objective,aux") == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 pivots
}
