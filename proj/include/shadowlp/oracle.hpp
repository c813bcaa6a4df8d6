#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "shadowlp/linalg.hpp"
#include "shadowlp/lp_model.hpp"

namespace shadowlp {

struct VertexEntry {
  std::vector<int> rows;  // sorted basis row indices
  Vector point;
  bool feasible = false;
};

struct VertexCatalog {
  std::size_t n_rows = 0;
  std::size_t d = 0;
  std::vector<VertexEntry> vertices;  // one per nonsingular d-subset
  std::size_t num_singular = 0;
};

constexpr std::size_t kEnumerationBudget = 1'000'000;

/// All basic solutions of the folded system with feasibility flags.
/// Deliberately naive; throws EnumerationTooLarge past the subset budget.
VertexCatalog enumerate_vertices(const FoldedLP& folded,
                                 std::size_t budget = kEnumerationBudget);

struct EnumSolution {
  double value;
  Vector point;
  std::vector<int> basis;
};

/// Maximum of obj over the feasible vertices; ties return the
/// lexicographically smallest basis. nullopt when no vertex is feasible.
std::optional<EnumSolution> solve_by_enumeration(const FoldedLP& folded,
                                                 const Vector& obj,
                                                 std::size_t budget = kEnumerationBudget);

/// Reconstructs the shadow path by scanning, for increasing t, which feasible
/// basis has all multipliers of z + t*c nonnegative. Switch points are found
/// by bisection to 1e-12. Engine-independent reference for follow_shadow_path.
std::vector<std::vector<int>> exhaustive_shadow_path(const FoldedLP& folded,
                                                     const Vector& z, const Vector& c,
                                                     double t_stop,
                                                     std::size_t budget = kEnumerationBudget);

}  // namespace shadowlp
