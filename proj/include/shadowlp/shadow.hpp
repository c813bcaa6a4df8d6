#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "shadowlp/linalg.hpp"
#include "shadowlp/lp_model.hpp"

namespace shadowlp {

/// A basis of the folded system: d row indices whose submatrix is
/// nonsingular, its factorization, and the basic solution.
struct Basis {
  std::vector<int> rows;  // sorted global row indices
  LUFactors factors;
  Vector vertex;  // A_B^{-1} b_B
};

/// Factorizes the row subset and solves for the basic solution.
Basis make_basis(const FoldedLP& folded, std::vector<int> rows);

struct PivotRecord {
  int leaving;
  int entering;
  double lambda;
  double objective_value;  // target . x after the pivot
  double aux_value;        // aux . x after the pivot
};

struct PathTrace {
  double start_objective = 0.0;  // target . x at the walk's first vertex
  double start_aux = 0.0;
  std::vector<PivotRecord> records;
};

/// Walk state on the parametric ray aux + t * target.
struct ShadowState {
  Basis basis;
  Vector aux;     // z
  Vector target;  // c
  double t = 0.0;
  std::size_t pivot_count = 0;
  PathTrace trace;
};

/// obj^T A_B^{-1}, ordered to match the sorted basis rows.
Vector multipliers(const ShadowState& state, const Vector& obj);

struct RatioTestResult {
  bool optimal = false;
  double lambda = 0.0;
  int position = -1;  // index into basis.rows of the leaving row
};

/// The parametric ratio test: smallest lambda at which a multiplier of
/// (aux + t*target) + lambda*target hits zero. Ties go to the least row index.
RatioTestResult ratio_test(const ShadowState& state);

/// Exchanges the leaving row for the constraint that blocks first along the
/// relaxation edge, advances t by lambda and appends a PivotRecord.
void pivot_step(ShadowState& state, double lambda, int position, const FoldedLP& folded);

enum class StopReason { OptimalForTarget, TruncatedAtT, PivotBudget };

/// Runs the pivot loop from a feasible start whose aux multipliers are all
/// strictly positive, until the target is optimal, t would pass t_stop, or
/// the pivot budget runs out.
std::pair<ShadowState, StopReason> follow_shadow_path(const FoldedLP& folded,
                                                      Basis start, Vector aux,
                                                      Vector target, double t_stop,
                                                      std::size_t max_pivots);

/// Columns: pivot,leaving,entering,lambda,t,objective,aux.
std::string trace_csv(const ShadowState& state);

}  // namespace shadowlp
