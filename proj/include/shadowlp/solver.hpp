#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shadowlp/lp_model.hpp"
#include "shadowlp/random.hpp"
#include "shadowlp/shadow.hpp"

namespace shadowlp {

enum class EpsilonMode { ExactEnumeration, KappaHeuristic };

struct SolverConfig {
  double feas_tol = 1e-6;  // primal feasibility tolerance (Gurobi/Glop default)
  double opt_tol = 1e-6;   // optimality tolerance
  double kappa = 1e12;     // assumed bound on basis inverse norms
  EpsilonMode epsilon_mode = EpsilonMode::KappaHeuristic;
  std::uint64_t seed = 0;
  std::size_t max_pivots = 0;  // 0 means 50 * (n + 2d) per shadow run
  int max_rejections = 64;

  std::size_t pivot_budget(const FoldedLP& folded) const {
    return max_pivots ? max_pivots : 50 * folded.rows();
  }
};

/// Primal-dual pair in the normalized row coordinates, with the dual split
/// across constraint rows (y), upper-bound rows (s) and lower-bound rows (t).
struct Certificate {
  Vector primal;      // x*
  Vector dual_rows;   // y*, length n
  Vector dual_upper;  // s*, length d
  Vector dual_lower;  // t*, length d
  double feas_tol = 0.0;
  double opt_tol = 0.0;
};

struct CertificateViolation {
  std::string condition;
  std::size_t index;
  double magnitude;
};

struct CertificateCheck {
  bool passed = true;
  std::vector<CertificateViolation> violations;
};

enum class SolveStatus { Optimal, Infeasible, PivotBudget, NumericalFailure };

std::string to_string(SolveStatus status);

struct SolveReport {
  SolveStatus status = SolveStatus::NumericalFailure;
  std::vector<std::size_t> phase1_pivots;  // one entry per constraint row
  std::size_t phase2_pivots = 0;
  int rejections = 0;
  std::optional<Certificate> certificate;
  CertificateCheck certificate_check;
  double objective_value = 0.0;
  std::uint64_t seed = 0;
  SolverConfig config;
  std::size_t infeasible_row = SIZE_MAX;
  std::string failure_message;
  std::vector<std::size_t> synthetic_bounds;  // columns boxed by the big bound
  double elapsed_seconds = 0.0;  // not serialized; reports stay reproducible

  // In-memory context for analysis and tests, not part of the JSON schema.
  FoldedLP folded;
  Vector theta;
  std::vector<PathTrace> phase1_traces;
  PathTrace phase2_trace;

  std::size_t total_pivots() const;
};

/// Truncation threshold 1 / (d^2 * max_B ||A_bar_B^{-1}||); the exact max is
/// enumerated only on request, the default substitutes the kappa bound.
double epsilon_threshold(const FoldedLP& folded, const SolverConfig& cfg);

/// The d box rows selected by the signs of theta; the vertex sits at
/// u_hat_i when theta_i >= 0 and at o_hat_i otherwise.
Basis phase1_initial_vertex(const FoldedLP& folded, const Vector& theta);

struct Phase1Result {
  bool feasible = true;
  std::size_t infeasible_row = SIZE_MAX;
  Basis basis;
  std::vector<std::size_t> pivots;
  std::vector<PathTrace> traces;
};

/// Inserts the constraints one at a time; each violated constraint triggers a
/// shadow run with target -A_{k+1} and auxiliary theta, truncated at the
/// intermediate objective -A_{k+1} + eps*theta.
Phase1Result phase1_sequential(const FoldedLP& folded, const Vector& theta,
                               double eps, const SolverConfig& cfg);

/// Shadow run from the theta-optimal basis to the optTol-shifted objective.
ShadowState phase2(const FoldedLP& folded, Basis start, const Vector& theta,
                   const Vector& objective, const SolverConfig& cfg);

Certificate extract_certificate(const ShadowState& final_state,
                                const NormalizedLP& lp, const Vector& theta,
                                const SolverConfig& cfg);

/// Evaluates the tolerance-feasibility and approximate complementary
/// slackness families against the unperturbed data. Failures are data.
CertificateCheck check_certificate(const Certificate& cert, const NormalizedLP& lp);

/// normalize -> perturb (with rejection) -> fold -> sample theta -> Phase I
/// -> Phase II -> certificate. Deterministic given the seed.
SolveReport solve(const InputLP& lp, const SolverConfig& cfg);

/// Deterministic JSON: status, pivots, certificate vectors, seed, config echo.
std::string report_to_json(const SolveReport& report);

}  // namespace shadowlp
