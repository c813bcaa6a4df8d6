#include "shadowlp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "shadowlp/errors.hpp"
#include "shadowlp/oracle.hpp"

namespace shadowlp {

namespace {

constexpr double kMultTol = 1e-9;
constexpr double kInactiveRhs = 1e250;  // parks not-yet-inserted rows far away

struct PivotBudgetHit : Error {
  PivotBudgetHit() : Error("pivot budget exhausted") {}
};

Matrix basis_submatrix(const FoldedLP& folded, const std::vector<int>& rows) {
  Matrix m(rows.size(), folded.d);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < folded.d; ++j)
      m(i, j) = folded.a_bar(static_cast<std::size_t>(rows[i]), j);
  return m;
}

}  // namespace

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::PivotBudget: return "pivot_budget";
    case SolveStatus::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

std::size_t SolveReport::total_pivots() const {
  std::size_t total = phase2_pivots;
  for (std::size_t p : phase1_pivots) total += p;
  return total;
}

double epsilon_threshold(const FoldedLP& folded, const SolverConfig& cfg) {
  const double d = static_cast<double>(folded.d);
  if (cfg.epsilon_mode == EpsilonMode::KappaHeuristic) {
    if (cfg.kappa < 1.0) throw DomainError("kappa must be at least 1");
    return 1.0 / (d * d * cfg.kappa);
  }
  VertexCatalog cat = enumerate_vertices(folded);
  double worst = 0.0;
  for (const VertexEntry& v : cat.vertices) {
    LUFactors f = lu_factorize(basis_submatrix(folded, v.rows));
    worst = std::max(worst, f.inverse_norm_estimate());
  }
  if (worst <= 0.0) throw DomainError("no nonsingular basis found");
  return 1.0 / (d * d * worst);
}

Basis phase1_initial_vertex(const FoldedLP& folded, const Vector& theta) {
  const std::size_t n = folded.n;
  const std::size_t d = folded.d;
  std::vector<int> rows(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (std::abs(theta[i]) < 1e-12) throw ZeroComponent(i);
    rows[i] = static_cast<int>(theta[i] >= 0.0 ? n + i : n + d + i);
  }
  return make_basis(folded, std::move(rows));
}

namespace {

/// Working copy for the Exit-k run: row k reversed, later rows parked.
FoldedLP make_exit_lp(const FoldedLP& folded, std::size_t k) {
  FoldedLP exit_lp = folded;
  for (std::size_t j = 0; j < folded.d; ++j) exit_lp.a_bar(k, j) = -exit_lp.a_bar(k, j);
  exit_lp.b_bar[k] = -exit_lp.b_bar[k];
  for (std::size_t r = k + 1; r < folded.n; ++r) exit_lp.b_bar[r] = kInactiveRhs;
  return exit_lp;
}

void check_entry_invariant(const FoldedLP& folded, const Basis& basis,
                           const Vector& theta, std::size_t up_to_row) {
  for (std::size_t r = 0; r < folded.rows(); ++r) {
    if (r >= up_to_row && r < folded.n) continue;  // not inserted yet
    if (dot(folded.a_bar.row(r), basis.vertex) > folded.b_bar[r] + 1e-8)
      throw NumericalBreakdown("phase 1 vertex left the inserted region");
  }
  const Vector m = basis.factors.solve_left(theta);
  for (double v : m)
    if (v < -kMultTol)
      throw NumericalBreakdown("phase 1 basis lost theta-optimality");
}

}  // namespace

Phase1Result phase1_sequential(const FoldedLP& folded, const Vector& theta,
                               double eps, const SolverConfig& cfg) {
  if (!(eps > 0.0)) throw DomainError("truncation threshold must be positive");
  Phase1Result out;
  out.pivots.assign(folded.n, 0);
  out.traces.resize(folded.n);
  out.basis = phase1_initial_vertex(folded, theta);

  for (std::size_t k = 0; k < folded.n; ++k) {
    const double violation =
        dot(folded.a_bar.row(k), out.basis.vertex) - folded.b_bar[k];
    if (violation <= kMultTol) continue;  // Entry k+1 already holds

    const FoldedLP exit_lp = make_exit_lp(folded, k);
    const Vector target = scaled(folded.a_bar.row(k), -1.0);
    auto [state, reason] = follow_shadow_path(exit_lp, out.basis, theta, target,
                                              1.0 / eps, cfg.pivot_budget(folded));
    if (reason == StopReason::PivotBudget) throw PivotBudgetHit();
    out.pivots[k] = state.pivot_count;
    out.traces[k] = std::move(state.trace);

    const double residual =
        dot(folded.a_bar.row(k), state.basis.vertex) - folded.b_bar[k];
    if (residual > kMultTol) {
      // The truncated run never reached the facet: Entry k+1 is infeasible.
      out.feasible = false;
      out.infeasible_row = k;
      return out;
    }
    out.basis = make_basis(folded, state.basis.rows);
    check_entry_invariant(folded, out.basis, theta, k + 1);
  }
  return out;
}

ShadowState phase2(const FoldedLP& folded, Basis start, const Vector& theta,
                   const Vector& objective, const SolverConfig& cfg) {
  const Vector target = axpy(objective, cfg.opt_tol, theta);
  auto [state, reason] =
      follow_shadow_path(folded, std::move(start), theta, target,
                         std::numeric_limits<double>::infinity(),
                         cfg.pivot_budget(folded));
  if (reason == StopReason::PivotBudget) throw PivotBudgetHit();
  return std::move(state);
}

Certificate extract_certificate(const ShadowState& final_state,
                                const NormalizedLP& lp, const Vector& theta,
                                const SolverConfig& cfg) {
  const std::size_t n = lp.lp.num_rows;
  const std::size_t d = lp.lp.num_cols;
  const Vector shifted = axpy(lp.lp.objective, cfg.opt_tol, theta);
  Vector m = final_state.basis.factors.solve_left(shifted);

  Certificate cert;
  cert.primal = final_state.basis.vertex;
  cert.dual_rows.assign(n, 0.0);
  cert.dual_upper.assign(d, 0.0);
  cert.dual_lower.assign(d, 0.0);
  cert.feas_tol = cfg.feas_tol;
  cert.opt_tol = cfg.opt_tol;

  for (std::size_t i = 0; i < final_state.basis.rows.size(); ++i) {
    const std::size_t row = static_cast<std::size_t>(final_state.basis.rows[i]);
    double value = m[i];
    if (value < 0.0) {
      if (value < -kMultTol)
        throw StationarityViolation(-value);
      value = 0.0;
    }
    if (row < n)
      cert.dual_rows[row] = value;
    else if (row < n + d)
      cert.dual_upper[row - n] = value;
    else
      cert.dual_lower[row - n - d] = value;
  }

  // Stationarity A^T y + s - t = c + optTol * theta.
  double residual = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double lhs = cert.dual_upper[j] - cert.dual_lower[j];
    for (std::size_t i = 0; i < n; ++i) lhs += lp.lp.a(i, j) * cert.dual_rows[i];
    residual = std::max(residual, std::abs(lhs - shifted[j]));
  }
  if (residual > 1e-6) throw StationarityViolation(residual);
  return cert;
}

CertificateCheck check_certificate(const Certificate& cert, const NormalizedLP& lp) {
  const std::size_t n = lp.lp.num_rows;
  const std::size_t d = lp.lp.num_cols;
  CertificateCheck out;
  auto report = [&out](const char* condition, std::size_t index, double magnitude) {
    if (magnitude > 1e-9) {
      out.passed = false;
      out.violations.push_back(CertificateViolation{condition, index, magnitude});
    }
  };

  Vector row_activity(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    row_activity[i] = dot(lp.lp.a.row(i), cert.primal);
  Vector dual_activity(d, 0.0);  // (A^T y)_j
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < n; ++i)
      dual_activity[j] += lp.lp.a(i, j) * cert.dual_rows[i];

  for (std::size_t i = 0; i < n; ++i)
    report("primal_row", i, row_activity[i] - lp.lp.b[i] - cert.feas_tol);
  for (std::size_t j = 0; j < d; ++j) {
    report("primal_lower", j, -cert.feas_tol - cert.primal[j]);
    report("primal_upper", j, cert.primal[j] - lp.lp.upper[j] - cert.feas_tol);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (cert.dual_rows[i] > 0.0)
      report("slackness_row", i, lp.lp.b[i] - row_activity[i]);
  for (std::size_t j = 0; j < d; ++j) {
    if (lp.lp.objective[j] > dual_activity[j] + cert.opt_tol)
      report("slackness_upper", j, lp.lp.upper[j] - cert.primal[j]);
    if (lp.lp.objective[j] < dual_activity[j] - cert.opt_tol)
      report("slackness_lower", j, cert.primal[j]);
  }
  return out;
}

SolveReport solve(const InputLP& lp, const SolverConfig& cfg) {
  const auto t_begin = std::chrono::steady_clock::now();
  SolveReport report;
  report.seed = cfg.seed;
  report.config = cfg;
  report.synthetic_bounds = lp.synthetic_bounds;

  try {
    lp.validate();
    const NormalizedLP normalized = normalize_rows(lp);
    PerturbationParams params = PerturbationParams::from_tolerances(
        cfg.feas_tol, cfg.opt_tol, lp.num_rows, lp.num_cols);
    params.max_rejections = cfg.max_rejections;

    RngState rng{cfg.seed, 0};
    const PerturbedBounds pb = sample_perturbed_bounds(normalized, params, rng);
    report.rejections = pb.rejections;
    report.folded = fold_bounds(normalized, pb.lower, pb.upper, pb.rhs);

    // The initial-vertex sign rule needs strict signs on theta.
    Vector theta;
    for (;;) {
      theta = sample_sphere_uniform(lp.num_cols, rng);
      double smallest = std::numeric_limits<double>::infinity();
      for (double v : theta) smallest = std::min(smallest, std::abs(v));
      if (smallest > 1e-9) break;
    }
    report.theta = theta;

    const double eps = epsilon_threshold(report.folded, cfg);
    Phase1Result p1 = phase1_sequential(report.folded, theta, eps, cfg);
    report.phase1_pivots = p1.pivots;
    report.phase1_traces = std::move(p1.traces);
    if (!p1.feasible) {
      report.status = SolveStatus::Infeasible;
      report.infeasible_row = p1.infeasible_row;
    } else {
      ShadowState final_state =
          phase2(report.folded, std::move(p1.basis), theta, lp.objective, cfg);
      report.phase2_pivots = final_state.pivot_count;
      report.phase2_trace = final_state.trace;
      report.certificate = extract_certificate(final_state, normalized, theta, cfg);
      report.certificate_check = check_certificate(*report.certificate, normalized);
      report.objective_value = dot(lp.objective, final_state.basis.vertex);
      report.status = SolveStatus::Optimal;
    }
  } catch (const PivotBudgetHit& e) {
    report.status = SolveStatus::PivotBudget;
    report.failure_message = e.what();
  } catch (const Error& e) {
    report.status = SolveStatus::NumericalFailure;
    report.failure_message = e.what();
  }

  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
  return report;
}

std::string report_to_json(const SolveReport& report) {
  nlohmann::ordered_json j;
  j["status"] = to_string(report.status);
  j["objective_value"] = report.objective_value;
  j["phase1_pivots"] = report.phase1_pivots;
  j["phase2_pivots"] = report.phase2_pivots;
  j["total_pivots"] = report.total_pivots();
  j["rejections"] = report.rejections;
  j["seed"] = report.seed;
  j["config"] = {
      {"feastol", report.config.feas_tol},
      {"opttol", report.config.opt_tol},
      {"kappa", report.config.kappa},
      {"epsilon_mode", report.config.epsilon_mode == EpsilonMode::KappaHeuristic
                           ? "kappa"
                           : "exact"},
      {"max_pivots", report.config.max_pivots},
      {"max_rejections", report.config.max_rejections},
  };
  if (report.infeasible_row != SIZE_MAX) j["infeasible_row"] = report.infeasible_row;
  if (!report.synthetic_bounds.empty())
    j["synthetic_bounds"] = report.synthetic_bounds;
  if (!report.failure_message.empty()) j["failure"] = report.failure_message;
  if (report.certificate) {
    const Certificate& c = *report.certificate;
    j["certificate"] = {
        {"primal", c.primal},         {"dual_rows", c.dual_rows},
        {"dual_upper", c.dual_upper}, {"dual_lower", c.dual_lower},
        {"feastol", c.feas_tol},      {"opttol", c.opt_tol},
    };
    auto violations = nlohmann::ordered_json::array();
    for (const auto& v : report.certificate_check.violations)
      violations.push_back({{"condition", v.condition},
                            {"index", v.index},
                            {"magnitude", v.magnitude}});
    j["certificate_check"] = {{"passed", report.certificate_check.passed},
                              {"violations", violations}};
  }
  return j.dump(2);
}

}  // namespace shadowlp
