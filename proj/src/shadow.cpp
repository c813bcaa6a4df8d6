#include "shadowlp/shadow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "shadowlp/errors.hpp"

namespace shadowlp {

namespace {

constexpr double kMultTol = 1e-9;   // multiplier sign tolerance
constexpr double kDenomTol = 1e-12; // ratio-test denominator floor
constexpr double kFeasTol = 1e-9;   // vertex feasibility slack

Matrix submatrix(const FoldedLP& folded, const std::vector<int>& rows) {
  Matrix m(rows.size(), folded.d);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < folded.d; ++j)
      m(i, j) = folded.a_bar(static_cast<std::size_t>(rows[i]), j);
  return m;
}

}  // namespace

Basis make_basis(const FoldedLP& folded, std::vector<int> rows) {
  std::sort(rows.begin(), rows.end());
  Basis b;
  b.factors = lu_factorize(submatrix(folded, rows));
  Vector rhs(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    rhs[i] = folded.b_bar[static_cast<std::size_t>(rows[i])];
  b.vertex = b.factors.solve_right(rhs);
  b.rows = std::move(rows);
  return b;
}

Vector multipliers(const ShadowState& state, const Vector& obj) {
  return state.basis.factors.solve_left(obj);
}

RatioTestResult ratio_test(const ShadowState& state) {
  const Vector intermediate = axpy(state.aux, state.t, state.target);
  const Vector m_inter = multipliers(state, intermediate);
  const Vector m_target = multipliers(state, state.target);

  RatioTestResult res;
  res.optimal = true;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m_target.size(); ++i) {
    if (m_target[i] >= -kMultTol) continue;
    res.optimal = false;
    if (std::abs(m_target[i]) < kDenomTol) {
      if (m_inter[i] < 0.0)
        throw NumericalBreakdown("ratio test denominator underflow");
      continue;
    }
    double ratio = -m_inter[i] / m_target[i];
    if (ratio < best - kMultTol) {
      best = ratio;
      res.position = static_cast<int>(i);
    }
  }
  if (res.optimal) return res;
  if (res.position < 0)
    throw NumericalBreakdown("no usable leaving candidate in ratio test");
  res.lambda = std::max(best, 0.0);
  return res;
}

void pivot_step(ShadowState& state, double lambda, int position, const FoldedLP& folded) {
  Basis& basis = state.basis;
  const std::size_t d = folded.d;
  const int leaving_row = basis.rows[static_cast<std::size_t>(position)];

  // Edge direction relaxing the leaving constraint, keeping the rest tight.
  Vector rhs(d, 0.0);
  rhs[static_cast<std::size_t>(position)] = -1.0;
  const Vector w = basis.factors.solve_right(rhs);

  int entering = -1;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < folded.rows(); ++r) {
    const int row = static_cast<int>(r);
    if (std::binary_search(basis.rows.begin(), basis.rows.end(), row)) continue;
    const double along = dot(folded.a_bar.row(r), w);
    if (along <= kDenomTol) continue;
    const double slack = folded.b_bar[r] - dot(folded.a_bar.row(r), basis.vertex);
    const double ratio = std::max(slack, 0.0) / along;
    if (ratio < best - kMultTol) {
      best = ratio;
      entering = row;
    }
  }
  if (entering < 0) throw UnboundedDirection();

  std::vector<int> rows = basis.rows;
  rows[static_cast<std::size_t>(position)] = entering;
  Basis next = make_basis(folded, std::move(rows));
  if (folded.max_violation(next.vertex) > 1e-8)
    throw NumericalBreakdown("pivot landed on an infeasible vertex");

  state.basis = std::move(next);
  state.t += lambda;
  ++state.pivot_count;
  state.trace.records.push_back(PivotRecord{leaving_row, entering, lambda,
                                    dot(state.target, state.basis.vertex),
                                    dot(state.aux, state.basis.vertex)});
}

std::pair<ShadowState, StopReason> follow_shadow_path(const FoldedLP& folded,
                                                      Basis start, Vector aux,
                                                      Vector target, double t_stop,
                                                      std::size_t max_pivots) {
  if (folded.max_violation(start.vertex) > kFeasTol)
    throw InfeasibleStart("start vertex violates the constraints");

  ShadowState state;
  state.basis = std::move(start);
  state.aux = std::move(aux);
  state.target = std::move(target);
  state.trace.start_objective = dot(state.target, state.basis.vertex);
  state.trace.start_aux = dot(state.aux, state.basis.vertex);
  const Vector m_aux = multipliers(state, state.aux);
  for (double m : m_aux)
    if (m <= kMultTol)
      throw NumericalBreakdown(
          "auxiliary multipliers not strictly positive at the start basis");

  for (;;) {
    RatioTestResult rt = ratio_test(state);
    if (rt.optimal) return {std::move(state), StopReason::OptimalForTarget};
    if (state.t >= t_stop || state.t + rt.lambda > t_stop) {
      const Vector stop_obj = axpy(state.aux, t_stop, state.target);
      const Vector m = multipliers(state, stop_obj);
      for (double v : m)
        if (v < -kMultTol)
          throw NumericalBreakdown("truncation basis not optimal at t_stop");
      return {std::move(state), StopReason::TruncatedAtT};
    }
    if (state.pivot_count >= max_pivots)
      return {std::move(state), StopReason::PivotBudget};
    pivot_step(state, rt.lambda, rt.position, folded);
  }
}

std::string trace_csv(const ShadowState& state) {
  std::ostringstream out;
  out << "pivot,leaving,entering,lambda,t,objective,aux\n";
  double t = 0.0;
  char buf[128];
  for (std::size_t i = 0; i < state.trace.records.size(); ++i) {
    const PivotRecord& r = state.trace.records[i];
    t += r.lambda;
    std::snprintf(buf, sizeof buf, "%zu,%d,%d,%.17g,%.17g,%.17g,%.17g\n", i,
                  r.leaving, r.entering, r.lambda, t, r.objective_value, r.aux_value);
    out << buf;
  }
  return out.str();
}

}  // namespace shadowlp
