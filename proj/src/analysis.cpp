#include "shadowlp/analysis.hpp"

#include <cmath>
#include <limits>

#include "shadowlp/errors.hpp"
#include "shadowlp/oracle.hpp"

namespace shadowlp {

namespace {

constexpr double kE = 2.71828182845904523536;

/// Maximize a direction over the folded region with the two-phase machinery:
/// Phase I with theta = direction already lands on the direction's optimum.
struct TwoPhaseMax {
  double value;
  std::size_t pivots;
};

TwoPhaseMax two_phase_max(const FoldedLP& folded, const Vector& direction) {
  const double nrm = norm2(direction);
  if (nrm < 1e-12) throw DegenerateDraw();
  Vector theta = scaled(direction, 1.0 / nrm);
  for (double v : theta)
    if (std::abs(v) < 1e-12) throw DegenerateDraw();
  SolverConfig cfg;
  const double eps = epsilon_threshold(folded, cfg);
  Phase1Result p1 = phase1_sequential(folded, theta, eps, cfg);
  if (!p1.feasible) throw InfeasibleStart("region is empty");
  std::size_t pivots = 0;
  for (std::size_t p : p1.pivots) pivots += p;
  return {dot(direction, p1.basis.vertex) / nrm, pivots};
}

}  // namespace

MeanWidthEstimate estimate_mean_width(const FoldedLP& folded, std::size_t trials,
                                      RngState& rng, InnerSolver inner) {
  MeanWidthEstimate out;
  out.trials = trials;

  std::vector<const VertexEntry*> feasible;
  VertexCatalog cat;
  if (inner == InnerSolver::Oracle) {
    cat = enumerate_vertices(folded);
    for (const VertexEntry& v : cat.vertices)
      if (v.feasible) feasible.push_back(&v);
  }

  double sum = 0.0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    RngState stream = rng.child(trial);
    Vector z(folded.d);
    for (std::size_t i = 0; i < folded.d; ++i) z[i] = stream.next_gaussian();
    const double nrm = norm2(z);
    if (nrm < 1e-12) {
      ++out.failures;
      continue;
    }
    try {
      if (inner == InnerSolver::Oracle) {
        if (feasible.empty()) throw InfeasibleStart("region is empty");
        double best = -std::numeric_limits<double>::infinity();
        for (const VertexEntry* v : feasible)
          best = std::max(best, dot(z, v->point));
        out.samples.push_back(best / nrm);
        out.pivots.push_back(0);
      } else {
        TwoPhaseMax r = two_phase_max(folded, z);
        out.samples.push_back(r.value);
        out.pivots.push_back(r.pivots);
      }
      out.trial_ids.push_back(trial);
      sum += out.samples.back();
    } catch (const Error&) {
      ++out.failures;
    }
  }
  if (out.samples.empty()) throw AllTrialsFailed();
  out.mean = sum / static_cast<double>(out.samples.size());
  return out;
}

double estimate_N(const FoldedLP& folded, const Vector& c, InnerSolver inner) {
  if (norm2(c) < 1e-300) return 0.0;
  double up, down;
  if (inner == InnerSolver::Oracle) {
    auto hi = solve_by_enumeration(folded, c);
    auto lo = solve_by_enumeration(folded, scaled(c, -1.0));
    if (!hi || !lo) throw InfeasibleStart("region is empty");
    up = hi->value;
    down = lo->value;
  } else {
    up = two_phase_max(folded, c).value * norm2(c);
    down = two_phase_max(folded, scaled(c, -1.0)).value * norm2(c);
  }
  return std::max(std::abs(up), std::abs(down));
}

double omega(double eta, std::size_t n, std::size_t d) {
  if (n < 3) throw DomainError("omega needs n >= 3");
  if (!(eta > 0.0) || d == 0) throw DomainError("omega needs eta > 0 and d >= 1");
  return eta / (1240.0 * static_cast<double>(d) * std::log(static_cast<double>(n)));
}

double pivot_bound(const BoundInputs& in) {
  if (in.n < 2 || in.d == 0 || in.n < in.d || !(in.eta > 0.0) || !(in.eps > 0.0) ||
      !(in.big_n > 0.0) || in.mean_width < 0.0)
    throw DomainError("pivot bound needs n >= d and positive inputs");
  const double d = static_cast<double>(in.d);
  const double ln_n = std::log(static_cast<double>(in.n));
  const double log_arg =
      2480.0 * kE * d * d * d * in.big_n * ln_n * ln_n / (in.eta * in.eps);
  if (!(log_arg > 0.0) || !std::isfinite(log_arg))
    throw DomainError("log argument must be positive and finite");
  const double radicand = d * ln_n * in.mean_width / in.eta * std::log(log_arg);
  if (radicand < 0.0) throw DomainError("square root argument is negative");
  return 121.0 + 141.0 * d * std::sqrt(radicand);
}

double pivot_bound_sharp(const BoundInputs& in) {
  if (!(in.big_l > 0.0) || !(in.big_n > 0.0) || !(in.eps > 0.0) ||
      in.mean_width < 0.0)
    throw DomainError("pivot bound inputs must be positive");
  const double d = static_cast<double>(in.d);
  const double w = omega(in.eta, in.n, in.d);
  const double log_arg = d * in.big_l * in.big_n / (w * in.eps);
  if (!(log_arg > 0.0) || !std::isfinite(log_arg))
    throw DomainError("log argument must be positive and finite");
  const double radicand = in.mean_width / w * std::log(log_arg);
  if (radicand < 0.0) throw DomainError("square root argument is negative");
  return 120.0 + 4.0 * d * std::sqrt(radicand);
}

InputLP random_dense_instance(std::size_t n, std::size_t d, RngState& rng) {
  InputLP lp;
  lp.num_rows = n;
  lp.num_cols = d;
  lp.a = Matrix(n, d);
  lp.b.resize(n);
  lp.lower.assign(d, 0.0);
  lp.upper.assign(d, 1.0);
  lp.objective.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    lp.objective[j] = 2.0 * rng.next_unit() - 1.0;
    lp.col_names.push_back("x" + std::to_string(j + 1));
  }
  for (std::size_t i = 0; i < n; ++i) {
    double nrm = 0.0;
    while (nrm < 1e-6) {
      for (std::size_t j = 0; j < d; ++j) lp.a(i, j) = 2.0 * rng.next_unit() - 1.0;
      nrm = norm2(lp.a.row(i));
    }
    for (std::size_t j = 0; j < d; ++j) lp.a(i, j) /= nrm;
    // Anchor the box center inside every halfplane so the instance is feasible.
    double center = 0.0;
    for (std::size_t j = 0; j < d; ++j) center += 0.5 * lp.a(i, j);
    lp.b[i] = center + rng.next_unit();
    lp.row_names.push_back("r" + std::to_string(i + 1));
  }
  return lp;
}

}  // namespace shadowlp
