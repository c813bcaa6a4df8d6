#pragma once

#include <cstddef>
#include <vector>

#include "shadowlp/lp_model.hpp"
#include "shadowlp/random.hpp"
#include "shadowlp/solver.hpp"

namespace shadowlp {

enum class InnerSolver { Oracle, TwoPhase };

struct MeanWidthEstimate {
  std::vector<double> samples;          // per-direction support values z.x/||z||
  std::vector<std::size_t> pivots;      // per-trial pivot counts (0 for the oracle)
  std::vector<std::size_t> trial_ids;   // child-stream index behind each sample
  double mean = 0.0;
  std::size_t trials = 0;
  std::size_t failures = 0;
};

/// Monte Carlo half mean width of the folded region: per trial, sample a
/// Gaussian direction, maximize it over the region and record the normalized
/// support value. Failed trials are counted and excluded.
MeanWidthEstimate estimate_mean_width(const FoldedLP& folded, std::size_t trials,
                                      RngState& rng, InnerSolver inner);

/// Conservative surrogate for the objective-value tail quantile: the exact
/// maximum of |c.x| over the region.
double estimate_N(const FoldedLP& folded, const Vector& c, InnerSolver inner);

/// Good-slack threshold eta / (1240 d ln n).
double omega(double eta, std::size_t n, std::size_t d);

struct BoundInputs {
  std::size_t n = 0;
  std::size_t d = 0;
  double eta = 0.0;
  double eps = 0.0;
  double mean_width = 0.0;  // M
  double big_n = 0.0;       // N
  double big_l = 1.0;       // L
};

/// 121 + 141 d sqrt( (d ln(n) M / eta) * ln(2480 e d^3 N ln^2(n) / (eta eps)) ).
double pivot_bound(const BoundInputs& in);

/// The sharper variant 120 + 4 d sqrt( (M / omega) * ln(d L N / (omega eps)) ).
double pivot_bound_sharp(const BoundInputs& in);

/// Dense random ensemble instance: unit-norm rows, box [0,1]^d, and a
/// right-hand side that keeps the box center feasible.
InputLP random_dense_instance(std::size_t n, std::size_t d, RngState& rng);

}  // namespace shadowlp
