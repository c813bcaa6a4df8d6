#pragma once

#include <cstdint>
#include <cstddef>

#include "shadowlp/linalg.hpp"
#include "shadowlp/lp_model.hpp"

namespace shadowlp {

/// Counter-based generator: a draw is a pure function of (seed, counter), so
/// identical states reproduce identical streams bit for bit and per-trial
/// child streams never overlap.
struct RngState {
  std::uint64_t seed = 0;
  std::uint64_t counter = 0;

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double next_unit();
  /// Uniform in (0, 1), safe as a log argument.
  double next_open_unit();
  /// Standard normal via Box-Muller.
  double next_gaussian();
  /// Independent stream for a parallel trial.
  RngState child(std::uint64_t stream) const;
};

/// Perturbation scale and shift together with the tolerances that drive them.
struct PerturbationParams {
  double eta = 0.0;
  double gamma = 0.0;
  double feas_tol = 1e-6;
  double opt_tol = 1e-6;
  int max_rejections = 64;

  /// Default linkage eta = feasTol / (4 ln(n+2d)), gamma = 2 ln(n+2d).
  static PerturbationParams from_tolerances(double feas_tol, double opt_tol,
                                            std::size_t n, std::size_t d);
  void validate() const;
};

/// One draw from the Laplace density (1/2 eta) exp(-|t - v - gamma*eta| / eta).
double sample_shifted_laplace(double v, double eta, double gamma, RngState& rng);

struct PerturbedBounds {
  Vector lower;  // o_hat
  Vector upper;  // u_hat
  Vector rhs;    // b_hat
  int rejections = 0;
};

/// Draws (o_hat, u_hat, b_hat) and resamples until the whole vector lands in
/// the bands o - feasTol <= o_hat <= o, u <= u_hat <= u + feasTol,
/// b <= b_hat <= b + feasTol, so the feasible region only grows.
PerturbedBounds sample_perturbed_bounds(const NormalizedLP& lp,
                                        const PerturbationParams& params,
                                        RngState& rng);

/// Single unrejected draw, exposed for distribution tests.
PerturbedBounds sample_perturbed_bounds_once(const NormalizedLP& lp,
                                             const PerturbationParams& params,
                                             RngState& rng);

/// Uniform direction on the unit sphere (normalized Gaussian vector).
Vector sample_sphere_uniform(std::size_t d, RngState& rng);

/// Gamma(shape, rate) via Marsaglia-Tsang; requires shape >= 1.
double sample_gamma(double shape, double rate, RngState& rng);

/// Draw from the isotropic density proportional to exp(-L ||x||): uniform
/// direction with Gamma(d, L) radius.
Vector sample_l_exponential(std::size_t d, double big_l, RngState& rng);

}  // namespace shadowlp
