#include "shadowlp/random.hpp"

#include <cmath>

#include "shadowlp/errors.hpp"

namespace shadowlp {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t RngState::next_u64() {
  return splitmix64(splitmix64(seed) ^ (0x9e3779b97f4a7c15ull * ++counter));
}

double RngState::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngState::next_open_unit() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngState::next_gaussian() {
  double u1 = next_open_unit();
  double u2 = next_unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

RngState RngState::child(std::uint64_t stream) const {
  return RngState{splitmix64(seed ^ splitmix64(0x517cc1b727220a95ull + stream)), 0};
}

PerturbationParams PerturbationParams::from_tolerances(double feas_tol,
                                                       double opt_tol,
                                                       std::size_t n,
                                                       std::size_t d) {
  PerturbationParams p;
  p.feas_tol = feas_tol;
  p.opt_tol = opt_tol;
  double log_rows = std::log(static_cast<double>(n + 2 * d));
  p.eta = feas_tol / (4.0 * log_rows);
  p.gamma = 2.0 * log_rows;
  p.validate();
  return p;
}

void PerturbationParams::validate() const {
  if (!(eta > 0.0) || !(gamma > 0.0))
    throw DomainError("perturbation scale and shift must be positive");
  if (feas_tol < 1e-9 || feas_tol > 1e-2 || opt_tol < 1e-9 || opt_tol > 1e-2)
    throw DomainError("tolerances must lie in [1e-9, 1e-2]");
}

double sample_shifted_laplace(double v, double eta, double gamma, RngState& rng) {
  const double center = v + gamma * eta;
  const double u = rng.next_open_unit();
  if (u < 0.5) return center + eta * std::log(2.0 * u);
  return center - eta * std::log(2.0 * (1.0 - u));
}

PerturbedBounds sample_perturbed_bounds_once(const NormalizedLP& lp,
                                             const PerturbationParams& params,
                                             RngState& rng) {
  const std::size_t n = lp.lp.num_rows;
  const std::size_t d = lp.lp.num_cols;
  PerturbedBounds out;
  out.lower.resize(d);
  out.upper.resize(d);
  out.rhs.resize(n);
  // -o_hat is perturbed upward from -o, so the lower bound only moves down.
  for (std::size_t j = 0; j < d; ++j)
    out.lower[j] = -sample_shifted_laplace(-lp.lp.lower[j], params.eta, params.gamma, rng);
  for (std::size_t j = 0; j < d; ++j)
    out.upper[j] = sample_shifted_laplace(lp.lp.upper[j], params.eta, params.gamma, rng);
  for (std::size_t i = 0; i < n; ++i)
    out.rhs[i] = sample_shifted_laplace(lp.lp.b[i], params.eta, params.gamma, rng);
  return out;
}

namespace {

bool within_bands(const NormalizedLP& lp, const PerturbationParams& params,
                  const PerturbedBounds& pb) {
  const double tol = params.feas_tol;
  for (std::size_t j = 0; j < lp.lp.num_cols; ++j) {
    if (pb.lower[j] > lp.lp.lower[j] || pb.lower[j] < lp.lp.lower[j] - tol) return false;
    if (pb.upper[j] < lp.lp.upper[j] || pb.upper[j] > lp.lp.upper[j] + tol) return false;
  }
  for (std::size_t i = 0; i < lp.lp.num_rows; ++i)
    if (pb.rhs[i] < lp.lp.b[i] || pb.rhs[i] > lp.lp.b[i] + tol) return false;
  return true;
}

}  // namespace

PerturbedBounds sample_perturbed_bounds(const NormalizedLP& lp,
                                        const PerturbationParams& params,
                                        RngState& rng) {
  for (int attempt = 0; attempt <= params.max_rejections; ++attempt) {
    PerturbedBounds pb = sample_perturbed_bounds_once(lp, params, rng);
    if (within_bands(lp, params, pb)) {
      pb.rejections = attempt;
      return pb;
    }
  }
  throw RejectionBudgetExceeded(params.max_rejections);
}

Vector sample_sphere_uniform(std::size_t d, RngState& rng) {
  for (int tries = 0; tries < 100; ++tries) {
    Vector v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = rng.next_gaussian();
    double nrm = norm2(v);
    if (nrm >= 1e-12) {
      for (double& x : v) x /= nrm;
      return v;
    }
  }
  throw DegenerateDraw();
}

double sample_gamma(double shape, double rate, RngState& rng) {
  if (shape < 1.0) throw DomainError("gamma sampler needs shape >= 1");
  const double k = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * k);
  for (;;) {
    double x = rng.next_gaussian();
    double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    double v = t * t * t;
    double u = rng.next_open_unit();
    if (std::log(u) < 0.5 * x * x + k - k * v + k * std::log(v)) return k * v / rate;
  }
}

Vector sample_l_exponential(std::size_t d, double big_l, RngState& rng) {
  if (!(big_l > 0.0)) throw DomainError("L must be positive");
  Vector dir = sample_sphere_uniform(d, rng);
  double r = sample_gamma(static_cast<double>(d), big_l, rng);
  for (double& x : dir) x *= r;
  return dir;
}

}  // namespace shadowlp
