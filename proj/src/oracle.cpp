#include "shadowlp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shadowlp/errors.hpp"

namespace shadowlp {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kStrictTol = 1e-9;

std::size_t binomial_or_budget(std::size_t n, std::size_t k, std::size_t budget) {
  double v = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    v *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    if (v > static_cast<double>(budget) * 2.0) return budget + 1;
  }
  return static_cast<std::size_t>(v + 0.5);
}

bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[static_cast<std::size_t>(i)] < n - k + i) {
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j)
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

Matrix submatrix(const FoldedLP& folded, const std::vector<int>& rows) {
  Matrix m(rows.size(), folded.d);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < folded.d; ++j)
      m(i, j) = folded.a_bar(static_cast<std::size_t>(rows[i]), j);
  return m;
}

}  // namespace

VertexCatalog enumerate_vertices(const FoldedLP& folded, std::size_t budget) {
  const std::size_t n_rows = folded.rows();
  const std::size_t d = folded.d;
  if (binomial_or_budget(n_rows, d, budget) > budget)
    throw EnumerationTooLarge(binomial_or_budget(n_rows, d, budget));

  VertexCatalog cat;
  cat.n_rows = n_rows;
  cat.d = d;
  std::vector<int> idx(d);
  for (std::size_t i = 0; i < d; ++i) idx[i] = static_cast<int>(i);
  do {
    LUFactors f;
    try {
      f = lu_factorize(submatrix(folded, idx));
    } catch (const SingularBasis&) {
      ++cat.num_singular;
      continue;
    }
    Vector rhs(d);
    for (std::size_t i = 0; i < d; ++i)
      rhs[i] = folded.b_bar[static_cast<std::size_t>(idx[i])];
    VertexEntry entry;
    entry.rows = idx;
    entry.point = f.solve_right(rhs);
    entry.feasible = folded.max_violation(entry.point) <= kFeasTol;
    cat.vertices.push_back(std::move(entry));
  } while (next_combination(idx, static_cast<int>(n_rows)));
  return cat;
}

std::optional<EnumSolution> solve_by_enumeration(const FoldedLP& folded,
                                                 const Vector& obj,
                                                 std::size_t budget) {
  VertexCatalog cat = enumerate_vertices(folded, budget);
  std::optional<EnumSolution> best;
  for (const VertexEntry& v : cat.vertices) {
    if (!v.feasible) continue;
    const double value = dot(obj, v.point);
    if (!best) {
      best = EnumSolution{value, v.point, v.rows};
      continue;
    }
    const double tie = 1e-12 * (1.0 + std::abs(best->value));
    if (value > best->value + tie ||
        (std::abs(value - best->value) <= tie && v.rows < best->basis))
      best = EnumSolution{value, v.point, v.rows};
  }
  return best;
}

namespace {

struct ConeScanner {
  const FoldedLP& folded;
  const Vector& z;
  const Vector& c;
  std::vector<const VertexEntry*> feasible;
  std::vector<LUFactors> factors;

  ConeScanner(const FoldedLP& folded_, const VertexCatalog& cat, const Vector& z_,
              const Vector& c_)
      : folded(folded_), z(z_), c(c_) {
    for (const VertexEntry& v : cat.vertices) {
      if (!v.feasible) continue;
      feasible.push_back(&v);
      factors.push_back(lu_factorize(submatrix(folded_, v.rows)));
    }
  }

  double min_multiplier(std::size_t which, double t) const {
    const Vector obj = axpy(z, t, c);
    const Vector m = factors[which].solve_left(obj);
    double lo = std::numeric_limits<double>::infinity();
    for (double v : m) lo = std::min(lo, v);
    return lo;
  }

  /// Index of the unique basis claiming t strictly, or nullopt near a boundary.
  std::optional<std::size_t> winner(double t) const {
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < feasible.size(); ++i) {
      if (min_multiplier(i, t) > kStrictTol) {
        if (found)
          throw AmbiguousCone("two bases claim the same intermediate objective");
        found = i;
      }
    }
    return found;
  }
};

}  // namespace

std::vector<std::vector<int>> exhaustive_shadow_path(const FoldedLP& folded,
                                                     const Vector& z, const Vector& c,
                                                     double t_stop,
                                                     std::size_t budget) {
  VertexCatalog cat = enumerate_vertices(folded, budget);
  ConeScanner scan(folded, cat, z, c);

  auto start = scan.winner(0.0);
  if (!start) throw AmbiguousCone("no strict cone owner at t = 0");

  std::vector<std::vector<int>> path{scan.feasible[*start]->rows};
  std::size_t current = *start;
  double t_cur = 0.0;

  while (path.size() <= scan.feasible.size()) {
    if (scan.min_multiplier(current, t_stop) >= 0.0) break;
    // The cone of `current` on [t_cur, inf) is an interval; bisect its end.
    double lo = t_cur, hi = t_stop;
    while (hi - lo > 1e-12) {
      double mid = lo + (hi - lo) / 2.0;
      if (scan.min_multiplier(current, mid) >= 0.0)
        lo = mid;
      else
        hi = mid;
    }
    // Probe just past the switch for the next strict owner.
    bool advanced = false;
    for (double step = 1e-11; hi + step <= t_stop; step *= 2.0) {
      auto next = scan.winner(hi + step);
      if (next && *next != current) {
        path.push_back(scan.feasible[*next]->rows);
        current = *next;
        t_cur = hi + step;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return path;
}

}  // namespace shadowlp
