#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "shadowlp/linalg.hpp"

namespace shadowlp {

/// Boxed inequality-form problem: max c.x subject to A x <= b, lower <= x <= upper.
struct InputLP {
  std::size_t num_rows = 0;  // n
  std::size_t num_cols = 0;  // d
  Matrix a;                  // n x d
  Vector b;
  Vector lower;
  Vector upper;
  Vector objective;
  std::vector<std::string> row_names;
  std::vector<std::string> col_names;
  /// Columns whose infinite bound was replaced by the big-bound box.
  std::vector<std::size_t> synthetic_bounds;

  /// Checks finiteness, dimensions and lower < upper componentwise.
  void validate() const;
};

/// InputLP whose rows of A all have Euclidean norm 1; row_scales holds the
/// original norms so reports can be mapped back.
struct NormalizedLP {
  InputLP lp;
  Vector row_scales;
};

/// Stacked system (A; I; -I) x <= (b; upper; -lower). Row layout:
///   [0, n)        rows of A
///   [n, n+d)      upper-bound rows, identity
///   [n+d, n+2d)   lower-bound rows, negated identity
struct FoldedLP {
  std::size_t n = 0;
  std::size_t d = 0;
  Matrix a_bar;  // (n + 2d) x d
  Vector b_bar;  // n + 2d

  std::size_t rows() const { return n + 2 * d; }
  bool is_box_row(std::size_t r) const { return r >= n; }
  /// Max violation of A_bar x <= b_bar; nonpositive means feasible.
  double max_violation(const Vector& x) const;
};

struct MpsOptions {
  /// Replacement magnitude for infinite bounds; the method needs a bounded box.
  double big_bound = 1e4;
};

InputLP parse_mps(std::istream& text, const MpsOptions& options = {});
InputLP parse_mps(const std::string& text, const MpsOptions& options = {});

/// Writes the internal max-form model back out; parse_mps(emit_mps(lp))
/// reproduces lp field by field.
std::string emit_mps(const InputLP& lp);

/// Debugging emitter.
std::string lp_to_json(const InputLP& lp);

NormalizedLP normalize_rows(const InputLP& lp);

FoldedLP fold_bounds(const NormalizedLP& lp, const Vector& perturbed_lower,
                     const Vector& perturbed_upper, const Vector& perturbed_rhs);

}  // namespace shadowlp
