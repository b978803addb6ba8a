#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "splitspan/rational.hpp"

namespace splitspan {

enum class Relation { Equal, GreaterEqual, LessEqual };

struct LinearConstraint {
  std::vector<Rat> coeffs;  // one per variable
  Relation relation = Relation::Equal;
  Rat rhs;
};

/// minimize objective . x subject to the constraints and x >= 0.
struct LinearProgram {
  std::size_t variables = 0;
  std::vector<Rat> objective;
  std::vector<LinearConstraint> constraints;

  void add(std::vector<Rat> coeffs, Relation relation, Rat rhs) {
    constraints.push_back({std::move(coeffs), relation, rhs});
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat value;
  std::vector<Rat> x;
};

/// Exact two-phase primal simplex with Bland's rule.
LpResult solve_lp(const LinearProgram& lp);

struct FloatLpResult {
  LpStatus status = LpStatus::Infeasible;
  double value = 0;
  std::vector<double> x;
  /// Row multipliers: optimal duals, or a Farkas ray when infeasible.
  std::vector<double> duals;
};

/// Double-precision counterpart of solve_lp. Its answers are heuristic; use
/// certified_bound to turn the multipliers into an exact statement.
FloatLpResult solve_lp_float(const LinearProgram& lp);

/// Exact lower bound on objective . x (or on 0 when with_objective is false)
/// over all feasible x with sum(x) <= total, derived from arbitrary row
/// multipliers y. A result above the objective's threshold (above 0 in the
/// Farkas case) proves that no such x exists.
Rat certified_bound(const LinearProgram& lp, std::vector<Rat> y, const Rat& total,
                    bool with_objective);

/// Best rational approximation of v with denominator at most max_den.
Rat rationalize(double v, std::int64_t max_den = 1 << 16);

}  // namespace splitspan
