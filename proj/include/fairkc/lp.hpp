#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fairkc/core.hpp"

namespace fairkc {

enum class Relation { kLessEq, kEqual, kGreaterEq };

struct LinearConstraint {
  std::vector<std::pair<int, double>> coeffs;  // (variable, coefficient)
  Relation relation = Relation::kEqual;
  double rhs = 0.0;
};

/// A feasibility-only linear program over box-bounded variables.
struct LinearProgram {
  int num_vars = 0;
  std::vector<LinearConstraint> constraints;
  std::vector<double> lower;  // per variable
  std::vector<double> upper;  // per variable

  explicit LinearProgram(int vars = 0)
      : num_vars(vars), lower(vars, 0.0), upper(vars, 1.0) {}

  int add_var(double lo = 0.0, double hi = 1.0) {
    lower.push_back(lo);
    upper.push_back(hi);
    return num_vars++;
  }
  void add(LinearConstraint c) { constraints.push_back(std::move(c)); }

  /// Throws std::invalid_argument when a coefficient is non-finite, a
  /// constraint is empty or references an unknown variable, or a bound pair
  /// is inverted.
  void validate() const;
  /// Largest constraint or bound residual at `x` (0 when satisfied).
  double max_violation(std::span<const double> x) const;
};

// The simplex hit its iteration cap.
class NumericFailure : public Error {
 public:
  using Error::Error;
};

// Some point has no admissible center at the requested radius.
class EmptyRow : public Error {
 public:
  using Error::Error;
};

inline constexpr double kLpFeasibilityTol = 1e-7;

/// Returns a point satisfying every constraint within 1e-7, or nullopt when
/// the program is infeasible. Bounded-variable primal simplex on the phase-1
/// problem with Bland's rule, so the result is deterministic. Throws
/// NumericFailure past 50 * (num_vars + num_constraints) iterations.
std::optional<std::vector<double>> solve_feasibility(const LinearProgram& lp);

/// The fair-assignment LP with one variable x_{ij} per center slot i and point
/// j within distance R of each other.
struct AssignmentLp {
  LinearProgram lp;
  std::vector<std::pair<int, int>> vars;  // variable -> (center slot, point)
};

AssignmentLp build_assignment_lp(const Instance& inst,
                                 std::span<const int> centers, double radius,
                                 const GFBounds& gfb);

/// Reads a solution of `build_assignment_lp` back as a fractional assignment.
FractionalAssignment to_fractional(const Instance& inst,
                                   std::span<const int> centers,
                                   const AssignmentLp& alp,
                                   std::span<const double> x);

/// Solves LP(C, S, R) and returns the fractional assignment, or nullopt when
/// infeasible (including when some point has no center within R).
///
/// Points sharing a color and the same admissible center set are
/// interchangeable, so the program is solved over those classes and the
/// class solution is spread uniformly over its members. A single center is
/// decided from the global color proportions without running the simplex.
std::optional<FractionalAssignment> solve_assignment_lp(
    const Instance& inst, std::span<const int> centers, double radius,
    const GFBounds& gfb);

}  // namespace fairkc
