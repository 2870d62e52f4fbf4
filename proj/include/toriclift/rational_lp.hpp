#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "toriclift/integer.hpp"

namespace toriclift {

enum class Relation { Equal, GreaterEqual };

struct LinearConstraint {
  IntVector coefficients;
  Relation relation = Relation::Equal;
  Integer rhs = 0;
};

/// Rational feasibility problem over Q^num_variables. Variables are free
/// unless flagged nonnegative.
struct FeasibilityProblem {
  std::size_t num_variables = 0;
  std::vector<bool> nonnegative;
  std::vector<LinearConstraint> constraints;

  explicit FeasibilityProblem(std::size_t n) : num_variables(n), nonnegative(n, false) {}

  void add(IntVector coefficients, Relation relation, Integer rhs = 0) {
    constraints.push_back({std::move(coefficients), relation, std::move(rhs)});
  }
};

/// Exact phase-one simplex with Bland's rule. Returns a feasible point or
/// nullopt when the system is infeasible. Homogeneous strict inequalities
/// a·x > 0 are expressed as a·x ≥ 1.
std::optional<std::vector<Rational>> find_feasible_point(const FeasibilityProblem& problem);

}  // namespace toriclift
