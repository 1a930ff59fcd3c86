#pragma once

#include "relaxoc/problem.hpp"

namespace relaxoc::builtins {

/// Classic chattering problem: A = 0, f = 1, U = {-1, +1},
/// L = x^2 + (1 - u^2)^2, x0 = 0, b = 1. The relaxed optimum is 0 with the
/// half/half two-atom measure; the original infimum 0 is not attained.
Problem p1(int grid_k = 50);

/// Unilateral problem: A = normal cone to [0, inf), f = 1, U = [-1, 1],
/// L = (x - 1)^2 + 0.1 u^2, x0 = 1, b = 2. Exercises D(A) != R^N.
Problem p2(int grid_k = 50);

/// State-dependent constraint set: U(t, x) = {-1, 1} + 0.5 sat(x) with
/// k = 0.5, L = x^2. Exercises the Hausdorff-Lipschitz hypothesis and
/// feedback correction.
Problem p3(int grid_k = 50);

/// Planar problem with a non-symmetric linear monotone operator, ball
/// control set and a double-well control penalty; exercises the
/// two-dimensional envelope program.
Problem p4(int grid_k = 32);

/// Lookup by name ("p1".."p4"); throws on unknown names.
Problem by_name(const std::string& name, int grid_k);

}  // namespace relaxoc::builtins
