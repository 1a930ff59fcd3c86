#pragma once

#include "relaxoc/problem.hpp"
#include "relaxoc/young.hpp"

#include <vector>

namespace relaxoc {

/// Proximal implicit Euler for -x' in A(x) + h(t), x(0) = x0:
///     x_{k+1} = (I + dt_k A)^{-1} (x_k - dt_k h_k).
/// Runs on the forcing signal's (possibly non-uniform) breakpoints.
Trajectory solve_forced(const MonotoneOperator& op, const Signal& h, const Vec& x0);

/// Semi-implicit step for -x' in A(x) + f(t,x) u(t): the monotone part is
/// implicit through the resolvent, the control forcing explicit. Rejects
/// controls exceeding the bound M = ess-sup a0 (tolerance 1e-9).
Trajectory solve_controlled(const Problem& problem, const Signal& u);

/// Measure-driven dynamics. f acts linearly on u, so the measure integral
/// collapses to the barycenter and the state sequence matches
/// solve_controlled(barycenter signal) bit for bit.
Trajectory solve_young(const Problem& problem, const YoungControl& lam);

/// Gronwall constant c_hat = (|x0| + A1) exp(A1) with
/// A1 = integral of a(s) max(1, a0(s)) ds (exact step-function quadrature).
/// Every admissible trajectory satisfies sup |x| <= c_hat.
double apriori_bound(const Problem& problem);

/// sup-norm gaps |K(h_n) - K(reference)| for a family of forcings; a
/// diagnostic for the complete continuity of the solution map.
std::vector<double> continuity_probe(const MonotoneOperator& op, const Vec& x0,
                                     const std::vector<Signal>& forcings,
                                     const Signal& reference);

}  // namespace relaxoc
