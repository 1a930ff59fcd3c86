#pragma once

#include "relaxoc/envelope.hpp"
#include "relaxoc/problem.hpp"

#include <string>

namespace relaxoc {

/// Original cost: left-endpoint rectangle quadrature of L(t, x(t), u(t)),
/// matching the integrator's forcing convention. Admissibility of the pair
/// is the caller's contract (check_admissible); the quadrature itself is
/// defined for any pair on a shared grid.
double cost_J(const Problem& problem, const Trajectory& traj, const Signal& u);

/// Relaxed cost: quadrature of the sampled biconjugate along the pair.
/// +infinity as soon as some u(t_k) leaves the hull of the sampled atoms.
double cost_Jr(const Problem& problem, const Trajectory& traj, const Signal& u, int n,
               Exec exec = par::default_exec());

enum class AdmissibilityMode { Original, Convexified };

struct AdmissibilityReport {
  bool admissible = true;
  int first_bad_index = -1;
  double worst_control_distance = 0.0;
  double worst_state_error = 0.0;
  std::string detail;
};

/// Original mode: u(t_k) within 1e-8 of U(t_k, x_k) and the state sequence
/// replays the semi-implicit recursion within 1e-8. Convexified mode checks
/// distance to the hull of the sampled atoms instead (n = sample size).
AdmissibilityReport check_admissible(const Problem& problem, const Trajectory& traj,
                                     const Signal& u, AdmissibilityMode mode, int n = 9);

/// Euclidean distance from target to the convex hull of finitely many atoms.
/// Exact interval arithmetic for one-dimensional controls; a deterministic
/// projected-gradient quadratic program otherwise.
double hull_distance(const std::vector<Vec>& atoms, const Vec& target);

}  // namespace relaxoc
