#include "relaxoc/relax_convex.hpp"

#include "relaxoc/dynamics.hpp"
#include "relaxoc/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace relaxoc {

namespace {
constexpr double kControlTol = 1e-8;
constexpr double kStateTol = 1e-8;
}  // namespace

double cost_J(const Problem& problem, const Trajectory& traj, const Signal& u) {
  if (traj.times.size() != u.times().size())
    throw std::invalid_argument("cost_J: trajectory/control grid mismatch");
  double acc = 0.0;
  for (int k = 0; k < u.intervals(); ++k)
    acc += u.duration(k) *
           problem.cost.eval(u.time(k), traj.states[static_cast<std::size_t>(k)], u.value(k));
  return acc;
}

double cost_Jr(const Problem& problem, const Trajectory& traj, const Signal& u, int n, Exec exec) {
  const std::vector<double> env = biconjugate_profile(problem, traj, u, n, exec);
  double acc = 0.0;
  for (int k = 0; k < u.intervals(); ++k) {
    if (!std::isfinite(env[static_cast<std::size_t>(k)])) return kInfinity;
    acc += u.duration(k) * env[static_cast<std::size_t>(k)];
  }
  return acc;
}

double hull_distance(const std::vector<Vec>& atoms, const Vec& target) {
  if (atoms.empty()) throw std::invalid_argument("hull_distance: empty atom list");
  const int m = static_cast<int>(target.size());
  if (m == 1) {
    double lo = atoms[0][0], hi = atoms[0][0];
    for (const Vec& a : atoms) {
      lo = std::min(lo, a[0]);
      hi = std::max(hi, a[0]);
    }
    if (target[0] < lo) return lo - target[0];
    if (target[0] > hi) return target[0] - hi;
    return 0.0;
  }
  // min |A w - target|^2 over the simplex, by projected gradient with a
  // fixed step 1/(2 L). Deterministic and adequate for the small atom nets
  // used here.
  const int n = static_cast<int>(atoms.size());
  Mat a(m, n);
  for (int j = 0; j < n; ++j) a.col(j) = atoms[static_cast<std::size_t>(j)];
  const double lip = 2.0 * (a.transpose() * a).norm() + 1e-12;
  Vec w = Vec::Constant(n, 1.0 / n);
  for (int it = 0; it < 2000; ++it) {
    const Vec grad = 2.0 * a.transpose() * (a * w - target);
    const Vec next = project_simplex(w - grad / lip);
    if ((next - w).norm() <= 1e-14) {
      w = next;
      break;
    }
    w = next;
  }
  return (a * w - target).norm();
}

AdmissibilityReport check_admissible(const Problem& problem, const Trajectory& traj,
                                     const Signal& u, AdmissibilityMode mode, int n) {
  AdmissibilityReport rep;
  if (traj.times.size() != u.times().size()) {
    rep.admissible = false;
    rep.detail = "trajectory and control live on different grids";
    return rep;
  }

  // Control constraint along the supplied states.
  for (int k = 0; k < u.intervals(); ++k) {
    const double t = u.time(k);
    const Vec& x = traj.states[static_cast<std::size_t>(k)];
    double dist;
    if (mode == AdmissibilityMode::Original) {
      dist = problem.controls.distance(t, x, u.value(k));
    } else {
      dist = hull_distance(problem.controls.sample_atoms(t, x, n), u.value(k));
    }
    if (dist > rep.worst_control_distance) rep.worst_control_distance = dist;
    if (dist > kControlTol && rep.first_bad_index < 0) {
      rep.admissible = false;
      rep.first_bad_index = k;
      rep.detail = "control leaves the constraint set at interval " + std::to_string(k) +
                   " (distance " + std::to_string(dist) + ")";
    }
  }

  // Dynamics replay: the supplied states must reproduce the semi-implicit
  // recursion started from the supplied initial state.
  Vec x = problem.op.domain_project(traj.states.front());
  double replay_err = (x - traj.states.front()).norm();
  for (int k = 0; k < u.intervals(); ++k) {
    const double dt = u.duration(k);
    const Vec h = problem.field.apply(u.time(k), x, u.value(k));
    x = problem.op.resolvent(dt, x - dt * h);
    const double err = (x - traj.states[static_cast<std::size_t>(k) + 1]).norm();
    if (err > replay_err) replay_err = err;
    if (err > kStateTol) {
      rep.admissible = false;
      if (rep.detail.empty()) {
        rep.first_bad_index = k + 1;
        rep.detail = "state sequence deviates from the dynamics at index " +
                     std::to_string(k + 1) + " (error " + std::to_string(err) + ")";
      }
      rep.worst_state_error = std::max(rep.worst_state_error, err);
      // Continue replay from the supplied state so one bad entry is
      // reported tightly instead of cascading.
      x = traj.states[static_cast<std::size_t>(k) + 1];
      continue;
    }
    rep.worst_state_error = std::max(rep.worst_state_error, err);
  }
  return rep;
}

}  // namespace relaxoc
