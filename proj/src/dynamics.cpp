#include "relaxoc/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace relaxoc {

namespace {

Vec checked_start(const MonotoneOperator& op, const Vec& x0) {
  if (!x0.allFinite()) throw std::invalid_argument("solve: non-finite initial state");
  Vec x = op.domain_project(x0);
  if ((x - x0).norm() > 1e-9)
    throw HypothesisViolation("solve: x0 is " + std::to_string((x - x0).norm()) +
                              " away from cl D(A)");
  return x;
}

/// One proximal semi-implicit sweep; forcing(k, x) supplies the explicit
/// part already evaluated at the left endpoint.
template <typename ForcingFn>
Trajectory sweep(const MonotoneOperator& op, const std::vector<double>& times, const Vec& x0,
                 ForcingFn&& forcing) {
  Trajectory traj;
  traj.times = times;
  traj.states.reserve(times.size());
  Vec x = checked_start(op, x0);
  traj.states.push_back(x);
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    const double dt = times[k + 1] - times[k];
    const Vec h = forcing(static_cast<int>(k), x);
    Vec xn = op.resolvent(dt, x - dt * h);
    worst = std::max(worst, op.graph_distance(xn, (x - xn) / dt - h));
    traj.states.push_back(xn);
    x = std::move(xn);
  }
  traj.residual = worst;
  return traj;
}

}  // namespace

Trajectory solve_forced(const MonotoneOperator& op, const Signal& h, const Vec& x0) {
  if (h.dim() != op.dim()) throw std::invalid_argument("solve_forced: forcing dimension mismatch");
  for (int k = 0; k < h.intervals(); ++k)
    if (!h.value(k).allFinite())
      throw std::invalid_argument("solve_forced: non-finite forcing on interval " +
                                  std::to_string(k));
  return sweep(op, h.times(), x0, [&](int k, const Vec&) { return h.value(k); });
}

Trajectory solve_controlled(const Problem& problem, const Signal& u) {
  if (u.dim() != problem.control_dim)
    throw std::invalid_argument("solve_controlled: control dimension mismatch");
  const double m_bound = problem.control_bound_M() + 1e-9;
  for (int k = 0; k < u.intervals(); ++k) {
    if (!u.value(k).allFinite())
      throw std::invalid_argument("solve_controlled: non-finite control on interval " +
                                  std::to_string(k));
    if (u.value(k).norm() > m_bound)
      throw HypothesisViolation("solve_controlled: |u| = " + std::to_string(u.value(k).norm()) +
                                " exceeds the bound M on interval " + std::to_string(k));
  }
  return sweep(problem.op, u.times(), problem.x0, [&](int k, const Vec& x) {
    return Vec(problem.field.apply(u.time(k), x, u.value(k)));
  });
}

Trajectory solve_young(const Problem& problem, const YoungControl& lam) {
  return solve_controlled(problem, barycenter_signal(lam));
}

double apriori_bound(const Problem& problem) {
  const StepProfile& a = problem.field.a();
  const StepProfile& a0 = problem.controls.a0();
  // Exact quadrature of a(s) * max(1, a0(s)) over the merged breakpoints.
  std::vector<double> cuts = a.times();
  cuts.insert(cuts.end(), a0.times().begin(), a0.times().end());
  cuts.push_back(problem.grid.horizon);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double a1 = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = std::min(cuts[i + 1], problem.grid.horizon);
    if (hi <= lo) continue;
    a1 += a(lo) * std::max(1.0, a0(lo)) * (hi - lo);
  }
  return (problem.x0.norm() + a1) * std::exp(a1);
}

std::vector<double> continuity_probe(const MonotoneOperator& op, const Vec& x0,
                                     const std::vector<Signal>& forcings,
                                     const Signal& reference) {
  const Trajectory base = solve_forced(op, reference, x0);
  std::vector<double> gaps;
  gaps.reserve(forcings.size());
  for (const Signal& h : forcings) {
    if (h.times() != reference.times())
      throw std::invalid_argument("continuity_probe: forcings must share the reference grid");
    gaps.push_back(solve_forced(op, h, x0).max_gap(base));
  }
  return gaps;
}

}  // namespace relaxoc
