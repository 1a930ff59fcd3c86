#include "relaxoc/chattering.hpp"

#include "relaxoc/control_set.hpp"
#include "relaxoc/dynamics.hpp"
#include "relaxoc/relax_convex.hpp"

#include <algorithm>
#include <cmath>

namespace relaxoc {

Signal chatter_realize(const YoungControl& lam, int cycles) {
  if (cycles < 1) throw std::invalid_argument("chatter_realize: cycles must be positive");
  std::vector<double> times{lam.times.front()};
  std::vector<Vec> values;
  for (int k = 0; k < lam.intervals(); ++k) {
    const auto& mu = lam.measures[static_cast<std::size_t>(k)];
    const double dt = lam.duration(k);
    double t = lam.times[static_cast<std::size_t>(k)];
    for (int c = 0; c < cycles; ++c) {
      for (int i = 0; i < mu.atom_count(); ++i) {
        const double w = mu.weight(i);
        if (w == 0.0) continue;  // no zero-length sub-intervals
        t += w * dt / cycles;
        values.push_back(mu.atom(i));
        times.push_back(t);
      }
    }
    times.back() = lam.times[static_cast<std::size_t>(k) + 1];  // pin against accumulation drift
  }
  return Signal(std::move(times), std::move(values));
}

FeedbackResult feedback_correct(const Problem& problem, const Signal& target, int n,
                                const Trajectory* reference) {
  if (n < 1) throw std::invalid_argument("feedback_correct: index must be positive");
  FeedbackResult out{Trajectory{}, target, 0.0};

  Trajectory traj;
  traj.times = target.times();
  Vec x = problem.op.domain_project(problem.x0);
  if ((x - problem.x0).norm() > 1e-9)
    throw HypothesisViolation("feedback_correct: x0 is not in cl D(A)");
  traj.states.push_back(x);

  std::vector<Vec> corrected;
  corrected.reserve(static_cast<std::size_t>(target.intervals()));
  const StepProfile& lip = problem.controls.lipschitz_k();
  double residual = 0.0;
  double worst_slack = -kInfinity;

  for (int k = 0; k < target.intervals(); ++k) {
    const double t = target.time(k);
    const Vec v = problem.controls.nearest_point(t, x, target.value(k));
    if (reference != nullptr) {
      const double allowance = lip(t) * (reference->at(t) - x).norm() + 1.0 / n;
      const double slack = (v - target.value(k)).norm() - allowance;
      worst_slack = std::max(worst_slack, slack + 1.0 / n);
      if (slack > 1e-6)
        throw HypothesisViolation(
            "feedback_correct: selection inequality violated at interval " + std::to_string(k) +
            " (excess " + std::to_string(slack) + "); the declared k(t) understates U's drift");
    }
    corrected.push_back(v);
    const double dt = target.duration(k);
    const Vec h = problem.field.apply(t, x, v);
    Vec xn = problem.op.resolvent(dt, x - dt * h);
    residual = std::max(residual, problem.op.graph_distance(xn, (x - xn) / dt - h));
    traj.states.push_back(xn);
    x = std::move(xn);
  }
  traj.residual = residual;
  out.trajectory = std::move(traj);
  out.control = Signal(target.times(), std::move(corrected));
  out.worst_slack = reference ? worst_slack : 0.0;
  return out;
}

std::vector<ConvergenceRow> convergence_table(const Problem& problem, const Trajectory& relaxed,
                                              const YoungControl& lam,
                                              const std::vector<int>& cycle_list,
                                              double relaxed_value, Exec exec) {
  const Signal bary = barycenter_signal(lam);
  const int rows = static_cast<int>(cycle_list.size());
  std::vector<ConvergenceRow> table(static_cast<std::size_t>(rows));

  auto build_row = [&](int r) {
    const int n = cycle_list[static_cast<std::size_t>(r)];
    const Signal chattered = chatter_realize(lam, n);
    const FeedbackResult fb = feedback_correct(problem, chattered, n, &relaxed);
    ConvergenceRow row;
    row.cycles = n;
    row.weak_gap = weak_norm(fb.control - bary, Exec::Serial);
    row.state_gap = fb.trajectory.max_gap(relaxed);
    row.cost = cost_J(problem, fb.trajectory, fb.control);
    row.gap_to_relaxed = std::abs(row.cost - relaxed_value);
    table[static_cast<std::size_t>(r)] = row;
  };

  if (exec == Exec::Parallel) {
    // Exceptions must not unwind across the parallel region.
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(rows));
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < rows; ++r) {
      try {
        build_row(r);
      } catch (...) {
        errors[static_cast<std::size_t>(r)] = std::current_exception();
      }
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  } else {
    for (int r = 0; r < rows; ++r) build_row(r);
  }
  return table;
}

}  // namespace relaxoc
