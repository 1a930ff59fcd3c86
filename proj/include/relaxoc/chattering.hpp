#pragma once

#include "relaxoc/problem.hpp"
#include "relaxoc/young.hpp"

#include <vector>

namespace relaxoc {

/// Time-sharing plan: within each base interval the atoms are emitted in
/// index order, each for weight * (dt / cycles), repeated `cycles` times.
struct ChatterPlan {
  std::vector<double> base_times;
  int cycles = 1;
};

/// Realizes a measure-valued control as an ordinary signal on a refined
/// breakpoint set. Zero-weight atoms are skipped; the per-base-interval time
/// average equals the barycenter exactly.
Signal chatter_realize(const YoungControl& lam, int cycles);

struct FeedbackResult {
  Trajectory trajectory;
  Signal control;
  /// Largest observed |v - target| - k(t) |x_ref - x| along the run (only
  /// meaningful when a reference trajectory was supplied).
  double worst_slack = 0.0;
};

/// Forward simulation with the canonical selector v = proj_{U(t,x)}(target).
/// With a reference trajectory supplied, enforces the feedback inequality
/// |v - target| <= k(t) |x_ref(t) - x| + 1/n (tolerance 1e-6) at every step.
FeedbackResult feedback_correct(const Problem& problem, const Signal& target, int n,
                                const Trajectory* reference = nullptr);

struct ConvergenceRow {
  int cycles = 0;
  double weak_gap = 0.0;
  double state_gap = 0.0;
  double cost = 0.0;
  double gap_to_relaxed = 0.0;
};

/// One row per cycle count: chatter, feedback-correct, simulate, evaluate.
/// Rows are independent and run in parallel under Exec::Parallel.
std::vector<ConvergenceRow> convergence_table(const Problem& problem, const Trajectory& relaxed,
                                              const YoungControl& lam,
                                              const std::vector<int>& cycle_list,
                                              double relaxed_value,
                                              Exec exec = par::default_exec());

}  // namespace relaxoc
