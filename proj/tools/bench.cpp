// Compares the serial reference kernels against their OpenMP variants on
// sizable fixtures and prints a timing table.

#include "relaxoc/builtins.hpp"
#include "relaxoc/control_set.hpp"
#include "relaxoc/dynamics.hpp"
#include "relaxoc/envelope.hpp"
#include "relaxoc/optimizer.hpp"
#include "relaxoc/parallel.hpp"
#include "relaxoc/relax_convex.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

using namespace relaxoc;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  fn();  // warm up
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s %12.3f %12.3f %10.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", par::threads());
  std::printf("%-28s %12s %12s %10s\n", "kernel", "serial(ms)", "openmp(ms)", "speedup");

  {
    // Envelope profile over a fine grid of a planar double-well problem.
    Problem p = builtins::p4(2000);
    const Signal u = Signal::constant(p.grid, Vec::Zero(2));
    const Trajectory traj = solve_controlled(p, u);
    const int atoms = 9;
    volatile double sink = 0.0;
    const double s = time_ms([&] { sink = cost_Jr(p, traj, u, atoms, Exec::Serial); }, 3);
    const double q = time_ms([&] { sink = cost_Jr(p, traj, u, atoms, Exec::Parallel); }, 3);
    (void)sink;
    row("envelope profile (K=2000)", s, q);
  }

  {
    // Weak norm of a planar signal with many breakpoints.
    const Grid g(1.0, 6000);
    const Signal u = Signal::from_function(g, [](double t) {
      Vec v(2);
      v << std::sin(40.0 * t), std::cos(17.0 * t);
      return v;
    });
    volatile double sink = 0.0;
    const double s = time_ms([&] { sink = weak_norm(u, Exec::Serial); }, 3);
    const double q = time_ms([&] { sink = weak_norm(u, Exec::Parallel); }, 3);
    (void)sink;
    row("weak norm (K=6000, m=2)", s, q);
  }

  {
    // One projected-gradient solve; the finite-difference sweep dominates.
    Problem p = builtins::p1(100);
    SolverOptions opt;
    opt.max_iterations = 40;
    volatile double sink = 0.0;
    const double s = time_ms(
        [&] { sink = solve_relaxed(p, 2, RelaxMode::Convexified, opt, Exec::Serial).value; }, 1);
    const double q = time_ms(
        [&] { sink = solve_relaxed(p, 2, RelaxMode::Convexified, opt, Exec::Parallel).value; }, 1);
    (void)sink;
    row("fd gradient solve (K=100)", s, q);
  }

  {
    // Independent chatter rows.
    Problem p = builtins::p1(50);
    const RelaxedSolution sol = solve_relaxed(p, 2, RelaxMode::Convexified);
    const std::vector<int> cycles{1, 2, 3, 5, 8, 12, 20, 40, 80, 160};
    volatile double sink = 0.0;
    const double s = time_ms(
        [&] {
          sink = convergence_table(p, sol.trajectory, sol.young, cycles, sol.value, Exec::Serial)
                     .back()
                     .cost;
        },
        3);
    const double q = time_ms(
        [&] {
          sink = convergence_table(p, sol.trajectory, sol.young, cycles, sol.value, Exec::Parallel)
                     .back()
                     .cost;
        },
        3);
    (void)sink;
    row("chatter table (10 rows)", s, q);
  }

  return 0;
}
