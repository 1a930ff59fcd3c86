#pragma once

#include "relaxoc/chattering.hpp"
#include "relaxoc/problem.hpp"
#include "relaxoc/young.hpp"

#include <vector>

namespace relaxoc {

struct SolverOptions {
  int max_iterations = 5000;
  double fd_step = 1e-6;          // central-difference step
  double tol_decrease = 1e-10;    // stall threshold over stall_window iterations
  int stall_window = 20;
  double armijo_sigma = 1e-4;
  double shrink = 0.5;
  double initial_step = 1.0;
  int max_backtracks = 40;
};

enum class RelaxMode { Convexified, Young };

struct TraceEntry {
  int iteration = 0;
  double objective = 0.0;
  double step = 0.0;
};

/// Output of the relaxed solve. Both relaxation routes share the identical
/// inner problem over per-interval simplex weights, so `value` (the
/// transcription objective) is the same number either way; the two
/// reporting-path costs are recorded separately.
struct RelaxedSolution {
  Trajectory trajectory;
  YoungControl young;
  Signal barycenter;
  double value = 0.0;             // transcription objective at the optimum
  double value_convexified = 0.0; // cost_Jr of the barycenter signal
  double value_young = 0.0;       // cost_Jhat of the Young control
  bool converged = false;
  int best_start = 0;
  bool tie = false;               // distinct minimizers with equal values
  std::vector<TraceEntry> trace;  // winning start's accepted iterations
  std::vector<std::vector<double>> weights;  // per interval, over sampled atoms
};

/// Direct transcription of the relaxed problem over per-interval simplex
/// weights: projected gradient with central finite differences, sorting
/// projection, Armijo backtracking, multi-start from the uniform weights and
/// every vertex. A final per-interval envelope reweighting (an exact small
/// LP at fixed barycenters) aligns the objective with the sampled
/// biconjugate.
RelaxedSolution solve_relaxed(const Problem& problem, int atoms_n, RelaxMode mode,
                              const SolverOptions& options = {},
                              Exec exec = par::default_exec());

struct RelaxationReport {
  double m_r = 0.0;        // value of the convexified relaxation
  double m_hat_r = 0.0;    // value of the Young-measure relaxation
  double m_estimate = 0.0; // best chattered original cost
  bool solver_converged = false;
  std::vector<ConvergenceRow> table;
};

/// Chatters the relaxed solution for each cycle count and assembles the
/// relaxation report. When chatter_base is supplied the Young control is
/// rebinned onto those (coarser) breakpoints before time-sharing.
RelaxationReport estimate_original(const Problem& problem, const RelaxedSolution& sol,
                                   const std::vector<int>& cycle_list,
                                   const std::vector<double>* chatter_base = nullptr,
                                   Exec exec = par::default_exec());

}  // namespace relaxoc
