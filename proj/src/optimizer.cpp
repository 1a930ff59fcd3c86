#include "relaxoc/optimizer.hpp"

#include "relaxoc/dynamics.hpp"
#include "relaxoc/envelope.hpp"
#include "relaxoc/relax_convex.hpp"
#include "relaxoc/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace relaxoc {

namespace {

/// Shared inner problem of both relaxation modes: per-interval simplex
/// weights over the atom sample, state driven by the barycenter forcing.
class Transcription {
 public:
  Transcription(const Problem& problem, int atoms_n)
      : problem_(problem), atoms_n_(atoms_n), intervals_(problem.grid.intervals) {
    const Vec x_start = problem_.op.domain_project(problem_.x0);
    atom_count_ = static_cast<int>(
        problem_.controls.sample_atoms(0.0, x_start, atoms_n_).size());
  }

  int intervals() const { return intervals_; }
  int atom_count() const { return atom_count_; }
  int vars() const { return intervals_ * atom_count_; }

  double objective(const Vec& w) const {
    double acc = 0.0;
    Vec x = problem_.op.domain_project(problem_.x0);
    const double dt = problem_.grid.dt();
    for (int k = 0; k < intervals_; ++k) {
      const double t = problem_.grid.time(k);
      const auto atoms = problem_.controls.sample_atoms(t, x, atoms_n_);
      Vec ubar = Vec::Zero(problem_.control_dim);
      double stage = 0.0;
      for (int i = 0; i < atom_count_; ++i) {
        const double wi = w[k * atom_count_ + i];
        ubar += wi * atoms[static_cast<std::size_t>(i)];
        stage += wi * problem_.cost.eval(t, x, atoms[static_cast<std::size_t>(i)]);
      }
      acc += dt * stage;
      const Vec h = problem_.field.apply(t, x, ubar);
      x = problem_.op.resolvent(dt, x - dt * h);
    }
    return acc;
  }

  /// Rollout that also records states, per-interval atoms and barycenters.
  struct Rollout {
    Trajectory trajectory;
    std::vector<std::vector<Vec>> atoms;
    std::vector<Vec> barycenters;
  };

  Rollout rollout(const Vec& w) const {
    Rollout r;
    r.trajectory.times = problem_.grid.breakpoints();
    Vec x = problem_.op.domain_project(problem_.x0);
    r.trajectory.states.push_back(x);
    const double dt = problem_.grid.dt();
    double residual = 0.0;
    for (int k = 0; k < intervals_; ++k) {
      const double t = problem_.grid.time(k);
      auto atoms = problem_.controls.sample_atoms(t, x, atoms_n_);
      Vec ubar = Vec::Zero(problem_.control_dim);
      for (int i = 0; i < atom_count_; ++i)
        ubar += w[k * atom_count_ + i] * atoms[static_cast<std::size_t>(i)];
      const Vec h = problem_.field.apply(t, x, ubar);
      Vec xn = problem_.op.resolvent(dt, x - dt * h);
      residual = std::max(residual, problem_.op.graph_distance(xn, (x - xn) / dt - h));
      r.atoms.push_back(std::move(atoms));
      r.barycenters.push_back(std::move(ubar));
      r.trajectory.states.push_back(xn);
      x = std::move(xn);
    }
    r.trajectory.residual = residual;
    return r;
  }

  Vec gradient(const Vec& w, double h, Exec exec) const {
    const int n = vars();
    Vec g(n);
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
      for (int i = 0; i < n; ++i) {
        Vec lo = w, hi = w;
        lo[i] -= h;
        hi[i] += h;
        g[i] = (objective(hi) - objective(lo)) / (2.0 * h);
      }
    } else {
      for (int i = 0; i < n; ++i) {
        Vec lo = w, hi = w;
        lo[i] -= h;
        hi[i] += h;
        g[i] = (objective(hi) - objective(lo)) / (2.0 * h);
      }
    }
    return g;
  }

  Vec project_blocks(Vec w) const {
    for (int k = 0; k < intervals_; ++k)
      w.segment(k * atom_count_, atom_count_) =
          project_simplex(w.segment(k * atom_count_, atom_count_));
    return w;
  }

  /// Exact per-interval envelope reweighting at fixed barycenters: each
  /// block is replaced by LP-optimal weights with the same barycenter, so
  /// the stage cost drops to the sampled biconjugate.
  Vec envelope_reweight(const Vec& w) const {
    const Rollout r = rollout(w);
    Vec out = w;
    const int m = problem_.control_dim;
    for (int k = 0; k < intervals_; ++k) {
      const double t = problem_.grid.time(k);
      const Vec& x = r.trajectory.states[static_cast<std::size_t>(k)];
      const auto& atoms = r.atoms[static_cast<std::size_t>(k)];
      Mat e(m + 1, atom_count_);
      Vec c(atom_count_);
      for (int i = 0; i < atom_count_; ++i) {
        e.col(i).head(m) = atoms[static_cast<std::size_t>(i)];
        e(m, i) = 1.0;
        c[i] = problem_.cost.eval(t, x, atoms[static_cast<std::size_t>(i)]);
      }
      Vec rhs(m + 1);
      rhs.head(m) = r.barycenters[static_cast<std::size_t>(k)];
      rhs[m] = 1.0;
      if (auto lp = detail::simplex_equality_lp(e, rhs, c)) {
        double total = 0.0;
        for (double v : lp->solution) total += std::max(v, 0.0);
        if (total > 0.0)
          for (int i = 0; i < atom_count_; ++i)
            out[k * atom_count_ + i] = std::max(lp->solution[static_cast<std::size_t>(i)], 0.0) / total;
      }
    }
    return out;
  }

  const Problem& problem() const { return problem_; }
  int sample_size() const { return atoms_n_; }

 private:
  const Problem& problem_;
  int atoms_n_;
  int intervals_;
  int atom_count_ = 0;
};

struct StartResult {
  Vec weights;
  double value = kInfinity;
  bool converged = false;
  std::vector<TraceEntry> trace;
};

StartResult run_start(const Transcription& tr, Vec w0, const SolverOptions& opt, Exec exec) {
  StartResult res;
  Vec w = tr.project_blocks(std::move(w0));
  double f = tr.objective(w);
  res.trace.push_back({0, f, 0.0});
  std::vector<double> history{f};
  double step = opt.initial_step;
  bool stalled = false;

  for (int iter = 1; iter <= opt.max_iterations; ++iter) {
    const Vec g = tr.gradient(w, opt.fd_step, exec);
    double s = step;
    bool accepted = false;
    Vec cand;
    double fc = f;
    for (int bt = 0; bt <= opt.max_backtracks; ++bt) {
      cand = tr.project_blocks(w - s * g);
      const double predicted = g.dot(w - cand);
      fc = tr.objective(cand);
      if (fc <= f - opt.armijo_sigma * predicted) {
        accepted = true;
        break;
      }
      s *= opt.shrink;
    }
    if (!accepted) {
      stalled = true;  // no descent along the projection arc
      break;
    }
    const double moved = (cand - w).lpNorm<Eigen::Infinity>();
    w = std::move(cand);
    f = fc;
    res.trace.push_back({iter, f, s});
    history.push_back(f);
    step = std::min(s * 2.0, 1e3);

    if (moved <= 1e-14) {
      stalled = true;
      break;
    }
    const int window = opt.stall_window;
    if (static_cast<int>(history.size()) > window) {
      const double past = history[history.size() - 1 - static_cast<std::size_t>(window)];
      if (past - f < opt.tol_decrease) {
        stalled = true;
        break;
      }
    }
  }

  // Exact envelope reweighting at the fixed barycenters.
  Vec rw = tr.envelope_reweight(w);
  const double frw = tr.objective(rw);
  if (frw <= f + 1e-12) {
    w = std::move(rw);
    if (frw < f) res.trace.push_back({res.trace.back().iteration + 1, frw, 0.0});
    f = std::min(f, frw);
  }

  res.weights = std::move(w);
  res.value = f;
  res.converged = stalled;
  return res;
}

}  // namespace

RelaxedSolution solve_relaxed(const Problem& problem, int atoms_n, RelaxMode mode,
                              const SolverOptions& options, Exec exec) {
  (void)mode;  // both modes share the identical inner problem
  problem.validate_shape();
  if (atoms_n < 1) throw std::invalid_argument("solve_relaxed: atoms_n must be positive");
  Transcription tr(problem, atoms_n);
  const int blocks = tr.intervals();
  const int count = tr.atom_count();

  std::vector<Vec> starts;
  starts.push_back(Vec::Constant(tr.vars(), 1.0 / count));
  for (int j = 0; j < count; ++j) {
    Vec v = Vec::Zero(tr.vars());
    for (int k = 0; k < blocks; ++k) v[k * count + j] = 1.0;
    starts.push_back(std::move(v));
  }

  StartResult best;
  int best_index = -1;
  bool tie = false;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    StartResult r = run_start(tr, starts[s], options, exec);
    if (best_index < 0 || r.value < best.value) {
      best = std::move(r);
      best_index = static_cast<int>(s);
      tie = false;
    } else if (std::abs(r.value - best.value) <= 1e-12 &&
               (r.weights - best.weights).lpNorm<Eigen::Infinity>() > 1e-6) {
      tie = true;
    }
  }

  const Transcription::Rollout roll = tr.rollout(best.weights);

  RelaxedSolution sol;
  sol.value = best.value;
  sol.converged = best.converged;
  sol.best_start = best_index;
  sol.tie = tie;
  sol.trace = std::move(best.trace);

  // Assemble the Young control (weights renormalized against projection
  // round-off) and the barycenter signal; then rebuild the trajectory
  // through the public integrator so relaxed artifacts and direct solves
  // agree bit for bit.
  std::vector<DiscreteMeasure> measures;
  std::vector<Vec> bary_values;
  sol.weights.resize(static_cast<std::size_t>(blocks));
  for (int k = 0; k < blocks; ++k) {
    std::vector<double> wk(static_cast<std::size_t>(count));
    double total = 0.0;
    for (int i = 0; i < count; ++i) {
      wk[static_cast<std::size_t>(i)] = std::max(best.weights[k * count + i], 0.0);
      total += wk[static_cast<std::size_t>(i)];
    }
    for (double& v : wk) v /= total;
    sol.weights[static_cast<std::size_t>(k)] = wk;
    measures.emplace_back(roll.atoms[static_cast<std::size_t>(k)], wk);
    bary_values.push_back(measures.back().barycenter());
  }
  sol.young = YoungControl(problem.grid.breakpoints(), std::move(measures));
  sol.barycenter = Signal(problem.grid.breakpoints(), std::move(bary_values));
  sol.trajectory = solve_controlled(problem, sol.barycenter);

  sol.value_convexified = cost_Jr(problem, sol.trajectory, sol.barycenter, atoms_n, exec);
  sol.value_young = cost_Jhat(problem, sol.trajectory, sol.young);
  return sol;
}

RelaxationReport estimate_original(const Problem& problem, const RelaxedSolution& sol,
                                   const std::vector<int>& cycle_list,
                                   const std::vector<double>* chatter_base, Exec exec) {
  RelaxationReport rep;
  rep.m_r = sol.value_convexified;
  rep.m_hat_r = sol.value_young;
  rep.solver_converged = sol.converged;
  const YoungControl lam = chatter_base ? rebin(sol.young, *chatter_base) : sol.young;
  rep.table = convergence_table(problem, sol.trajectory, lam, cycle_list, rep.m_r, exec);
  rep.m_estimate = kInfinity;
  for (const auto& row : rep.table) rep.m_estimate = std::min(rep.m_estimate, row.cost);
  return rep;
}

}  // namespace relaxoc
