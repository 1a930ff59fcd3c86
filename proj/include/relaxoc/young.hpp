#pragma once

#include "relaxoc/grid.hpp"
#include "relaxoc/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace relaxoc {

struct Problem;
struct Trajectory;

/// Finitely supported probability measure on the control space.
/// Weights are nonnegative and sum to one (tolerance 1e-12); atoms are
/// pairwise distinct.
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::vector<Vec> atoms, std::vector<double> weights);
  static DiscreteMeasure dirac(Vec atom);

  int atom_count() const { return static_cast<int>(atoms_.size()); }
  int dim() const { return static_cast<int>(atoms_[0].size()); }
  const Vec& atom(int i) const { return atoms_[static_cast<std::size_t>(i)]; }
  double weight(int i) const { return weights_[static_cast<std::size_t>(i)]; }
  const std::vector<Vec>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }

  Vec barycenter() const;

 private:
  std::vector<Vec> atoms_;
  std::vector<double> weights_;
};

/// Piecewise-constant measure-valued control: measures[k] acts on
/// [times[k], times[k+1]).
struct YoungControl {
  std::vector<double> times;
  std::vector<DiscreteMeasure> measures;

  YoungControl() = default;
  YoungControl(std::vector<double> t, std::vector<DiscreteMeasure> m);
  static YoungControl constant(const Grid& g, DiscreteMeasure mu);

  int intervals() const { return static_cast<int>(measures.size()); }
  int dim() const { return measures.empty() ? 0 : measures[0].dim(); }
  double duration(int k) const { return times[static_cast<std::size_t>(k) + 1] - times[static_cast<std::size_t>(k)]; }
};

Vec barycenter(const DiscreteMeasure& mu);
Signal barycenter_signal(const YoungControl& lam);

/// The ordinary control u viewed as the Dirac-valued Young control.
YoungControl dirac_embed(const Signal& u);

/// Time-weighted average of the measures onto a coarser breakpoint set
/// (atoms within 1e-12 are merged). Coarse breakpoints must be a subset of
/// the fine ones.
YoungControl rebin(const YoungControl& lam, const std::vector<double>& coarse_times);

/// Relaxed cost: sum over intervals of dt * sum_i w_i L(t_k, x_k, atom_i).
/// Throws HypothesisViolation naming (interval, atom) if some atom leaves
/// U(t_k, x_k) by more than 1e-9.
double cost_Jhat(const Problem& problem, const Trajectory& traj, const YoungControl& lam);

struct TestFunction {
  std::string name;
  std::function<double(double, const Vec&)> fn;
};

/// The registered bounded test family for narrow-topology diagnostics:
/// 1, u_j, u_j u_l, cos(pi t) u_j, |u|^2.
std::vector<TestFunction> registered_test_functions(int control_dim);

/// I_phi(lambda) = sum_k dt_k sum_i w_{k,i} phi(t_k, atom_{k,i}).
double narrow_functional(const YoungControl& lam, const TestFunction& phi);

struct SupportReport {
  bool ok = true;
  int interval = -1;
  int atom = -1;
  double distance = 0.0;
};

/// Verifies every atom of lam lies within 1e-9 of U(t_k, x_k).
SupportReport young_support_check(const Problem& problem, const Trajectory& traj,
                                  const YoungControl& lam);

}  // namespace relaxoc
