#pragma once

#include "relaxoc/grid.hpp"
#include "relaxoc/parallel.hpp"
#include "relaxoc/types.hpp"

#include <utility>
#include <vector>

namespace relaxoc {

enum class ControlSetKind { FiniteAtoms, Box, Ball };

/// State-dependent control constraint set U(t, x) together with its declared
/// hypothesis profiles: the bound a0 (sup |u| over U) and the Hausdorff
/// Lipschitz modulus k. Three representations:
///
///   FiniteAtoms  fixed atoms, optionally translated by state_gain * sat(x)
///                where sat clamps the leading control_dim components of x
///                into [-1, 1] componentwise
///   Box          axis box [lo, hi]
///   Ball         Euclidean ball
///
/// For hull and envelope work the set is always materialized as a finite
/// deterministic atom sample (sample_atoms).
class ControlSetSpec {
 public:
  static ControlSetSpec finite_atoms(std::vector<Vec> atoms, double state_gain = 0.0);
  static ControlSetSpec box(Vec lo, Vec hi);
  static ControlSetSpec ball(Vec center, double radius);

  ControlSetSpec& with_profiles(StepProfile a0, StepProfile k);

  ControlSetKind kind() const { return kind_; }
  int control_dim() const { return dim_; }
  bool state_dependent() const { return kind_ == ControlSetKind::FiniteAtoms && state_gain_ != 0.0; }
  double state_gain() const { return state_gain_; }

  const StepProfile& a0() const { return a0_; }
  const StepProfile& lipschitz_k() const { return k_; }
  /// M = ess-sup a0; the control ball B_M contains every U(t, x).
  double bound_M() const { return a0_.max_value(); }

  /// Deterministic finite net of at most n points of U(t, x), always
  /// containing the extreme points (box vertices for control_dim <= 3,
  /// +/- radius resp. equi-angular boundary points for balls).
  std::vector<Vec> sample_atoms(double t, const Vec& x, int n) const;

  /// Metric projection onto U(t, x); ties broken by the lexicographically
  /// smallest point.
  Vec nearest_point(double t, const Vec& x, const Vec& target) const;

  double distance(double t, const Vec& x, const Vec& target) const {
    return (nearest_point(t, x, target) - target).norm();
  }

 private:
  explicit ControlSetSpec(ControlSetKind kind) : kind_(kind) {}

  ControlSetKind kind_;
  int dim_ = 0;
  std::vector<Vec> atoms_;
  double state_gain_ = 0.0;
  Vec lo_, hi_;
  Vec center_;
  double radius_ = 0.0;
  StepProfile a0_{0.0};
  StepProfile k_{0.0};
};

/// Hausdorff distance between two finite nonempty point sets.
double hausdorff(const std::vector<Vec>& a, const std::vector<Vec>& b);

/// max over the given state pairs of h(U(t,x), U(t,y)) / |x - y| with the
/// sets materialized through sample_atoms.
double lipschitz_probe(const ControlSetSpec& spec, double t,
                       const std::vector<std::pair<Vec, Vec>>& state_pairs, int n);

/// Weak norm of a piecewise-constant signal: sup over breakpoint pairs of
/// the Euclidean norm of the partial integral, which is exact for this
/// signal class. One-dimensional signals reduce to max - min of the
/// cumulative integral; higher dimensions scan breakpoint pairs.
double weak_norm(const Signal& u, Exec exec = par::default_exec());

}  // namespace relaxoc
