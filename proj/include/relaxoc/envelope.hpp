#pragma once

#include "relaxoc/parallel.hpp"
#include "relaxoc/problem.hpp"

#include <optional>
#include <vector>

namespace relaxoc {

/// Finite sample of the epigraph-strip multifunction at (t, x): the control
/// atoms of U(t, x) paired with their running-cost values, each capped by
/// the declared bound at the a-priori radius.
struct GammaSample {
  double t = 0.0;
  Vec x;
  std::vector<Vec> atoms;
  std::vector<double> values;
};

GammaSample gamma_sample(const Problem& problem, double t, const Vec& x, int n);

/// Lower convex envelope of the sampled integrand in the control argument:
/// the value of  min sum_i a_i eta_i  over convex weights with barycenter u.
/// Returns +infinity when u lies outside the hull of the sampled atoms.
/// One-dimensional controls use the sorted lower-hull closed form; higher
/// dimensions run an exact simplex iteration with Bland's rule.
double biconjugate(const Problem& problem, double t, const Vec& x, const Vec& u, int n);

/// Same program, also reporting the optimal weights (empty when infeasible).
struct EnvelopeValue {
  double value = kInfinity;
  std::vector<double> weights;  // over the sampled atoms; empty if infeasible
};
EnvelopeValue biconjugate_weights(const Problem& problem, double t, const Vec& x, const Vec& u,
                                  int n);

/// Per-interval envelope values along (traj, u): the data-parallel kernel
/// behind cost_Jr. Entry k is biconjugate at (t_k, x_k, u_k).
std::vector<double> biconjugate_profile(const Problem& problem, const Trajectory& traj,
                                        const Signal& u, int n, Exec exec = par::default_exec());

namespace detail {

/// min c.a  s.t.  E a = r, a >= 0, solved by two-phase tableau simplex with
/// Bland's rule. Returns nullopt when infeasible.
struct LpResult {
  double value;
  std::vector<double> solution;
};
std::optional<LpResult> simplex_equality_lp(const Mat& e, const Vec& r, const Vec& c);

/// Lower hull interpolation for scalar controls: value at u of the lower
/// convex envelope of the points (us[i], etas[i]); nullopt outside the span.
std::optional<double> lower_envelope_1d(std::vector<double> us, std::vector<double> etas,
                                        double u);

}  // namespace detail
}  // namespace relaxoc
