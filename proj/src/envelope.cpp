#include "relaxoc/envelope.hpp"

#include "relaxoc/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace relaxoc {

namespace detail {

std::optional<double> lower_envelope_1d(std::vector<double> us, std::vector<double> etas,
                                        double u) {
  const std::size_t n = us.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return us[a] < us[b] || (us[a] == us[b] && etas[a] < etas[b]);
  });

  // Deduplicate equal abscissae keeping the lowest value.
  std::vector<double> xs, ys;
  xs.reserve(n);
  ys.reserve(n);
  for (std::size_t i : order) {
    if (!xs.empty() && us[i] == xs.back()) continue;
    xs.push_back(us[i]);
    ys.push_back(etas[i]);
  }

  const double span = std::max(std::abs(xs.front()), std::abs(xs.back()));
  const double edge_tol = 1e-12 * (1.0 + span);
  if (u < xs.front() - edge_tol || u > xs.back() + edge_tol) return std::nullopt;

  // Monotone-chain lower hull of (xs, ys).
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2], b = hull[hull.size() - 1];
      const double cross =
          (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a]);
      if (cross <= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }

  const double uc = std::clamp(u, xs.front(), xs.back());
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const std::size_t a = hull[s], b = hull[s + 1];
    if (uc <= xs[b] || s + 2 == hull.size()) {
      const double w = (uc - xs[a]) / (xs[b] - xs[a]);
      return (1.0 - w) * ys[a] + w * ys[b];
    }
  }
  return ys[hull.front()];  // single hull point
}

namespace {
constexpr double kPivotTol = 1e-11;

// Bland's rule: entering = lowest-index negative reduced cost, leaving =
// lowest-index basis variable among the ratio-test minimizers. Guarantees
// termination on these tiny (m+1)-row programs.
bool simplex_iterate(Mat& tab, std::vector<int>& basis, const Vec& cost, int ncols) {
  const int rows = static_cast<int>(tab.rows()) - 1;
  for (;;) {
    // Reduced costs in the objective row were maintained by pivoting.
    int enter = -1;
    for (int j = 0; j < ncols; ++j) {
      if (tab(rows, j) < -kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return true;
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < rows; ++i) {
      if (tab(i, enter) > kPivotTol) {
        const double ratio = tab(i, ncols) / tab(i, enter);
        if (leave < 0 || ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 && basis[static_cast<std::size_t>(i)] <
                                                          basis[static_cast<std::size_t>(leave)])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) return false;  // unbounded; cannot happen over a simplex
    // Pivot.
    tab.row(leave) /= tab(leave, enter);
    for (int i = 0; i <= rows; ++i) {
      if (i == leave) continue;
      const double factor = tab(i, enter);
      if (factor != 0.0) tab.row(i) -= factor * tab.row(leave);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
    (void)cost;
  }
}

void install_objective(Mat& tab, const std::vector<int>& basis, const Vec& full_cost, int ncols) {
  const int rows = static_cast<int>(tab.rows()) - 1;
  for (int j = 0; j <= ncols; ++j) tab(rows, j) = j < ncols ? full_cost[j] : 0.0;
  for (int i = 0; i < rows; ++i) {
    const double cb = full_cost[basis[static_cast<std::size_t>(i)]];
    if (cb != 0.0) tab.row(rows) -= cb * tab.row(i);
  }
}
}  // namespace

std::optional<LpResult> simplex_equality_lp(const Mat& e, const Vec& r, const Vec& c) {
  const int rows = static_cast<int>(e.rows());
  const int n = static_cast<int>(e.cols());
  const int ncols = n + rows;  // originals + artificials

  Mat tab = Mat::Zero(rows + 1, ncols + 1);
  tab.block(0, 0, rows, n) = e;
  tab.col(ncols).head(rows) = r;
  for (int i = 0; i < rows; ++i) {
    if (tab(i, ncols) < 0.0) tab.row(i) *= -1.0;
    tab(i, n + i) = 1.0;
  }
  std::vector<int> basis(static_cast<std::size_t>(rows));
  for (int i = 0; i < rows; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  // Phase 1: minimize the artificial mass.
  Vec phase1 = Vec::Zero(ncols);
  phase1.tail(rows).setOnes();
  install_objective(tab, basis, phase1, ncols);
  simplex_iterate(tab, basis, phase1, ncols);
  const double scale = 1.0 + r.cwiseAbs().maxCoeff();
  if (-tab(rows, ncols) > 1e-9 * scale) return std::nullopt;

  // Drive any residual zero-level artificials out of the basis.
  for (int i = 0; i < rows; ++i) {
    if (basis[static_cast<std::size_t>(i)] < n) continue;
    int enter = -1;
    for (int j = 0; j < n; ++j) {
      if (std::abs(tab(i, j)) > kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) continue;  // redundant row
    tab.row(i) /= tab(i, enter);
    for (int k = 0; k <= rows; ++k) {
      if (k == i) continue;
      const double factor = tab(k, enter);
      if (factor != 0.0) tab.row(k) -= factor * tab.row(i);
    }
    basis[static_cast<std::size_t>(i)] = enter;
  }

  // Phase 2 over the original columns only.
  Vec phase2 = Vec::Zero(ncols);
  phase2.head(n) = c;
  phase2.tail(rows).setConstant(1e30);  // keep artificials out
  install_objective(tab, basis, phase2, ncols);
  simplex_iterate(tab, basis, phase2, n);

  LpResult res;
  res.solution.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < rows; ++i)
    if (basis[static_cast<std::size_t>(i)] < n)
      res.solution[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])] = tab(i, ncols);
  res.value = 0.0;
  for (int j = 0; j < n; ++j) res.value += c[j] * res.solution[static_cast<std::size_t>(j)];
  return res;
}

}  // namespace detail

GammaSample gamma_sample(const Problem& problem, double t, const Vec& x, int n) {
  const double c_hat = apriori_bound(problem);
  if (x.norm() > c_hat + 1e-6)
    throw std::invalid_argument("gamma_sample: |x| exceeds the a-priori bound");
  GammaSample g;
  g.t = t;
  g.x = x;
  g.atoms = problem.controls.sample_atoms(t, x, n);
  g.values.reserve(g.atoms.size());
  const double cap = problem.cost.bound_at(t, std::max(c_hat, problem.control_bound_M()));
  for (std::size_t i = 0; i < g.atoms.size(); ++i) {
    const double eta = problem.cost.eval(t, x, g.atoms[i]);
    if (eta > cap + 1e-9)
      throw HypothesisViolation("gamma_sample: L(t,x,u) = " + std::to_string(eta) +
                                " exceeds the declared cap " + std::to_string(cap) + " at atom " +
                                std::to_string(i));
    g.values.push_back(eta);
  }
  return g;
}

EnvelopeValue biconjugate_weights(const Problem& problem, double t, const Vec& x, const Vec& u,
                                  int n) {
  const GammaSample g = gamma_sample(problem, t, x, n);
  const int count = static_cast<int>(g.atoms.size());
  EnvelopeValue out;

  if (problem.control_dim == 1) {
    std::vector<double> us(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) us[static_cast<std::size_t>(i)] = g.atoms[static_cast<std::size_t>(i)][0];
    const auto v = detail::lower_envelope_1d(us, g.values, u[0]);
    if (!v) return out;
    out.value = *v;
    // Recover supporting weights through the same equality program so both
    // routes expose identical reporting structure.
    Mat e(2, count);
    for (int i = 0; i < count; ++i) {
      e(0, i) = us[static_cast<std::size_t>(i)];
      e(1, i) = 1.0;
    }
    Vec r(2);
    r << u[0], 1.0;
    Vec c(count);
    for (int i = 0; i < count; ++i) c[i] = g.values[static_cast<std::size_t>(i)];
    if (auto lp = detail::simplex_equality_lp(e, r, c)) out.weights = std::move(lp->solution);
    return out;
  }

  const int m = problem.control_dim;
  Mat e(m + 1, count);
  for (int i = 0; i < count; ++i) {
    e.col(i).head(m) = g.atoms[static_cast<std::size_t>(i)];
    e(m, i) = 1.0;
  }
  Vec r(m + 1);
  r.head(m) = u;
  r[m] = 1.0;
  Vec c(count);
  for (int i = 0; i < count; ++i) c[i] = g.values[static_cast<std::size_t>(i)];
  auto lp = detail::simplex_equality_lp(e, r, c);
  if (!lp) return out;
  out.value = lp->value;
  out.weights = std::move(lp->solution);
  return out;
}

double biconjugate(const Problem& problem, double t, const Vec& x, const Vec& u, int n) {
  if (problem.control_dim == 1) {
    const GammaSample g = gamma_sample(problem, t, x, n);
    std::vector<double> us(g.atoms.size());
    for (std::size_t i = 0; i < g.atoms.size(); ++i) us[i] = g.atoms[i][0];
    const auto v = detail::lower_envelope_1d(std::move(us), g.values, u[0]);
    return v ? *v : kInfinity;
  }
  return biconjugate_weights(problem, t, x, u, n).value;
}

std::vector<double> biconjugate_profile(const Problem& problem, const Trajectory& traj,
                                        const Signal& u, int n, Exec exec) {
  const int k = u.intervals();
  if (static_cast<int>(traj.times.size()) != k + 1)
    throw std::invalid_argument("biconjugate_profile: trajectory/control grid mismatch");
  std::vector<double> out(static_cast<std::size_t>(k));
  if (exec == Exec::Parallel) {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(k));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < k; ++i) {
      try {
        out[static_cast<std::size_t>(i)] = biconjugate(
            problem, u.time(i), traj.states[static_cast<std::size_t>(i)], u.value(i), n);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  } else {
    for (int i = 0; i < k; ++i)
      out[static_cast<std::size_t>(i)] =
          biconjugate(problem, u.time(i), traj.states[static_cast<std::size_t>(i)], u.value(i), n);
  }
  return out;
}

}  // namespace relaxoc
