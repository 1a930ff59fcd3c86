#include "relaxoc/young.hpp"

#include "relaxoc/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace relaxoc {

namespace {
constexpr double kWeightTol = 1e-12;
constexpr double kAtomMergeTol = 1e-12;
constexpr double kSupportTol = 1e-9;
}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<Vec> atoms, std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (atoms_.empty() || atoms_.size() != weights_.size())
    throw std::invalid_argument("DiscreteMeasure: atoms/weights size mismatch");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw std::invalid_argument("DiscreteMeasure: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightTol)
    throw std::invalid_argument("DiscreteMeasure: weights must sum to 1");
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!atoms_[i].allFinite()) throw std::invalid_argument("DiscreteMeasure: non-finite atom");
    for (std::size_t j = i + 1; j < atoms_.size(); ++j)
      if ((atoms_[i] - atoms_[j]).norm() <= kAtomMergeTol)
        throw std::invalid_argument("DiscreteMeasure: atoms must be pairwise distinct");
  }
}

DiscreteMeasure DiscreteMeasure::dirac(Vec atom) {
  return DiscreteMeasure({std::move(atom)}, {1.0});
}

Vec DiscreteMeasure::barycenter() const {
  Vec b = Vec::Zero(dim());
  for (std::size_t i = 0; i < atoms_.size(); ++i) b += weights_[i] * atoms_[i];
  return b;
}

YoungControl::YoungControl(std::vector<double> t, std::vector<DiscreteMeasure> m)
    : times(std::move(t)), measures(std::move(m)) {
  if (times.size() != measures.size() + 1 || measures.empty())
    throw std::invalid_argument("YoungControl: need K+1 breakpoints for K measures");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1]))
      throw std::invalid_argument("YoungControl: breakpoints must increase");
  for (const auto& mu : measures)
    if (mu.dim() != measures[0].dim())
      throw std::invalid_argument("YoungControl: inconsistent measure dims");
}

YoungControl YoungControl::constant(const Grid& g, DiscreteMeasure mu) {
  return YoungControl(g.breakpoints(),
                      std::vector<DiscreteMeasure>(static_cast<std::size_t>(g.intervals), mu));
}

Vec barycenter(const DiscreteMeasure& mu) { return mu.barycenter(); }

Signal barycenter_signal(const YoungControl& lam) {
  std::vector<Vec> values;
  values.reserve(lam.measures.size());
  for (const auto& mu : lam.measures) values.push_back(mu.barycenter());
  return Signal(lam.times, std::move(values));
}

YoungControl dirac_embed(const Signal& u) {
  std::vector<DiscreteMeasure> measures;
  measures.reserve(static_cast<std::size_t>(u.intervals()));
  for (int k = 0; k < u.intervals(); ++k) measures.push_back(DiscreteMeasure::dirac(u.value(k)));
  return YoungControl(u.times(), std::move(measures));
}

YoungControl rebin(const YoungControl& lam, const std::vector<double>& coarse_times) {
  for (double t : coarse_times)
    if (std::find(lam.times.begin(), lam.times.end(), t) == lam.times.end())
      throw std::invalid_argument("rebin: coarse breakpoints must be a subset of the fine ones");
  std::vector<DiscreteMeasure> out;
  for (std::size_t c = 0; c + 1 < coarse_times.size(); ++c) {
    const double lo = coarse_times[c], hi = coarse_times[c + 1];
    std::vector<Vec> atoms;
    std::vector<double> weights;
    double span = hi - lo;
    for (int k = 0; k < lam.intervals(); ++k) {
      const double a = lam.times[static_cast<std::size_t>(k)];
      const double b = lam.times[static_cast<std::size_t>(k) + 1];
      if (b <= lo || a >= hi) continue;
      const double frac = (std::min(b, hi) - std::max(a, lo)) / span;
      const auto& mu = lam.measures[static_cast<std::size_t>(k)];
      for (int i = 0; i < mu.atom_count(); ++i) {
        const double w = frac * mu.weight(i);
        if (w == 0.0) continue;
        bool merged = false;
        for (std::size_t j = 0; j < atoms.size(); ++j) {
          if ((atoms[j] - mu.atom(i)).norm() <= kAtomMergeTol) {
            weights[j] += w;
            merged = true;
            break;
          }
        }
        if (!merged) {
          atoms.push_back(mu.atom(i));
          weights.push_back(w);
        }
      }
    }
    double total = 0.0;
    for (double w : weights) total += w;
    for (double& w : weights) w /= total;
    out.emplace_back(std::move(atoms), std::move(weights));
  }
  return YoungControl(coarse_times, std::move(out));
}

double cost_Jhat(const Problem& problem, const Trajectory& traj, const YoungControl& lam) {
  if (traj.times.size() != lam.times.size())
    throw std::invalid_argument("cost_Jhat: trajectory/control grid mismatch");
  double acc = 0.0;
  for (int k = 0; k < lam.intervals(); ++k) {
    const double t = lam.times[static_cast<std::size_t>(k)];
    const Vec& x = traj.states[static_cast<std::size_t>(k)];
    const auto& mu = lam.measures[static_cast<std::size_t>(k)];
    double inner = 0.0;
    for (int i = 0; i < mu.atom_count(); ++i) {
      const double d = problem.controls.distance(t, x, mu.atom(i));
      if (d > kSupportTol)
        throw HypothesisViolation("cost_Jhat: atom " + std::to_string(i) + " on interval " +
                                  std::to_string(k) + " leaves U(t,x) by " + std::to_string(d));
      inner += mu.weight(i) * problem.cost.eval(t, x, mu.atom(i));
    }
    acc += lam.duration(k) * inner;
  }
  return acc;
}

std::vector<TestFunction> registered_test_functions(int control_dim) {
  std::vector<TestFunction> fns;
  fns.push_back({"one", [](double, const Vec&) { return 1.0; }});
  for (int j = 0; j < control_dim; ++j)
    fns.push_back({"u" + std::to_string(j), [j](double, const Vec& u) { return u[j]; }});
  for (int j = 0; j < control_dim; ++j)
    for (int l = j; l < control_dim; ++l)
      fns.push_back({"u" + std::to_string(j) + "u" + std::to_string(l),
                     [j, l](double, const Vec& u) { return u[j] * u[l]; }});
  for (int j = 0; j < control_dim; ++j)
    fns.push_back({"cos_pi_t_u" + std::to_string(j), [j](double t, const Vec& u) {
                     return std::cos(std::numbers::pi * t) * u[j];
                   }});
  fns.push_back({"norm_sq", [](double, const Vec& u) { return u.squaredNorm(); }});
  return fns;
}

double narrow_functional(const YoungControl& lam, const TestFunction& phi) {
  double acc = 0.0;
  for (int k = 0; k < lam.intervals(); ++k) {
    const double t = lam.times[static_cast<std::size_t>(k)];
    const auto& mu = lam.measures[static_cast<std::size_t>(k)];
    double inner = 0.0;
    for (int i = 0; i < mu.atom_count(); ++i) inner += mu.weight(i) * phi.fn(t, mu.atom(i));
    acc += lam.duration(k) * inner;
  }
  return acc;
}

SupportReport young_support_check(const Problem& problem, const Trajectory& traj,
                                  const YoungControl& lam) {
  SupportReport rep;
  for (int k = 0; k < lam.intervals(); ++k) {
    const double t = lam.times[static_cast<std::size_t>(k)];
    const Vec x = traj.at(t);
    const auto& mu = lam.measures[static_cast<std::size_t>(k)];
    for (int i = 0; i < mu.atom_count(); ++i) {
      const double d = problem.controls.distance(t, x, mu.atom(i));
      if (d > rep.distance) {
        rep.distance = d;
        rep.interval = k;
        rep.atom = i;
      }
    }
  }
  rep.ok = rep.distance <= kSupportTol;
  return rep;
}

}  // namespace relaxoc
