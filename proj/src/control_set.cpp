#include "relaxoc/control_set.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace relaxoc {

namespace {

bool lex_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

Vec saturate_state(const Vec& x, int m) {
  Vec s = Vec::Zero(m);
  const int take = std::min<int>(m, static_cast<int>(x.size()));
  for (int i = 0; i < take; ++i) s[i] = std::clamp(x[i], -1.0, 1.0);
  return s;
}

}  // namespace

ControlSetSpec ControlSetSpec::finite_atoms(std::vector<Vec> atoms, double state_gain) {
  if (atoms.empty()) throw std::invalid_argument("finite_atoms: need at least one atom");
  ControlSetSpec s(ControlSetKind::FiniteAtoms);
  s.dim_ = static_cast<int>(atoms[0].size());
  for (const Vec& a : atoms) {
    if (a.size() != s.dim_) throw std::invalid_argument("finite_atoms: inconsistent atom dims");
    if (!a.allFinite()) throw std::invalid_argument("finite_atoms: non-finite atom");
  }
  s.atoms_ = std::move(atoms);
  s.state_gain_ = state_gain;
  return s;
}

ControlSetSpec ControlSetSpec::box(Vec lo, Vec hi) {
  if (lo.size() != hi.size() || lo.size() == 0)
    throw std::invalid_argument("box: lo/hi size mismatch");
  for (int i = 0; i < lo.size(); ++i)
    if (!(lo[i] <= hi[i])) throw std::invalid_argument("box: requires lo <= hi");
  ControlSetSpec s(ControlSetKind::Box);
  s.dim_ = static_cast<int>(lo.size());
  s.lo_ = std::move(lo);
  s.hi_ = std::move(hi);
  return s;
}

ControlSetSpec ControlSetSpec::ball(Vec center, double radius) {
  if (center.size() == 0) throw std::invalid_argument("ball: empty center");
  if (!(radius >= 0.0)) throw std::invalid_argument("ball: negative radius");
  if (center.size() > 2)
    throw std::invalid_argument("ball: atom sampling supports control_dim <= 2");
  ControlSetSpec s(ControlSetKind::Ball);
  s.dim_ = static_cast<int>(center.size());
  s.center_ = std::move(center);
  s.radius_ = radius;
  return s;
}

ControlSetSpec& ControlSetSpec::with_profiles(StepProfile a0, StepProfile k) {
  if (!a0.nonnegative() || !k.nonnegative())
    throw std::invalid_argument("with_profiles: profiles must be nonnegative");
  a0_ = std::move(a0);
  k_ = std::move(k);
  return *this;
}

std::vector<Vec> ControlSetSpec::sample_atoms(double t, const Vec& x, int n) const {
  (void)t;
  if (n < 1) throw std::invalid_argument("sample_atoms: n must be positive");
  switch (kind_) {
    case ControlSetKind::FiniteAtoms: {
      std::vector<Vec> out = atoms_;
      if (state_gain_ != 0.0) {
        const Vec shift = state_gain_ * saturate_state(x, dim_);
        for (Vec& a : out) a += shift;
      }
      return out;
    }
    case ControlSetKind::Box: {
      if (dim_ == 1) {
        if (n == 1) return {0.5 * (lo_ + hi_)};
        std::vector<Vec> out;
        out.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
          Vec v(1);
          v[0] = lo_[0] + (hi_[0] - lo_[0]) * i / (n - 1);
          out.push_back(v);
        }
        out.back()[0] = hi_[0];
        return out;
      }
      // Per-axis lattice with p points, p^dim <= n; vertices always kept.
      int p = 2;
      while (std::pow(p + 1, dim_) <= n) ++p;
      std::vector<Vec> out;
      std::vector<int> idx(static_cast<std::size_t>(dim_), 0);
      for (;;) {
        Vec v(dim_);
        for (int i = 0; i < dim_; ++i)
          v[i] = lo_[i] + (hi_[i] - lo_[i]) * idx[static_cast<std::size_t>(i)] / (p - 1);
        out.push_back(v);
        int i = 0;
        while (i < dim_ && ++idx[static_cast<std::size_t>(i)] == p) idx[static_cast<std::size_t>(i++)] = 0;
        if (i == dim_) break;
      }
      return out;
    }
    case ControlSetKind::Ball: {
      if (radius_ == 0.0 || n == 1) return {center_};
      std::vector<Vec> out;
      if (dim_ == 1) {
        Vec a = center_, b = center_;
        a[0] -= radius_;
        b[0] += radius_;
        out = {a, b};
      } else {
        out.push_back(center_);
        const int boundary = n - 1;
        for (int j = 0; j < boundary; ++j) {
          const double ang = 2.0 * std::numbers::pi * j / boundary;
          Vec v = center_;
          v[0] += radius_ * std::cos(ang);
          v[1] += radius_ * std::sin(ang);
          out.push_back(v);
        }
      }
      return out;
    }
  }
  throw std::logic_error("sample_atoms: unknown kind");
}

Vec ControlSetSpec::nearest_point(double t, const Vec& x, const Vec& target) const {
  if (!target.allFinite()) throw std::invalid_argument("nearest_point: non-finite target");
  if (target.size() != dim_) throw std::invalid_argument("nearest_point: dimension mismatch");
  switch (kind_) {
    case ControlSetKind::FiniteAtoms: {
      const std::vector<Vec> atoms = sample_atoms(t, x, 1);
      const Vec* best = &atoms[0];
      double best_d = (atoms[0] - target).squaredNorm();
      for (std::size_t i = 1; i < atoms.size(); ++i) {
        const double d = (atoms[i] - target).squaredNorm();
        if (d < best_d || (d == best_d && lex_less(atoms[i], *best))) {
          best = &atoms[i];
          best_d = d;
        }
      }
      return *best;
    }
    case ControlSetKind::Box:
      return target.cwiseMax(lo_).cwiseMin(hi_);
    case ControlSetKind::Ball: {
      const Vec d = target - center_;
      const double r = d.norm();
      if (r <= radius_) return target;
      return center_ + (radius_ / r) * d;
    }
  }
  throw std::logic_error("nearest_point: unknown kind");
}

double hausdorff(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff: empty set");
  auto directed = [](const std::vector<Vec>& s, const std::vector<Vec>& t) {
    double worst = 0.0;
    for (const Vec& p : s) {
      double best = kInfinity;
      for (const Vec& q : t) best = std::min(best, (p - q).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

double lipschitz_probe(const ControlSetSpec& spec, double t,
                       const std::vector<std::pair<Vec, Vec>>& state_pairs, int n) {
  double worst = 0.0;
  for (const auto& [x, y] : state_pairs) {
    const double gap = (x - y).norm();
    if (gap == 0.0) throw std::invalid_argument("lipschitz_probe: coincident state pair");
    const double h = hausdorff(spec.sample_atoms(t, x, n), spec.sample_atoms(t, y, n));
    worst = std::max(worst, h / gap);
  }
  return worst;
}

double weak_norm(const Signal& u, Exec exec) {
  const int k = u.intervals();
  if (u.dim() == 1) {
    double run = 0.0, lo = 0.0, hi = 0.0;
    for (int i = 0; i < k; ++i) {
      run += u.duration(i) * u.value(i)[0];
      lo = std::min(lo, run);
      hi = std::max(hi, run);
    }
    return hi - lo;
  }

  // Cumulative integrals at breakpoints, then the diameter of that path.
  std::vector<Vec> cum(static_cast<std::size_t>(k) + 1);
  cum[0] = Vec::Zero(u.dim());
  for (int i = 0; i < k; ++i) cum[static_cast<std::size_t>(i) + 1] = cum[static_cast<std::size_t>(i)] + u.duration(i) * u.value(i);

  double best = 0.0;
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static) reduction(max : best)
    for (int s = 0; s <= k; ++s)
      for (int t2 = s + 1; t2 <= k; ++t2)
        best = std::max(best, (cum[static_cast<std::size_t>(t2)] - cum[static_cast<std::size_t>(s)]).norm());
  } else {
    for (int s = 0; s <= k; ++s)
      for (int t2 = s + 1; t2 <= k; ++t2)
        best = std::max(best, (cum[static_cast<std::size_t>(t2)] - cum[static_cast<std::size_t>(s)]).norm());
  }
  return best;
}

}  // namespace relaxoc
