#pragma once

#include "relaxoc/types.hpp"

#include <functional>
#include <vector>

namespace relaxoc {

/// Uniform time grid on [0, horizon] with `intervals` equal steps.
struct Grid {
  double horizon = 1.0;
  int intervals = 1;

  Grid() = default;
  Grid(double b, int k) : horizon(b), intervals(k) {
    if (!(b > 0.0)) throw std::invalid_argument("Grid: horizon must be positive");
    if (k < 1) throw std::invalid_argument("Grid: need at least one interval");
  }

  double dt() const { return horizon / intervals; }
  double time(int k) const { return k * horizon / intervals; }

  std::vector<double> breakpoints() const {
    std::vector<double> t(intervals + 1);
    for (int k = 0; k <= intervals; ++k) t[k] = time(k);
    t.back() = horizon;
    return t;
  }
};

/// Piecewise-constant vector-valued signal on an explicit breakpoint list.
/// values[k] holds on [times[k], times[k+1]). Signals produced by chattering
/// live on refined, possibly non-uniform breakpoints; everything downstream
/// (integration, quadrature, weak norm) is exact for this class of signals.
class Signal {
 public:
  Signal(std::vector<double> times, std::vector<Vec> values);

  static Signal constant(const Grid& g, const Vec& v);
  static Signal on_grid(const Grid& g, std::vector<Vec> values);
  /// Samples fn at the left endpoint of each interval.
  static Signal from_function(const Grid& g, const std::function<Vec(double)>& fn);

  int intervals() const { return static_cast<int>(values_.size()); }
  int dim() const { return values_.empty() ? 0 : static_cast<int>(values_[0].size()); }
  double horizon() const { return times_.back(); }

  double time(int k) const { return times_[k]; }
  double duration(int k) const { return times_[k + 1] - times_[k]; }
  const Vec& value(int k) const { return values_[k]; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<Vec>& values() const { return values_; }

  /// Piecewise-constant lookup (right-open intervals, last value at horizon).
  const Vec& at(double t) const;

  /// max_k |values[k]| (Euclidean norm per interval).
  double sup_norm() const;
  /// Exact integral of |u(t)| dt.
  double l1_norm() const;
  /// Exact integral over [times[k], times[k+1]] slices of the whole horizon.
  Vec integral() const;

  /// Same signal re-expressed on the union of its breakpoints with `extra`
  /// (clipped to the signal's span).
  Signal refined(const std::vector<double>& extra) const;

  /// Pointwise difference on the merged breakpoint set.
  friend Signal operator-(const Signal& a, const Signal& b);

 private:
  std::vector<double> times_;   // size K+1, strictly increasing
  std::vector<Vec> values_;     // size K
};

using ControlSignal = Signal;

/// Grid-sampled state path with the inclusion-residual diagnostic.
struct Trajectory {
  std::vector<double> times;  // size K+1
  std::vector<Vec> states;    // size K+1
  double residual = 0.0;      // max per-step distance to the orientor inclusion

  int intervals() const { return static_cast<int>(times.size()) - 1; }
  double horizon() const { return times.back(); }

  /// Piecewise-linear interpolation between grid states.
  Vec at(double t) const;

  /// sup_k |states[k] - other(times[k])| over this trajectory's breakpoints.
  double max_gap(const Trajectory& other) const;

  double sup_norm() const;
};

}  // namespace relaxoc
