#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace relaxoc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline bool all_finite(const Vec& v) { return v.allFinite(); }

/// Thrown when declared problem data violates one of the standing
/// hypotheses at runtime (control bound, support constraint, cost cap,
/// feedback inequality). The CLI maps this to exit code 2.
class HypothesisViolation : public std::runtime_error {
 public:
  explicit HypothesisViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Nonnegative piecewise-constant profile on [0, horizon). The value on
/// [times[i], times[i+1]) is values[i]; the last value extends to the right.
class StepProfile {
 public:
  StepProfile() : times_{0.0}, values_{0.0} {}

  explicit StepProfile(double constant) : times_{0.0}, values_{constant} {
    if (!std::isfinite(constant)) throw std::invalid_argument("StepProfile: non-finite constant");
  }

  StepProfile(std::vector<double> times, std::vector<double> values)
      : times_(std::move(times)), values_(std::move(values)) {
    if (times_.empty() || times_.size() != values_.size())
      throw std::invalid_argument("StepProfile: times/values size mismatch");
    if (times_.front() != 0.0) throw std::invalid_argument("StepProfile: first breakpoint must be 0");
    for (std::size_t i = 1; i < times_.size(); ++i)
      if (!(times_[i] > times_[i - 1])) throw std::invalid_argument("StepProfile: breakpoints must increase");
    for (double v : values_)
      if (!std::isfinite(v)) throw std::invalid_argument("StepProfile: non-finite value");
  }

  double operator()(double t) const {
    std::size_t i = times_.size() - 1;
    while (i > 0 && t < times_[i]) --i;
    return values_[i];
  }

  /// Exact integral over [t0, t1].
  double integral(double t0, double t1) const {
    if (t1 <= t0) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < times_.size(); ++i) {
      const double seg_lo = times_[i];
      const double seg_hi = (i + 1 < times_.size()) ? times_[i + 1] : t1;
      const double lo = std::max(seg_lo, t0);
      const double hi = std::min(seg_hi, t1);
      if (hi > lo) acc += values_[i] * (hi - lo);
    }
    return acc;
  }

  double max_value() const {
    double m = values_.front();
    for (double v : values_) m = std::max(m, v);
    return m;
  }

  bool nonnegative() const {
    for (double v : values_)
      if (v < 0.0) return false;
    return true;
  }

  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> times_;
  std::vector<double> values_;
};

}  // namespace relaxoc
