#include "relaxoc/grid.hpp"

#include <algorithm>
#include <cmath>

namespace relaxoc {

Signal::Signal(std::vector<double> times, std::vector<Vec> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() != values_.size() + 1 || values_.empty())
    throw std::invalid_argument("Signal: need K+1 breakpoints for K values");
  for (std::size_t k = 1; k < times_.size(); ++k)
    if (!(times_[k] > times_[k - 1]))
      throw std::invalid_argument("Signal: breakpoints must be strictly increasing");
  const auto d = values_[0].size();
  for (const Vec& v : values_)
    if (v.size() != d) throw std::invalid_argument("Signal: inconsistent value dimensions");
}

Signal Signal::constant(const Grid& g, const Vec& v) {
  return on_grid(g, std::vector<Vec>(static_cast<std::size_t>(g.intervals), v));
}

Signal Signal::on_grid(const Grid& g, std::vector<Vec> values) {
  if (static_cast<int>(values.size()) != g.intervals)
    throw std::invalid_argument("Signal::on_grid: value count != grid intervals");
  return Signal(g.breakpoints(), std::move(values));
}

Signal Signal::from_function(const Grid& g, const std::function<Vec(double)>& fn) {
  std::vector<Vec> values;
  values.reserve(static_cast<std::size_t>(g.intervals));
  for (int k = 0; k < g.intervals; ++k) values.push_back(fn(g.time(k)));
  return on_grid(g, std::move(values));
}

const Vec& Signal::at(double t) const {
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t k = static_cast<std::size_t>(std::distance(times_.begin(), it));
  if (k == 0) return values_.front();
  if (k > values_.size()) return values_.back();
  return values_[k - 1];
}

double Signal::sup_norm() const {
  double m = 0.0;
  for (const Vec& v : values_) m = std::max(m, v.norm());
  return m;
}

double Signal::l1_norm() const {
  double acc = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k)
    acc += (times_[k + 1] - times_[k]) * values_[k].norm();
  return acc;
}

Vec Signal::integral() const {
  Vec acc = Vec::Zero(dim());
  for (std::size_t k = 0; k < values_.size(); ++k)
    acc += (times_[k + 1] - times_[k]) * values_[k];
  return acc;
}

Signal Signal::refined(const std::vector<double>& extra) const {
  std::vector<double> merged = times_;
  for (double t : extra)
    if (t > times_.front() && t < times_.back()) merged.push_back(t);
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  std::vector<Vec> values;
  values.reserve(merged.size() - 1);
  for (std::size_t k = 0; k + 1 < merged.size(); ++k) values.push_back(at(merged[k]));
  return Signal(std::move(merged), std::move(values));
}

Signal operator-(const Signal& a, const Signal& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("Signal subtraction: dimension mismatch");
  std::vector<double> merged;
  merged.reserve(a.times_.size() + b.times_.size());
  std::merge(a.times_.begin(), a.times_.end(), b.times_.begin(), b.times_.end(),
             std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  std::vector<Vec> values;
  values.reserve(merged.size() - 1);
  for (std::size_t k = 0; k + 1 < merged.size(); ++k)
    values.push_back(a.at(merged[k]) - b.at(merged[k]));
  return Signal(std::move(merged), std::move(values));
}

Vec Trajectory::at(double t) const {
  if (t <= times.front()) return states.front();
  if (t >= times.back()) return states.back();
  auto it = std::upper_bound(times.begin(), times.end(), t);
  std::size_t k = static_cast<std::size_t>(std::distance(times.begin(), it)) - 1;
  const double span = times[k + 1] - times[k];
  const double w = (t - times[k]) / span;
  return (1.0 - w) * states[k] + w * states[k + 1];
}

double Trajectory::max_gap(const Trajectory& other) const {
  double m = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k)
    m = std::max(m, (states[k] - other.at(times[k])).norm());
  return m;
}

double Trajectory::sup_norm() const {
  double m = 0.0;
  for (const Vec& x : states) m = std::max(m, x.norm());
  return m;
}

}  // namespace relaxoc
