#include "relaxoc/monotone.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace relaxoc {

namespace {
constexpr double kPsdTol = 1e-10;

void require_finite(const Vec& z, const char* who) {
  if (!z.allFinite()) throw std::invalid_argument(std::string(who) + ": non-finite input");
}
}  // namespace

MonotoneOperator MonotoneOperator::zero(int dim) {
  if (dim < 1) throw std::invalid_argument("MonotoneOperator::zero: dim must be positive");
  return MonotoneOperator(OperatorKind::Zero, dim);
}

MonotoneOperator MonotoneOperator::normal_cone_box(Vec lo, Vec hi) {
  if (lo.size() != hi.size() || lo.size() == 0)
    throw std::invalid_argument("normal_cone_box: lo/hi size mismatch");
  for (int i = 0; i < lo.size(); ++i) {
    if (std::isnan(lo[i]) || std::isnan(hi[i]))
      throw std::invalid_argument("normal_cone_box: NaN bound");
    if (!(lo[i] <= hi[i])) throw std::invalid_argument("normal_cone_box: requires lo <= hi");
    if (!(lo[i] <= 0.0 && 0.0 <= hi[i]))
      throw std::invalid_argument("normal_cone_box: requires lo <= 0 <= hi so that 0 in A(0)");
  }
  MonotoneOperator op(OperatorKind::NormalConeBox, static_cast<int>(lo.size()));
  op.lo_ = std::move(lo);
  op.hi_ = std::move(hi);
  return op;
}

MonotoneOperator MonotoneOperator::linear(Mat p) {
  if (p.rows() != p.cols() || p.rows() == 0)
    throw std::invalid_argument("linear: P must be square");
  if (!p.allFinite()) throw std::invalid_argument("linear: non-finite P");
  Mat sym = 0.5 * (p + p.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(sym);
  if (es.eigenvalues().minCoeff() < -kPsdTol)
    throw std::invalid_argument("linear: (P + P^T)/2 is not positive semidefinite");
  MonotoneOperator op(OperatorKind::LinearMonotone, static_cast<int>(p.rows()));
  op.p_ = std::move(p);
  return op;
}

MonotoneOperator MonotoneOperator::subdiff_abs(Vec weights) {
  if (weights.size() == 0) throw std::invalid_argument("subdiff_abs: empty weights");
  if (!weights.allFinite() || weights.minCoeff() < 0.0)
    throw std::invalid_argument("subdiff_abs: weights must be finite and nonnegative");
  MonotoneOperator op(OperatorKind::SubdiffAbs, static_cast<int>(weights.size()));
  op.w_ = std::move(weights);
  return op;
}

Vec MonotoneOperator::resolvent(double lambda, const Vec& z) const {
  if (!(lambda > 0.0)) throw std::invalid_argument("resolvent: lambda must be positive");
  require_finite(z, "resolvent");
  if (z.size() != dim_) throw std::invalid_argument("resolvent: dimension mismatch");

  switch (kind_) {
    case OperatorKind::Zero:
      return z;
    case OperatorKind::NormalConeBox:
      return z.cwiseMax(lo_).cwiseMin(hi_);
    case OperatorKind::LinearMonotone: {
      Mat m = Mat::Identity(dim_, dim_) + lambda * p_;
      Eigen::PartialPivLU<Mat> lu(m);
      Vec x = lu.solve(z);
      if (!x.allFinite())
        throw std::logic_error("resolvent: singular I + lambda P for a monotone P");
      return x;
    }
    case OperatorKind::SubdiffAbs: {
      Vec x(dim_);
      for (int i = 0; i < dim_; ++i) {
        const double thresh = lambda * w_[i];
        const double mag = std::abs(z[i]) - thresh;
        x[i] = mag > 0.0 ? (z[i] > 0.0 ? mag : -mag) : 0.0;
      }
      return x;
    }
  }
  throw std::logic_error("resolvent: unknown kind");
}

Vec MonotoneOperator::domain_project(const Vec& z) const {
  require_finite(z, "domain_project");
  if (z.size() != dim_) throw std::invalid_argument("domain_project: dimension mismatch");
  if (kind_ == OperatorKind::NormalConeBox) return z.cwiseMax(lo_).cwiseMin(hi_);
  return z;
}

std::vector<std::pair<Vec, Vec>> MonotoneOperator::graph_pairs(const std::vector<Vec>& samples) const {
  std::vector<std::pair<Vec, Vec>> out;
  out.reserve(samples.size());
  for (const Vec& s : samples) {
    Vec x = domain_project(s);
    Vec v(dim_);
    switch (kind_) {
      case OperatorKind::Zero:
        v.setZero();
        break;
      case OperatorKind::NormalConeBox:
        // The normal cone at any box point contains 0, so the minimal-norm
        // element is always 0.
        v.setZero();
        break;
      case OperatorKind::LinearMonotone:
        v = p_ * x;
        break;
      case OperatorKind::SubdiffAbs:
        for (int i = 0; i < dim_; ++i)
          v[i] = x[i] > 0.0 ? w_[i] : (x[i] < 0.0 ? -w_[i] : 0.0);
        break;
    }
    out.emplace_back(std::move(x), std::move(v));
  }
  return out;
}

double MonotoneOperator::graph_distance(const Vec& x, const Vec& v) const {
  switch (kind_) {
    case OperatorKind::Zero:
      return v.norm();
    case OperatorKind::LinearMonotone:
      return (v - p_ * x).norm();
    case OperatorKind::NormalConeBox: {
      double sq = 0.0;
      for (int i = 0; i < dim_; ++i) {
        const bool at_lo = x[i] <= lo_[i];
        const bool at_hi = x[i] >= hi_[i];
        double d = 0.0;
        if (at_lo && at_hi) {
          d = 0.0;  // degenerate face: cone is the whole line
        } else if (at_lo) {
          d = std::max(v[i], 0.0);  // cone is (-inf, 0]
        } else if (at_hi) {
          d = std::min(v[i], 0.0);  // cone is [0, +inf)
        } else {
          d = v[i];  // interior: cone is {0}
        }
        sq += d * d;
      }
      return std::sqrt(sq);
    }
    case OperatorKind::SubdiffAbs: {
      double sq = 0.0;
      for (int i = 0; i < dim_; ++i) {
        double d;
        if (x[i] > 0.0)
          d = v[i] - w_[i];
        else if (x[i] < 0.0)
          d = v[i] + w_[i];
        else
          d = std::max(std::abs(v[i]) - w_[i], 0.0);
        sq += d * d;
      }
      return std::sqrt(sq);
    }
  }
  throw std::logic_error("graph_distance: unknown kind");
}

}  // namespace relaxoc
