#include "relaxoc/field.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace relaxoc {

FieldSpec FieldSpec::constant(Mat b) {
  if (b.size() == 0 || !b.allFinite()) throw std::invalid_argument("FieldSpec: bad matrix");
  FieldSpec f(FieldKind::ConstantMatrix);
  f.b_ = std::move(b);
  return f;
}

FieldSpec FieldSpec::state_affine(Mat b, double gain, double radius) {
  if (b.size() == 0 || !b.allFinite()) throw std::invalid_argument("FieldSpec: bad matrix");
  if (!(radius > 0.0)) throw std::invalid_argument("FieldSpec: saturation radius must be positive");
  FieldSpec f(FieldKind::StateAffine);
  f.b_ = std::move(b);
  f.gain_ = gain;
  f.radius_ = radius;
  return f;
}

FieldSpec FieldSpec::time_weighted(Mat b, StepProfile w) {
  if (b.size() == 0 || !b.allFinite()) throw std::invalid_argument("FieldSpec: bad matrix");
  FieldSpec f(FieldKind::TimeWeighted);
  f.b_ = std::move(b);
  f.w_ = std::move(w);
  return f;
}

FieldSpec& FieldSpec::with_profiles(StepProfile a, StepProfile l) {
  if (!a.nonnegative() || !l.nonnegative())
    throw std::invalid_argument("FieldSpec: profiles must be nonnegative");
  a_ = std::move(a);
  l_ = std::move(l);
  return *this;
}

Mat FieldSpec::matrix(double t, const Vec& x) const {
  switch (kind_) {
    case FieldKind::ConstantMatrix:
      return b_;
    case FieldKind::StateAffine:
      return (1.0 + gain_ * std::min(x.norm(), radius_)) * b_;
    case FieldKind::TimeWeighted:
      return w_(t) * b_;
  }
  throw std::logic_error("FieldSpec::matrix: unknown kind");
}

double FieldSpec::op_norm(double t, const Vec& x) const {
  const Mat m = matrix(t, x);
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  return Eigen::JacobiSVD<Mat>(m).singularValues()(0);
}

}  // namespace relaxoc
