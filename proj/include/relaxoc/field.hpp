#pragma once

#include "relaxoc/types.hpp"

namespace relaxoc {

enum class FieldKind { ConstantMatrix, StateAffine, TimeWeighted };

/// Control-to-velocity map f(t, x) in L(R^m, R^N), together with its declared
/// growth profile a (|f(t,x)| <= a(t)(1+|x|)) and local Lipschitz profile l.
///
///   ConstantMatrix  f = B
///   StateAffine     f = (1 + gain * min(|x|, radius)) * B
///   TimeWeighted    f = w(t) * B
///
/// StateAffine saturates at `radius` so the map is globally Lipschitz on the
/// a-priori ball.
class FieldSpec {
 public:
  static FieldSpec constant(Mat b);
  static FieldSpec state_affine(Mat b, double gain, double radius);
  static FieldSpec time_weighted(Mat b, StepProfile w);

  FieldSpec& with_profiles(StepProfile a, StepProfile l);

  FieldKind kind() const { return kind_; }
  int state_dim() const { return static_cast<int>(b_.rows()); }
  int control_dim() const { return static_cast<int>(b_.cols()); }

  Mat matrix(double t, const Vec& x) const;
  Vec apply(double t, const Vec& x, const Vec& u) const { return matrix(t, x) * u; }
  /// Operator (spectral) norm of f(t, x).
  double op_norm(double t, const Vec& x) const;

  const StepProfile& a() const { return a_; }
  const StepProfile& lipschitz_l() const { return l_; }

 private:
  explicit FieldSpec(FieldKind kind) : kind_(kind) {}

  FieldKind kind_;
  Mat b_;
  double gain_ = 0.0;
  double radius_ = 0.0;
  StepProfile w_{1.0};
  StepProfile a_{0.0};
  StepProfile l_{0.0};
};

}  // namespace relaxoc
