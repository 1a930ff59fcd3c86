#pragma once

#include "relaxoc/types.hpp"

#include <vector>

namespace relaxoc {

enum class CostKind { Polynomial, Quadratic };
enum class ControlPenalty { Zero, NormSquared, DoubleWell };

/// One monomial coef * prod x_i^xe_i * prod u_j^ue_j of a polynomial cost.
struct CostTerm {
  double coef = 0.0;
  std::vector<int> x_exp;
  std::vector<int> u_exp;
};

/// Running cost L(t, x, u), with the declared local Lipschitz profile theta
/// and the declared bound family a_r(t) = bound_base(t) * (1 + r)^bound_degree
/// for |x|, |u| <= r.
///
///   Polynomial  sum of monomials in (x, u)
///   Quadratic   (x - c)^T Q (x - c) + penalty_coef * w(u) with w one of
///               0, |u|^2, (1 - |u|^2)^2
class CostSpec {
 public:
  static CostSpec polynomial(int state_dim, int control_dim, std::vector<CostTerm> terms);
  static CostSpec quadratic(Mat q, Vec x_center, ControlPenalty penalty, double penalty_coef,
                            int control_dim = 1);

  CostSpec& with_profiles(StepProfile theta, StepProfile bound_base, int bound_degree);

  CostKind kind() const { return kind_; }
  int state_dim() const { return state_dim_; }
  int control_dim() const { return control_dim_; }

  double eval(double t, const Vec& x, const Vec& u) const;

  const StepProfile& theta() const { return theta_; }
  /// Declared bound a_r(t) of |L(t, x, u)| over |x|, |u| <= r.
  double bound_at(double t, double r) const;
  int bound_degree() const { return bound_degree_; }

 private:
  explicit CostSpec(CostKind kind) : kind_(kind) {}

  CostKind kind_;
  int state_dim_ = 0;
  int control_dim_ = 0;
  std::vector<CostTerm> terms_;
  Mat q_;
  Vec x_center_;
  ControlPenalty penalty_ = ControlPenalty::Zero;
  double penalty_coef_ = 0.0;
  StepProfile theta_{0.0};
  StepProfile bound_base_{0.0};
  int bound_degree_ = 0;
};

}  // namespace relaxoc
