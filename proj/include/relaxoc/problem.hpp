#pragma once

#include "relaxoc/control_set.hpp"
#include "relaxoc/cost.hpp"
#include "relaxoc/field.hpp"
#include "relaxoc/grid.hpp"
#include "relaxoc/monotone.hpp"
#include "relaxoc/types.hpp"

#include <string>

namespace relaxoc {

/// Full problem data: minimize the integral of L(t, x, u) subject to
/// -x' in A(x) + f(t, x) u, x(0) = x0, u(t) in U(t, x(t)).
struct Problem {
  std::string name;
  int state_dim = 0;
  int control_dim = 0;
  Grid grid;
  Vec x0;
  MonotoneOperator op = MonotoneOperator::zero(1);
  FieldSpec field = FieldSpec::constant(Mat::Identity(1, 1));
  ControlSetSpec controls = ControlSetSpec::box(-Vec::Ones(1), Vec::Ones(1));
  CostSpec cost = CostSpec::quadratic(Mat::Zero(1, 1), Vec::Zero(1), ControlPenalty::Zero, 0.0);

  double control_bound_M() const { return controls.bound_M(); }

  /// Checks dimensional consistency and that x0 lies in cl D(A) (up to 1e-9).
  void validate_shape() const;
};

}  // namespace relaxoc
