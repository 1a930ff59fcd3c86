#pragma once

#include "relaxoc/types.hpp"

#include <utility>
#include <vector>

namespace relaxoc {

enum class OperatorKind { Zero, NormalConeBox, LinearMonotone, SubdiffAbs };

/// Maximal monotone operator with a closed-form resolvent. Four families:
///
///   Zero            A(x) = {0}
///   NormalConeBox   A(x) = normal cone to [lo, hi] at x (domain = the box)
///   LinearMonotone  A(x) = {P x} with P + P^T positive semidefinite
///   SubdiffAbs      A(x) = subdifferential of sum_i w_i |x_i|
///
/// All four satisfy 0 in A(0). Immutable after construction; every operation
/// is pure and thread-safe.
class MonotoneOperator {
 public:
  static MonotoneOperator zero(int dim);
  static MonotoneOperator normal_cone_box(Vec lo, Vec hi);
  static MonotoneOperator linear(Mat p);
  static MonotoneOperator subdiff_abs(Vec weights);

  OperatorKind kind() const { return kind_; }
  int dim() const { return dim_; }

  /// The proximal step (I + lambda A)^{-1} z, exact for every kind.
  Vec resolvent(double lambda, const Vec& z) const;

  /// Nearest point of cl D(A).
  Vec domain_project(const Vec& z) const;

  /// For each sample (projected into cl D(A)) one graph element (x, x*),
  /// using the minimal-norm element of A(x) when A(x) is a set.
  std::vector<std::pair<Vec, Vec>> graph_pairs(const std::vector<Vec>& samples) const;

  /// Euclidean distance from v to the set A(x). Zero exactly when v in A(x);
  /// the integrator uses this as its per-step inclusion residual.
  double graph_distance(const Vec& x, const Vec& v) const;

  const Vec& box_lo() const { return lo_; }
  const Vec& box_hi() const { return hi_; }
  const Mat& matrix() const { return p_; }
  const Vec& weights() const { return w_; }

 private:
  MonotoneOperator(OperatorKind kind, int dim) : kind_(kind), dim_(dim) {}

  OperatorKind kind_;
  int dim_;
  Vec lo_, hi_;  // NormalConeBox
  Mat p_;        // LinearMonotone
  Vec w_;        // SubdiffAbs
};

}  // namespace relaxoc
