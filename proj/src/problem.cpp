#include "relaxoc/problem.hpp"

namespace relaxoc {

void Problem::validate_shape() const {
  if (state_dim < 1 || control_dim < 1) throw std::invalid_argument("Problem: bad dimensions");
  if (x0.size() != state_dim) throw std::invalid_argument("Problem: x0 size mismatch");
  if (op.dim() != state_dim) throw std::invalid_argument("Problem: operator dimension mismatch");
  if (field.state_dim() != state_dim || field.control_dim() != control_dim)
    throw std::invalid_argument("Problem: field dimensions mismatch");
  if (controls.control_dim() != control_dim)
    throw std::invalid_argument("Problem: control set dimension mismatch");
  if (cost.state_dim() != state_dim || cost.control_dim() != control_dim)
    throw std::invalid_argument("Problem: cost dimensions mismatch");
  if ((op.domain_project(x0) - x0).norm() > 1e-9)
    throw HypothesisViolation("Problem: x0 must lie in cl D(A)");
}

}  // namespace relaxoc
