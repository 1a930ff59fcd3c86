#include "relaxoc/builtins.hpp"

namespace relaxoc::builtins {

Problem p1(int grid_k) {
  Problem p;
  p.name = "p1";
  p.state_dim = 1;
  p.control_dim = 1;
  p.grid = Grid(1.0, grid_k);
  p.x0 = Vec::Zero(1);
  p.op = MonotoneOperator::zero(1);
  p.field = FieldSpec::constant(Mat::Identity(1, 1)).with_profiles(StepProfile(1.0), StepProfile(0.0));
  std::vector<Vec> atoms{-Vec::Ones(1), Vec::Ones(1)};
  p.controls = ControlSetSpec::finite_atoms(atoms).with_profiles(StepProfile(1.0), StepProfile(0.0));
  // L = x^2 + (1 - u^2)^2
  p.cost = CostSpec::quadratic(Mat::Identity(1, 1), Vec::Zero(1), ControlPenalty::DoubleWell, 1.0)
               .with_profiles(StepProfile(8.0), StepProfile(1.0), 4);
  p.validate_shape();
  return p;
}

Problem p2(int grid_k) {
  Problem p;
  p.name = "p2";
  p.state_dim = 1;
  p.control_dim = 1;
  p.grid = Grid(2.0, grid_k);
  p.x0 = Vec::Ones(1);
  Vec lo = Vec::Zero(1), hi = Vec::Constant(1, kInfinity);
  p.op = MonotoneOperator::normal_cone_box(lo, hi);
  p.field = FieldSpec::constant(Mat::Identity(1, 1)).with_profiles(StepProfile(1.0), StepProfile(0.0));
  p.controls = ControlSetSpec::box(-Vec::Ones(1), Vec::Ones(1))
                   .with_profiles(StepProfile(1.0), StepProfile(0.0));
  // L = (x - 1)^2 + 0.1 u^2
  p.cost = CostSpec::quadratic(Mat::Identity(1, 1), Vec::Ones(1), ControlPenalty::NormSquared, 0.1)
               .with_profiles(StepProfile(50.0), StepProfile(1.0), 4);
  p.validate_shape();
  return p;
}

Problem p3(int grid_k) {
  Problem p;
  p.name = "p3";
  p.state_dim = 1;
  p.control_dim = 1;
  p.grid = Grid(1.0, grid_k);
  p.x0 = Vec::Zero(1);
  p.op = MonotoneOperator::zero(1);
  p.field = FieldSpec::constant(Mat::Identity(1, 1)).with_profiles(StepProfile(1.0), StepProfile(0.0));
  std::vector<Vec> atoms{-Vec::Ones(1), Vec::Ones(1)};
  p.controls = ControlSetSpec::finite_atoms(atoms, 0.5)
                   .with_profiles(StepProfile(1.5), StepProfile(0.5));
  // L = x^2
  p.cost = CostSpec::quadratic(Mat::Identity(1, 1), Vec::Zero(1), ControlPenalty::Zero, 0.0)
               .with_profiles(StepProfile(8.0), StepProfile(1.0), 2);
  p.validate_shape();
  return p;
}

Problem p4(int grid_k) {
  Problem p;
  p.name = "p4";
  p.state_dim = 2;
  p.control_dim = 2;
  p.grid = Grid(1.0, grid_k);
  p.x0 = Vec::Zero(2);
  p.x0 << 0.6, -0.3;
  Mat rot(2, 2);
  rot << 1.0, 0.8, -0.8, 1.0;  // (P + P^T)/2 = I, genuinely non-symmetric
  p.op = MonotoneOperator::linear(rot);
  p.field = FieldSpec::constant(Mat::Identity(2, 2)).with_profiles(StepProfile(1.0), StepProfile(0.0));
  p.controls = ControlSetSpec::ball(Vec::Zero(2), 1.0)
                   .with_profiles(StepProfile(1.0), StepProfile(0.0));
  // L = |x|^2 + (1 - |u|^2)^2
  p.cost = CostSpec::quadratic(Mat::Identity(2, 2), Vec::Zero(2), ControlPenalty::DoubleWell, 1.0, 2)
               .with_profiles(StepProfile(16.0), StepProfile(1.0), 4);
  p.validate_shape();
  return p;
}

Problem by_name(const std::string& name, int grid_k) {
  if (name == "p1") return p1(grid_k);
  if (name == "p2") return p2(grid_k);
  if (name == "p3") return p3(grid_k);
  if (name == "p4") return p4(grid_k);
  throw std::invalid_argument("unknown built-in problem: " + name);
}

}  // namespace relaxoc::builtins
