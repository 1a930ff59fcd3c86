#include "relaxoc/cost.hpp"

#include <cmath>

namespace relaxoc {

CostSpec CostSpec::polynomial(int state_dim, int control_dim, std::vector<CostTerm> terms) {
  if (state_dim < 1 || control_dim < 1) throw std::invalid_argument("CostSpec: bad dims");
  for (const CostTerm& t : terms) {
    if (!std::isfinite(t.coef)) throw std::invalid_argument("CostSpec: non-finite coefficient");
    if (static_cast<int>(t.x_exp.size()) != state_dim ||
        static_cast<int>(t.u_exp.size()) != control_dim)
      throw std::invalid_argument("CostSpec: exponent vector sizes must match dims");
    for (int e : t.x_exp)
      if (e < 0) throw std::invalid_argument("CostSpec: negative exponent");
    for (int e : t.u_exp)
      if (e < 0) throw std::invalid_argument("CostSpec: negative exponent");
  }
  CostSpec c(CostKind::Polynomial);
  c.state_dim_ = state_dim;
  c.control_dim_ = control_dim;
  c.terms_ = std::move(terms);
  return c;
}

CostSpec CostSpec::quadratic(Mat q, Vec x_center, ControlPenalty penalty, double penalty_coef,
                             int control_dim) {
  if (q.rows() != q.cols() || q.rows() == 0) throw std::invalid_argument("CostSpec: Q must be square");
  if (x_center.size() != q.rows()) throw std::invalid_argument("CostSpec: center size mismatch");
  if (!q.allFinite() || !x_center.allFinite() || !std::isfinite(penalty_coef))
    throw std::invalid_argument("CostSpec: non-finite data");
  if (control_dim < 1) throw std::invalid_argument("CostSpec: bad control dim");
  CostSpec c(CostKind::Quadratic);
  c.state_dim_ = static_cast<int>(q.rows());
  c.control_dim_ = control_dim;
  c.q_ = std::move(q);
  c.x_center_ = std::move(x_center);
  c.penalty_ = penalty;
  c.penalty_coef_ = penalty_coef;
  return c;
}

CostSpec& CostSpec::with_profiles(StepProfile theta, StepProfile bound_base, int bound_degree) {
  if (!theta.nonnegative() || !bound_base.nonnegative() || bound_degree < 0)
    throw std::invalid_argument("CostSpec: bad profiles");
  theta_ = std::move(theta);
  bound_base_ = std::move(bound_base);
  bound_degree_ = bound_degree;
  return *this;
}

double CostSpec::eval(double t, const Vec& x, const Vec& u) const {
  (void)t;
  switch (kind_) {
    case CostKind::Polynomial: {
      double acc = 0.0;
      for (const CostTerm& term : terms_) {
        double prod = term.coef;
        for (int i = 0; i < state_dim_; ++i)
          for (int e = 0; e < term.x_exp[static_cast<std::size_t>(i)]; ++e) prod *= x[i];
        for (int j = 0; j < control_dim_; ++j)
          for (int e = 0; e < term.u_exp[static_cast<std::size_t>(j)]; ++e) prod *= u[j];
        acc += prod;
      }
      return acc;
    }
    case CostKind::Quadratic: {
      const Vec d = x - x_center_;
      double acc = d.dot(q_ * d);
      switch (penalty_) {
        case ControlPenalty::Zero:
          break;
        case ControlPenalty::NormSquared:
          acc += penalty_coef_ * u.squaredNorm();
          break;
        case ControlPenalty::DoubleWell: {
          const double s = 1.0 - u.squaredNorm();
          acc += penalty_coef_ * s * s;
          break;
        }
      }
      return acc;
    }
  }
  throw std::logic_error("CostSpec::eval: unknown kind");
}

double CostSpec::bound_at(double t, double r) const {
  return bound_base_(t) * std::pow(1.0 + r, bound_degree_);
}

}  // namespace relaxoc
