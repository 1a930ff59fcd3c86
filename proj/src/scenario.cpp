#include "relaxoc/scenario.hpp"

#include "relaxoc/builtins.hpp"
#include "relaxoc/dynamics.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace relaxoc {

namespace {

using nlohmann::json;

double parse_bound_entry(const json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf" || s == "+inf") return kInfinity;
  if (s == "-inf") return -kInfinity;
  throw std::runtime_error("expected number or \"inf\"/\"-inf\", got \"" + s + "\"");
}

Vec parse_vec(const json& j, const char* where) {
  if (!j.is_array() || j.empty())
    throw std::runtime_error(std::string(where) + ": expected a non-empty array");
  Vec v(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = parse_bound_entry(j[i]);
  return v;
}

Mat parse_mat(const json& j, const char* where) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw std::runtime_error(std::string(where) + ": expected an array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j[static_cast<std::size_t>(r)].size()) != cols)
      throw std::runtime_error(std::string(where) + ": ragged matrix");
    for (int c = 0; c < cols; ++c) m(r, c) = j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

StepProfile parse_profile(const json& j, const char* where) {
  if (j.is_number()) return StepProfile(j.get<double>());
  if (j.is_object())
    return StepProfile(j.at("times").get<std::vector<double>>(),
                       j.at("values").get<std::vector<double>>());
  throw std::runtime_error(std::string(where) + ": expected a number or {times, values}");
}

MonotoneOperator parse_operator(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "zero") return MonotoneOperator::zero(j.at("dim").get<int>());
  if (kind == "normal_cone_box")
    return MonotoneOperator::normal_cone_box(parse_vec(j.at("lo"), "operator.lo"),
                                             parse_vec(j.at("hi"), "operator.hi"));
  if (kind == "linear_monotone") return MonotoneOperator::linear(parse_mat(j.at("P"), "operator.P"));
  if (kind == "subdiff_abs")
    return MonotoneOperator::subdiff_abs(parse_vec(j.at("weights"), "operator.weights"));
  throw std::runtime_error("operator.kind: unknown kind \"" + kind + "\"");
}

FieldSpec parse_field(const json& j, const StepProfile& a, const StepProfile& l) {
  const std::string kind = j.at("kind").get<std::string>();
  FieldSpec f = [&] {
    if (kind == "constant_matrix") return FieldSpec::constant(parse_mat(j.at("B"), "field.B"));
    if (kind == "state_affine")
      return FieldSpec::state_affine(parse_mat(j.at("B"), "field.B"), j.at("gain").get<double>(),
                                     j.at("radius").get<double>());
    if (kind == "time_weighted")
      return FieldSpec::time_weighted(parse_mat(j.at("B"), "field.B"),
                                      parse_profile(j.at("profile"), "field.profile"));
    throw std::runtime_error("field.kind: unknown kind \"" + kind + "\"");
  }();
  return f.with_profiles(a, l);
}

ControlSetSpec parse_control_set(const json& j, const StepProfile& a0, const StepProfile& k) {
  const std::string kind = j.at("kind").get<std::string>();
  ControlSetSpec s = [&] {
    if (kind == "finite_atoms") {
      std::vector<Vec> atoms;
      for (const auto& a : j.at("atoms")) atoms.push_back(parse_vec(a, "control_set.atoms"));
      const double gain = j.value("state_gain", 0.0);
      return ControlSetSpec::finite_atoms(std::move(atoms), gain);
    }
    if (kind == "box")
      return ControlSetSpec::box(parse_vec(j.at("lo"), "control_set.lo"),
                                 parse_vec(j.at("hi"), "control_set.hi"));
    if (kind == "ball")
      return ControlSetSpec::ball(parse_vec(j.at("center"), "control_set.center"),
                                  j.at("radius").get<double>());
    throw std::runtime_error("control_set.kind: unknown kind \"" + kind + "\"");
  }();
  return s.with_profiles(a0, k);
}

CostSpec parse_cost(const json& j, int state_dim, int control_dim, const StepProfile& theta,
                    const StepProfile& bound, int bound_degree) {
  const std::string kind = j.at("kind").get<std::string>();
  CostSpec c = [&] {
    if (kind == "quadratic") {
      const std::string pen = j.value("penalty", "zero");
      ControlPenalty penalty = ControlPenalty::Zero;
      if (pen == "norm_squared")
        penalty = ControlPenalty::NormSquared;
      else if (pen == "double_well")
        penalty = ControlPenalty::DoubleWell;
      else if (pen != "zero")
        throw std::runtime_error("cost.penalty: unknown penalty \"" + pen + "\"");
      Vec center = j.contains("x_center") ? parse_vec(j.at("x_center"), "cost.x_center")
                                          : Vec(Vec::Zero(state_dim));
      return CostSpec::quadratic(parse_mat(j.at("Q"), "cost.Q"), std::move(center), penalty,
                                 j.value("penalty_coef", 0.0), control_dim);
    }
    if (kind == "polynomial") {
      std::vector<CostTerm> terms;
      for (const auto& tj : j.at("terms")) {
        CostTerm t;
        t.coef = tj.at("coef").get<double>();
        t.x_exp = tj.at("x_exp").get<std::vector<int>>();
        t.u_exp = tj.at("u_exp").get<std::vector<int>>();
        terms.push_back(std::move(t));
      }
      return CostSpec::polynomial(state_dim, control_dim, std::move(terms));
    }
    throw std::runtime_error("cost.kind: unknown kind \"" + kind + "\"");
  }();
  return c.with_profiles(theta, bound, bound_degree);
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("scenario: invalid JSON: ") + e.what());
  }

  Scenario sc;
  try {
    sc.name = j.value("name", "scenario");

    const json& nj = j.value("numerics", json::object());
    sc.numerics.grid_k = nj.value("grid_k", 50);
    sc.numerics.atoms = nj.value("atoms", 9);
    if (nj.contains("chatter")) sc.numerics.chatter = nj.at("chatter").get<std::vector<int>>();
    sc.numerics.chatter_base_k = nj.value("chatter_base_k", 0);
    sc.numerics.seed = nj.value("seed", std::uint64_t{1});
    if (nj.contains("solver")) {
      const json& sj = nj.at("solver");
      sc.numerics.solver.max_iterations = sj.value("max_iterations", 5000);
      sc.numerics.solver.fd_step = sj.value("fd_step", 1e-6);
      sc.numerics.solver.tol_decrease = sj.value("tol_decrease", 1e-10);
      sc.numerics.solver.stall_window = sj.value("stall_window", 20);
    }
    if (j.contains("output")) sc.out_dir = j.at("output").value("dir", "out");

    const json& pj = j.at("problem");
    Problem& p = sc.problem;
    p.name = sc.name;
    p.state_dim = pj.at("state_dim").get<int>();
    p.control_dim = pj.at("control_dim").get<int>();
    p.grid = Grid(pj.at("horizon").get<double>(), sc.numerics.grid_k);
    p.x0 = parse_vec(pj.at("x0"), "problem.x0");

    const json& prof = pj.at("profiles");
    const StepProfile a = parse_profile(prof.at("a"), "profiles.a");
    const StepProfile a0 = parse_profile(prof.at("a0"), "profiles.a0");
    const StepProfile k = parse_profile(prof.at("k"), "profiles.k");
    const StepProfile l = parse_profile(prof.at("l"), "profiles.l");
    const StepProfile theta = parse_profile(prof.at("theta"), "profiles.theta");
    const StepProfile bound = parse_profile(prof.at("cost_bound"), "profiles.cost_bound");
    const int bound_degree = prof.at("cost_bound_degree").get<int>();
    if (!a.nonnegative() || !a0.nonnegative() || !k.nonnegative() || !l.nonnegative() ||
        !theta.nonnegative() || !bound.nonnegative())
      throw std::runtime_error("profiles: hypothesis profiles must be nonnegative");

    p.op = parse_operator(pj.at("operator"));
    p.field = parse_field(pj.at("field"), a, l);
    p.controls = parse_control_set(pj.at("control_set"), a0, k);
    p.cost = parse_cost(pj.at("cost"), p.state_dim, p.control_dim, theta, bound, bound_degree);
    p.validate_shape();
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("scenario schema: ") + e.what());
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  if (path.rfind("builtin:", 0) == 0) {
    const std::string name = path.substr(8);
    Scenario sc;
    sc.name = name;
    sc.numerics.grid_k = 50;
    sc.problem = builtins::by_name(name, sc.numerics.grid_k);
    if (name == "p1" || name == "p3") {
      sc.numerics.atoms = 2;
      sc.numerics.chatter_base_k = 1;
    } else if (name == "p2") {
      sc.numerics.atoms = 3;
    }
    return sc;
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

HypothesisReport validate_hypotheses(const Problem& problem, std::uint64_t seed) {
  HypothesisReport rep;
  std::mt19937_64 rng(seed);
  const double b = problem.grid.horizon;
  const double c_hat = apriori_bound(problem);
  const double radius = std::max(1.0, std::min(c_hat, 1e3));
  std::uniform_real_distribution<double> ut(0.0, b);
  std::uniform_real_distribution<double> ux(-radius, radius);
  std::uniform_real_distribution<double> uu(-problem.control_bound_M(),
                                            problem.control_bound_M());
  const int samples = 200;

  auto state_sample = [&] {
    Vec x(problem.state_dim);
    for (int i = 0; i < problem.state_dim; ++i) x[i] = ux(rng);
    return x;
  };

  // H(A): monotonicity of sampled graph pairs.
  {
    HypothesisCheck c{"H(A)", true, 0.0, -1e-12, ""};
    std::vector<Vec> pts;
    for (int i = 0; i < samples; ++i) pts.push_back(state_sample());
    const auto pairs = problem.op.graph_pairs(pts);
    double worst = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      for (std::size_t j = i + 1; j < pairs.size(); ++j) {
        const double inner =
            (pairs[i].second - pairs[j].second).dot(pairs[i].first - pairs[j].first);
        if (inner < worst) {
          worst = inner;
          c.witness = "pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
      }
    c.worst = worst;
    c.pass = worst >= -1e-12;
    // resolvent fixes the origin
    for (double lam : {0.01, 0.1, 1.0}) {
      const double res0 = problem.op.resolvent(lam, Vec::Zero(problem.state_dim)).norm();
      if (res0 > 1e-12) {
        c.pass = false;
        c.witness = "J_lambda(0) != 0 at lambda=" + std::to_string(lam);
        c.worst = std::min(c.worst, -res0);
      }
    }
    rep.checks.push_back(std::move(c));
  }

  // H_0: initial state in cl D(A).
  {
    HypothesisCheck c{"H_0", true, 0.0, 1e-9, ""};
    c.worst = (problem.op.domain_project(problem.x0) - problem.x0).norm();
    c.pass = c.worst <= c.threshold;
    c.witness = "distance of x0 to cl D(A) = " + std::to_string(c.worst);
    rep.checks.push_back(std::move(c));
  }

  // H(f)(iii): growth bound against the declared profile a.
  {
    HypothesisCheck c{"H(f)(iii)", true, 0.0, 1e-9, ""};
    for (int i = 0; i < samples; ++i) {
      const double t = ut(rng);
      const Vec x = state_sample();
      const double excess =
          problem.field.op_norm(t, x) - problem.field.a()(t) * (1.0 + x.norm());
      if (excess > c.worst) {
        c.worst = excess;
        c.witness = "t=" + std::to_string(t) + " |x|=" + std::to_string(x.norm());
      }
    }
    c.pass = c.worst <= c.threshold;
    rep.checks.push_back(std::move(c));
  }

  // H(f)(ii): local Lipschitz bound against the declared profile l.
  {
    HypothesisCheck c{"H(f)(ii)", true, 0.0, 1e-6, ""};
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double t = ut(rng);
      const Vec x = state_sample();
      const Vec y = state_sample();
      const double gap = (x - y).norm();
      if (gap < 1e-12) continue;
      const double excess = (problem.field.matrix(t, x) - problem.field.matrix(t, y)).norm() -
                            problem.field.lipschitz_l()(t) * gap;
      if (excess > worst) {
        worst = excess;
        c.witness = "t=" + std::to_string(t) + " |x-y|=" + std::to_string(gap);
      }
    }
    c.worst = worst;
    c.pass = worst <= c.threshold;
    rep.checks.push_back(std::move(c));
  }

  // H(U)(iii): control bound against the declared profile a0.
  {
    HypothesisCheck c{"H(U)(iii)", true, 0.0, 1e-9, ""};
    for (int i = 0; i < samples; ++i) {
      const double t = ut(rng);
      const Vec x = state_sample();
      for (const Vec& u : problem.controls.sample_atoms(t, x, 9)) {
        const double excess = u.norm() - problem.controls.a0()(t);
        if (excess > c.worst) {
          c.worst = excess;
          c.witness = "t=" + std::to_string(t) + " |u|=" + std::to_string(u.norm());
        }
      }
    }
    c.pass = c.worst <= c.threshold;
    rep.checks.push_back(std::move(c));
  }

  // H(U)(ii): Hausdorff-Lipschitz modulus against the declared profile k.
  {
    HypothesisCheck c{"H(U)(ii)", true, 0.0, 1e-6, ""};
    for (int i = 0; i < 40; ++i) {
      const double t = ut(rng);
      std::vector<std::pair<Vec, Vec>> pairs;
      for (int p = 0; p < 5; ++p) {
        Vec x = state_sample(), y = state_sample();
        if ((x - y).norm() < 1e-12) continue;
        pairs.emplace_back(std::move(x), std::move(y));
      }
      if (pairs.empty()) continue;
      const double ratio = lipschitz_probe(problem.controls, t, pairs, 9);
      const double excess = ratio - problem.controls.lipschitz_k()(t);
      if (excess > c.worst) {
        c.worst = excess;
        c.witness = "t=" + std::to_string(t) + " ratio=" + std::to_string(ratio);
      }
    }
    c.pass = c.worst <= c.threshold;
    rep.checks.push_back(std::move(c));
  }

  // H(L)(ii): joint Lipschitz bound against the declared profile theta.
  {
    HypothesisCheck c{"H(L)(ii)", true, 0.0, 1e-6, ""};
    for (int i = 0; i < samples; ++i) {
      const double t = ut(rng);
      const Vec x = state_sample(), y = state_sample();
      Vec u(problem.control_dim), v(problem.control_dim);
      for (int d = 0; d < problem.control_dim; ++d) {
        u[d] = uu(rng);
        v[d] = uu(rng);
      }
      const double denom = (x - y).norm() + (u - v).norm();
      if (denom < 1e-12) continue;
      const double excess =
          std::abs(problem.cost.eval(t, x, u) - problem.cost.eval(t, y, v)) -
          problem.cost.theta()(t) * denom;
      if (excess > c.worst) {
        c.worst = excess;
        c.witness = "t=" + std::to_string(t);
      }
    }
    c.pass = c.worst <= c.threshold;
    rep.checks.push_back(std::move(c));
  }

  // H(L)(iii): bound family at the working radius max(c_hat, M).
  {
    HypothesisCheck c{"H(L)(iii)", true, 0.0, 1e-9, ""};
    const double r = std::max(c_hat, problem.control_bound_M());
    const double rr = std::min(r, 1e3);
    std::uniform_real_distribution<double> uxr(-rr, rr);
    for (int i = 0; i < samples; ++i) {
      const double t = ut(rng);
      Vec x(problem.state_dim), u(problem.control_dim);
      for (int d = 0; d < problem.state_dim; ++d) x[d] = uxr(rng);
      for (int d = 0; d < problem.control_dim; ++d)
        u[d] = std::clamp(uu(rng), -problem.control_bound_M(), problem.control_bound_M());
      const double excess =
          std::abs(problem.cost.eval(t, x, u)) - problem.cost.bound_at(t, rr);
      if (excess > c.worst) {
        c.worst = excess;
        c.witness = "t=" + std::to_string(t) + " |L|=" +
                    std::to_string(std::abs(problem.cost.eval(t, x, u)));
      }
    }
    c.pass = c.worst <= c.threshold;
    rep.checks.push_back(std::move(c));
  }

  return rep;
}

}  // namespace relaxoc
