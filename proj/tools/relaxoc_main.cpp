#include "relaxoc/builtins.hpp"
#include "relaxoc/csv.hpp"
#include "relaxoc/dynamics.hpp"
#include "relaxoc/envelope.hpp"
#include "relaxoc/optimizer.hpp"
#include "relaxoc/relax_convex.hpp"
#include "relaxoc/scenario.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace relaxoc;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitHypothesis = 2;
constexpr int kExitNoConvergence = 3;

struct CommonOpts {
  std::string scenario_path;
  std::string out_dir;
  int grid_k = 0;
  int atoms = 0;
  std::vector<int> chatter;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string mode = "both";
  int threads = 0;
  bool serial = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--scenario", o.scenario_path, "scenario file or builtin:<name>")->required();
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option("--grid", o.grid_k, "override time grid intervals K");
  cmd->add_option("--atoms", o.atoms, "override control atom sample size");
  cmd->add_option("--chatter", o.chatter, "override chatter cycle list")->delimiter(',');
  cmd->add_option("--seed", o.seed, "override probe seed")->each([&](const std::string&) {
    o.seed_set = true;
  });
  cmd->add_option("--mode", o.mode, "convexified | young | both")
      ->check(CLI::IsMember({"convexified", "young", "both"}));
  cmd->add_option("--threads", o.threads, "cap OpenMP threads");
  cmd->add_flag("--serial", o.serial, "run every kernel on the serial reference path");
}

Scenario prepare(const CommonOpts& o) {
  Scenario sc = load_scenario(o.scenario_path);
  if (o.grid_k > 0) {
    sc.numerics.grid_k = o.grid_k;
    sc.problem.grid = Grid(sc.problem.grid.horizon, o.grid_k);
  }
  if (o.atoms > 0) sc.numerics.atoms = o.atoms;
  if (!o.chatter.empty()) sc.numerics.chatter = o.chatter;
  if (o.seed_set) sc.numerics.seed = o.seed;
  if (!o.out_dir.empty()) sc.out_dir = o.out_dir;
  if (o.threads > 0) par::set_threads(o.threads);
  par::set_default(o.serial ? Exec::Serial : Exec::Parallel);
  std::filesystem::create_directories(sc.out_dir);
  return sc;
}

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

int print_hypotheses(const HypothesisReport& rep) {
  for (const auto& c : rep.checks) {
    std::cout << c.name << ": " << (c.pass ? "PASS" : "FAIL") << " (worst "
              << csv::format_double(c.worst) << ", threshold " << csv::format_double(c.threshold)
              << ")";
    if (!c.pass && !c.witness.empty()) std::cout << "  witness: " << c.witness;
    std::cout << "\n";
  }
  return rep.all_pass() ? kExitOk : kExitHypothesis;
}

int cmd_validate(const CommonOpts& o) {
  const Scenario sc = prepare(o);
  return print_hypotheses(validate_hypotheses(sc.problem, sc.numerics.seed));
}

Signal load_control(const Scenario& sc, const std::string& csv_path,
                    const std::string& const_values) {
  if (!csv_path.empty()) return csv::read_signal(csv_path);
  if (!const_values.empty()) {
    std::vector<double> vals;
    std::stringstream ss(const_values);
    std::string cell;
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    if (static_cast<int>(vals.size()) != sc.problem.control_dim)
      throw std::runtime_error("--control-const: expected " +
                               std::to_string(sc.problem.control_dim) + " components");
    Vec v(sc.problem.control_dim);
    for (int i = 0; i < sc.problem.control_dim; ++i) v[i] = vals[static_cast<std::size_t>(i)];
    return Signal::constant(sc.problem.grid, v);
  }
  throw std::runtime_error("need --control <csv> or --control-const <v1,v2,...>");
}

int cmd_solve(const CommonOpts& o, const std::string& control_csv, const std::string& control_const) {
  const Scenario sc = prepare(o);
  const Signal u = load_control(sc, control_csv, control_const);
  const Trajectory traj = solve_controlled(sc.problem, u);
  csv::write_trajectory(join(sc.out_dir, "trajectory.csv"), traj);
  csv::write_signal(join(sc.out_dir, "control.csv"), u);
  std::cout << "J = " << csv::format_double(cost_J(sc.problem, traj, u))
            << "  residual = " << csv::format_double(traj.residual) << "\n";
  return kExitOk;
}

RelaxedSolution run_relax(const Scenario& sc) {
  return solve_relaxed(sc.problem, sc.numerics.atoms, RelaxMode::Convexified, sc.numerics.solver);
}

void write_relax_artifacts(const Scenario& sc, const RelaxedSolution& sol) {
  csv::write_trajectory(join(sc.out_dir, "trajectory.csv"), sol.trajectory);
  csv::write_signal(join(sc.out_dir, "control.csv"), sol.barycenter);
  csv::write_young(join(sc.out_dir, "young.csv"), sol.young);
  csv::write_trace(join(sc.out_dir, "trace.csv"), sol.trace);
}

int cmd_relax(const CommonOpts& o) {
  const Scenario sc = prepare(o);
  const RelaxedSolution sol = run_relax(sc);
  write_relax_artifacts(sc, sol);
  if (o.mode == "convexified" || o.mode == "both")
    std::cout << "m_r = " << csv::format_double(sol.value_convexified) << "\n";
  if (o.mode == "young" || o.mode == "both")
    std::cout << "m_hat_r = " << csv::format_double(sol.value_young) << "\n";
  std::cout << "objective = " << csv::format_double(sol.value)
            << "  converged = " << (sol.converged ? "yes" : "no")
            << "  best_start = " << sol.best_start << (sol.tie ? "  (tied minimizers)" : "")
            << "\n";
  return sol.converged ? kExitOk : kExitNoConvergence;
}

std::vector<double> chatter_base_times(const Scenario& sc) {
  if (sc.numerics.chatter_base_k <= 0) return {};
  return Grid(sc.problem.grid.horizon, sc.numerics.chatter_base_k).breakpoints();
}

int cmd_chatter(const CommonOpts& o) {
  const Scenario sc = prepare(o);
  const RelaxedSolution sol = run_relax(sc);
  const auto base = chatter_base_times(sc);
  const RelaxationReport rep =
      estimate_original(sc.problem, sol, sc.numerics.chatter, base.empty() ? nullptr : &base);
  csv::write_convergence(join(sc.out_dir, "chatter.csv"), rep.table);
  for (const auto& row : rep.table)
    std::cout << "n = " << row.cycles << "  weak_gap = " << csv::format_double(row.weak_gap)
              << "  state_gap = " << csv::format_double(row.state_gap)
              << "  J = " << csv::format_double(row.cost)
              << "  gap_to_mr = " << csv::format_double(row.gap_to_relaxed) << "\n";
  return rep.solver_converged ? kExitOk : kExitNoConvergence;
}

int cmd_report(const CommonOpts& o) {
  const Scenario sc = prepare(o);
  const HypothesisReport hyp = validate_hypotheses(sc.problem, sc.numerics.seed);
  const int hyp_code = print_hypotheses(hyp);
  if (hyp_code != kExitOk) return hyp_code;

  const RelaxedSolution sol = run_relax(sc);
  write_relax_artifacts(sc, sol);
  const auto base = chatter_base_times(sc);
  const RelaxationReport rep =
      estimate_original(sc.problem, sol, sc.numerics.chatter, base.empty() ? nullptr : &base);
  csv::write_convergence(join(sc.out_dir, "report.csv"), rep.table);

  std::ofstream summary(join(sc.out_dir, "summary.txt"));
  auto emit = [&](std::ostream& os) {
    os << "m_r        = " << csv::format_double(rep.m_r) << "\n"
       << "m_hat_r    = " << csv::format_double(rep.m_hat_r) << "\n"
       << "m_estimate = " << csv::format_double(rep.m_estimate) << "\n"
       << "solver converged: " << (rep.solver_converged ? "yes" : "no") << "\n";
    for (const auto& row : rep.table)
      os << "n=" << row.cycles << " weak_gap=" << csv::format_double(row.weak_gap)
         << " state_gap=" << csv::format_double(row.state_gap)
         << " J=" << csv::format_double(row.cost)
         << " gap_to_mr=" << csv::format_double(row.gap_to_relaxed) << "\n";
  };
  emit(summary);
  emit(std::cout);
  return rep.solver_converged ? kExitOk : kExitNoConvergence;
}

int cmd_verify(const CommonOpts& o, const std::string& traj_csv, const std::string& control_csv) {
  const Scenario sc = prepare(o);
  const HypothesisReport hyp = validate_hypotheses(sc.problem, sc.numerics.seed);
  int code = print_hypotheses(hyp);

  if (!traj_csv.empty() || !control_csv.empty()) {
    if (traj_csv.empty() || control_csv.empty())
      throw std::runtime_error("verify: need both --trajectory and --control");
    const Trajectory traj = csv::read_trajectory(traj_csv);
    const Signal u = csv::read_signal(control_csv);
    for (auto mode : {AdmissibilityMode::Original, AdmissibilityMode::Convexified}) {
      const auto rep = check_admissible(sc.problem, traj, u, mode, sc.numerics.atoms);
      std::cout << (mode == AdmissibilityMode::Original ? "original" : "convexified")
                << " admissible: " << (rep.admissible ? "yes" : "no");
      if (!rep.admissible)
        std::cout << "  first bad index " << rep.first_bad_index << "  (" << rep.detail << ")";
      std::cout << "\n";
      if (!rep.admissible) code = kExitHypothesis;
    }
  }
  return code;
}

int cmd_envelope(const CommonOpts& o, int points) {
  const Scenario sc = prepare(o);
  if (sc.problem.control_dim != 1)
    throw std::runtime_error("envelope dump supports scalar controls only");
  const double m_bound = sc.problem.control_bound_M();
  const Vec x = sc.problem.op.domain_project(sc.problem.x0);
  std::vector<double> us, raw, env;
  for (int i = 0; i < points; ++i) {
    const double u = -1.2 * m_bound + 2.4 * m_bound * i / (points - 1);
    Vec uv(1);
    uv << u;
    us.push_back(u);
    raw.push_back(sc.problem.cost.eval(0.0, x, uv));
    env.push_back(biconjugate(sc.problem, 0.0, x, uv, sc.numerics.atoms));
  }
  csv::write_envelope_dump(join(sc.out_dir, "envelope.csv"), us, raw, env);
  std::cout << "wrote " << join(sc.out_dir, "envelope.csv") << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relaxoc: relaxation methods for optimal control of monotone differential inclusions"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string control_csv, control_const, traj_csv;
  int envelope_points = 241;

  CLI::App* c_validate = app.add_subcommand("validate", "check the standing hypotheses");
  add_common(c_validate, o);

  CLI::App* c_solve = app.add_subcommand("solve", "simulate a given control");
  add_common(c_solve, o);
  c_solve->add_option("--control", control_csv, "control signal csv");
  c_solve->add_option("--control-const", control_const, "constant control, comma-separated");

  CLI::App* c_relax = app.add_subcommand("relax", "solve the relaxed problem (both routes)");
  add_common(c_relax, o);

  CLI::App* c_chatter = app.add_subcommand("chatter", "chattering convergence table");
  add_common(c_chatter, o);

  CLI::App* c_verify = app.add_subcommand("verify", "hypotheses plus admissibility of a pair");
  add_common(c_verify, o);
  c_verify->add_option("--trajectory", traj_csv, "trajectory csv to verify");
  c_verify->add_option("--control", control_csv, "control csv to verify");

  CLI::App* c_report = app.add_subcommand("report", "full relaxation report");
  add_common(c_report, o);

  CLI::App* c_envelope = app.add_subcommand("envelope", "dump L and its envelope on a u-grid");
  add_common(c_envelope, o);
  c_envelope->add_option("--points", envelope_points, "u-grid resolution");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_validate->parsed()) return cmd_validate(o);
    if (c_solve->parsed()) return cmd_solve(o, control_csv, control_const);
    if (c_relax->parsed()) return cmd_relax(o);
    if (c_chatter->parsed()) return cmd_chatter(o);
    if (c_verify->parsed()) return cmd_verify(o, traj_csv, control_csv);
    if (c_report->parsed()) return cmd_report(o);
    if (c_envelope->parsed()) return cmd_envelope(o, envelope_points);
  } catch (const relaxoc::HypothesisViolation& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitIo;
}
