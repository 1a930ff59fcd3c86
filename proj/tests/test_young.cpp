#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "relaxoc/builtins.hpp"
#include "relaxoc/dynamics.hpp"
#include "relaxoc/relax_convex.hpp"
#include "relaxoc/young.hpp"

#include <cmath>
#include <random>

using namespace relaxoc;

namespace {

Vec vec1(double a) {
  Vec v(1);
  v << a;
  return v;
}

DiscreteMeasure random_measure(std::mt19937& rng, int atom_count) {
  std::uniform_real_distribution<double> du(-1.0, 1.0);
  std::uniform_real_distribution<double> dw(0.05, 1.0);
  std::vector<Vec> atoms;
  std::vector<double> weights;
  double total = 0.0;
  for (int i = 0; i < atom_count; ++i) {
    atoms.push_back(vec1(-1.0 + 2.0 * i / (atom_count - 1) + 0.01 * du(rng)));
    weights.push_back(dw(rng));
    total += weights.back();
  }
  for (double& w : weights) w /= total;
  return DiscreteMeasure(std::move(atoms), std::move(weights));
}

}  // namespace

TEST_CASE("measure validity") {
  CHECK_THROWS_AS(DiscreteMeasure({vec1(0.0)}, {0.5}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteMeasure({vec1(0.0), vec1(1.0)}, {-0.1, 1.1}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteMeasure({vec1(0.0), vec1(0.0)}, {0.5, 0.5}), std::invalid_argument);
  CHECK_NOTHROW(DiscreteMeasure({vec1(0.0), vec1(1.0)}, {0.0, 1.0}));  // zero weights allowed
}

TEST_CASE("barycenters") {
  CHECK(DiscreteMeasure::dirac(vec1(0.7)).barycenter()[0] == 0.7);
  CHECK(DiscreteMeasure({vec1(-1.0), vec1(1.0)}, {0.5, 0.5}).barycenter()[0] == 0.0);
  CHECK(DiscreteMeasure({vec1(0.0), vec1(3.0)}, {2.0 / 3.0, 1.0 / 3.0}).barycenter()[0] ==
        doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("relaxed cost against the ordinary cost") {
  Problem p = builtins::p1(50);

  // Dirac reduction is exact
  std::mt19937 rng(73);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<Vec> vals;
  for (int k = 0; k < p.grid.intervals; ++k) vals.push_back(vec1(coin(rng) ? 1.0 : -1.0));
  const Signal u = Signal::on_grid(p.grid, vals);
  const Trajectory traj = solve_controlled(p, u);
  CHECK(cost_Jhat(p, traj, dirac_embed(u)) == cost_J(p, traj, u));

  // the half/half measure hits both zeros of the well along x = 0
  const DiscreteMeasure half({vec1(-1.0), vec1(1.0)}, {0.5, 0.5});
  const YoungControl lam = YoungControl::constant(p.grid, half);
  const Trajectory tz = solve_young(p, lam);
  CHECK(cost_Jhat(p, tz, lam) == 0.0);

  // constant integrand integrates to c * b
  Problem pc = builtins::p1(50);
  pc.cost = CostSpec::polynomial(1, 1, {{2.5, {0}, {0}}})
                .with_profiles(StepProfile(1.0), StepProfile(3.0), 0);
  CHECK(cost_Jhat(pc, tz, lam) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("support violations are reported with their indices") {
  Problem p = builtins::p1(10);
  const Trajectory traj = solve_controlled(p, Signal::constant(p.grid, vec1(1.0)));
  std::vector<DiscreteMeasure> measures(10, DiscreteMeasure::dirac(vec1(1.0)));
  measures[3] = DiscreteMeasure::dirac(vec1(2.0));  // 2M, far outside U
  const YoungControl bad(p.grid.breakpoints(), std::move(measures));
  const SupportReport rep = young_support_check(p, traj, bad);
  CHECK(!rep.ok);
  CHECK(rep.interval == 3);
  CHECK(rep.atom == 0);
  CHECK(rep.distance == doctest::Approx(1.0));
  CHECK_THROWS_AS(cost_Jhat(p, traj, bad), HypothesisViolation);

  // atoms inside U pass even when the barycenter leaves U: that asymmetry
  // is the point of measure-valued controls
  const DiscreteMeasure skew({vec1(-1.0), vec1(1.0)}, {0.25, 0.75});
  const YoungControl ok = YoungControl::constant(p.grid, skew);
  CHECK(young_support_check(p, traj, ok).ok);
  CHECK(p.controls.distance(0.0, vec1(0.0), skew.barycenter()) > 0.0);
}

TEST_CASE("dirac embedding round trip") {
  Problem p = builtins::p1(20);
  const Signal u = Signal::from_function(p.grid, [](double t) { return vec1(t < 0.5 ? -1.0 : 1.0); });
  const YoungControl lam = dirac_embed(u);
  for (int k = 0; k < lam.intervals(); ++k) {
    CHECK(lam.measures[static_cast<std::size_t>(k)].atom_count() == 1);
    CHECK(lam.measures[static_cast<std::size_t>(k)].barycenter()[0] == u.value(k)[0]);
  }
  const Trajectory traj = solve_controlled(p, u);
  CHECK(cost_Jhat(p, traj, lam) == cost_J(p, traj, u));
}

TEST_CASE("narrow functionals") {
  const Grid g(1.0, 8);
  const DiscreteMeasure half({vec1(-1.0), vec1(1.0)}, {0.5, 0.5});
  const YoungControl lam = YoungControl::constant(g, half);
  const auto fns = registered_test_functions(1);
  REQUIRE(fns.size() == 5);  // 1, u, u*u, cos(pi t) u, |u|^2

  for (const auto& phi : fns) {
    const double val = narrow_functional(lam, phi);
    if (phi.name == "one")
      CHECK(val == doctest::Approx(1.0).epsilon(1e-14));
    else if (phi.name == "u0" || phi.name == "cos_pi_t_u0")
      CHECK(val == doctest::Approx(0.0).epsilon(1e-14));
    else
      CHECK(val == doctest::Approx(1.0).epsilon(1e-14));  // both atoms square to 1
  }
}

TEST_CASE("dynamics equivalence is bitwise") {
  Problem p = builtins::p3(40);
  std::mt19937 rng(79);
  std::vector<DiscreteMeasure> measures;
  for (int k = 0; k < 40; ++k) measures.push_back(random_measure(rng, 3));
  const YoungControl lam(p.grid.breakpoints(), std::move(measures));
  const Trajectory via_young = solve_young(p, lam);
  const Trajectory via_signal = solve_controlled(p, barycenter_signal(lam));
  REQUIRE(via_young.states.size() == via_signal.states.size());
  for (std::size_t k = 0; k < via_young.states.size(); ++k)
    CHECK(via_young.states[k][0] == via_signal.states[k][0]);
}

TEST_CASE("Jensen chain: measure cost dominates the envelope cost") {
  Problem p = builtins::p1(30);
  std::mt19937 rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<DiscreteMeasure> measures;
    for (int k = 0; k < 30; ++k) {
      std::uniform_real_distribution<double> dw(0.0, 1.0);
      const double w = dw(rng);
      measures.push_back(DiscreteMeasure({vec1(-1.0), vec1(1.0)}, {w, 1.0 - w}));
    }
    const YoungControl lam(p.grid.breakpoints(), std::move(measures));
    const Trajectory traj = solve_young(p, lam);
    const double jhat = cost_Jhat(p, traj, lam);
    const double jr = cost_Jr(p, traj, barycenter_signal(lam), 2);
    CHECK(jhat >= jr - 1e-6);
  }
}

TEST_CASE("rebin averages measures in time") {
  const Grid fine(1.0, 4);
  std::vector<DiscreteMeasure> measures;
  measures.emplace_back(DiscreteMeasure({vec1(-1.0), vec1(1.0)}, {1.0, 0.0}));
  measures.emplace_back(DiscreteMeasure({vec1(-1.0), vec1(1.0)}, {0.0, 1.0}));
  measures.emplace_back(DiscreteMeasure::dirac(vec1(1.0)));
  measures.emplace_back(DiscreteMeasure::dirac(vec1(-1.0)));
  const YoungControl lam(fine.breakpoints(), std::move(measures));

  const YoungControl coarse = rebin(lam, {0.0, 0.5, 1.0});
  REQUIRE(coarse.intervals() == 2);
  CHECK(coarse.measures[0].barycenter()[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(coarse.measures[1].barycenter()[0] == doctest::Approx(0.0).epsilon(1e-15));
  for (int k = 0; k < 2; ++k) {
    double total = 0.0;
    for (int i = 0; i < coarse.measures[static_cast<std::size_t>(k)].atom_count(); ++i)
      total += coarse.measures[static_cast<std::size_t>(k)].weight(i);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(rebin(lam, {0.0, 0.3, 1.0}), std::invalid_argument);
}
