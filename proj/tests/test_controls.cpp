#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "relaxoc/control_set.hpp"

#include <cmath>
#include <random>

using namespace relaxoc;

namespace {

Vec vec1(double a) {
  Vec v(1);
  v << a;
  return v;
}

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

/// Definition-level oracle: scan every breakpoint pair.
double weak_norm_bruteforce(const Signal& u) {
  const int k = u.intervals();
  std::vector<Vec> cum(static_cast<std::size_t>(k) + 1, Vec::Zero(u.dim()));
  for (int i = 0; i < k; ++i) cum[static_cast<std::size_t>(i) + 1] =
      cum[static_cast<std::size_t>(i)] + u.duration(i) * u.value(i);
  double best = 0.0;
  for (int s = 0; s <= k; ++s)
    for (int t = s; t <= k; ++t)
      best = std::max(best, (cum[static_cast<std::size_t>(t)] - cum[static_cast<std::size_t>(s)]).norm());
  return best;
}

Signal square_wave(int n, int k) {
  // +1 on the first half period, -1 on the second; period 2/n on [0, 1].
  const Grid g(1.0, k);
  return Signal::from_function(g, [n](double t) {
    const double phase = std::fmod(t * n, 2.0);
    return vec1(phase < 1.0 - 1e-12 ? 1.0 : -1.0);
  });
}

}  // namespace

TEST_CASE("atom sampling") {
  auto fin = ControlSetSpec::finite_atoms({vec1(-1.0), vec1(1.0)});
  const auto a = fin.sample_atoms(0.3, vec1(7.0), 5);
  REQUIRE(a.size() == 2);
  CHECK(a[0][0] == -1.0);
  CHECK(a[1][0] == 1.0);

  auto box = ControlSetSpec::box(vec1(-1.0), vec1(1.0));
  const auto b = box.sample_atoms(0.0, vec1(0.0), 3);
  REQUIRE(b.size() == 3);
  CHECK(b[0][0] == -1.0);
  CHECK(b[1][0] == 0.0);
  CHECK(b[2][0] == 1.0);

  auto ball = ControlSetSpec::ball(vec1(0.0), 2.0);
  const auto c = ball.sample_atoms(0.0, vec1(0.0), 2);
  REQUIRE(c.size() == 2);
  CHECK(c[0][0] == -2.0);
  CHECK(c[1][0] == 2.0);

  // planar box net keeps the vertices
  auto box2 = ControlSetSpec::box(vec2(-1.0, -2.0), vec2(1.0, 2.0));
  const auto d = box2.sample_atoms(0.0, vec2(0.0, 0.0), 9);
  CHECK(d.size() == 9);
  int corners = 0;
  for (const Vec& v : d)
    if (std::abs(v[0]) == 1.0 && std::abs(v[1]) == 2.0) ++corners;
  CHECK(corners == 4);

  // planar ball: center plus equi-angular boundary atoms, all inside
  auto ball2 = ControlSetSpec::ball(vec2(0.5, 0.0), 1.5);
  const auto e = ball2.sample_atoms(0.0, vec2(0.0, 0.0), 9);
  CHECK(e.size() == 9);
  CHECK((e[0] - vec2(0.5, 0.0)).norm() == 0.0);
  for (const Vec& v : e) CHECK((v - vec2(0.5, 0.0)).norm() <= 1.5 + 1e-12);
}

TEST_CASE("state-translated atoms saturate") {
  auto moving = ControlSetSpec::finite_atoms({vec1(-1.0), vec1(1.0)}, 0.5);
  const auto at_small = moving.sample_atoms(0.0, vec1(0.4), 2);
  CHECK(at_small[0][0] == doctest::Approx(-0.8));
  CHECK(at_small[1][0] == doctest::Approx(1.2));
  const auto at_large = moving.sample_atoms(0.0, vec1(50.0), 2);
  CHECK(at_large[1][0] == doctest::Approx(1.5));  // clamp at |x| = 1
}

TEST_CASE("nearest point") {
  auto fin = ControlSetSpec::finite_atoms({vec1(-1.0), vec1(1.0)});
  CHECK(fin.nearest_point(0.0, vec1(0.0), vec1(1.0))[0] == 1.0);   // member fixed
  CHECK(fin.nearest_point(0.0, vec1(0.0), vec1(0.2))[0] == 1.0);   // nearer atom
  CHECK(fin.nearest_point(0.0, vec1(0.0), vec1(0.0))[0] == -1.0);  // lexicographic tie-break

  Vec lo(3), hi(3);
  lo << -1.0, -1.0, -1.0;
  hi << 1.0, 1.0, 1.0;
  auto box = ControlSetSpec::box(lo, hi);
  Vec target(3);
  target << 3.0, -7.0, 0.5;
  Vec expect(3);
  expect << 1.0, -1.0, 0.5;
  CHECK((box.nearest_point(0.0, Vec::Zero(3), target) - expect).norm() == 0.0);

  auto ball = ControlSetSpec::ball(vec2(0.0, 0.0), 1.0);
  CHECK((ball.nearest_point(0.0, Vec::Zero(2), vec2(0.3, 0.1)) - vec2(0.3, 0.1)).norm() == 0.0);
  const Vec proj = ball.nearest_point(0.0, Vec::Zero(2), vec2(3.0, 4.0));
  CHECK(proj.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(proj[0] == doctest::Approx(0.6));

  // projection always lands in the set
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-4.0, 4.0);
  for (int i = 0; i < 200; ++i) {
    const Vec t = vec2(dist(rng), dist(rng));
    CHECK(ball.distance(0.0, Vec::Zero(2), ball.nearest_point(0.0, Vec::Zero(2), t)) <= 1e-12);
  }
}

TEST_CASE("hausdorff distance") {
  const std::vector<Vec> s{vec1(0.0), vec1(2.0)};
  CHECK(hausdorff(s, s) == 0.0);
  CHECK(hausdorff({vec1(0.0)}, {vec1(3.0)}) == 3.0);
  CHECK(hausdorff({vec1(-1.0), vec1(1.0)}, {vec1(-1.0), vec1(2.0)}) == 1.0);
  CHECK_THROWS_AS(hausdorff({}, s), std::invalid_argument);

  // metric properties on random triples
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  auto random_set = [&] {
    std::vector<Vec> out;
    std::uniform_int_distribution<int> count(1, 6);
    const int n = count(rng);
    for (int i = 0; i < n; ++i) out.push_back(vec2(dist(rng), dist(rng)));
    return out;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_set(), b = random_set(), c = random_set();
    CHECK(hausdorff(a, b) == hausdorff(b, a));
    CHECK(hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c) + 1e-12);
  }
}

TEST_CASE("weak norm closed forms") {
  const Grid g(2.0, 40);
  CHECK(weak_norm(Signal::constant(g, vec1(0.0))) == 0.0);
  CHECK(weak_norm(Signal::constant(g, vec1(-1.5))) == doctest::Approx(3.0).epsilon(1e-14));

  // square wave of period 2/n: cumulative triangle of height 1/n
  CHECK(weak_norm(square_wave(10, 200)) == doctest::Approx(0.1).epsilon(1e-13));
}

TEST_CASE("weak norm agrees with the definition-level scan") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  const Grid g(1.0, 60);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec> vals;
    for (int k = 0; k < g.intervals; ++k) vals.push_back(vec2(dist(rng), dist(rng)));
    const Signal u = Signal::on_grid(g, vals);
    CHECK(weak_norm(u, Exec::Serial) == doctest::Approx(weak_norm_bruteforce(u)).epsilon(1e-14));
  }
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec> vals;
    for (int k = 0; k < g.intervals; ++k) vals.push_back(vec1(dist(rng)));
    const Signal u = Signal::on_grid(g, vals);
    CHECK(weak_norm(u) == doctest::Approx(weak_norm_bruteforce(u)).epsilon(1e-14));
  }
}

TEST_CASE("weak norm never exceeds the L1 norm") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  const Grid g(1.5, 80);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Vec> vals;
    for (int k = 0; k < g.intervals; ++k) vals.push_back(vec2(dist(rng), dist(rng)));
    const Signal u = Signal::on_grid(g, vals);
    CHECK(weak_norm(u) <= u.l1_norm() + 1e-12);
  }
}

TEST_CASE("oscillation family converges weakly but not strongly") {
  // weak norms 1/n decrease monotonically while the L1 mass stays 1
  std::vector<int> freqs{4, 8, 16, 32, 64};
  double prev = kInfinity;
  for (int n : freqs) {
    const Signal u = square_wave(n, 1024);
    const double wn = weak_norm(u);
    CHECK(wn == doctest::Approx(1.0 / n).epsilon(1e-12));
    CHECK(wn < prev);
    CHECK(u.l1_norm() == doctest::Approx(1.0).epsilon(1e-12));
    prev = wn;
  }

  // step test functionals vanish in the limit: |integral(u phi)| bounded by
  // pieces * sup|phi| * weak_norm
  struct StepPhi {
    double lo, hi, height;
    int pieces;
  };
  const std::vector<StepPhi> family{{0.0, 1.0, 1.0, 1}, {0.0, 0.5, 2.0, 2}, {0.3, 0.9, -1.5, 2}};
  for (const auto& phi : family) {
    double prev_val = kInfinity;
    for (int n : freqs) {
      const Signal u = square_wave(n, 1024);
      double integral = 0.0;
      for (int k = 0; k < u.intervals(); ++k) {
        const double t = u.time(k);
        if (t >= phi.lo && t < phi.hi) integral += u.duration(k) * phi.height * u.value(k)[0];
      }
      const double bound = (phi.pieces + 1) * std::abs(phi.height) * weak_norm(u);
      CHECK(std::abs(integral) <= bound + 1e-12);
      CHECK(std::abs(integral) <= prev_val + 1e-12);
      prev_val = std::abs(integral);
    }
  }
}

TEST_CASE("lipschitz probe") {
  auto fixed = ControlSetSpec::finite_atoms({vec1(-1.0), vec1(1.0)});
  std::vector<std::pair<Vec, Vec>> pairs{{vec1(0.2), vec1(-0.3)}, {vec1(0.9), vec1(0.1)}};
  CHECK(lipschitz_probe(fixed, 0.0, pairs, 5) == 0.0);

  // translation by 0.5 sat(x) moves every atom by exactly 0.5 |x - y| in the
  // linear regime
  auto moving = ControlSetSpec::finite_atoms({vec1(-1.0), vec1(1.0)}, 0.5);
  CHECK(lipschitz_probe(moving, 0.0, pairs, 5) == doctest::Approx(0.5).epsilon(1e-12));

  // finite differences across the saturation knee stay below the declared
  // modulus
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> dist(-1.5, 1.5);
  std::vector<std::pair<Vec, Vec>> knee;
  for (int i = 0; i < 100; ++i) {
    const double x = dist(rng);
    knee.emplace_back(vec1(x), vec1(x + 1e-4));
  }
  CHECK(lipschitz_probe(moving, 0.0, knee, 5) <= 0.5 + 1e-6);

  CHECK_THROWS_AS(
      lipschitz_probe(moving, 0.0, {{vec1(1.0), vec1(1.0)}}, 5), std::invalid_argument);
}
