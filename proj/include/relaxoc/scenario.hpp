#pragma once

#include "relaxoc/optimizer.hpp"
#include "relaxoc/problem.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace relaxoc {

struct Numerics {
  int grid_k = 50;
  int atoms = 9;
  std::vector<int> chatter{2, 5, 10, 20};
  int chatter_base_k = 0;  // 0 = chatter on the solution grid
  std::uint64_t seed = 1;
  SolverOptions solver;
};

struct Scenario {
  std::string name;
  Problem problem;
  Numerics numerics;
  std::string out_dir = "out";
};

/// Parses a scenario file (JSON). Names starting with "builtin:" resolve to
/// the built-in library with default numerics.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& json_text);

struct HypothesisCheck {
  std::string name;      // e.g. "H(U)(ii)"
  bool pass = true;
  double worst = 0.0;    // measured worst-case value
  double threshold = 0.0;
  std::string witness;   // where the worst case happened
};

struct HypothesisReport {
  std::vector<HypothesisCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Sampling probes for H(A), H(f), H(U), H(L), H_0 against the declared
/// profiles. Deterministic for a fixed seed.
HypothesisReport validate_hypotheses(const Problem& problem, std::uint64_t seed);

}  // namespace relaxoc
