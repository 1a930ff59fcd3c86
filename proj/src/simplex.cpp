#include "relaxoc/simplex.hpp"

#include <algorithm>
#include <vector>

namespace relaxoc {

Vec project_simplex(const Vec& z) {
  const int n = static_cast<int>(z.size());
  std::vector<double> sorted(z.data(), z.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double running = 0.0;
  double tau = 0.0;
  int support = 0;
  for (int i = 0; i < n; ++i) {
    running += sorted[static_cast<std::size_t>(i)];
    const double cand = (running - 1.0) / (i + 1);
    if (sorted[static_cast<std::size_t>(i)] - cand > 0.0) {
      tau = cand;
      support = i + 1;
    }
  }
  (void)support;
  Vec out(n);
  for (int i = 0; i < n; ++i) out[i] = std::max(z[i] - tau, 0.0);
  return out;
}

}  // namespace relaxoc
