// Optimizer contact counts for small planar and spatial n over a lambda grid.

#include <cstdio>

#include "softpack/optimizer.hpp"

using namespace softpack;

int main() {
  OptimizerConfig cfg;
  cfg.restarts = 12;
  cfg.seed = 5;
  const std::vector<double> grid{0.01, 0.04, 0.08, 0.12, 0.15};
  std::printf("%3s %2s %7s %14s %9s %8s %7s\n", "n", "d", "lambda", "objective", "density", "contacts", "edges");
  for (auto [n, d] : {std::pair<std::size_t, int>{2, 2}, {3, 2}, {4, 2}, {5, 2}, {6, 2}, {7, 2}, {4, 3}, {5, 3}}) {
    const ProbeTable t = contact_link_probe(n, d, grid, cfg);
    for (const auto& r : t.rows)
      std::printf("%3zu %2d %7.3f %14.10f %9.6f %8zu %7zu\n", n, d, r.lambda, r.objective, r.density, r.contact_count,
                  r.lambda_edge_count);
    std::printf("    max contacts %zu on the first %zu lambdas\n", t.max_contact, t.max_contact_prefix);
  }
}
