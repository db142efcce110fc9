// Union area, density and the boundary-walk lower bound for a planar packing
// across the pairwise regime. Usage: demo_flower_density [packing.json|csv]

#include <cstdio>
#include <string>

#include "softpack/io.hpp"

using namespace softpack;

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : std::string(SOFTPACK_DEMO_DIR) + "/flower7.json";
  const Packing p = read_packing(path);
  if (p.dim() != 2) {
    std::fprintf(stderr, "planar packing required\n");
    return 2;
  }
  std::printf("%s: n=%zu contacts=%zu\n", path.c_str(), p.size(), contact_count(p));
  std::printf("%8s %14s %10s %14s %8s\n", "lambda", "area", "density", "lower_bound", "perim");
  for (double l : {0.0, 0.025, 0.05, 0.075, 0.1, 0.125, 0.15}) {
    const Inflation infl = classify_regime(2, l);
    const double area = union_area_exact(p, infl);
    const BoundaryWalk w = boundary_walk(lambda_graph(p, infl.lambda_bar), p);
    const double lower = groemer_rhs(p.size(), w.perim, infl, GroemerVariant::Theorem6);
    std::printf("%8.3f %14.10f %10.6f %14.10f %8.4f\n", l, area, p.size() * std::numbers::pi / area, lower,
                w.perim);
  }
  std::printf("hexagonal limit delta2(0.15) = %.10f\n", delta2_exact(0.15));
}
