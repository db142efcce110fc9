// Wide CSV of every bound for one dimension. Usage: demo_bound_table [d] [samples]

#include <cstdio>
#include <cstdlib>
#include <vector>

#include "softpack/io.hpp"

using namespace softpack;

int main(int argc, char** argv) {
  const int d = argc > 1 ? std::atoi(argv[1]) : 3;
  McOptions mc;
  mc.samples = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 100'000;
  mc.seed = 1;
  std::vector<double> grid;
  for (int k = 0; k <= 15; ++k) grid.push_back(0.01 * k);
  const auto rows = bound_table(d, grid, mc);
  std::fputs(bounds_csv_wide(rows, {"d=" + std::to_string(d), "samples=" + std::to_string(mc.samples)}).c_str(),
             stdout);
}
