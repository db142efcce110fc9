#pragma once
// Named constants: phi0, psi0 and the Groemer-remark root Lambda-bar.
// All are computed at call time; nothing is tabulated.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include <boost/math/tools/roots.hpp>

#include "softpack/core.hpp"

namespace softpack {

/// arctan(1/sqrt 2): half the dihedral angle of the regular tetrahedron.
inline double phi0() { return std::atan(1.0 / std::sqrt(2.0)); }

/// -arctan(sqrt(2/3) * tan(5 phi0)).
inline double psi0() { return -std::atan(std::sqrt(2.0 / 3.0) * std::tan(5.0 * phi0())); }

/// Left side of (sqrt3 - lb^2 pi/2)(lb - 1) - lb sqrt(lb^2 - 1) + lb^3 arccos(1/lb).
/// Vanishes at lb = 1; its smallest root above 1 is Lambda-bar.
inline double groemer_remark_residual(double lambda_bar) {
  const double lb = lambda_bar;
  const double root_term = std::sqrt((lb - 1.0) * (lb + 1.0));
  return (std::sqrt(3.0) - lb * lb * std::numbers::pi / 2.0) * (lb - 1.0) - lb * root_term +
         lb * lb * lb * std::atan(root_term);
}

/// Smallest root > 1 of groemer_remark_residual: a 1e-3 scan over (1, 4]
/// for a sign change, then bisection to 1e-12.
inline double lambda_bar_root() {
  constexpr double step = 1e-3;
  double a = 1.0 + step;
  double fa = groemer_remark_residual(a);
  for (double b = a + step; b <= 4.0 + 1e-12; b += step) {
    const double fb = groemer_remark_residual(b);
    if ((fa > 0.0) != (fb > 0.0) || fb == 0.0) {
      auto tol = [](double lo, double hi) { return hi - lo <= 1e-12; };
      const auto [lo, hi] = boost::math::tools::bisect(groemer_remark_residual, a, b, tol);
      return 0.5 * (lo + hi);
    }
    a = b;
    fa = fb;
  }
  throw std::runtime_error("lambda_bar_root: no sign change on (1, 4]");
}

/// Lambda-bar, computed once.
inline double groemer_remark_upper() {
  static const double value = lambda_bar_root();
  return value;
}

struct Constants {
  double phi0 = 0.0;
  double psi0 = 0.0;
  double lambda_bar_root = 0.0;
};

inline Constants constants() { return {phi0(), psi0(), groemer_remark_upper()}; }

}  // namespace softpack
