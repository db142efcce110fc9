#pragma once
// Regular simplex of edge 2, the Rogers orthoscheme and Monte Carlo
// sigma_d / sigma-bar_d in any dimension.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "softpack/core.hpp"
#include "softpack/montecarlo.hpp"

namespace softpack {

/// Vertices sqrt2 e_0 .. sqrt2 e_d of R^(d+1).
struct SimplexModel {
  int d = 0;
  std::vector<std::vector<double>> vertices;
};

/// q_i has its first i+1 coordinates equal to sqrt2/(i+1), in R^(d+1).
struct Orthoscheme {
  int d = 0;
  std::vector<std::vector<double>> q;
};

inline SimplexModel regular_simplex(int d) {
  if (d < 2) throw DomainError("regular_simplex: d must be at least 2");
  SimplexModel s{d, {}};
  for (int i = 0; i <= d; ++i) {
    std::vector<double> v(static_cast<std::size_t>(d + 1), 0.0);
    v[static_cast<std::size_t>(i)] = std::sqrt(2.0);
    s.vertices.push_back(std::move(v));
  }
  return s;
}

inline Orthoscheme orthoscheme(int d) {
  if (d < 2) throw DomainError("orthoscheme: d must be at least 2");
  Orthoscheme o{d, {}};
  for (int i = 0; i <= d; ++i) {
    std::vector<double> v(static_cast<std::size_t>(d + 1), 0.0);
    std::fill(v.begin(), v.begin() + i + 1, std::sqrt(2.0) / (i + 1));
    o.q.push_back(std::move(v));
  }
  return o;
}

/// max over 1 <= i <= j <= d of |<q_i - q_0, q_j - q_0> - 2i/(i+1)|.
inline double gram_identity_check(int d) {
  const Orthoscheme o = orthoscheme(d);
  double worst = 0.0;
  for (int i = 1; i <= d; ++i)
    for (int j = i; j <= d; ++j) {
      double s = 0.0;
      for (int k = 0; k <= d; ++k) s += (o.q[i][k] - o.q[0][k]) * (o.q[j][k] - o.q[0][k]);
      worst = std::max(worst, std::abs(s - 2.0 * i / (i + 1.0)));
    }
  return worst;
}

struct SigmaEstimate {
  MCEstimate sigma;
  MCEstimate sigma_bar;
};

/// One pass over uniform points of T^d gives both ratios: sigma_d is
/// P(within 1 of a vertex | within lb of a vertex), sigma-bar_d is
/// P(within lb of a vertex).
inline SigmaEstimate sigma_d_mc_both(int d, double lambda, const McOptions& opt) {
  if (d < 2) throw DomainError("sigma_d_mc: d must be at least 2");
  if (!(lambda >= 0.0 && 1.0 + lambda < simplex_circumradius(d)))
    throw DomainError("sigma_d_mc: lambda must lie in [0, sqrt(2d/(d+1)) - 1), d = " + std::to_string(d));
  const SimplexModel s = regular_simplex(d);
  const double lb2 = (1.0 + lambda) * (1.0 + lambda);
  const double r2 = std::sqrt(2.0);
  const auto counts = count_events(SimplexSampler(s.vertices), opt, [&](std::span<const double> x) {
    // |x - sqrt2 e_i|^2 = |x|^2 - 2 sqrt2 x_i + 2, smallest for the largest x_i.
    double n2 = 0.0;
    double top = x[0];
    for (double c : x) {
      n2 += c * c;
      top = std::max(top, c);
    }
    const double dist2 = n2 - 2.0 * r2 * top + 2.0;
    unsigned mask = 0;
    if (dist2 <= 1.0) mask |= 1u;
    if (dist2 <= lb2) mask |= 2u;
    return mask;
  });
  return {conditional_ratio(counts[0], counts[1], opt.samples, opt.seed),
          hit_or_miss(counts[1], opt.samples, 1.0, opt.seed)};
}

inline MCEstimate sigma_d_mc(int d, double lambda, const McOptions& opt) { return sigma_d_mc_both(d, lambda, opt).sigma; }

inline MCEstimate sigma_bar_d_mc(int d, double lambda, const McOptions& opt) {
  return sigma_d_mc_both(d, lambda, opt).sigma_bar;
}

}  // namespace softpack
