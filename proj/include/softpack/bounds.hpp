#pragma once
// Closed-form density bounds, the proof-inequality grid scans and the
// per-lambda bound table.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "softpack/constants.hpp"
#include "softpack/core.hpp"
#include "softpack/geom2d.hpp"
#include "softpack/geom3d.hpp"
#include "softpack/montecarlo.hpp"
#include "softpack/simplexnd.hpp"

namespace softpack {

struct BoundValue {
  double value = std::numeric_limits<double>::quiet_NaN();
  bool valid = false;
  std::string note;
};

/// (2d+4) / ((2 - lb^2) d + 4) lb^(-d); valid for d^(1/d) - 1 <= lambda <= sqrt2 - 1.
inline BoundValue blichfeldt_bound(int d, double lambda) {
  if (d < 2) throw DomainError("blichfeldt_bound: d must be at least 2");
  const double lb = 1.0 + lambda;
  const double den = (2.0 - lb * lb) * d + 4.0;
  BoundValue b;
  if (den > 0.0) b.value = (2.0 * d + 4.0) / den * std::pow(lb, -d);
  const double lo = std::pow(static_cast<double>(d), 1.0 / d) - 1.0;
  const double hi = std::sqrt(2.0) - 1.0;
  constexpr double slack = 1e-12;
  b.valid = lambda >= lo - slack && lambda <= hi + slack && den > 0.0;
  if (!b.valid) b.note = lo > hi + slack ? "empty domain: d^(1/d) - 1 > sqrt(2) - 1" : "requires d^(1/d) - 1 <= lambda <= sqrt(2) - 1";
  return b;
}

/// Integral of the truncated Blichfeldt gauge: omega_d (lb^d - d lb^(d+2) / (2d+4)).
inline double gauge_integral(int d, double lambda) {
  if (d < 2) throw DomainError("gauge_integral: d must be at least 2");
  if (!(lambda >= 0.0)) throw DomainError("gauge_integral: lambda must be non-negative");
  const double lb = 1.0 + lambda;
  return unit_ball_volume(d) * (std::pow(lb, d) - d * std::pow(lb, d + 2) / (2.0 * d + 4.0));
}

namespace detail {
inline void require_open_pairwise(double lambda, const char* who) {
  if (!(lambda > 0.0 && lambda < kPairwiseLambdaBar - 1.0))
    throw DomainError(std::string(who) + ": lambda must lie in (0, 2/sqrt(3) - 1)");
}
}  // namespace detail

/// Displayed rational function in lambda, coefficients taken verbatim.
inline double theorem5_bound(double lambda) {
  detail::require_open_pairwise(lambda, "theorem5_bound");
  const double pi = std::numbers::pi;
  const double p = psi0();
  const double l = lambda;
  const double num = pi - 6.0 * p;
  return num / (num + (3.0 * pi - 18.0 * p) * l - 18.0 * p * l * l - (pi + 6.0 * p) * l * l * l);
}

/// f(1) / (lb^3 f(1) - cap(lb, 1)): the same bound with the denominator
/// expanded from the face inequality F(x, lb) >= 0.
inline double theorem5_bound_derived(double lambda) {
  detail::require_open_pairwise(lambda, "theorem5_bound_derived");
  const double lb = 1.0 + lambda;
  const double f1 = hajos_f(1.0);
  return f1 / (lb * lb * lb * f1 - cap_cone_term(lb, 1.0));
}

inline double theorem8_bound(double lambda) {
  if (!(lambda >= 0.0 && lambda < kPairwiseLambdaBar - 1.0))
    throw DomainError("theorem8_bound: lambda must lie in [0, 2/sqrt(3) - 1)");
  const double pi = std::numbers::pi;
  const double p = phi0();
  const double s6 = std::sqrt(6.0);
  const double lb = 1.0 + lambda;
  const double num = (20.0 * s6 * p - 4.0 * s6 * pi - 10.0 * pi) * lb * lb * lb + 18.0 * pi * lb * lb - 6.0 * pi;
  return num / (3.0 * pi - 15.0 * p + 5.0 * std::sqrt(2.0));
}

// ---------------------------------------------------------------------------
// Grid scans of the proof inequalities
// ---------------------------------------------------------------------------

/// Boundary-cell function, 1 <= x <= lb <= 2/sqrt3.
inline double groemer_boundary_f(double x, double lambda_bar) {
  const double lb = lambda_bar;
  const double c = std::min(x / lb, 1.0);
  return -0.5 * lb * lb * std::acos(c) + 0.5 * x * std::sqrt(std::max(lb * lb - x * x, 0.0)) +
         (1.5 - x) * detail::segment_excess(lb);
}

/// Interior-cell function for acos(sqrt3 lb / 2) <= alpha <= pi/6: area of
/// the cell triangle with apex angle alpha cut by the lb-disk, minus the
/// hexagon-cell share area(H ∩ lb B) alpha / (2 pi).
inline double groemer_interior_g(double alpha, double lambda_bar) {
  const double lb = lambda_bar;
  const double c = std::cos(alpha);
  const double arg = std::min(2.0 * c / (std::sqrt(3.0) * lb), 1.0);
  const double area = 0.5 * lb * lb * (alpha - std::acos(arg)) +
                      c / std::sqrt(3.0) * std::sqrt(std::max(lb * lb - 4.0 / 3.0 * c * c, 0.0));
  return area - hexdisk_area(lb) / (2.0 * std::numbers::pi) * alpha;
}

enum class ScanName { GroemerBoundaryF, GroemerInteriorG, RogersF };

inline ScanName parse_scan_name(std::string_view s) {
  if (s == "groemer_boundary_f") return ScanName::GroemerBoundaryF;
  if (s == "groemer_interior_g") return ScanName::GroemerInteriorG;
  if (s == "rogers_F") return ScanName::RogersF;
  throw StructuralError("unknown scan name: " + std::string(s));
}

inline std::string_view to_string(ScanName s) {
  switch (s) {
    case ScanName::GroemerBoundaryF: return "groemer_boundary_f";
    case ScanName::GroemerInteriorG: return "groemer_interior_g";
    case ScanName::RogersF: return "rogers_F";
  }
  return "?";
}

struct ScanResult {
  double min = std::numeric_limits<double>::infinity();
  double arg = 0.0;         // x or alpha
  double lambda_bar = 0.0;  // at the minimum
};

/// Minimum over a res x res grid of the named function on its domain.
/// rogers_F excludes lb = 1 (F is undefined there): lb_j = 1 + (j+1)/(res+1) (2/sqrt3 - 1).
inline ScanResult scan_inequality(ScanName name, int res) {
  if (res < 50) throw DomainError("scan_inequality: grid resolution must be at least 50");
  const double top = kPairwiseLambdaBar;
  auto lin = [](double a, double b, int k, int n) { return n == 1 ? a : a + (b - a) * k / (n - 1); };
  ScanResult r;
  auto take = [&](double v, double a, double lb) {
    if (v < r.min) r = {v, a, lb};
  };
  for (int j = 0; j < res; ++j) {
    switch (name) {
      case ScanName::GroemerBoundaryF: {
        const double lb = lin(1.0, top, j, res);
        for (int i = 0; i < res; ++i) {
          const double x = lin(1.0, lb, i, res);
          take(groemer_boundary_f(x, lb), x, lb);
        }
        break;
      }
      case ScanName::GroemerInteriorG: {
        const double lb = lin(1.0, top, j, res);
        const double lo = std::acos(std::min(std::sqrt(3.0) * lb / 2.0, 1.0));
        for (int i = 0; i < res; ++i) {
          const double a = lin(lo, std::numbers::pi / 6.0, i, res);
          take(groemer_interior_g(a, lb), a, lb);
        }
        break;
      }
      case ScanName::RogersF: {
        const double lb = 1.0 + (j + 1.0) / (res + 1.0) * (top - 1.0);
        for (int i = 0; i < res; ++i) {
          const double x = std::min(lin(1.0, lb, i, res), lb);
          take(hajos_F(x, lb), x, lb);
        }
        break;
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Bound table
// ---------------------------------------------------------------------------

struct BoundEntry {
  std::string name;
  double value = std::numeric_limits<double>::quiet_NaN();
  double std_error = 0.0;  // nonzero for Monte Carlo entries
  bool valid = false;
  std::string domain_note;
};

struct BoundReport {
  int d = 0;
  double lambda = 0.0;
  std::vector<BoundEntry> entries;

  const BoundEntry* find(std::string_view name) const {
    for (const auto& e : entries)
      if (e.name == name) return &e;
    return nullptr;
  }
};

namespace detail {

template <class F>
BoundEntry exact_entry(std::string name, bool in_domain, std::string note, F f) {
  BoundEntry e;
  e.name = std::move(name);
  if (in_domain) {
    e.value = f();
    e.valid = true;
  } else {
    e.domain_note = std::move(note);
  }
  return e;
}

inline BoundEntry mc_entry(std::string name, bool in_domain, std::string note, auto f) {
  BoundEntry e;
  e.name = std::move(name);
  if (in_domain) {
    const MCEstimate m = f();
    e.value = m.value;
    e.std_error = m.std_error;
    e.valid = true;
  } else {
    e.domain_note = std::move(note);
  }
  return e;
}

}  // namespace detail

/// Entry names per dimension, in table order.
inline std::vector<std::string> bound_names(int d) {
  std::vector<std::string> n{"blichfeldt"};
  if (d == 2) n.insert(n.end(), {"delta2", "sigma2", "sigma_bar2"});
  else if (d == 3)
    n.insert(n.end(), {"theorem5", "theorem5_proof", "theorem8", "sigma3", "sigma_bar3", "tau3", "tau_bar3"});
  else n.insert(n.end(), {"sigma_d", "sigma_bar_d"});
  return n;
}

/// One row per lambda. Monte Carlo entries (tau3, tau_bar3, sigma_d) use
/// `mc` with the seed offset by the row index.
inline std::vector<BoundReport> bound_table(int d, const std::vector<double>& lambdas, const McOptions& mc) {
  if (d < 2) throw DomainError("bound_table: d must be at least 2");
  const double pair_top = kPairwiseLambdaBar - 1.0;
  const double rogers_top = simplex_circumradius(d) - 1.0;
  const std::string open_pair = "requires 0 < lambda < 2/sqrt(3) - 1";
  const std::string half_pair = "requires 0 <= lambda < 2/sqrt(3) - 1";
  std::vector<BoundReport> rows;
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    const double l = lambdas[k];
    if (!(l >= 0.0)) throw DomainError("bound_table: lambda must be non-negative");
    McOptions opt = mc;
    opt.seed = mc.seed + k;
    BoundReport r{d, l, {}};
    const BoundValue b = blichfeldt_bound(d, l);
    r.entries.push_back({"blichfeldt", b.value, 0.0, b.valid, b.note});
    const bool open_ok = l > 0.0 && l < pair_top;
    const bool half_ok = l < pair_top;
    if (d == 2) {
      r.entries.push_back(detail::exact_entry("delta2", open_ok, open_pair, [&] { return delta2_exact(l); }));
      r.entries.push_back(detail::exact_entry("sigma2", half_ok, half_pair, [&] { return sigma2(l); }));
      r.entries.push_back(detail::exact_entry("sigma_bar2", half_ok, half_pair, [&] { return sigma_bar2(l); }));
    } else if (d == 3) {
      r.entries.push_back(detail::exact_entry("theorem5", open_ok, open_pair, [&] { return theorem5_bound(l); }));
      r.entries.push_back(
          detail::exact_entry("theorem5_proof", open_ok, open_pair, [&] { return theorem5_bound_derived(l); }));
      r.entries.push_back(detail::exact_entry("theorem8", half_ok, half_pair, [&] { return theorem8_bound(l); }));
      r.entries.push_back(detail::exact_entry("sigma3", half_ok, half_pair, [&] { return sigma3(l); }));
      r.entries.push_back(detail::exact_entry("sigma_bar3", half_ok, half_pair, [&] { return sigma_bar3(l); }));
      const bool tau_ok = 1.0 + l <= dodecahedron().circumradius + 1e-12;
      const std::string tau_note = "requires lambda <= sqrt(3) tan(pi/5) - 1";
      r.entries.push_back(detail::mc_entry("tau3", tau_ok, tau_note, [&] { return tau3(l, opt); }));
      r.entries.push_back(detail::mc_entry("tau_bar3", tau_ok, tau_note, [&] { return tau_bar3(l, opt); }));
    } else {
      const bool ok = l < rogers_top;
      const std::string note = "requires lambda < sqrt(2d/(d+1)) - 1";
      std::optional<SigmaEstimate> s;
      if (ok) s = sigma_d_mc_both(d, l, opt);
      r.entries.push_back(detail::mc_entry("sigma_d", ok, note, [&] { return s->sigma; }));
      r.entries.push_back(detail::mc_entry("sigma_bar_d", ok, note, [&] { return s->sigma_bar; }));
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace softpack
