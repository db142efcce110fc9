#pragma once
// Named verification suites. Each check is a pass/fail line with a short
// numeric detail; the CLI and the acceptance runner share them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "softpack/bounds.hpp"
#include "softpack/constants.hpp"
#include "softpack/core.hpp"
#include "softpack/geom2d.hpp"
#include "softpack/geom3d.hpp"
#include "softpack/montecarlo.hpp"
#include "softpack/simplexnd.hpp"

namespace softpack {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  int grid = 100;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

namespace detail {

inline std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

inline McOptions mc_of(const VerifyOptions& o, std::uint64_t salt) {
  McOptions m;
  m.samples = o.samples;
  m.seed = derive_seed(o.seed, salt);
  m.threads = o.threads;
  return m;
}

inline std::vector<double> open_grid(double lo, double hi, int k) {
  std::vector<double> g;
  for (int i = 1; i <= k; ++i) g.push_back(lo + (hi - lo) * i / (k + 1.0));
  return g;
}

}  // namespace detail

inline std::vector<std::string> suite_names() {
  return {"constants", "groemer", "rogersF", "scans", "sigma-consistency", "gram", "covering"};
}

inline std::vector<CheckResult> suite_constants() {
  std::vector<CheckResult> out;
  const Constants c = constants();
  // Printed digits are truncated: compare with the midpoint of [p, p + 1e-6).
  auto printed = [&](const char* name, double v, double p) {
    out.push_back({std::string(name) + " = " + detail::fmt("%.6f...", p), std::abs(v - (p + 5e-7)) <= 5e-7,
                   detail::fmt("%.12f", v)});
  };
  printed("phi0", c.phi0, 0.615479);
  printed("psi0", c.psi0, 0.052438);
  printed("Lambda-bar", c.lambda_bar_root, 2.926949);
  const double res = groemer_remark_residual(c.lambda_bar_root);
  out.push_back({"residual at Lambda-bar", std::abs(res) < 1e-9, detail::fmt("%.3e", res)});
  const double z = std::sqrt(2.0 / 3.0) * std::tan(5.0 * c.phi0);
  const double dev = std::abs(std::numbers::pi / 2.0 - std::atan(z) - (std::numbers::pi / 2.0 + c.psi0));
  out.push_back({"arccot(sqrt(2/3) tan 5 phi0) = pi/2 + psi0", dev <= 1e-12, detail::fmt("dev %.3e", dev)});
  return out;
}

/// Theorem 6 on `grid` random clusters (n <= 15) at 10 lambdas, and
/// equality on hexagonal flowers of extent 1..3.
inline std::vector<CheckResult> suite_groemer(const VerifyOptions& o) {
  const auto lambdas = detail::open_grid(0.0, kPairwiseLambdaBar - 1.0, 10);
  double worst = std::numeric_limits<double>::infinity();
  Rng rng = substream(o.seed, 0x67);
  std::uniform_int_distribution<int> nd(1, 15);
  for (int k = 0; k < o.grid; ++k) {
    const Packing p = random_cluster(2, static_cast<std::size_t>(nd(rng)), rng(), 0.4);
    for (double l : lambdas) {
      const Inflation infl = classify_regime(2, l);
      const BoundaryWalk w = boundary_walk(lambda_graph(p, infl.lambda_bar), p);
      const double slack = union_area_exact(p, infl) - groemer_rhs(p.size(), w.perim, infl, GroemerVariant::Theorem6);
      worst = std::min(worst, slack);
    }
  }
  std::vector<CheckResult> out;
  out.push_back({"theorem 6 inequality on " + std::to_string(o.grid) + " random packings x 10 lambdas",
                 worst >= -1e-9, detail::fmt("min slack %.3e", worst)});
  double eq = 0.0;
  for (int extent = 1; extent <= 3; ++extent) {
    const Packing p = lattice_patch(LatticeKind::Hexagonal2d, extent);
    for (double l : lambdas) {
      const Inflation infl = classify_regime(2, l);
      const BoundaryWalk w = boundary_walk(lambda_graph(p, infl.lambda_bar), p);
      eq = std::max(eq, std::abs(union_area_exact(p, infl) -
                                 groemer_rhs(p.size(), w.perim, infl, GroemerVariant::Theorem6)));
    }
  }
  out.push_back({"hexagonal flowers extent 1..3: equality", eq <= 1e-9, detail::fmt("max |gap| %.3e", eq)});
  const double seam_a = groemer_rhs(1, 0.0, kPairwiseLambdaBar, GroemerVariant::Theorem6);
  const double seam_b = groemer_rhs(1, 0.0, kPairwiseLambdaBar, GroemerVariant::RemarkGroemer2);
  out.push_back({"variants agree at lambda-bar = 2/sqrt3", std::abs(seam_a - seam_b) <= 1e-12,
                 detail::fmt("%.15g vs %.15g", seam_a, seam_b)});
  return out;
}

inline std::vector<CheckResult> suite_rogersF(const VerifyOptions& o) {
  const int res = std::max(o.grid, 50);
  const ScanResult s = scan_inequality(ScanName::RogersF, res);
  std::vector<CheckResult> out;
  out.push_back({"rogers_F grid min >= -1e-9", s.min >= -1e-9,
                 detail::fmt("min %.3e at x=%.6f lb=%.6f", s.min, s.arg, s.lambda_bar)});
  double at_one = 0.0;
  for (double lb : detail::open_grid(1.0, kPairwiseLambdaBar, 20)) at_one = std::max(at_one, std::abs(hajos_F(1.0, lb)));
  out.push_back({"F(1, lb) = 0", at_one <= 1e-12, detail::fmt("max |F| %.3e", at_one)});
  out.push_back({"f(1.1) > 0", hajos_f(1.1) > 0.0, detail::fmt("%.12f", hajos_f(1.1))});
  return out;
}

inline std::vector<CheckResult> suite_scans(const VerifyOptions& o) {
  const int res = std::max(o.grid, 50);
  std::vector<CheckResult> out;
  for (ScanName n : {ScanName::GroemerBoundaryF, ScanName::GroemerInteriorG, ScanName::RogersF}) {
    const ScanResult s = scan_inequality(n, res);
    out.push_back({std::string(to_string(n)) + " grid min >= -1e-9", s.min >= -1e-9,
                   detail::fmt("min %.3e at %.6f, lb=%.6f", s.min, s.arg, s.lambda_bar)});
  }
  return out;
}

inline std::vector<CheckResult> suite_sigma(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  const double top = kPairwiseLambdaBar - 1.0;
  const auto grid = detail::open_grid(0.0, top, 100);
  double m5 = 1e300, m8 = 1e300, vmax = 0.0, id2 = 0.0, idp = 0.0;
  for (double l : grid) {
    m5 = std::min(m5, sigma3(l) - theorem5_bound(l));
    m5 = std::min(m5, sigma3(l) - theorem5_bound_derived(l));
    m8 = std::min(m8, sigma_bar3(l) - theorem8_bound(l));
    for (double v : {theorem5_bound(l), theorem5_bound_derived(l), theorem8_bound(l), sigma3(l), sigma_bar3(l),
                     delta2_exact(l), sigma2(l), sigma_bar2(l)})
      vmax = std::max(vmax, v);
    id2 = std::max(id2, std::abs(sigma2(l) - delta2_exact(l)));
    idp = std::max(idp, std::abs(sigma3_printed(l) - sigma3(l)));
  }
  out.push_back({"theorem5 < sigma3 on 100-point grid", m5 > 0.0, detail::fmt("min margin %.3e", m5)});
  out.push_back({"theorem8 < sigma_bar3 on 100-point grid", m8 > 0.0, detail::fmt("min margin %.3e", m8)});
  out.push_back({"all planar and spatial bounds <= 1", vmax <= 1.0 + 1e-12, detail::fmt("max %.12f", vmax)});
  out.push_back({"sigma2 = delta2", id2 <= 1e-12, detail::fmt("max dev %.3e", id2)});
  out.push_back({"printed sigma3 (dangling + as 0) = closed form", idp <= 1e-12, detail::fmt("max dev %.3e", idp)});

  const SigmaEstimate s2 = sigma_d_mc_both(2, 0.1, detail::mc_of(o, 2));
  const double e2 = std::abs(s2.sigma_bar.value - sigma_bar2(0.1));
  out.push_back({"sigma_bar2(0.1) closed form vs simplex MC", e2 <= 3.0 * s2.sigma_bar.std_error,
                 detail::fmt("|diff| %.3e, 3 sigma %.3e", e2, 3.0 * s2.sigma_bar.std_error)});
  const SigmaEstimate s3 = sigma_d_mc_both(3, 0.1, detail::mc_of(o, 3));
  const double e3 = std::abs(s3.sigma_bar.value - sigma_bar3(0.1));
  out.push_back({"sigma_bar3(0.1) closed form vs simplex MC", e3 <= 3.0 * s3.sigma_bar.std_error,
                 detail::fmt("|diff| %.3e, 3 sigma %.3e", e3, 3.0 * s3.sigma_bar.std_error)});
  const double f3 = std::abs(s3.sigma.value - sigma3(0.1));
  out.push_back({"sigma3(0.1) closed form vs simplex MC", f3 <= 3.0 * s3.sigma.std_error,
                 detail::fmt("|diff| %.3e, 3 sigma %.3e", f3, 3.0 * s3.sigma.std_error)});
  return out;
}

inline std::vector<CheckResult> suite_gram() {
  std::vector<CheckResult> out;
  double worst = 0.0;
  for (int d = 2; d <= 10; ++d) worst = std::max(worst, gram_identity_check(d));
  out.push_back({"orthoscheme Gram identities d = 2..10", worst <= 1e-12, detail::fmt("max dev %.3e", worst)});
  return out;
}

inline std::vector<CheckResult> suite_covering(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  const double fcc = fcc_density_check();
  const double ref = std::numbers::pi / std::sqrt(18.0);
  out.push_back({"fcc density = pi/sqrt18", std::abs(fcc - ref) <= 1e-9, detail::fmt("%.12f", fcc)});
  const double mu = lattice_covering_radius(LatticeKind::Bcc3d);
  out.push_back({"bcc covering radius = sqrt(5/3)", std::abs(mu - std::sqrt(5.0 / 3.0)) <= 1e-12, detail::fmt("%.12f", mu)});
  const MCEstimate full = bcc_covering_check(mu, detail::mc_of(o, 5));
  out.push_back({"bcc covered at lambda-bar = sqrt(5/3)", std::abs(1.0 - full.value) <= 3.0 * full.std_error,
                 detail::fmt("fraction %.9f +- %.2e", full.value, full.std_error)});
  const MCEstimate part = bcc_covering_check(1.25, detail::mc_of(o, 6));
  out.push_back({"bcc not covered at lambda-bar = 1.25", 1.0 - part.value > 3.0 * part.std_error,
                 detail::fmt("fraction %.9f +- %.2e", part.value, part.std_error)});
  return out;
}

inline std::vector<CheckResult> run_suite(std::string_view name, const VerifyOptions& o) {
  if (name == "constants") return suite_constants();
  if (name == "groemer") return suite_groemer(o);
  if (name == "rogersF") return suite_rogersF(o);
  if (name == "scans") return suite_scans(o);
  if (name == "sigma-consistency") return suite_sigma(o);
  if (name == "gram") return suite_gram();
  if (name == "covering") return suite_covering(o);
  if (name == "all") {
    std::vector<CheckResult> all;
    for (const auto& s : suite_names()) {
      auto part = run_suite(s, o);
      for (auto& c : part) c.name = s + ": " + c.name;
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw StructuralError("unknown suite: " + std::string(name));
}

}  // namespace softpack
