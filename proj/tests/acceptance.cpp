// Acceptance criteria 1-13: one PASS/FAIL line each, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "softpack/softpack.hpp"

using namespace softpack;

namespace {

const double kPi = std::numbers::pi;
const double kTopLambda = kPairwiseLambdaBar - 1.0;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<double> open_grid(double lo, double hi, int k) {
  std::vector<double> g;
  for (int i = 1; i <= k; ++i) g.push_back(lo + (hi - lo) * i / (k + 1.0));
  return g;
}

McOptions mc(std::uint64_t samples, std::uint64_t seed) {
  McOptions o;
  o.samples = samples;
  o.seed = seed;
  return o;
}

bool all_pass(const std::vector<CheckResult>& v, std::string& detail) {
  bool ok = true;
  for (const auto& c : v) {
    ok = ok && c.passed;
    detail += (detail.empty() ? "" : "; ") + c.detail;
  }
  return ok;
}

// Distance of v from the truncation interval midpoint of the printed digits,
// and from the digit string itself.
Outcome printed(const char* name, double v, double digits) {
  const double mid = std::abs(v - (digits + 5e-7));
  return {mid <= 5e-7, fmt("%s = %.12f (printed %.6f..., |v - mid| %.1e, |v - digits| %.1e)", name, v, digits, mid,
                           std::abs(v - digits))};
}

Outcome c1_constants() {
  const Constants c = constants();
  const Outcome a = printed("phi0", c.phi0, 0.615479);
  const Outcome b = printed("psi0", c.psi0, 0.052438);
  const Outcome r = printed("Lambda-bar", c.lambda_bar_root, 2.926949);
  return {a.pass && b.pass && r.pass, a.detail + "; " + b.detail + "; " + r.detail};
}

Outcome c2_theorem8() { return printed("theorem8(0)", theorem8_bound(0.0), 0.778425); }

Outcome c3_blichfeldt() {
  double worst = 0.0;
  bool valid = true;
  for (int d : {2, 4, 8, 16, 24}) {
    const BoundValue b = blichfeldt_bound(d, std::sqrt(2.0) - 1.0);
    valid = valid && b.valid;
    worst = std::max(worst, std::abs(b.value - (d + 2) / 2.0 * std::pow(2.0, -d / 2.0)));
  }
  return {valid && worst <= 1e-12, fmt("max |dev| %.2e over d = 2,4,8,16,24", worst)};
}

Outcome c4_lattices() {
  const double fcc = fcc_density_check();
  const double fcc_dev = std::abs(fcc - kPi / std::sqrt(18.0));
  const MCEstimate full = bcc_covering_check(std::sqrt(5.0 / 3.0), mc(1'000'000, kSeed));
  const MCEstimate part = bcc_covering_check(1.25, mc(1'000'000, kSeed + 1));
  const bool ok = fcc_dev <= 1e-9 && std::abs(1.0 - full.value) <= 3 * full.std_error &&
                  1.0 - part.value > 3 * part.std_error;
  return {ok, fmt("fcc %.12f (dev %.1e); bcc at sqrt(5/3): %.7f +- %.1e; at 1.25: %.7f +- %.1e", fcc, fcc_dev,
                  full.value, full.std_error, part.value, part.std_error)};
}

Outcome c5_planar_endpoints() {
  const double lo = std::abs(delta2_exact(1e-13) - 1.0);
  const double hi = std::abs(delta2_exact(kTopLambda - 1e-13) - kPi / (2 * std::sqrt(3.0)));
  return {lo <= 1e-9 && hi <= 1e-9, fmt("|delta2(0+) - 1| %.1e, |delta2(top-) - pi/(2 sqrt3)| %.1e", lo, hi)};
}

Outcome c6_ordering() {
  double m5 = 1e300, m8 = 1e300, vmax = 0.0;
  for (double l : open_grid(0.0, kTopLambda, 100)) {
    m5 = std::min(m5, sigma3(l) - theorem5_bound(l));
    m8 = std::min(m8, sigma_bar3(l) - theorem8_bound(l));
    for (double v : {theorem5_bound(l), theorem5_bound_derived(l), theorem8_bound(l), sigma3(l), sigma_bar3(l),
                     delta2_exact(l), sigma2(l), sigma_bar2(l)})
      vmax = std::max(vmax, v);
  }
  return {m5 > 0.0 && m8 > 0.0 && vmax <= 1.0 + 1e-12,
          fmt("min(sigma3 - thm5) %.3e, min(sigma_bar3 - thm8) %.3e, max bound %.12f", m5, m8, vmax)};
}

Outcome c7_groemer() {
  VerifyOptions o;
  o.grid = 100;
  o.seed = kSeed;
  std::string detail;
  const bool ok = all_pass(suite_groemer(o), detail);
  return {ok, detail};
}

Outcome c8_scans() {
  std::string detail;
  bool ok = true;
  for (ScanName n : {ScanName::GroemerBoundaryF, ScanName::GroemerInteriorG, ScanName::RogersF}) {
    const ScanResult s = scan_inequality(n, 200);
    ok = ok && s.min >= -1e-9;
    detail += fmt("%s%s min %.2e", detail.empty() ? "" : "; ", std::string(to_string(n)).c_str(), s.min);
  }
  return {ok, detail};
}

Outcome c9_oracles() {
  constexpr std::uint64_t kSamples = 10'000'000;
  const auto lambdas = open_grid(0.0, kTopLambda, 10);
  double worst_z = 0.0;
  int fails = 0;
  for (int k = 0; k < 10; ++k) {
    for (int d : {2, 3}) {
      const Packing p = random_cluster(d, static_cast<std::size_t>(3 + k), kSeed + 100 * d + k);
      const Inflation infl = classify_regime(d, lambdas[k]);
      const double exact = d == 2 ? union_area_exact(p, infl) : union_volume_exact(p, infl);
      const MCEstimate e = union_measure_mc(p, infl.lambda_bar, mc(kSamples, kSeed + 10 * k + d));
      const double z = std::abs(e.value - exact) / e.std_error;
      worst_z = std::max(worst_z, z);
      fails += z > 3.0;
    }
  }
  const SigmaEstimate s2 = sigma_d_mc_both(2, 0.1, mc(kSamples, kSeed + 2));
  const SigmaEstimate s3 = sigma_d_mc_both(3, 0.1, mc(kSamples, kSeed + 3));
  const double z2 = std::abs(s2.sigma_bar.value - sigma_bar2(0.1)) / s2.sigma_bar.std_error;
  const double zt =
      std::abs(s3.sigma_bar.value * tetra_volume() - tetra_union_volume(1.1)) / (s3.sigma_bar.std_error * tetra_volume());
  return {fails == 0 && z2 <= 3.0 && zt <= 3.0,
          fmt("20 packings at 1e7: %d beyond 3 sigma, max z %.2f; sigma_bar2(0.1) z %.2f; tetra_union(1.1) z %.2f",
              fails, worst_z, z2, zt)};
}

Outcome c10_gram() {
  double worst = 0.0;
  for (int d = 2; d <= 10; ++d) worst = std::max(worst, gram_identity_check(d));
  return {worst <= 1e-12, fmt("max deviation %.2e for d = 2..10", worst)};
}

Outcome c11_gradient() {
  const double h = 1e-6;
  double worst = 0.0;
  int kinks = 0;
  for (int d : {2, 3}) {
    for (int k = 0; k < 20; ++k) {
      const Packing p = random_cluster(d, 5, kSeed + 1000 * d + k, 0.25);
      const Inflation infl = classify_regime(d, 0.12);
      const Gradient an = gradient(p, infl);
      kinks += an.kink;
      std::vector<double> x = p.coords();
      double err = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double keep = x[i];
        x[i] = keep + h;
        const double up = objective(Packing(d, x), infl);
        x[i] = keep - h;
        const double dn = objective(Packing(d, x), infl);
        x[i] = keep;
        err = std::max(err, std::abs(an.g[i] - (up - dn) / (2 * h)));
        scale = std::max(scale, std::abs(an.g[i]));
      }
      worst = std::max(worst, scale > 0.0 ? err / scale : err);
    }
  }
  return {worst < 1e-6 && kinks == 0, fmt("max relative error %.2e over 20 + 20 configs (kinks %d)", worst, kinks)};
}

Outcome c12_contacts() {
  OptimizerConfig cfg;
  cfg.restarts = 50;
  cfg.seed = kSeed;
  cfg.seed_exact_lattice = false;
  const OptimizerResult r3 = optimize(3, 2, 0.01, cfg);
  const OptimizerResult r4 = optimize(4, 2, 0.01, cfg);
  return {r3.contact_count == 3 && r4.contact_count == 5,
          fmt("n=3: %zu contacts (objective %.12f); n=4: %zu contacts (objective %.12f); 50 restarts, no lattice seed",
              r3.contact_count, r3.objective, r4.contact_count, r4.objective)};
}

Outcome c13_scope() {
  std::printf("  not reproduced: the limsup delta_d(lambda) over infinite packings, the constant lambda_{d,n},\n");
  std::printf("  and non-lattice extremality for n >= 371. Empirical optimizer values instead:\n");
  std::printf("  %4s %2s %8s %16s %10s %8s\n", "n", "d", "lambda", "objective", "density", "contacts");
  OptimizerConfig cfg;
  cfg.seed = kSeed;
  bool ok = true;
  for (auto [n, d] : {std::pair<std::size_t, int>{3, 2}, {4, 2}, {7, 2}, {4, 3}}) {
    const ProbeTable t = contact_link_probe(n, d, {0.01, 0.05, 0.1, 0.15}, cfg);
    for (const auto& row : t.rows)
      std::printf("  %4zu %2d %8.3f %16.10f %10.6f %8zu\n", n, d, row.lambda, row.objective, row.density,
                  row.contact_count);
    std::printf("  n=%zu d=%d: max contacts %zu on the first %zu of %zu grid points\n", n, d, t.max_contact,
                t.max_contact_prefix, t.rows.size());
    ok = ok && t.rows.size() == 4;
  }
  return {ok, "declared out of scope; empirical probe table printed above"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"constants phi0, psi0, Lambda-bar", c1_constants},
      {"theorem 8 at lambda = 0", c2_theorem8},
      {"Blichfeldt reduction", c3_blichfeldt},
      {"lattice constants (fcc density, bcc covering)", c4_lattices},
      {"planar exactness endpoints", c5_planar_endpoints},
      {"ordering on 100-point grids, bounds <= 1", c6_ordering},
      {"Groemer suite", c7_groemer},
      {"inequality scans 200 x 200", c8_scans},
      {"oracle equivalence exact vs Monte Carlo", c9_oracles},
      {"orthoscheme Gram identities", c10_gram},
      {"optimizer gradient vs finite differences", c11_gradient},
      {"contact-number probe", c12_contacts},
      {"desk-scale scope statement", c13_scope},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2zu %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
