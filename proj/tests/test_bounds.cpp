#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "softpack/bounds.hpp"

using namespace softpack;

namespace {

const double kPi = std::numbers::pi;
const double kTop = 2.0 / std::sqrt(3.0);

// Printed six-decimal digits followed by an ellipsis: v lies in [p, p + 1e-6).
void expect_truncates_to(double v, double printed) {
  EXPECT_NEAR(v, printed + 5e-7, 5e-7) << v;
}

std::vector<double> open_grid(double lo, double hi, int k) {
  std::vector<double> g;
  for (int i = 1; i <= k; ++i) g.push_back(lo + (hi - lo) * i / (k + 1.0));
  return g;
}

}  // namespace

TEST(Constants, Printed) {
  const auto c = constants();
  expect_truncates_to(c.phi0, 0.615479);
  expect_truncates_to(c.psi0, 0.052438);
  expect_truncates_to(c.lambda_bar_root, 2.926949);
  EXPECT_NEAR(c.phi0, 0.615479708670387, 1e-14);
  EXPECT_NEAR(c.psi0, 0.0524382707490185, 1e-14);
  EXPECT_NEAR(c.lambda_bar_root, 2.92694951480457, 1e-10);
}

TEST(Constants, RootResidualAndBracket) {
  EXPECT_LT(std::abs(groemer_remark_residual(lambda_bar_root())), 1e-9);
  EXPECT_NEAR(groemer_remark_residual(2.0), 0.362344294824318, 1e-12);
  EXPECT_GT(groemer_remark_residual(2.0), 0.0);
  EXPECT_LT(groemer_remark_residual(3.0), 0.0);
  for (double lb = 1.001; lb < 2.9; lb += 0.01) EXPECT_GT(groemer_remark_residual(lb), 0.0) << lb;
}

TEST(Constants, PsiIdentity) {
  const double z = std::sqrt(2.0 / 3.0) * std::tan(5.0 * phi0());
  EXPECT_NEAR(kPi / 2 - std::atan(z), kPi / 2 + psi0(), 1e-12);
}

TEST(Blichfeldt, ReducesToClassicalBound) {
  for (int d : {2, 4, 8, 16, 24}) {
    const auto b = blichfeldt_bound(d, std::sqrt(2.0) - 1.0);
    EXPECT_TRUE(b.valid) << d;
    EXPECT_NEAR(b.value, (d + 2) / 2.0 * std::pow(2.0, -d / 2.0), 1e-12) << d;
  }
  EXPECT_NEAR(blichfeldt_bound(8, std::sqrt(2.0) - 1.0).value, 5.0 / 16.0, 1e-12);
}

TEST(Blichfeldt, Values) {
  EXPECT_NEAR(blichfeldt_bound(8, 0.35).value, 0.334472611563421, 1e-13);
  EXPECT_TRUE(blichfeldt_bound(8, 0.35).valid);
  EXPECT_FALSE(blichfeldt_bound(8, 0.1).valid);
  EXPECT_FALSE(blichfeldt_bound(8, 0.1).note.empty());
  EXPECT_THROW(blichfeldt_bound(1, 0.1), DomainError);
}

TEST(Blichfeldt, EmptyDomainOnlyInDimensionThree) {
  for (int d = 2; d <= 10; ++d) {
    bool any = false;
    for (double l = 0.0; l <= 0.5; l += 1e-4) any = any || blichfeldt_bound(d, l).valid;
    any = any || blichfeldt_bound(d, std::sqrt(2.0) - 1.0).valid;
    EXPECT_EQ(any, d != 3) << d;
  }
}

TEST(Gauge, Values) {
  EXPECT_NEAR(gauge_integral(2, 0.0), 3 * kPi / 4, 1e-14);
  EXPECT_NEAR(gauge_integral(3, 0.0), 4 * kPi / 3 * 0.7, 1e-14);
  EXPECT_THROW(gauge_integral(3, -0.1), DomainError);
}

TEST(Gauge, BlichfeldtIsBallOverGauge) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> dd(2, 24);
  std::uniform_real_distribution<double> ll(0.0, std::sqrt(2.0) - 1.0);
  for (int k = 0; k < 20; ++k) {
    const int d = dd(rng);
    const double l = ll(rng);
    EXPECT_NEAR(blichfeldt_bound(d, l).value, unit_ball_volume(d) / gauge_integral(d, l),
                1e-12 * blichfeldt_bound(d, l).value)
        << d << " " << l;
  }
}

TEST(Theorem5, Values) {
  EXPECT_NEAR(theorem5_bound(1e-9), 1.0, 1e-8);
  EXPECT_NEAR(theorem5_bound(0.1), 0.771939368734524, 1e-13);
  EXPECT_NEAR(theorem5_bound_derived(0.1), 0.816782871674784, 1e-13);
  EXPECT_NEAR(theorem5_bound_derived(1e-9), 1.0, 1e-8);
  EXPECT_LT(theorem5_bound(0.1), sigma3(0.1));
  EXPECT_THROW(theorem5_bound(0.0), DomainError);
  EXPECT_THROW(theorem5_bound(0.2), DomainError);
}

TEST(Theorem5, DerivedDenominatorExpansion) {
  // lb^3 f(1) - cap(lb, 1) over f(1), expanded in lambda.
  const double p = psi0();
  for (double l : {0.02, 0.08, 0.14}) {
    const double den = (kPi - 6 * p) + (3 * kPi - 18 * p) * l - (6 * kPi + 18 * p) * l * l - (5 * kPi + 6 * p) * l * l * l;
    EXPECT_NEAR(theorem5_bound_derived(l), (kPi - 6 * p) / den, 1e-13) << l;
  }
}

TEST(Theorem8, Values) {
  expect_truncates_to(theorem8_bound(0.0), 0.778425);
  EXPECT_NEAR(theorem8_bound(0.0), 0.778425989398369, 1e-13);
  EXPECT_NEAR(theorem8_bound(0.1), 0.953043301052083, 1e-13);
  EXPECT_LT(theorem8_bound(0.1), sigma_bar3(0.1));
  EXPECT_THROW(theorem8_bound(-0.01), DomainError);
  EXPECT_THROW(theorem8_bound(kTop - 1.0), DomainError);
}

TEST(Ordering, StrictOnGrid) {
  for (double l : open_grid(0.0, kTop - 1.0, 100)) {
    EXPECT_LT(theorem5_bound(l), sigma3(l) - 1e-12) << l;
    EXPECT_LT(theorem5_bound_derived(l), sigma3(l) - 1e-12) << l;
    EXPECT_LT(theorem8_bound(l), sigma_bar3(l) - 1e-12) << l;
  }
}

TEST(Ordering, AllBoundsAtMostOne) {
  for (double l : open_grid(0.0, kTop - 1.0, 100)) {
    for (double v : {theorem5_bound(l), theorem5_bound_derived(l), theorem8_bound(l), sigma3(l), sigma_bar3(l),
                     delta2_exact(l), sigma2(l), sigma_bar2(l)})
      EXPECT_LE(v, 1.0 + 1e-12) << l;
  }
}

TEST(Scans, BoundaryFPoints) {
  for (double lb : {1.0, 1.05, 1.1, kTop}) EXPECT_NEAR(groemer_boundary_f(1.0, lb), 0.0, 1e-15);
  EXPECT_NEAR(groemer_boundary_f(1.1, 1.1), 0.0246716106190559, 1e-14);
}

TEST(Scans, InteriorGEndpoints) {
  // At alpha = pi/6 the cell triangle is one twelfth of the hexagon cell.
  for (double lb : {1.0, 1.05, 1.1, kTop}) EXPECT_NEAR(groemer_interior_g(kPi / 6, lb), 0.0, 1e-14) << lb;
}

TEST(Scans, GridMinimaNonNegative) {
  for (auto n : {ScanName::GroemerBoundaryF, ScanName::GroemerInteriorG, ScanName::RogersF}) {
    const auto r = scan_inequality(n, 200);
    EXPECT_GE(r.min, -1e-9) << to_string(n);
  }
}

TEST(Scans, Names) {
  EXPECT_EQ(parse_scan_name("rogers_F"), ScanName::RogersF);
  EXPECT_EQ(to_string(parse_scan_name("groemer_interior_g")), "groemer_interior_g");
  EXPECT_THROW(parse_scan_name("nope"), StructuralError);
  EXPECT_THROW(scan_inequality(ScanName::RogersF, 10), DomainError);
}

TEST(BoundTable, PlanarRow) {
  McOptions mc;
  mc.samples = 1000;
  const auto rows = bound_table(2, {0.1}, mc);
  ASSERT_EQ(rows.size(), 1u);
  const auto* e = rows[0].find("delta2");
  ASSERT_NE(e, nullptr);
  EXPECT_TRUE(e->valid);
  EXPECT_NEAR(e->value, 0.915581770840733, 1e-13);
  EXPECT_FALSE(rows[0].find("blichfeldt")->valid);
}

TEST(BoundTable, SpatialRows) {
  McOptions mc;
  mc.samples = 20'000;
  const auto rows = bound_table(3, {0.0, 0.2}, mc);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(rows[0].find("theorem8")->value, 0.778425989398369, 1e-13);
  EXPECT_FALSE(rows[0].find("theorem5")->valid);
  for (const char* n : {"theorem5", "theorem5_proof", "theorem8", "sigma3", "sigma_bar3"}) {
    EXPECT_FALSE(rows[1].find(n)->valid) << n;
    EXPECT_FALSE(rows[1].find(n)->domain_note.empty()) << n;
    EXPECT_TRUE(std::isnan(rows[1].find(n)->value)) << n;
  }
  EXPECT_TRUE(rows[1].find("tau3")->valid);
  EXPECT_GT(rows[1].find("tau3")->std_error, 0.0);
  EXPECT_EQ(rows[0].entries.size(), bound_names(3).size());
}

TEST(BoundTable, HighDimensionRows) {
  McOptions mc;
  mc.samples = 20'000;
  const auto rows = bound_table(6, {0.1, 0.5}, mc);
  EXPECT_TRUE(rows[0].find("sigma_bar_d")->valid);
  EXPECT_LT(rows[0].find("sigma_bar_d")->value, 1.0);
  EXPECT_FALSE(rows[1].find("sigma_d")->valid);
  EXPECT_THROW(bound_table(3, {-0.1}, mc), DomainError);
}
