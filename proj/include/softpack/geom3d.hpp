#pragma once
// Three-dimensional pieces: lenses and caps, the spherical Rogers triangle,
// the face functions f and F, exact union volume in the pairwise regime,
// the regular tetrahedron closed forms, the circumscribed dodecahedron and
// lattice constants.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "softpack/constants.hpp"
#include "softpack/core.hpp"
#include "softpack/geom2d.hpp"
#include "softpack/montecarlo.hpp"

namespace softpack {

/// Volume of the intersection of two radius-r balls whose centers are
/// `dist` apart.
inline double lens_volume(double r, double dist) {
  detail::require(r > 0.0 && dist >= 0.0, "lens_volume: need r > 0 and dist >= 0");
  if (dist >= 2.0 * r) return 0.0;
  const double gap = 2.0 * r - dist;
  return std::numbers::pi / 12.0 * (4.0 * r + dist) * gap * gap;
}

/// d lens_volume / d dist = -(pi/4) (4r^2 - dist^2).
inline double lens_volume_derivative(double r, double dist) {
  if (dist >= 2.0 * r) return 0.0;
  return -0.25 * std::numbers::pi * (4.0 * r * r - dist * dist);
}

/// pi (2/3 lb^3 - lb^2 x + x^3/3): the cap cut off the lb-ball by a plane at
/// distance x from its center.
inline double cap_cone_term(double lambda_bar, double x) {
  detail::require(x >= 1.0 && x <= lambda_bar, "cap_cone_term: need 1 <= x <= lambda_bar");
  const double gap = lambda_bar - x;
  return std::numbers::pi / 3.0 * gap * gap * (2.0 * lambda_bar + x);
}

namespace detail {
inline void require_face_distance(double x, const char* who) {
  if (!(x >= 1.0 && x <= kPairwiseLambdaBar + 1e-15))
    throw DomainError(std::string(who) + ": x must lie in [1, 2/sqrt(3)]");
}
inline double arccot(double z) { return std::numbers::pi / 2.0 - std::atan(z); }
}  // namespace detail

/// Spherical area of the radial projection of the Rogers triangle whose
/// face plane is at distance x from the center.
inline double spherical_triangle_area(double x) {
  detail::require_face_distance(x, "spherical_triangle_area");
  return std::atan(1.0 / std::sqrt(3.0 - x * x)) + std::atan(std::sqrt(4.0 - x * x) / x) -
         std::numbers::pi / 2.0;
}

/// f(x) = (10/3) arctan(sqrt(4-x^2)/x)
///        - (2/3) arccot(x sqrt(3-x^2) tan(5 arctan(1/sqrt(3-x^2))) / sqrt(4-x^2))
///        - 2 pi / 3,
/// arccot valued in (0, pi).
inline double hajos_f(double x) {
  detail::require_face_distance(x, "hajos_f");
  const double s3 = std::sqrt(3.0 - x * x);
  const double s4 = std::sqrt(4.0 - x * x);
  const double z = x * s3 * std::tan(5.0 * std::atan(1.0 / s3)) / s4;
  return 10.0 / 3.0 * std::atan(s4 / x) - 2.0 / 3.0 * detail::arccot(z) - 2.0 * std::numbers::pi / 3.0;
}

/// F(x, lb) = f(x) - C cap(lb, x) with C = f(1) / cap(lb, 1), so F(1, lb) = 0.
inline double hajos_F(double x, double lambda_bar) {
  if (!(lambda_bar > 1.0 && lambda_bar < kPairwiseLambdaBar))
    throw DomainError("hajos_F: lambda_bar must lie in (1, 2/sqrt(3))");
  if (!(x >= 1.0 && x <= lambda_bar)) throw DomainError("hajos_F: need 1 <= x <= lambda_bar");
  const double c = hajos_f(1.0) / cap_cone_term(lambda_bar, 1.0);
  return hajos_f(x) - c * cap_cone_term(lambda_bar, x);
}

// ---------------------------------------------------------------------------
// Union volume
// ---------------------------------------------------------------------------

inline double union_volume_exact(const Packing& p, const Inflation& infl) {
  if (p.dim() != 3) throw StructuralError("union_volume_exact needs a 3-dimensional packing");
  if (infl.regime != Regime::Pairwise)
    throw RegimeError("union_volume_exact: inflation is outside the pairwise regime; use union_volume_mc");
  const double lb = infl.lambda_bar;
  double vol = static_cast<double>(p.size()) * 4.0 * std::numbers::pi / 3.0 * lb * lb * lb;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) vol -= lens_volume(lb, p.distance(i, j));
  return vol;
}

inline MCEstimate union_volume_mc(const Packing& p, const Inflation& infl, const McOptions& opt) {
  if (p.dim() != 3) throw StructuralError("union_volume_mc needs a 3-dimensional packing");
  return union_measure_mc(p, infl.lambda_bar, opt);
}

// ---------------------------------------------------------------------------
// Regular tetrahedron of edge 2
// ---------------------------------------------------------------------------

/// Vertex solid angle of the regular tetrahedron, 3 arccos(1/3) - pi.
inline double tetra_vertex_solid_angle() { return 6.0 * phi0() - std::numbers::pi; }

inline double tetra_volume() { return 2.0 * std::sqrt(2.0) / 3.0; }

namespace detail {
inline void require_tetra_lambda_bar(double lb, const char* who) {
  if (!(lb >= 1.0 && lb < kPairwiseLambdaBar))
    throw DomainError(std::string(who) + ": lambda_bar must lie in [1, 2/sqrt(3))");
}
}  // namespace detail

/// vol(T ∩ union of lb-balls at the vertices): four vertex sectors less the
/// dihedral share arccos(1/3)/(2 pi) of each of the six edge lenses.
inline double tetra_union_volume(double lambda_bar) {
  detail::require_tetra_lambda_bar(lambda_bar, "tetra_union_volume");
  const double lb = lambda_bar;
  const double omega = tetra_vertex_solid_angle();
  const double wedge = std::acos(1.0 / 3.0) / (2.0 * std::numbers::pi);
  return 4.0 * omega / 3.0 * lb * lb * lb - 6.0 * wedge * lens_volume(lb, 2.0);
}

inline double sigma3(double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("sigma3: lambda must be non-negative");
  return 4.0 * tetra_vertex_solid_angle() / 3.0 / tetra_union_volume(1.0 + lambda);
}

inline double sigma_bar3(double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("sigma_bar3: lambda must be non-negative");
  return tetra_union_volume(1.0 + lambda) / tetra_volume();
}

/// The rational expression printed for sigma_3, read with the dangling "+"
/// in the linear coefficient as "+ 0".
inline double sigma3_printed(double lambda) {
  detail::require_tetra_lambda_bar(1.0 + lambda, "sigma3_printed");
  const double pi = std::numbers::pi;
  const double p0 = phi0();
  const double l = lambda;
  const double den = pi * l * l * l + (3.0 * pi - 9.0 * p0) * l * l + (3.0 * pi - 18.0 * p0) * l + pi - 6.0 * p0;
  return (pi - 6.0 * p0) / den;
}

// ---------------------------------------------------------------------------
// Regular dodecahedron circumscribed about the unit ball
// ---------------------------------------------------------------------------

struct Dodecahedron {
  std::vector<std::array<double, 3>> vertices;  // 20
  std::vector<std::array<double, 3>> normals;   // 12 unit outward normals
  std::vector<double> offsets;                  // plane n.x = offset
  double inradius = 1.0;
  double circumradius = 0.0;
  double volume = 0.0;

  bool contains(std::span<const double> x) const {
    for (std::size_t f = 0; f < normals.size(); ++f)
      if (normals[f][0] * x[0] + normals[f][1] * x[1] + normals[f][2] * x[2] > offsets[f]) return false;
    return true;
  }
};

inline Dodecahedron dodecahedron_model() {
  const double phi = std::numbers::phi;
  const double iphi = 1.0 / phi;
  Dodecahedron D;
  for (int a : {-1, 1})
    for (int b : {-1, 1})
      for (int c : {-1, 1}) D.vertices.push_back({double(a), double(b), double(c)});
  for (int a : {-1, 1})
    for (int b : {-1, 1}) {
      D.vertices.push_back({0.0, a * iphi, b * phi});
      D.vertices.push_back({a * iphi, b * phi, 0.0});
      D.vertices.push_back({a * phi, 0.0, b * iphi});
    }
  // Face normals: (0, ±phi, ±1) and its cyclic shifts.
  const double nn = std::sqrt(1.0 + phi * phi);
  for (int a : {-1, 1})
    for (int b : {-1, 1}) {
      D.normals.push_back({0.0, a * phi / nn, b / nn});
      D.normals.push_back({b / nn, 0.0, a * phi / nn});
      D.normals.push_back({a * phi / nn, b / nn, 0.0});
    }
  // Unscaled inradius: support of the vertex set along any face normal.
  double h = 0.0;
  for (const auto& v : D.vertices) h = std::max(h, D.normals[0][0] * v[0] + D.normals[0][1] * v[1] + D.normals[0][2] * v[2]);
  double rmax = 0.0;
  for (auto& v : D.vertices) {
    for (double& c : v) c /= h;
    rmax = std::max(rmax, std::hypot(v[0], v[1], v[2]));
  }
  D.offsets.assign(D.normals.size(), 1.0);
  D.circumradius = rmax;
  // Twelve pyramids of height 1 over pentagonal faces.
  const double edge = 2.0 * iphi / h;
  const double face_area = 5.0 * edge * edge / (4.0 * std::tan(std::numbers::pi / 5.0));
  D.volume = 12.0 * face_area / 3.0;
  return D;
}

inline const Dodecahedron& dodecahedron() {
  static const Dodecahedron model = dodecahedron_model();
  return model;
}

namespace detail {
// MC estimate of vol(D ∩ lb B^3) by sampling the ball of radius min(lb, R).
inline MCEstimate dodeca_ball_volume(double lambda, const McOptions& opt, const char* who) {
  const Dodecahedron& D = dodecahedron();
  if (!(lambda >= 0.0 && 1.0 + lambda <= D.circumradius + 1e-12))
    throw DomainError(std::string(who) + ": lambda must lie in [0, sqrt(3) tan(pi/5) - 1]");
  const double r = std::min(1.0 + lambda, D.circumradius);
  return estimate_fraction([&](std::span<const double> x) { return D.contains(x); }, BallSampler(3, r), opt);
}
}  // namespace detail

/// tau_3(lambda) = vol(B^3) / vol(D ∩ (1+lambda) B^3); error by the delta method.
inline MCEstimate tau3(double lambda, const McOptions& opt) {
  const MCEstimate v = detail::dodeca_ball_volume(lambda, opt, "tau3");
  const double ball = 4.0 * std::numbers::pi / 3.0;
  return {ball / v.value, ball / v.value * (v.std_error / v.value), v.samples, v.seed};
}

/// tau-bar_3(lambda) = vol(D ∩ (1+lambda) B^3) / vol(D).
inline MCEstimate tau_bar3(double lambda, const McOptions& opt) {
  const MCEstimate v = detail::dodeca_ball_volume(lambda, opt, "tau_bar3");
  const double vd = dodecahedron().volume;
  return {v.value / vd, v.std_error / vd, v.samples, v.seed};
}

// ---------------------------------------------------------------------------
// Lattice constants (nearest-neighbour distance 2)
// ---------------------------------------------------------------------------

/// Basis of the lattice with minimum distance 2, one vector per row.
inline std::vector<std::vector<double>> lattice_basis(LatticeKind kind) {
  const double s2 = std::sqrt(2.0);
  const double h = bcc_cube_edge() / 2.0;
  switch (kind) {
    case LatticeKind::Hexagonal2d: return {{2.0, 0.0}, {1.0, std::sqrt(3.0)}};
    case LatticeKind::Square2d: return {{2.0, 0.0}, {0.0, 2.0}};
    case LatticeKind::Fcc3d: return {{s2, s2, 0.0}, {s2, 0.0, s2}, {0.0, s2, s2}};
    case LatticeKind::Bcc3d: return {{h, h, -h}, {h, -h, h}, {-h, h, h}};
  }
  throw StructuralError("unknown lattice kind");
}

inline double lattice_cell_volume(LatticeKind kind) {
  const auto b = lattice_basis(kind);
  std::vector<double> m;
  for (const auto& row : b) m.insert(m.end(), row.begin(), row.end());
  return std::abs(detail::determinant(m, b.size()));
}

/// Packing density of unit balls centred at the lattice points.
inline double lattice_density(LatticeKind kind) {
  return unit_ball_volume(lattice_dim(kind)) / lattice_cell_volume(kind);
}

/// Covering radius: distance from the deepest hole to the nearest lattice
/// point. Hexagonal: triangle circumradius 2/sqrt3. Square and fcc: half
/// the cube diagonal resp. octahedral hole, sqrt2. Bcc: a sqrt5 / 4 with
/// cube edge a = 4/sqrt3.
inline double lattice_covering_radius(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::Hexagonal2d: return 2.0 / std::sqrt(3.0);
    case LatticeKind::Square2d: return std::sqrt(2.0);
    case LatticeKind::Fcc3d: return std::sqrt(2.0);
    case LatticeKind::Bcc3d: return bcc_cube_edge() * std::sqrt(5.0) / 4.0;
  }
  throw StructuralError("unknown lattice kind");
}

inline double fcc_density_check() { return lattice_density(LatticeKind::Fcc3d); }

/// Distance from x to the nearest point of the bcc lattice with cube edge a.
inline double bcc_nearest_distance(std::span<const double> x) {
  const double a = bcc_cube_edge();
  double best = std::numeric_limits<double>::infinity();
  for (double shift : {0.0, 0.5 * a}) {
    double s = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double y = x[k] - shift;
      const double r = y - a * std::round(y / a);
      s += r * r;
    }
    best = std::min(best, s);
  }
  return std::sqrt(best);
}

/// Fraction of the cube [0, a)^3 (a period of the bcc lattice) within
/// lambda_bar of a lattice point.
inline MCEstimate bcc_covering_check(double lambda_bar, const McOptions& opt) {
  if (!(lambda_bar > 0.0)) throw DomainError("bcc_covering_check: lambda_bar must be positive");
  const double a = bcc_cube_edge();
  const auto counts = count_events(BoxSampler({0.0, 0.0, 0.0}, {a, a, a}), opt, [&](std::span<const double> x) {
    return bcc_nearest_distance(x) <= lambda_bar ? 1u : 0u;
  });
  return hit_or_miss(counts[0], opt.samples, 1.0, opt.seed);
}

}  // namespace softpack
