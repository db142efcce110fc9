#pragma once
// Exact planar geometry of inflated disk packings: lenses, the hexagon-disk
// cell, union area in the pairwise regime, boundary walks of the
// lambda-intersection graph, Groemer-type lower bounds and the planar
// density formulas.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "softpack/constants.hpp"
#include "softpack/core.hpp"
#include "softpack/montecarlo.hpp"

namespace softpack {

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

// lb^2 arccos(1/lb) - sqrt(lb^2 - 1): area of the disk segment cut off by
// a chord at distance 1 from the center. Written with atan so that it stays
// accurate as lb -> 1.
inline double segment_excess(double lambda_bar) {
  const double t = std::sqrt((lambda_bar - 1.0) * (lambda_bar + 1.0));
  return lambda_bar * lambda_bar * std::atan(t) - t;
}

}  // namespace detail

/// Area of the intersection of two radius-r disks whose centers are `dist`
/// apart.
inline double lens_area(double r, double dist) {
  detail::require(r > 0.0 && dist >= 0.0, "lens_area: need r > 0 and dist >= 0");
  if (dist >= 2.0 * r) return 0.0;
  return 2.0 * r * r * std::acos(dist / (2.0 * r)) - 0.5 * dist * std::sqrt(4.0 * r * r - dist * dist);
}

/// d lens_area / d dist = -sqrt(4r^2 - dist^2); zero past tangency.
inline double lens_area_derivative(double r, double dist) {
  if (dist >= 2.0 * r) return 0.0;
  return -std::sqrt(4.0 * r * r - dist * dist);
}

/// Area of H ∩ lb B^2, H the regular hexagon circumscribed about the unit disk.
inline double hexdisk_area(double lambda_bar) {
  detail::require(lambda_bar >= 1.0 && lambda_bar <= kPairwiseLambdaBar + 1e-15,
                  "hexdisk_area: lambda_bar must lie in [1, 2/sqrt(3)]");
  return std::numbers::pi * lambda_bar * lambda_bar - 6.0 * detail::segment_excess(lambda_bar);
}

// ---------------------------------------------------------------------------
// Union area
// ---------------------------------------------------------------------------

inline double union_area_exact(const Packing& p, const Inflation& infl) {
  if (p.dim() != 2) throw StructuralError("union_area_exact needs a planar packing");
  if (infl.regime != Regime::Pairwise)
    throw RegimeError("union_area_exact: inflation is outside the pairwise regime; use union_area_mc");
  const double lb = infl.lambda_bar;
  double area = static_cast<double>(p.size()) * std::numbers::pi * lb * lb;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) area -= lens_area(lb, p.distance(i, j));
  return area;
}

inline MCEstimate union_area_mc(const Packing& p, const Inflation& infl, const McOptions& opt) {
  if (p.dim() != 2) throw StructuralError("union_area_mc needs a planar packing");
  return union_measure_mc(p, infl.lambda_bar, opt);
}

// ---------------------------------------------------------------------------
// Boundary of the lambda-intersection graph
// ---------------------------------------------------------------------------

struct BoundaryWalk {
  std::vector<std::vector<std::size_t>> cycles;         // edge indices into the graph
  std::vector<std::vector<std::size_t>> vertex_cycles;  // walk vertices, same order
  double perim = 0.0;
  std::size_t component_count = 0;  // s: components on the unbounded face
};

namespace detail {

inline double polygon_signed_area(const Packing& p, const std::vector<std::size_t>& verts) {
  double a = 0.0;
  for (std::size_t k = 0; k < verts.size(); ++k) {
    const auto u = p.center(verts[k]);
    const auto v = p.center(verts[(k + 1) % verts.size()]);
    a += u[0] * v[1] - v[0] * u[1];
  }
  return 0.5 * a;
}

inline int winding_number(const Packing& p, const std::vector<std::size_t>& verts, std::span<const double> q) {
  int wn = 0;
  for (std::size_t k = 0; k < verts.size(); ++k) {
    const auto a = p.center(verts[k]);
    const auto b = p.center(verts[(k + 1) % verts.size()]);
    const double side = (b[0] - a[0]) * (q[1] - a[1]) - (q[0] - a[0]) * (b[1] - a[1]);
    if (a[1] <= q[1]) {
      if (b[1] > q[1] && side > 0) ++wn;
    } else if (b[1] <= q[1] && side < 0) {
      --wn;
    }
  }
  return wn;
}

}  // namespace detail

/// Closed walks bounding the unbounded face of the straight-line drawing of
/// g. Faces are traced with a counterclockwise rotation system: after the
/// half-edge u->v the walk continues to the clockwise successor of u around
/// v. Bounded faces then have positive signed area; in each connected
/// component the face of least signed area is its outer walk. Components
/// lying inside a bounded face of another component are not on the
/// unbounded face and are skipped.
inline BoundaryWalk boundary_walk(const IntersectionGraph& g, const Packing& p) {
  if (p.dim() != 2) throw StructuralError("boundary_walk needs a planar packing");
  if (g.vertex_count != p.size()) throw StructuralError("graph and packing sizes differ");
  if (auto cross = find_crossing(g, p))
    throw StructuralError("boundary_walk: edges (" + std::to_string(cross->first.i) + "," +
                          std::to_string(cross->first.j) + ") and (" + std::to_string(cross->second.i) +
                          "," + std::to_string(cross->second.j) + ") cross");

  const std::size_t n = p.size();
  struct Arc {
    std::size_t to;
    std::size_t edge;
    double angle;
  };
  std::vector<std::vector<Arc>> rot(n);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [i, j] = g.edges[e];
    const auto ci = p.center(i);
    const auto cj = p.center(j);
    rot[i].push_back({j, e, std::atan2(cj[1] - ci[1], cj[0] - ci[0])});
    rot[j].push_back({i, e, std::atan2(ci[1] - cj[1], ci[0] - cj[0])});
  }
  for (auto& r : rot) std::sort(r.begin(), r.end(), [](const Arc& a, const Arc& b) { return a.angle < b.angle; });

  // Components.
  std::vector<std::size_t> comp(n, n);
  std::size_t ncomp = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != n) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (const Arc& a : rot[v])
        if (comp[a.to] == n) {
          comp[a.to] = ncomp;
          stack.push_back(a.to);
        }
    }
    ++ncomp;
  }

  // Half-edge (v, k): the k-th arc leaving v.
  std::vector<std::vector<bool>> seen(n);
  for (std::size_t v = 0; v < n; ++v) seen[v].assign(rot[v].size(), false);

  struct Face {
    std::vector<std::size_t> edges;
    std::vector<std::size_t> verts;
    double area = 0.0;
  };
  std::vector<std::optional<Face>> outer(ncomp);

  for (std::size_t v0 = 0; v0 < n; ++v0)
    for (std::size_t k0 = 0; k0 < rot[v0].size(); ++k0) {
      if (seen[v0][k0]) continue;
      Face f;
      std::size_t v = v0, k = k0;
      while (!seen[v][k]) {
        seen[v][k] = true;
        const Arc& a = rot[v][k];
        f.edges.push_back(a.edge);
        f.verts.push_back(v);
        // Position of v in the rotation at a.to, then step clockwise.
        const auto& around = rot[a.to];
        std::size_t back = 0;
        while (around[back].to != v || around[back].edge != a.edge) ++back;
        k = (back + around.size() - 1) % around.size();
        v = a.to;
      }
      f.area = detail::polygon_signed_area(p, f.verts);
      auto& slot = outer[comp[v0]];
      if (!slot || f.area < slot->area) slot = std::move(f);
    }

  BoundaryWalk walk;
  for (std::size_t c = 0; c < ncomp; ++c) {
    // Representative vertex of component c.
    std::size_t rep = 0;
    while (comp[rep] != c) ++rep;
    bool nested = false;
    for (std::size_t o = 0; o < ncomp && !nested; ++o)
      if (o != c && outer[o] && detail::winding_number(p, outer[o]->verts, p.center(rep)) != 0) nested = true;
    if (nested) continue;
    ++walk.component_count;
    if (!outer[c]) continue;
    for (std::size_t e : outer[c]->edges) walk.perim += p.distance(g.edges[e].i, g.edges[e].j);
    walk.cycles.push_back(outer[c]->edges);
    walk.vertex_cycles.push_back(outer[c]->verts);
  }
  return walk;
}

// ---------------------------------------------------------------------------
// Groemer-type lower bounds for the union area
// ---------------------------------------------------------------------------

enum class GroemerVariant { Theorem6, RemarkGroemer2 };

/// Lower bound for the union area of n inflated unit disks whose
/// lambda-intersection graph has boundary length `perim`:
///   Theorem6       (1 <= lb <= 2/sqrt3):
///     area(H ∩ lb B) (n-1) + (lb^2 arccos(1/lb) - sqrt(lb^2-1)) perim + lb^2 pi
///   RemarkGroemer2 (2/sqrt3 <= lb <= Lambda-bar):
///     sqrt12 (n-1) + (lb^2 (pi/2 - arccos(1/lb)) + sqrt(lb^2-1) - sqrt3) perim / 2 + lb^2 pi
/// The per-vertex term carries n-1: the cell angles around the vertices sum
/// to 2 pi n minus one full turn per boundary component.
inline double groemer_rhs(std::size_t n, double perim, double lambda_bar, GroemerVariant variant) {
  if (n == 0) throw DomainError("groemer_rhs: n must be positive");
  if (perim < 0.0) throw DomainError("groemer_rhs: perimeter must be non-negative");
  const double lb = lambda_bar;
  const double cells = static_cast<double>(n - 1);
  const double pi = std::numbers::pi;
  if (variant == GroemerVariant::Theorem6) {
    detail::require(lb >= 1.0 && lb <= kPairwiseLambdaBar + 1e-15,
                    "groemer_rhs(theorem6): lambda_bar must lie in [1, 2/sqrt(3)]");
    return hexdisk_area(lb) * cells + detail::segment_excess(lb) * perim + lb * lb * pi;
  }
  detail::require(lb >= kPairwiseLambdaBar - 1e-15 && lb <= groemer_remark_upper(),
                  "groemer_rhs(remark): lambda_bar must lie in [2/sqrt(3), Lambda-bar]");
  const double t = std::sqrt((lb - 1.0) * (lb + 1.0));
  const double edge = 0.5 * (lb * lb * (pi / 2.0 - std::atan(t)) + t - std::sqrt(3.0));
  return std::sqrt(12.0) * cells + edge * perim + lb * lb * pi;
}

inline double groemer_rhs(std::size_t n, double perim, const Inflation& infl, GroemerVariant variant) {
  return groemer_rhs(n, perim, infl.lambda_bar, variant);
}

// ---------------------------------------------------------------------------
// Convex hull perimeter
// ---------------------------------------------------------------------------

/// Perimeter of conv(centers); a segment counts twice, a point is 0.
inline double hull_perimeter(const Packing& p) {
  if (p.dim() != 2) throw StructuralError("hull_perimeter needs a planar packing");
  std::vector<std::array<double, 2>> pts;
  for (std::size_t i = 0; i < p.size(); ++i) pts.push_back({p.center(i)[0], p.center(i)[1]});
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 2) return 0.0;
  auto cross = [](const auto& o, const auto& a, const auto& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<std::array<double, 2>> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& q : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], q) <= 0) --k;
    hull[k++] = q;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  double per = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    per += std::hypot(b[0] - a[0], b[1] - a[1]);
  }
  return per;
}

/// Perimeter of conv(union of c_i + lb B^2) = perim conv(centers) + 2 pi lb.
inline double hull_perimeter_inflated(const Packing& p, double lambda_bar) {
  return hull_perimeter(p) + 2.0 * std::numbers::pi * lambda_bar;
}

// ---------------------------------------------------------------------------
// Planar densities
// ---------------------------------------------------------------------------

inline void require_planar_lambda(double lambda, bool open_at_zero, const char* who) {
  const double top = kPairwiseLambdaBar - 1.0;
  const bool ok = (open_at_zero ? lambda > 0.0 : lambda >= 0.0) && lambda < top;
  if (!ok) throw DomainError(std::string(who) + ": lambda outside the pairwise range");
}

/// Best density of n unit disks relative to their outer parallel domain as
/// n -> infinity: pi / area(H ∩ (1+lambda) B^2).
inline double delta2_exact(double lambda) {
  require_planar_lambda(lambda, true, "delta2_exact");
  return std::numbers::pi / hexdisk_area(1.0 + lambda);
}

/// Simplex ratio (3 vol(T ∩ (t1 + B))) / vol(T ∩ union of lb-disks) for the
/// edge-2 triangle.
inline double sigma2(double lambda) {
  require_planar_lambda(lambda, false, "sigma2");
  const double lb = 1.0 + lambda;
  return std::numbers::pi / (std::numbers::pi * lb * lb - 3.0 * lens_area(lb, 2.0));
}

/// Fraction of the edge-2 triangle covered by lb-disks at its vertices:
/// three pi/3 sectors less three half-lenses, over the area sqrt3.
inline double sigma_bar2(double lambda) {
  require_planar_lambda(lambda, false, "sigma_bar2");
  const double lb = 1.0 + lambda;
  return (0.5 * std::numbers::pi * lb * lb - 1.5 * lens_area(lb, 2.0)) / std::sqrt(3.0);
}

}  // namespace softpack
