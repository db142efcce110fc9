#pragma once
// Packing data model, regime classification, contact / lambda-intersection
// graphs and reference lattice patches.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace softpack {

inline constexpr double kDefaultTol = 1e-9;

/// Malformed input: ragged coordinates, empty packings, unknown names.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numeric argument outside the domain where a formula is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An exact union formula was asked for outside the pairwise regime.
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// 2/sqrt(3): circumradius of a unit-edge-2 triangle. Below it no three
/// inflated balls share a point.
inline const double kPairwiseLambdaBar = 2.0 / std::sqrt(3.0);

/// Circumradius of the regular d-simplex of edge length 2, sqrt(2d/(d+1)).
inline double simplex_circumradius(int d) {
  return std::sqrt(2.0 * d / (d + 1.0));
}

/// Unit-ball volume omega_d.
inline double unit_ball_volume(int d) {
  return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

// ---------------------------------------------------------------------------
// Packing
// ---------------------------------------------------------------------------

/// Centers of unit balls in E^d, stored as one flat coordinate array.
/// Construction checks shape only; use validate_packing for the distance
/// condition.
class Packing {
 public:
  Packing() = default;

  Packing(int dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    if (dim_ < 1) throw StructuralError("packing dimension must be positive");
    if (coords_.size() % static_cast<std::size_t>(dim_) != 0)
      throw StructuralError("coordinate count is not a multiple of the dimension");
  }

  static Packing from_points(int dim, const std::vector<std::vector<double>>& points) {
    std::vector<double> flat;
    flat.reserve(points.size() * static_cast<std::size_t>(std::max(dim, 0)));
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i].size() != static_cast<std::size_t>(dim))
        throw StructuralError("center " + std::to_string(i) + " has " +
                              std::to_string(points[i].size()) + " coordinates, expected " +
                              std::to_string(dim));
      flat.insert(flat.end(), points[i].begin(), points[i].end());
    }
    return Packing(dim, std::move(flat));
  }

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ > 0 ? coords_.size() / dim_ : 0; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> center(std::size_t i) const {
    return {coords_.data() + i * dim_, static_cast<std::size_t>(dim_)};
  }
  const std::vector<double>& coords() const noexcept { return coords_; }

  double distance_sq(std::size_t i, std::size_t j) const {
    const double* a = coords_.data() + i * dim_;
    const double* b = coords_.data() + j * dim_;
    double s = 0.0;
    for (int k = 0; k < dim_; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return s;
  }
  double distance(std::size_t i, std::size_t j) const { return std::sqrt(distance_sq(i, j)); }

 private:
  int dim_ = 0;
  std::vector<double> coords_;
};

// ---------------------------------------------------------------------------
// Inflation / regime
// ---------------------------------------------------------------------------

enum class Regime { Pairwise, RogersOnly, Beyond };

inline std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Pairwise: return "pairwise";
    case Regime::RogersOnly: return "rogers-only";
    case Regime::Beyond: return "beyond";
  }
  return "?";
}

struct Inflation {
  int dim = 2;
  double lambda = 0.0;
  double lambda_bar = 1.0;
  Regime regime = Regime::Pairwise;
};

/// Pairwise iff lambda_bar < 2/sqrt(3); RogersOnly up to the simplex
/// circumradius sqrt(2d/(d+1)); Beyond otherwise. In the plane the two
/// thresholds coincide, so RogersOnly is empty.
inline Inflation classify_regime(int d, double lambda) {
  if (d < 2) throw DomainError("dimension must be at least 2");
  if (!(lambda >= 0.0)) throw DomainError("lambda must be non-negative");
  Inflation infl{d, lambda, 1.0 + lambda, Regime::Beyond};
  if (infl.lambda_bar < kPairwiseLambdaBar)
    infl.regime = Regime::Pairwise;
  else if (infl.lambda_bar < simplex_circumradius(d))
    infl.regime = Regime::RogersOnly;
  return infl;
}

// ---------------------------------------------------------------------------
// Validation and graphs
// ---------------------------------------------------------------------------

struct ValidationReport {
  bool valid = true;
  double min_pair_distance = std::numeric_limits<double>::infinity();
  std::optional<std::pair<std::size_t, std::size_t>> offending_pair;
};

inline ValidationReport validate_packing(const Packing& p, double tol = kDefaultTol) {
  if (p.empty()) throw StructuralError("packing has no centers");
  if (tol < 0.0) throw DomainError("tolerance must be non-negative");
  ValidationReport rep;
  std::pair<std::size_t, std::size_t> closest{0, 0};
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      const double d = p.distance(i, j);
      if (d < rep.min_pair_distance) {
        rep.min_pair_distance = d;
        closest = {i, j};
      }
    }
  rep.valid = p.size() < 2 || rep.min_pair_distance >= 2.0 - tol;
  if (!rep.valid) rep.offending_pair = closest;
  return rep;
}

struct Edge {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct IntersectionGraph {
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;  // i < j, lexicographic order
  double threshold = 2.0;
};

inline IntersectionGraph intersection_graph(const Packing& p, double threshold,
                                            double tol = kDefaultTol) {
  IntersectionGraph g{p.size(), {}, threshold};
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p.distance(i, j) <= threshold + tol) g.edges.push_back({i, j});
  return g;
}

/// Graph of pairs whose inflated balls meet (distance <= 2 lambda_bar).
inline IntersectionGraph lambda_graph(const Packing& p, double lambda_bar,
                                      double tol = kDefaultTol) {
  return intersection_graph(p, 2.0 * lambda_bar, tol);
}

inline IntersectionGraph contact_graph(const Packing& p, double tol = kDefaultTol) {
  return intersection_graph(p, 2.0, tol);
}

/// Pairs at distance 2 within tol. Sensitive to tol for near-tangent pairs.
inline std::size_t contact_count(const Packing& p, double tol = kDefaultTol) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (std::abs(p.distance(i, j) - 2.0) <= tol) ++count;
  return count;
}

namespace detail {

inline double cross2(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

}  // namespace detail

/// True when segments [a,b] and [c,d] in the plane cross at a point
/// interior to both. Segments sharing an endpoint never count.
inline bool segments_properly_cross(std::span<const double> a, std::span<const double> b,
                                    std::span<const double> c, std::span<const double> d) {
  using detail::cross2;
  const double d1 = cross2(b[0] - a[0], b[1] - a[1], c[0] - a[0], c[1] - a[1]);
  const double d2 = cross2(b[0] - a[0], b[1] - a[1], d[0] - a[0], d[1] - a[1]);
  const double d3 = cross2(d[0] - c[0], d[1] - c[1], a[0] - c[0], a[1] - c[1]);
  const double d4 = cross2(d[0] - c[0], d[1] - c[1], b[0] - c[0], b[1] - c[1]);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

/// First pair of edges whose straight-line drawings cross, if any.
inline std::optional<std::pair<Edge, Edge>> find_crossing(const IntersectionGraph& g,
                                                          const Packing& p) {
  if (p.dim() != 2) throw StructuralError("crossing test needs a planar packing");
  for (std::size_t a = 0; a < g.edges.size(); ++a)
    for (std::size_t b = a + 1; b < g.edges.size(); ++b) {
      const Edge& e = g.edges[a];
      const Edge& f = g.edges[b];
      if (e.i == f.i || e.i == f.j || e.j == f.i || e.j == f.j) continue;
      if (segments_properly_cross(p.center(e.i), p.center(e.j), p.center(f.i), p.center(f.j)))
        return std::pair{e, f};
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Lattice patches
// ---------------------------------------------------------------------------

enum class LatticeKind { Hexagonal2d, Square2d, Fcc3d, Bcc3d };

inline LatticeKind parse_lattice_kind(std::string_view name) {
  if (name == "hexagonal2d" || name == "hex") return LatticeKind::Hexagonal2d;
  if (name == "square2d" || name == "square") return LatticeKind::Square2d;
  if (name == "fcc3d" || name == "fcc") return LatticeKind::Fcc3d;
  if (name == "bcc3d" || name == "bcc") return LatticeKind::Bcc3d;
  throw StructuralError("unknown lattice kind '" + std::string(name) + "'");
}

inline std::string_view to_string(LatticeKind k) {
  switch (k) {
    case LatticeKind::Hexagonal2d: return "hexagonal2d";
    case LatticeKind::Square2d: return "square2d";
    case LatticeKind::Fcc3d: return "fcc3d";
    case LatticeKind::Bcc3d: return "bcc3d";
  }
  return "?";
}

inline int lattice_dim(LatticeKind k) {
  return (k == LatticeKind::Hexagonal2d || k == LatticeKind::Square2d) ? 2 : 3;
}

/// Cube edge of the bcc lattice scaled to nearest-neighbour distance 2.
inline double bcc_cube_edge() { return 4.0 / std::sqrt(3.0); }

namespace detail {

// Lattice points within "radius" shells of the origin, origin first, then
// by norm, polar angle and height. The ordering makes prefixes compact.
inline std::vector<std::vector<double>> lattice_points(LatticeKind kind, int reach,
                                                       double max_norm) {
  std::vector<std::vector<double>> pts;
  const double s3 = std::sqrt(3.0);
  const double r2 = std::sqrt(2.0);
  const double eps = 1e-9;
  auto keep = [&](std::vector<double> v) {
    double n2 = 0;
    for (double x : v) n2 += x * x;
    if (std::sqrt(n2) <= max_norm + eps) pts.push_back(std::move(v));
  };
  switch (kind) {
    case LatticeKind::Hexagonal2d:
      for (int q = -reach; q <= reach; ++q)
        for (int r = -reach; r <= reach; ++r)
          keep({2.0 * q + r, s3 * r});
      break;
    case LatticeKind::Square2d:
      for (int i = -reach; i <= reach; ++i)
        for (int j = -reach; j <= reach; ++j) keep({2.0 * i, 2.0 * j});
      break;
    case LatticeKind::Fcc3d:
      for (int i = -reach; i <= reach; ++i)
        for (int j = -reach; j <= reach; ++j)
          for (int k = -reach; k <= reach; ++k)
            if ((i + j + k) % 2 == 0) keep({r2 * i, r2 * j, r2 * k});
      break;
    case LatticeKind::Bcc3d: {
      const double a = bcc_cube_edge();
      for (int i = -reach; i <= reach; ++i)
        for (int j = -reach; j <= reach; ++j)
          for (int k = -reach; k <= reach; ++k) {
            keep({a * i, a * j, a * k});
            keep({a * (i + 0.5), a * (j + 0.5), a * (k + 0.5)});
          }
      break;
    }
  }
  auto key = [](const std::vector<double>& v) {
    double n2 = 0;
    for (double x : v) n2 += x * x;
    const double ang = std::atan2(v[1], v[0]);
    const double z = v.size() > 2 ? v[2] : 0.0;
    // Round the norm so that lattice-equal norms tie exactly.
    return std::tuple{std::round(std::sqrt(n2) * 1e9), ang < -1e-12 ? ang + 2 * std::numbers::pi : ang,
                      z};
  };
  std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  return pts;
}

}  // namespace detail

/// Finite patch of a lattice packing with nearest-neighbour distance 2.
/// hexagonal2d: points within hexagonal (axial) distance `extent` of the
/// origin, so extent 1 is the 7-disk flower. square2d: the (2e+1)^2 grid.
/// fcc3d / bcc3d: lattice points within Euclidean radius 2*extent.
inline Packing lattice_patch(LatticeKind kind, int extent) {
  if (extent < 1) throw DomainError("lattice patch extent must be >= 1");
  std::vector<std::vector<double>> pts;
  if (kind == LatticeKind::Hexagonal2d) {
    for (int q = -extent; q <= extent; ++q)
      for (int r = -extent; r <= extent; ++r)
        if (std::abs(q) + std::abs(r) + std::abs(q + r) <= 2 * extent)
          pts.push_back({2.0 * q + r, std::sqrt(3.0) * r});
  } else if (kind == LatticeKind::Square2d) {
    for (int i = -extent; i <= extent; ++i)
      for (int j = -extent; j <= extent; ++j) pts.push_back({2.0 * i, 2.0 * j});
  } else {
    pts = detail::lattice_points(kind, 2 * extent + 1, 2.0 * extent);
  }
  return Packing::from_points(lattice_dim(kind), pts);
}

/// The n lattice points closest to the origin (ties broken by polar angle).
/// For the hexagonal lattice n = 3, 4, 7 give triangle, rhombus, flower.
inline Packing lattice_prefix(LatticeKind kind, std::size_t n) {
  if (n == 0) throw DomainError("lattice prefix needs n >= 1");
  int reach = 1;
  for (;;) {
    auto pts = detail::lattice_points(kind, reach + 1, 2.0 * reach);
    if (pts.size() >= n) {
      pts.resize(n);
      return Packing::from_points(lattice_dim(kind), pts);
    }
    ++reach;
  }
}

/// Random connected-ish cluster: each new center is placed at distance
/// 2 + gap from a random earlier center, gap uniform in [0, max_gap] (or 0
/// with probability tangent_prob), rejected if it overlaps. Always valid.
inline Packing random_cluster(int dim, std::size_t n, std::uint64_t seed, double max_gap = 0.3,
                              double tangent_prob = 0.3) {
  if (dim < 2) throw DomainError("random_cluster needs dim >= 2");
  if (n == 0) throw DomainError("random_cluster needs n >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> coords(static_cast<std::size_t>(dim), 0.0);
  std::vector<double> cand(static_cast<std::size_t>(dim));
  std::size_t placed = 1;
  std::size_t attempts = 0;
  while (placed < n) {
    if (++attempts > 100000 * n) throw std::runtime_error("random_cluster: placement stalled");
    const auto anchor = static_cast<std::size_t>(unif(rng) * static_cast<double>(placed)) % placed;
    double norm = 0.0;
    for (auto& c : cand) {
      c = normal(rng);
      norm += c * c;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const double gap = unif(rng) < tangent_prob ? 0.0 : max_gap * unif(rng);
    for (int k = 0; k < dim; ++k)
      cand[k] = coords[anchor * dim + k] + (2.0 + gap) * cand[k] / norm;
    bool ok = true;
    for (std::size_t j = 0; j < placed && ok; ++j) {
      if (j == anchor) continue;
      double d2 = 0.0;
      for (int k = 0; k < dim; ++k) d2 += (cand[k] - coords[j * dim + k]) * (cand[k] - coords[j * dim + k]);
      if (d2 < 4.0) ok = false;
    }
    if (!ok) continue;
    coords.insert(coords.end(), cand.begin(), cand.end());
    ++placed;
  }
  return Packing(dim, std::move(coords));
}

}  // namespace softpack
