#pragma once
// Seeded hit-or-miss Monte Carlo with reproducible substreams.
//
// Sample k of a run belongs to chunk k / chunk_size; each chunk draws from
// its own generator seeded by derive_seed(seed, chunk). Estimates therefore
// depend on (samples, seed, chunk_size) but not on how many threads ran the
// chunks.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "softpack/core.hpp"

namespace softpack {

struct MCEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

struct McOptions {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  std::uint64_t chunk_size = std::uint64_t{1} << 16;
  unsigned threads = 1;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of substream `chunk` under master seed `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t chunk) {
  return splitmix64(splitmix64(seed) ^ (chunk * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
}

using Rng = std::mt19937_64;

inline Rng substream(std::uint64_t seed, std::uint64_t chunk) { return Rng(derive_seed(seed, chunk)); }

// ---------------------------------------------------------------------------
// Samplers: immutable descriptions of a region with a known measure.
// ---------------------------------------------------------------------------

class BoxSampler {
 public:
  BoxSampler(std::vector<double> lo, std::vector<double> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.empty() || lo_.size() != hi_.size()) throw StructuralError("box bounds mismatch");
    measure_ = 1.0;
    for (std::size_t k = 0; k < lo_.size(); ++k) measure_ *= hi_[k] - lo_[k];
    if (!(measure_ > 0.0)) throw DomainError("box has zero measure");
  }

  std::size_t dim() const noexcept { return lo_.size(); }
  double measure() const noexcept { return measure_; }

  void draw(Rng& rng, std::span<double> out) const {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t k = 0; k < lo_.size(); ++k) out[k] = lo_[k] + (hi_[k] - lo_[k]) * u(rng);
  }

 private:
  std::vector<double> lo_, hi_;
  double measure_ = 0.0;
};

/// Uniform in a d-ball: Gaussian direction, radius r * U^(1/d).
class BallSampler {
 public:
  BallSampler(int d, double radius, std::vector<double> center = {})
      : d_(d), radius_(radius), center_(std::move(center)) {
    if (d < 1) throw StructuralError("ball dimension must be positive");
    if (!(radius > 0.0)) throw DomainError("ball has zero measure");
    if (center_.empty()) center_.assign(static_cast<std::size_t>(d), 0.0);
    if (center_.size() != static_cast<std::size_t>(d)) throw StructuralError("ball center dimension");
  }

  std::size_t dim() const noexcept { return static_cast<std::size_t>(d_); }
  double measure() const { return unit_ball_volume(d_) * std::pow(radius_, d_); }

  void draw(Rng& rng, std::span<double> out) const {
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double n2 = 0.0;
    do {
      n2 = 0.0;
      for (int k = 0; k < d_; ++k) {
        out[k] = g(rng);
        n2 += out[k] * out[k];
      }
    } while (n2 == 0.0);
    const double scale = radius_ * std::pow(u(rng), 1.0 / d_) / std::sqrt(n2);
    for (int k = 0; k < d_; ++k) out[k] = center_[k] + out[k] * scale;
  }

 private:
  int d_;
  double radius_;
  std::vector<double> center_;
};

namespace detail {

// Determinant by partial-pivot elimination; matrices here are at most ~25x25.
inline double determinant(std::vector<double> m, std::size_t n) {
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r * n + c]) > std::abs(m[piv * n + c])) piv = r;
    if (m[piv * n + c] == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m[c * n + k], m[piv * n + k]);
      det = -det;
    }
    det *= m[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r * n + c] / m[c * n + c];
      for (std::size_t k = c; k < n; ++k) m[r * n + k] -= f * m[c * n + k];
    }
  }
  return det;
}

}  // namespace detail

/// Uniform in the simplex spanned by k+1 vertices in ambient dimension m >= k.
/// Barycentric weights are normalised i.i.d. exponentials (uniform on the
/// standard simplex). The measure is the intrinsic k-volume.
class SimplexSampler {
 public:
  explicit SimplexSampler(std::vector<std::vector<double>> vertices) : verts_(std::move(vertices)) {
    if (verts_.size() < 2) throw StructuralError("simplex needs at least two vertices");
    ambient_ = verts_[0].size();
    for (const auto& v : verts_)
      if (v.size() != ambient_) throw StructuralError("simplex vertices have mixed dimensions");
    const std::size_t k = verts_.size() - 1;
    if (k > ambient_) throw StructuralError("too many simplex vertices for ambient dimension");
    std::vector<double> gram(k * k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        double s = 0.0;
        for (std::size_t c = 0; c < ambient_; ++c)
          s += (verts_[a + 1][c] - verts_[0][c]) * (verts_[b + 1][c] - verts_[0][c]);
        gram[a * k + b] = s;
      }
    const double det = detail::determinant(gram, k);
    measure_ = det > 0.0 ? std::sqrt(det) / std::tgamma(static_cast<double>(k) + 1.0) : 0.0;
    if (!(measure_ > 1e-300)) throw DomainError("simplex has zero measure");
  }

  std::size_t dim() const noexcept { return ambient_; }
  std::size_t order() const noexcept { return verts_.size() - 1; }
  double measure() const noexcept { return measure_; }
  const std::vector<std::vector<double>>& vertices() const noexcept { return verts_; }

  void draw(Rng& rng, std::span<double> out) const {
    std::exponential_distribution<double> e(1.0);
    std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(ambient_), 0.0);
    double total = 0.0;
    thread_local std::vector<double> w;
    w.resize(verts_.size());
    for (auto& x : w) {
      x = e(rng);
      total += x;
    }
    for (std::size_t i = 0; i < verts_.size(); ++i) {
      const double wi = w[i] / total;
      for (std::size_t c = 0; c < ambient_; ++c) out[c] += wi * verts_[i][c];
    }
  }

 private:
  std::vector<std::vector<double>> verts_;
  std::size_t ambient_ = 0;
  double measure_ = 0.0;
};

// ---------------------------------------------------------------------------
// Streams and estimators
// ---------------------------------------------------------------------------

/// Sequential view of the same points an estimator with these options visits.
template <class Sampler>
class PointStream {
 public:
  PointStream(Sampler sampler, std::uint64_t n, std::uint64_t seed,
              std::uint64_t chunk_size = McOptions{}.chunk_size)
      : sampler_(std::move(sampler)), n_(n), seed_(seed), chunk_size_(chunk_size) {
    if (n == 0) throw DomainError("sample count must be positive");
    if (chunk_size == 0) throw DomainError("chunk size must be positive");
  }

  std::size_t dim() const { return sampler_.dim(); }
  std::uint64_t remaining() const { return n_ - drawn_; }

  /// Writes the next point; false once n points have been produced.
  bool next(std::span<double> out) {
    if (drawn_ >= n_) return false;
    if (drawn_ % chunk_size_ == 0) rng_ = substream(seed_, drawn_ / chunk_size_);
    sampler_.draw(rng_, out);
    ++drawn_;
    return true;
  }

 private:
  Sampler sampler_;
  std::uint64_t n_, seed_, chunk_size_;
  std::uint64_t drawn_ = 0;
  Rng rng_;
};

inline PointStream<BoxSampler> sample_box(std::vector<double> lo, std::vector<double> hi, std::uint64_t n,
                                          std::uint64_t seed) {
  return {BoxSampler(std::move(lo), std::move(hi)), n, seed};
}

inline PointStream<BallSampler> sample_ball(int d, double r, std::uint64_t n, std::uint64_t seed) {
  return {BallSampler(d, r), n, seed};
}

inline PointStream<SimplexSampler> sample_simplex(std::vector<std::vector<double>> vertices, std::uint64_t n,
                                                  std::uint64_t seed) {
  return {SimplexSampler(std::move(vertices)), n, seed};
}

/// Bit counts over samples: classify(point) returns a bitmask of up to 8
/// events; result[b] is how many samples had bit b set.
template <class Sampler, class Classify>
std::array<std::uint64_t, 8> count_events(const Sampler& sampler, const McOptions& opt, Classify classify) {
  if (opt.samples == 0) throw DomainError("sample count must be positive");
  if (opt.chunk_size == 0) throw DomainError("chunk size must be positive");
  const std::uint64_t chunks = (opt.samples + opt.chunk_size - 1) / opt.chunk_size;
  std::vector<std::array<std::uint64_t, 8>> per_chunk(chunks, std::array<std::uint64_t, 8>{});

  auto run_chunk = [&](std::uint64_t c) {
    Rng rng = substream(opt.seed, c);
    std::vector<double> pt(sampler.dim());
    const std::uint64_t begin = c * opt.chunk_size;
    const std::uint64_t end = std::min(opt.samples, begin + opt.chunk_size);
    auto& acc = per_chunk[c];
    for (std::uint64_t s = begin; s < end; ++s) {
      sampler.draw(rng, pt);
      unsigned mask = static_cast<unsigned>(classify(std::span<const double>(pt)));
      while (mask) {
        const int b = std::countr_zero(mask);
        ++acc[b];
        mask &= mask - 1;
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(chunks)));
  if (threads == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::uint64_t c = t; c < chunks; c += threads) run_chunk(c);
      });
  }
  std::array<std::uint64_t, 8> total{};
  for (const auto& a : per_chunk)
    for (std::size_t b = 0; b < 8; ++b) total[b] += a[b];
  return total;
}

/// Binomial estimate of measure * P(hit) from `hits` out of `n`.
inline MCEstimate hit_or_miss(std::uint64_t hits, std::uint64_t n, double measure, std::uint64_t seed) {
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {measure * p, measure * std::sqrt(p * (1.0 - p) / static_cast<double>(n)), n, seed};
}

/// Ratio hits_a / hits_b of nested events (A subset of B) with the binomial
/// error of a conditional proportion over the hits_b trials.
inline MCEstimate conditional_ratio(std::uint64_t hits_a, std::uint64_t hits_b, std::uint64_t n,
                                    std::uint64_t seed) {
  if (hits_b == 0) throw std::runtime_error("conditional ratio with no conditioning hits");
  const double r = static_cast<double>(hits_a) / static_cast<double>(hits_b);
  return {r, std::sqrt(r * (1.0 - r) / static_cast<double>(hits_b)), n, seed};
}

/// measure(region) * fraction of samples where pred(point) holds.
template <class Sampler, class Pred>
MCEstimate estimate_fraction(Pred pred, const Sampler& sampler, const McOptions& opt) {
  const auto counts = count_events(sampler, opt, [&](std::span<const double> x) { return pred(x) ? 1u : 0u; });
  return hit_or_miss(counts[0], opt.samples, sampler.measure(), opt.seed);
}

/// Volume of the union of radius-r balls around the packing centers, by
/// sampling the bounding box of the inflated balls.
inline MCEstimate union_measure_mc(const Packing& p, double radius, const McOptions& opt) {
  if (p.empty()) throw StructuralError("packing has no centers");
  if (!(radius > 0.0)) throw DomainError("radius must be positive");
  const int d = p.dim();
  std::vector<double> lo(d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < p.size(); ++i)
    for (int k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], p.center(i)[k] - radius);
      hi[k] = std::max(hi[k], p.center(i)[k] + radius);
    }
  const double r2 = radius * radius;
  const auto& c = p.coords();
  const std::size_t n = p.size();
  return estimate_fraction(
      [&](std::span<const double> x) {
        for (std::size_t i = 0; i < n; ++i) {
          double s = 0.0;
          const double* ci = c.data() + i * d;
          for (int k = 0; k < d; ++k) s += (x[k] - ci[k]) * (x[k] - ci[k]);
          if (s <= r2) return true;
        }
        return false;
      },
      BoxSampler(lo, hi), opt);
}

}  // namespace softpack
