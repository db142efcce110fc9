#pragma once
// Minimise the pairwise-regime union measure of n unit balls: projected
// gradient descent with Metropolis jitter and continuation in lambda, best of
// several restarts.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <thread>
#include <utility>
#include <vector>

#include "softpack/core.hpp"
#include "softpack/geom2d.hpp"
#include "softpack/geom3d.hpp"
#include "softpack/montecarlo.hpp"

namespace softpack {

struct OptimizerConfig {
  int restarts = 20;
  int max_iters = 3000;
  double init_step = 0.05;
  double cooling = 0.995;
  double projection_tol = 1e-12;
  std::uint64_t seed = 0;
  bool seed_exact_lattice = true;  // restart 0 starts from the unperturbed lattice prefix
  int continuation_stages = 4;     // anneal at decreasing lambda from near the pairwise top; 1 disables
  unsigned threads = 1;
};

struct HistoryPoint {
  long iteration = 0;
  double objective = 0.0;
};

struct OptimizerResult {
  Packing best;
  double objective = 0.0;
  std::size_t contact_count = 0;
  std::size_t lambda_edge_count = 0;
  double density = 0.0;  // n omega_d / objective
  bool converged = false;
  std::vector<HistoryPoint> history;
};

inline constexpr double kContactTol = 1e-6;

inline double objective(const Packing& p, const Inflation& infl) {
  if (p.dim() == 2) return union_area_exact(p, infl);
  if (p.dim() == 3) return union_volume_exact(p, infl);
  throw StructuralError("objective: only d = 2 and d = 3 have exact union measures");
}

struct Gradient {
  std::vector<double> g;  // flat, same layout as Packing::coords()
  bool kink = false;      // some pair within 1e-9 of distance 2 lb
};

/// d objective / d c_i = -sum_j lens'(|c_i - c_j|) (c_i - c_j) / |c_i - c_j|.
/// At the kink |c_i - c_j| = 2 lb the one-sided value 0 is used.
inline Gradient gradient(const Packing& p, const Inflation& infl) {
  const int d = p.dim();
  if (d != 2 && d != 3) throw StructuralError("gradient: only d = 2 and d = 3");
  if (infl.regime != Regime::Pairwise) throw RegimeError("gradient: inflation is outside the pairwise regime");
  const double lb = infl.lambda_bar;
  Gradient out{std::vector<double>(p.coords().size(), 0.0), false};
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      const double dist = p.distance(i, j);
      if (std::abs(dist - 2.0 * lb) < 1e-9) out.kink = true;
      if (dist >= 2.0 * lb || dist == 0.0) continue;
      const double dl = d == 2 ? lens_area_derivative(lb, dist) : lens_volume_derivative(lb, dist);
      for (int k = 0; k < d; ++k) {
        const double u = (p.center(i)[k] - p.center(j)[k]) / dist;
        out.g[i * d + k] -= dl * u;
        out.g[j * d + k] += dl * u;
      }
    }
  return out;
}

namespace detail {

/// Push overlapping pairs apart symmetrically to distance 2 until the worst
/// violation is at most tol. Returns false if the sweep limit is hit.
inline bool project_feasible(std::vector<double>& x, int d, double tol, Rng& rng) {
  const std::size_t n = x.size() / static_cast<std::size_t>(d);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int sweep = 0; sweep < 10000; ++sweep) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double v[3] = {0, 0, 0};
        double s = 0.0;
        for (int k = 0; k < d; ++k) {
          v[k] = x[j * d + k] - x[i * d + k];
          s += v[k] * v[k];
        }
        double dist = std::sqrt(s);
        if (dist >= 2.0 - tol) continue;
        worst = std::max(worst, 2.0 - dist);
        if (dist < 1e-12) {
          s = 0.0;
          for (int k = 0; k < d; ++k) {
            v[k] = g(rng);
            s += v[k] * v[k];
          }
          dist = 0.0;
          for (int k = 0; k < d; ++k) v[k] /= std::sqrt(s);
        } else {
          for (int k = 0; k < d; ++k) v[k] /= dist;
        }
        const double push = 0.5 * (2.0 - dist);
        for (int k = 0; k < d; ++k) {
          x[i * d + k] -= push * v[k];
          x[j * d + k] += push * v[k];
        }
      }
    if (worst <= tol) return true;
  }
  return false;
}

struct RestartOutcome {
  std::vector<double> best;
  double objective = 0.0;
  bool converged = false;
  std::vector<HistoryPoint> history;  // local improvements, local iteration numbers
};

inline std::vector<double> initial_configuration(int restart, std::size_t n, int d, double lambda_bar,
                                                 const OptimizerConfig& cfg, Rng& rng) {
  const LatticeKind kind = d == 2 ? LatticeKind::Hexagonal2d : LatticeKind::Fcc3d;
  if (restart == 0 && cfg.seed_exact_lattice) return lattice_prefix(kind, n).coords();
  if (restart % 2 == 0) {
    std::vector<double> x = lattice_prefix(kind, n).coords();
    std::normal_distribution<double> g(0.0, 0.15);
    for (double& c : x) c += g(rng);
    return x;
  }
  return random_cluster(d, n, rng(), 2.0 * lambda_bar - 2.0 + 0.3).coords();
}

// Annealing at fixed inflation, starting from x.
inline RestartOutcome anneal(std::vector<double> x, int d, const Inflation& infl, const OptimizerConfig& cfg,
                             Rng& rng) {
  auto eval = [&](const std::vector<double>& c) { return objective(Packing(d, c), infl); };
  const double lb = infl.lambda_bar;
  const double lens_scale = d == 2 ? lens_area(lb, 2.0) : lens_volume(lb, 2.0);
  const double t0 = 0.1 * std::max(lens_scale, 1e-12);
  constexpr double min_step = 1e-10;

  RestartOutcome out{x, eval(x), false, {}};
  out.history.push_back({0, out.objective});
  double f = out.objective;
  double step = cfg.init_step;
  double temp = 1.0;
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  for (int it = 1; it <= cfg.max_iters; ++it) {
    temp *= cfg.cooling;
    const Gradient gr = gradient(Packing(d, x), infl);
    double gmax = 0.0;
    for (double v : gr.g) gmax = std::max(gmax, std::abs(v));
    std::vector<double> y = x;
    const double jitter = cfg.init_step * temp;
    for (std::size_t k = 0; k < y.size(); ++k)
      y[k] += -step * (gmax > 0.0 ? gr.g[k] / gmax : 0.0) + jitter * noise(rng);
    project_feasible(y, d, cfg.projection_tol, rng);
    const double fy = eval(y);
    const bool downhill = fy < f - 1e-15;
    const bool accept = downhill || unif(rng) < std::exp(-(fy - f) / (t0 * temp));
    if (accept) {
      x = std::move(y);
      f = fy;
    }
    step = downhill ? std::min(step * 1.2, cfg.init_step) : std::max(step * 0.7, min_step);
    if (f < out.objective - 1e-15) {
      out.best = x;
      out.objective = f;
      out.history.push_back({it, f});
    }
    if (step <= min_step && jitter < 1e-10) {
      out.converged = true;
      break;
    }
  }
  // Polish: pure descent from the best point, no jitter.
  x = out.best;
  f = out.objective;
  step = cfg.init_step;
  for (int it = 0; it < cfg.max_iters && step > min_step; ++it) {
    const Gradient gr = gradient(Packing(d, x), infl);
    double gmax = 0.0;
    for (double v : gr.g) gmax = std::max(gmax, std::abs(v));
    if (gmax == 0.0) break;
    std::vector<double> y = x;
    for (std::size_t k = 0; k < y.size(); ++k) y[k] -= step * gr.g[k] / gmax;
    project_feasible(y, d, cfg.projection_tol, rng);
    const double fy = eval(y);
    if (fy < f - 1e-15) {
      x = std::move(y);
      f = fy;
      step = std::min(step * 1.2, cfg.init_step);
    } else {
      step *= 0.5;
    }
  }
  if (step <= min_step) out.converged = true;
  if (f < out.objective - 1e-15) {
    out.best = x;
    out.objective = f;
    out.history.push_back({cfg.max_iters + 1, f});
  }
  return out;
}

// Stage lambdas, linear from 0.95 of the pairwise top down to the target.
inline std::vector<double> continuation_schedule(double lambda, int stages) {
  const double hi = 0.95 * (kPairwiseLambdaBar - 1.0);
  std::vector<double> ls;
  if (stages > 1 && lambda < hi)
    for (int s = 0; s < stages - 1; ++s) ls.push_back(hi + (lambda - hi) * s / (stages - 1.0));
  ls.push_back(lambda);
  return ls;
}

// History keeps only the target-lambda stage, so objectives stay comparable.
inline RestartOutcome run_restart(int restart, std::size_t n, int d, const Inflation& infl,
                                  const OptimizerConfig& cfg) {
  Rng rng = substream(cfg.seed, static_cast<std::uint64_t>(restart));
  std::vector<double> x = initial_configuration(restart, n, d, infl.lambda_bar, cfg, rng);
  project_feasible(x, d, cfg.projection_tol, rng);
  const bool exact_seed = restart == 0 && cfg.seed_exact_lattice;
  const auto stages = exact_seed ? std::vector<double>{infl.lambda_bar - 1.0}
                                 : continuation_schedule(infl.lambda_bar - 1.0, cfg.continuation_stages);
  for (std::size_t s = 0; s + 1 < stages.size(); ++s)
    x = anneal(std::move(x), d, classify_regime(d, stages[s]), cfg, rng).best;
  return anneal(std::move(x), d, infl, cfg, rng);
}

}  // namespace detail

inline OptimizerResult optimize(std::size_t n, int d, double lambda, const OptimizerConfig& cfg) {
  if (n < 2) throw DomainError("optimize: n must be at least 2");
  if (d != 2 && d != 3) throw DomainError("optimize: d must be 2 or 3");
  if (cfg.restarts < 1 || cfg.max_iters < 1 || !(cfg.init_step > 0.0) || !(cfg.projection_tol > 0.0) || cfg.continuation_stages < 1 ||
      !(cfg.cooling > 0.0 && cfg.cooling < 1.0))
    throw DomainError("optimize: invalid optimizer configuration");
  const Inflation infl = classify_regime(d, lambda);
  if (infl.regime != Regime::Pairwise) throw RegimeError("optimize: lambda is outside the pairwise regime");

  std::vector<detail::RestartOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.restarts)));
  if (threads == 1) {
    for (int r = 0; r < cfg.restarts; ++r) outcomes[r] = detail::run_restart(r, n, d, infl, cfg);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (int r = static_cast<int>(t); r < cfg.restarts; r += static_cast<int>(threads))
          outcomes[r] = detail::run_restart(r, n, d, infl, cfg);
      });
  }

  // Global-best history over restarts taken in order.
  OptimizerResult res;
  std::size_t best_r = 0;
  double running = std::numeric_limits<double>::infinity();
  const long span = cfg.max_iters + 2;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    for (const auto& h : outcomes[r].history)
      if (h.objective < running) {
        running = h.objective;
        res.history.push_back({static_cast<long>(r) * span + h.iteration, h.objective});
      }
    if (outcomes[r].objective < outcomes[best_r].objective) best_r = r;
  }
  const auto& win = outcomes[best_r];
  res.best = Packing(d, win.best);
  res.objective = objective(res.best, infl);
  res.converged = win.converged;
  res.contact_count = contact_count(res.best, kContactTol);
  res.lambda_edge_count = lambda_graph(res.best, infl.lambda_bar).edges.size();
  res.density = static_cast<double>(n) * unit_ball_volume(d) / res.objective;
  return res;
}

struct ProbeRow {
  double lambda = 0.0;
  double objective = 0.0;
  double density = 0.0;
  std::size_t contact_count = 0;
  std::size_t lambda_edge_count = 0;
};

struct ProbeTable {
  std::vector<ProbeRow> rows;
  std::size_t max_contact = 0;
  std::size_t max_contact_prefix = 0;  // leading rows attaining max_contact
};

inline ProbeTable contact_link_probe(std::size_t n, int d, const std::vector<double>& lambdas,
                                     const OptimizerConfig& cfg) {
  ProbeTable t;
  for (double l : lambdas) {
    const OptimizerResult r = optimize(n, d, l, cfg);
    t.rows.push_back({l, r.objective, r.density, r.contact_count, r.lambda_edge_count});
    t.max_contact = std::max(t.max_contact, r.contact_count);
  }
  while (t.max_contact_prefix < t.rows.size() && t.rows[t.max_contact_prefix].contact_count == t.max_contact)
    ++t.max_contact_prefix;
  return t;
}

}  // namespace softpack
