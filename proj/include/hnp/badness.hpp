#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <functional>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "hnp/coloring.hpp"
#include "hnp/config.hpp"
#include "hnp/geometry.hpp"
#include "hnp/rng.hpp"

namespace hnp {

enum class EstimateMethod { monte_carlo, grid, overlay_expectation };

struct GridSpec {
  std::int64_t res_a = 1;
  std::int64_t res_b = 1;
  std::int64_t res_theta = 1;
};

/// Estimated probability that a uniformly random unit edge is monochromatic.
///
/// `error` depends on the method: binomial standard error for Monte Carlo,
/// |p(res) - p(res/2)| for grids, and the standard error of the per-offset
/// means for overlay expectations.
struct BadnessEstimate {
  EstimateMethod method = EstimateMethod::monte_carlo;
  double p_hat = 0.0;
  double error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t monochromatic = 0;
  std::uint64_t seed = 0;
  GridSpec grid;
  std::uint64_t offsets = 0;
};

/// Sum of fn(i) over [0, n), split into fixed chunks and spread across
/// `threads` workers. T must be an integer-like type so the total does not
/// depend on how chunks are scheduled.
template <class T, class Fn>
T parallel_sum(std::uint64_t n, unsigned threads, const Fn& fn, std::uint64_t chunk = 1 << 14) {
  const std::uint64_t chunks = (n + chunk - 1) / chunk;
  auto run_chunk = [&](std::uint64_t c) {
    T acc{};
    const std::uint64_t end = std::min(n, (c + 1) * chunk);
    for (std::uint64_t i = c * chunk; i < end; ++i) acc += fn(i);
    return acc;
  };
  T total{};
  if (threads <= 1 || chunks <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) total += run_chunk(c);
    return total;
  }
  std::atomic<std::uint64_t> next{0};
  std::mutex merge;
  {
    std::vector<std::jthread> pool;
    const auto workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        T local{};
        for (std::uint64_t c = next++; c < chunks; c = next++) local += run_chunk(c);
        const std::lock_guard lock(merge);
        total += local;
      });
    }
  }
  return total;
}

/// Worker count from HNP_THREADS, else the hardware concurrency.
inline unsigned default_threads() {
  if (const char* env = std::getenv("HNP_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline bool edge_is_monochromatic(const PeriodicColoring& c, PlanePoint start, double theta) {
  return c.color_at(start) == c.color_at(start + cis(theta));
}

inline double binomial_stderr(double p, std::uint64_t n) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

namespace detail {

inline std::uint64_t mc_hits(const PeriodicColoring& c, const CounterRng& rng, std::uint64_t first,
                             std::uint64_t n, unsigned threads) {
  const LatticeBasis& basis = c.basis();
  return parallel_sum<std::uint64_t>(n, threads, [&](std::uint64_t i) -> std::uint64_t {
    const Isometry t = sample_principal_isometry(rng, first + i, basis);
    return edge_is_monochromatic(c, {t.dx, t.dy}, t.theta) ? 1 : 0;
  });
}

inline std::uint64_t grid_hits(const PeriodicColoring& c, const GridSpec& g, unsigned threads) {
  const LatticeBasis& basis = c.basis();
  const auto na = static_cast<std::uint64_t>(g.res_a);
  const auto nb = static_cast<std::uint64_t>(g.res_b);
  const auto nt = static_cast<std::uint64_t>(g.res_theta);
  std::vector<PlanePoint> dirs(nt);
  for (std::uint64_t t = 0; t < nt; ++t)
    dirs[t] = cis(2.0 * std::numbers::pi * (static_cast<double>(t) + 0.5) / static_cast<double>(nt));
  return parallel_sum<std::uint64_t>(
      na * nb, threads,
      [&](std::uint64_t cell) -> std::uint64_t {
        const std::uint64_t ia = cell / nb;
        const std::uint64_t ib = cell % nb;
        const PlanePoint start = basis.point((static_cast<double>(ia) + 0.5) / static_cast<double>(na),
                                             (static_cast<double>(ib) + 0.5) / static_cast<double>(nb));
        const Color here = c.color_at(start);
        std::uint64_t hits = 0;
        for (const PlanePoint d : dirs) hits += c.color_at(start + d) == here ? 1 : 0;
        return hits;
      },
      64);
}

}  // namespace detail

/// Monte Carlo estimate of p_k(c): n principal isometries T, counting
/// monochromatic edges T(0)T(1). Deterministic in (c, n, seed); independent of
/// `threads`.
inline BadnessEstimate mc_badness(const PeriodicColoring& c, std::uint64_t n, std::uint64_t seed,
                                  unsigned threads = 1) {
  if (n < 1) throw InvalidInput("mc_badness needs n >= 1");
  const std::uint64_t hits = detail::mc_hits(c, CounterRng(seed), 0, n, threads);
  BadnessEstimate e;
  e.method = EstimateMethod::monte_carlo;
  e.samples = n;
  e.monochromatic = hits;
  e.seed = seed;
  e.p_hat = static_cast<double>(hits) / static_cast<double>(n);
  e.error = binomial_stderr(e.p_hat, n);
  return e;
}

/// Midpoint rule on a res_a x res_b x res_theta grid over the principal cell
/// times the angle. The error field compares against the grid with every
/// resolution halved (rounded up, minimum 1).
inline BadnessEstimate grid_badness(const PeriodicColoring& c, std::int64_t res_a, std::int64_t res_b,
                                    std::int64_t res_theta, unsigned threads = 1) {
  if (res_a < 1 || res_b < 1 || res_theta < 1) throw InvalidInput("grid resolutions must be >= 1");
  const GridSpec g{res_a, res_b, res_theta};
  const auto total = static_cast<std::uint64_t>(res_a * res_b * res_theta);
  const std::uint64_t hits = detail::grid_hits(c, g, threads);
  const double p = static_cast<double>(hits) / static_cast<double>(total);

  auto half = [](std::int64_t r) { return std::max<std::int64_t>(1, (r + 1) / 2); };
  const GridSpec coarse{half(res_a), half(res_b), half(res_theta)};
  const auto coarse_total = static_cast<std::uint64_t>(coarse.res_a * coarse.res_b * coarse.res_theta);
  const double p_coarse =
      static_cast<double>(detail::grid_hits(c, coarse, threads)) / static_cast<double>(coarse_total);

  BadnessEstimate e;
  e.method = EstimateMethod::grid;
  e.samples = total;
  e.monochromatic = hits;
  e.p_hat = p;
  e.error = std::abs(p - p_coarse);
  e.grid = g;
  return e;
}

// ---------------------------------------------------------------------------
// One-dimensional parameter search
// ---------------------------------------------------------------------------

/// A colouring family indexed by one real parameter.
struct ParametricFamily {
  std::string name;
  std::function<ColoringDescriptor(double)> make;
};

inline ParametricFamily hex_diameter_family(int k) {
  return {"hex", [k](double d) { return ColoringDescriptor{default_hex_spec(k, d)}; }};
}

inline ParametricFamily hex_diameter_family(int k, HexPattern pattern, int multiplier) {
  return {"hex", [=](double d) { return ColoringDescriptor{HexSpec{k, d, pattern, multiplier}}; }};
}

inline ParametricFamily stripe_width_family(int k = 2) {
  return {"stripe", [k](double w) { return ColoringDescriptor{StripeSpec{w, k}}; }};
}

struct ParameterEvaluation {
  double param = 0.0;
  BadnessEstimate estimate;
};

struct SkippedParameter {
  double param = 0.0;
  std::string reason;
};

struct OptimizationResult {
  double best_param = 0.0;
  BadnessEstimate best;
  std::vector<ParameterEvaluation> evaluations;
  std::vector<SkippedParameter> skipped;
};

/// Minimises the Monte Carlo badness over [lo, hi]: `budget` evenly spaced
/// points, then golden-section refinement within one grid step of the best.
/// Every evaluation reuses `seed`, so all parameters see the same isometries.
inline OptimizationResult optimize_parameter(const ParametricFamily& family, double lo, double hi,
                                             int budget, std::uint64_t n_per_eval, std::uint64_t seed,
                                             unsigned threads = 1, int refine_iterations = 12) {
  if (!(lo < hi)) throw InvalidInput("optimize_parameter needs lo < hi");
  if (budget < 1) throw InvalidInput("optimize_parameter needs budget >= 1");
  OptimizationResult out;
  bool have_best = false;

  auto evaluate = [&](double x) -> std::optional<double> {
    try {
      const PeriodicColoring c = make_coloring(family.make(x));
      const BadnessEstimate e = mc_badness(c, n_per_eval, seed, threads);
      out.evaluations.push_back({x, e});
      if (!have_best || e.p_hat < out.best.p_hat) {
        out.best_param = x;
        out.best = e;
        have_best = true;
      }
      return e.p_hat;
    } catch (const InvalidInput& err) {
      out.skipped.push_back({x, err.what()});
      return std::nullopt;
    }
  };

  const double step = budget > 1 ? (hi - lo) / (budget - 1) : 0.0;
  for (int i = 0; i < budget; ++i) {
    const double x = budget > 1 ? lo + step * i : 0.5 * (lo + hi);
    evaluate(x);
  }
  if (!have_best) throw InvalidInput("no parameter in range produced a valid colouring");

  if (budget > 1 && refine_iterations > 0) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = std::max(lo, out.best_param - step);
    double b = std::min(hi, out.best_param + step);
    auto value = [&](double x) { return evaluate(x).value_or(2.0); };
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = value(x1);
    double f2 = value(x2);
    for (int it = 0; it < refine_iterations; ++it) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - kInvPhi * (b - a);
        f1 = value(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + kInvPhi * (b - a);
        f2 = value(x2);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Overlay expectation
// ---------------------------------------------------------------------------

namespace detail {
struct OverlayMoments {
  std::uint64_t hits = 0;
  unsigned __int128 squares = 0;
  OverlayMoments& operator+=(const OverlayMoments& o) {
    hits += o.hits;
    squares += o.squares;
    return *this;
  }
};
}  // namespace detail

/// Mean badness of overlay_patch(base, offset) over offsets uniform in the
/// patch cell. Offset j is drawn from substream 1 (counters 2j, 2j+1); its
/// n_samples edges use substream 2 at indices [j * n_samples, (j+1) * n_samples).
inline BadnessEstimate expected_overlay_badness(const PeriodicColoring& base, std::uint64_t n_offsets,
                                                std::uint64_t n_samples, std::uint64_t seed,
                                                unsigned threads = 1) {
  if (n_offsets < 1 || n_samples < 1) throw InvalidInput("overlay expectation needs n_offsets, n_samples >= 1");
  const CounterRng root(seed);
  const CounterRng offset_rng = root.substream(1);
  const CounterRng edge_rng = root.substream(2);
  const LatticeBasis patch = patch_lattice();
  const detail::OverlayMoments m = parallel_sum<detail::OverlayMoments>(
      n_offsets, threads,
      [&](std::uint64_t j) {
        const PlanePoint offset = patch.point(offset_rng.uniform(2 * j), offset_rng.uniform(2 * j + 1));
        const PeriodicColoring overlay = overlay_patch(base, offset);
        const std::uint64_t h = detail::mc_hits(overlay, edge_rng, j * n_samples, n_samples, 1);
        return detail::OverlayMoments{h, static_cast<unsigned __int128>(h) * h};
      },
      std::max<std::uint64_t>(1, (1 << 16) / n_samples));

  const double no = static_cast<double>(n_offsets);
  const double ns = static_cast<double>(n_samples);
  const double mean = static_cast<double>(m.hits) / (no * ns);
  BadnessEstimate e;
  e.method = EstimateMethod::overlay_expectation;
  e.p_hat = mean;
  e.samples = n_offsets * n_samples;
  e.monochromatic = m.hits;
  e.seed = seed;
  e.offsets = n_offsets;
  if (n_offsets >= 2) {
    // Per-offset proportions p_j = h_j / ns; unbiased variance of the p_j.
    const double sum_sq = static_cast<double>(m.squares) / (ns * ns);
    const double var = std::max(0.0, (sum_sq - no * mean * mean) / (no - 1.0));
    e.error = std::sqrt(var / no);
  } else {
    e.error = binomial_stderr(mean, n_samples);
  }
  return e;
}

}  // namespace hnp
