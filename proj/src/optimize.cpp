#include "tdesign/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iostream>
#include <numeric>

#include "tdesign/error.hpp"

namespace tdesign {

namespace {

constexpr int kDim = 6;
using Point = std::array<double, kDim>;

struct NonFinite {};

class Chart {
 public:
  explicit Chart(const OrientationPair& centre) : centre_(centre) {}

  OrientationPair at(const Point& x) const {
    return {Rotation::from_rotation_vector({x[0], x[1], x[2]}) * centre_.r1,
            Rotation::from_rotation_vector({x[3], x[4], x[5]}) * centre_.r2};
  }

 private:
  OrientationPair centre_;
};

struct Block {
  Point best{};
  double value = 0.0;  // objective (maximized)
  double size = 0.0;
  bool converged = false;
};

// Nelder-Mead on -objective in the chart; the origin is the first vertex.
Block nelder_mead(const PairObjective& objective, const Chart& chart, double origin_value,
                  double step, const OptimizerConfig& cfg, int& evals, int budget) {
  auto eval = [&](const Point& x) {
    ++evals;
    const double v = objective(chart.at(x));
    if (!std::isfinite(v)) throw NonFinite{};
    return -v;
  };

  std::array<Point, kDim + 1> simplex{};
  std::array<double, kDim + 1> f{};
  f[0] = -origin_value;
  for (int i = 0; i < kDim; ++i) {
    simplex[i + 1][i] = step;
    f[i + 1] = eval(simplex[i + 1]);
  }

  std::array<int, kDim + 1> order{};
  Block out;
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return f[a] < f[b]; });
    const int lo = order.front();
    const int hi = order.back();
    const int second = order[kDim - 1];

    double size = 0.0;
    for (int v = 0; v <= kDim; ++v) {
      double d = 0.0;
      for (int i = 0; i < kDim; ++i) d = std::max(d, std::abs(simplex[v][i] - simplex[lo][i]));
      size = std::max(size, d);
    }
    const double spread = f[hi] - f[lo];
    out.best = simplex[lo];
    out.value = -f[lo];
    out.size = size;
    if (size <= cfg.xtol || spread <= cfg.ftol * std::abs(f[lo])) {
      out.converged = true;
      return out;
    }
    if (evals >= budget) return out;

    Point centroid{};
    for (int v = 0; v <= kDim; ++v) {
      if (v == hi) continue;
      for (int i = 0; i < kDim; ++i) centroid[i] += simplex[v][i] / kDim;
    }
    auto along = [&](double coef) {
      Point p;
      for (int i = 0; i < kDim; ++i) p[i] = centroid[i] + coef * (simplex[hi][i] - centroid[i]);
      return p;
    };

    const Point xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < f[lo]) {
      const Point xe = along(-2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[hi] = xe;
        f[hi] = fe;
      } else {
        simplex[hi] = xr;
        f[hi] = fr;
      }
    } else if (fr < f[second]) {
      simplex[hi] = xr;
      f[hi] = fr;
    } else {
      const bool outside = fr < f[hi];
      const Point xc = along(outside ? -0.5 : 0.5);
      const double fc = eval(xc);
      if (fc < (outside ? fr : f[hi])) {
        simplex[hi] = xc;
        f[hi] = fc;
      } else {
        for (int v = 0; v <= kDim; ++v) {
          if (v == lo) continue;
          for (int i = 0; i < kDim; ++i) simplex[v][i] = simplex[lo][i] + 0.5 * (simplex[v][i] - simplex[lo][i]);
          f[v] = eval(simplex[v]);
        }
      }
    }
  }
}

struct RestartResult {
  OrientationPair pair;
  double value;
};

RestartResult run_restart(const PairObjective& objective, OrientationPair centre,
                          const OptimizerConfig& cfg) {
  int evals = 1;
  double value = objective(centre);
  if (!std::isfinite(value)) throw NonFinite{};

  double step = cfg.initial_step;
  while (evals < cfg.max_iters) {
    const Chart chart(centre);
    const Block b = nelder_mead(objective, chart, value, step, cfg, evals, cfg.max_iters);
    const bool improved = b.value > value + cfg.ftol * std::abs(value);
    if (b.value > value) {
      centre = chart.at(b.best);
      value = b.value;
    }
    if (b.converged && !improved) break;
    step = std::clamp(4.0 * b.size, 1e-3 * cfg.initial_step, cfg.initial_step);
  }
  return {centre, value};
}

}  // namespace

OrientationPair start_pair(std::uint64_t seed, int restart) {
  const auto s = static_cast<std::uint64_t>(restart);
  return {random_rotation(seed, 2 * s), random_rotation(seed, 2 * s + 1)};
}

OptimizeResult optimize_pair(const PairObjective& objective, const OptimizerConfig& cfg) {
  if (cfg.restarts < 1) throw InvalidArgument("optimizer needs at least one restart");
  OptimizeResult best;
  bool have = false;
  for (int r = 0; r < cfg.restarts; ++r) {
    RestartResult res;
    try {
      res = run_restart(objective, start_pair(cfg.seed, r), cfg);
    } catch (const NonFinite&) {
      ++best.discarded_restarts;
      std::clog << "warning: optimizer restart " << r << " discarded (non-finite objective)\n";
      continue;
    }
    if (!have || res.value > best.value) {
      best.pair = res.pair;
      best.value = res.value;
      best.best_restart = r;
      have = true;
    }
  }
  if (!have) throw Error("every optimizer restart produced a non-finite objective");
  // report the objective at the returned pair
  best.value = objective(best.pair);
  return best;
}

}  // namespace tdesign
