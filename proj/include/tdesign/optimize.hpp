#pragma once

#include <cstdint>
#include <functional>

#include "tdesign/geometry.hpp"

namespace tdesign {

/// Two orientations of one body, the branches of a rotational superposition.
struct OrientationPair {
  Rotation r1;
  Rotation r2;
};

struct OptimizerConfig {
  int restarts = 32;
  std::uint64_t seed = 0;
  int max_iters = 2000;   // objective evaluations budget per restart
  double xtol = 1e-10;    // simplex size in rotation-vector coordinates
  double ftol = 1e-12;    // relative spread of simplex values
  double initial_step = 0.5;
};

struct OptimizeResult {
  OrientationPair pair;
  double value = 0.0;
  int best_restart = 0;
  int discarded_restarts = 0;
};

using PairObjective = std::function<double(const OrientationPair&)>;

/// Maximizes `objective` over SO(3) x SO(3).
///
/// Each restart starts from a Haar-random pair drawn from (seed, restart)
/// and runs Nelder-Mead on a 6-dimensional rotation-vector chart,
///   x -> (exp(x[0:3]) c1, exp(x[3:6]) c2),
/// re-centred on the best vertex after every simplex collapse so the chart
/// never approaches its angle-pi singularity. A restart whose objective
/// turns non-finite is discarded; if every restart is discarded an Error is
/// thrown. Ties across restarts keep the lowest restart index.
OptimizeResult optimize_pair(const PairObjective& objective, const OptimizerConfig& cfg = {});

/// The pair used to start restart `restart` for a given seed.
OrientationPair start_pair(std::uint64_t seed, int restart);

}  // namespace tdesign
