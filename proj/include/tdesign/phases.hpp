#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "tdesign/constants.hpp"
#include "tdesign/designs.hpp"
#include "tdesign/fields.hpp"
#include "tdesign/optimize.hpp"

namespace tdesign {

/// Signed rate of relative-phase accumulation between two branches.
struct PhaseRate {
  double rad_per_s = 0.0;

  double hz() const { return rad_per_s / constants::two_pi; }
  double magnitude_hz() const;
};

/// Energy in joules to angular frequency (rad/s) and to cycles per second.
inline double energy_to_rad_per_s(double joules) { return joules / constants::hbar; }
inline double energy_to_hz(double joules) { return joules / constants::hbar / constants::two_pi; }

/// [V(r1 body) - V(r2 body)] / hbar from exact potentials.
PhaseRate phase_rate(const RigidBody& body, const OrientationPair& pair, const SourceModel& src);

struct SignalNoise {
  PhaseRate signal;
  PhaseRate noise;
  double ratio = 0.0;          // |signal| / |noise|, +inf when noise is zero
  bool ratio_infinite = false;
};

SignalNoise signal_noise(const RigidBody& body, const OrientationPair& pair,
                         const SourceModel& signal_src, const SourceModel& noise_src);

/// r1 = identity, r2 = quarter turn about an axis perpendicular to the body's
/// largest-moment direction (dominant eigenvector of sum_i |w_i| p_i p_i^T,
/// or the first element's direction when that tensor is isotropic). The
/// axis is that direction crossed with the least-aligned coordinate axis.
OrientationPair default_pair(const RigidBody& body);

/// Body built from a design plus the two point-source environments.
struct SensingScenario {
  double radius = 2e-6;                             // m
  double unit_weight = constants::elementary_charge;
  Kind kind = Kind::charge;
  SourceModel signal;
  SourceModel noise;
};

/// R = 2 um body of elementary charges; signal charge e at D = 10 um and
/// noise charge 1e3 e at L = 200 um, both on +z.
SensingScenario charged_sensing_scenario();

enum class NoisePair { signal_optimized, worst_case };

struct ScalingOptions {
  bool optimize = true;
  OptimizerConfig optimizer;
  NoisePair noise_pair = NoisePair::signal_optimized;
};

struct ScalingRow {
  int t = 0;
  int n_points = 0;
  double delta_signal_hz = 0.0;
  double delta_noise_hz = 0.0;
  double ratio = 0.0;
  std::optional<double> e_ent_hz;
  bool missing = false;
};

using DesignProvider = std::function<TDesign(int t)>;

/// Catalog designs where available, otherwise the solver at its default size.
DesignProvider default_design_provider(std::uint64_t solver_seed = 0, SolverOptions solver = {});

/// Orientation pair for one body: optimized for |signal| when requested,
/// otherwise default_pair().
OrientationPair choose_pair(const RigidBody& body, const SensingScenario& sc,
                            const ScalingOptions& opt);

/// One row per t, in the order given. A t whose design cannot be produced
/// yields a row with missing = true.
std::vector<ScalingRow> scaling_study(const SensingScenario& scenario, std::span<const int> t_list,
                                      const DesignProvider& designs, const ScalingOptions& options);

/// Header `t,n_points,delta_signal_hz,delta_noise_hz,ratio,e_ent_hz`.
void write_scaling_csv(std::ostream& out, std::span<const ScalingRow> rows);

double least_squares_slope(std::span<const double> x, std::span<const double> y);

}  // namespace tdesign
