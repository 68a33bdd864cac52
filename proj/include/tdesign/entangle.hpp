#pragma once

#include <array>
#include <complex>
#include <string>

#include "tdesign/designs.hpp"
#include "tdesign/fields.hpp"
#include "tdesign/optimize.hpp"
#include "tdesign/phases.hpp"

namespace tdesign {

/// E_ij: interaction energy with body A in orientation Ri and body B in Rj (J).
struct PairEnergies {
  double e11 = 0.0;
  double e12 = 0.0;
  double e21 = 0.0;
  double e22 = 0.0;
};

/// Body B is placed at `separation` after rotation. Throws if the bodies
/// overlap in any of the four branch configurations.
PairEnergies pair_energies(const RigidBody& a, const RigidBody& b, const OrientationPair& pair_a,
                           const OrientationPair& pair_b, const Vec3& separation);

/// (e11 - e12) + (e22 - e21), in joules.
double entangling_energy(const PairEnergies& pe);

/// Per-branch energy shifts Delta_ij (J), e.g. from local noise fields.
using BranchShifts = std::array<double, 4>;  // order 11, 12, 21, 22

/// Delta_ij = dA(Ri) + dB(Rj).
BranchShifts local_shifts(double a_r1, double a_r2, double b_r1, double b_r2);

/// Equal-amplitude four-branch state sum_ij (1/2) exp(-i phi_ij) |Ri Rj>.
/// Phases are stored relative to the |R1 R1> branch; the dropped global
/// phase does not affect any observable.
struct TwoBodyState {
  std::array<double, 4> phases{};  // rad, order 11, 12, 21, 22

  std::array<std::complex<double>, 4> amplitudes() const;
  /// phi11 - phi12 - phi21 + phi22
  double combined_phase() const;
};

/// phi_ij = (E_ij + Delta_ij) T / hbar. Throws for T < 0.
TwoBodyState evolve(const PairEnergies& pe, const BranchShifts& deltas, double T);

/// |sin(combined_phase / 2)|.
double concurrence(const TwoBodyState& state);

struct TwoBodyReport {
  int t = 0;
  int n_points = 0;
  OrientationPair pair;
  PairEnergies energies;
  double e_ent_joule = 0.0;
  double e_ent_rad_s = 0.0;
  double e_ent_hz = 0.0;
  double delta_signal_hz = 0.0;  // A's phase rate in the static field of B held in R1
  double delta_noise_rad_s = 0.0;
  double delta_noise_hz = 0.0;
  double evolution_time = 1.0;
  double concurrence = 0.0;

  /// E_ent T / hbar >= 10 |Delta_noise| T.
  bool entangling_dominates() const;
  ScalingRow row() const;
};

struct GravityParams {
  CompositeParams composite;            // diamond, 10 um central radius, 1.83e-11 kg
  Vec3 separation{200e-6, 0.0, 0.0};    // m
  double noise_mass = 100.0;            // kg
  Vec3 noise_position{20.0, 0.0, 0.0};  // m
  OptimizerConfig optimizer;
  double evolution_time = 1.0;          // s
};

/// Two diamond sphere-composite bodies on the catalog t-design (t in 1..3),
/// sharing an orientation pair optimized for |E_ent|.
TwoBodyReport gravitational_scenario(int t, const GravityParams& params = {});

/// Same study for an explicit design (any t).
TwoBodyReport gravitational_scenario(const TDesign& design, const GravityParams& params);

struct ElectrostaticParams {
  double radius = 2e-6;
  double unit_weight = constants::elementary_charge;
  Vec3 separation{10e-6, 0.0, 0.0};
  SourceModel noise = SourceModel::point(Kind::charge, {200e-6, 0.0, 0.0},
                                         1e3 * constants::elementary_charge);
  OptimizerConfig optimizer;
  double evolution_time = 1.0;
};

/// Two charged t-design bodies with a shared orientation pair optimized for
/// |E_ent|.
TwoBodyReport electrostatic_scenario(const TDesign& design, const ElectrostaticParams& params);

std::string summary(const TwoBodyReport& report);

}  // namespace tdesign
