#pragma once

#include <vector>

#include "tdesign/geometry.hpp"

namespace tdesign {

struct Source {
  Vec3 position;    // m
  double strength;  // C or kg
};

/// Point sources of one kind generating a Coulomb or Newtonian potential.
struct SourceModel {
  Kind kind = Kind::charge;
  std::vector<Source> sources;

  static SourceModel point(Kind kind, const Vec3& position, double strength) {
    return {kind, {{position, strength}}};
  }
  /// Smallest source distance from the origin: the expansion's convergence radius.
  double min_distance() const;
};

SourceModel rotated(const SourceModel& src, const Rotation& r);
SourceModel scaled(const SourceModel& src, double factor);

/// k = 1/(4 pi eps0) for charges, -G for masses.
double coupling(Kind kind);

/// Interior (regular solid harmonic) expansion about the origin:
///   phi(x) = sum_{l <= order} sum_m c_lm R_lm(x),
/// c_lm = coupling * sum_s q_s (4 pi / (2l+1)) Y_lm(s_hat) / |s|^{l+1}.
/// Degree l collects exactly the order-l Cartesian moments.
struct MultipoleExpansion {
  Kind kind = Kind::charge;
  int order = 0;
  std::vector<double> coefficients;  // harmonics::index(l, m)
  double convergence_radius = 0.0;

  double coefficient(int l, int m) const;
};

/// sum_s coupling * q_s / |x - s|. Throws at a source position.
double exact_potential(const SourceModel& src, const Vec3& x);

/// Throws for a source at the origin or order outside [0, 32].
MultipoleExpansion expand(const SourceModel& src, int order);

/// Partial sum over degrees 0..order. Throws if order exceeds the stored
/// order or x lies outside the convergence radius.
double eval_truncated(const MultipoleExpansion& exp, const Vec3& x, int order);

/// The single degree-l term.
double eval_degree(const MultipoleExpansion& exp, const Vec3& x, int l);

struct EnergyMode {
  bool exact = true;
  int order = 0;

  static EnergyMode exact_sum() { return {true, 0}; }
  static EnergyMode truncated(int order) { return {false, order}; }
};

/// V = sum_i w_i phi(P_i). Spheres enter through their centre elements.
/// Throws on kind mismatch, coincident points (exact), or elements outside
/// the convergence region (truncated).
double potential_energy(const RigidBody& body, const SourceModel& src,
                        EnergyMode mode = EnergyMode::exact_sum());

/// V(r1 body) - V(r2 body) with both exact sums carried in binary128, so the
/// result stays accurate when it is many orders below V itself.
double potential_energy_difference(const RigidBody& body, const Rotation& r1,
                                   const Rotation& r2, const SourceModel& src);

/// Exact double sum over element pairs. Throws on kind mismatch, coincident
/// elements or overlapping spheres.
double interaction_energy(const RigidBody& a, const RigidBody& b);

/// interaction_energy(rotated(a, ra), translated(rotated(b, rb), offset)) with
/// placement done in binary128.
double placed_interaction_energy(const RigidBody& a, const Rotation& ra, const RigidBody& b,
                                 const Rotation& rb, const Vec3& offset);

}  // namespace tdesign
