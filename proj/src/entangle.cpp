#include "tdesign/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tdesign/error.hpp"
#include "tdesign/io.hpp"

namespace tdesign {

PairEnergies pair_energies(const RigidBody& a, const RigidBody& b, const OrientationPair& pair_a,
                           const OrientationPair& pair_b, const Vec3& separation) {
  return {placed_interaction_energy(a, pair_a.r1, b, pair_b.r1, separation),
          placed_interaction_energy(a, pair_a.r1, b, pair_b.r2, separation),
          placed_interaction_energy(a, pair_a.r2, b, pair_b.r1, separation),
          placed_interaction_energy(a, pair_a.r2, b, pair_b.r2, separation)};
}

double entangling_energy(const PairEnergies& pe) { return (pe.e11 - pe.e12) + (pe.e22 - pe.e21); }

BranchShifts local_shifts(double a_r1, double a_r2, double b_r1, double b_r2) {
  return {a_r1 + b_r1, a_r1 + b_r2, a_r2 + b_r1, a_r2 + b_r2};
}

std::array<std::complex<double>, 4> TwoBodyState::amplitudes() const {
  std::array<std::complex<double>, 4> amp;
  for (std::size_t k = 0; k < 4; ++k) amp[k] = 0.5 * std::polar(1.0, -phases[k]);
  return amp;
}

double TwoBodyState::combined_phase() const { return phases[0] - phases[1] - phases[2] + phases[3]; }

TwoBodyState evolve(const PairEnergies& pe, const BranchShifts& deltas, double T) {
  if (!(T >= 0.0)) throw InvalidArgument("evolution time must be non-negative");
  const double e[4] = {pe.e11, pe.e12, pe.e21, pe.e22};
  TwoBodyState s;
  for (std::size_t k = 0; k < 4; ++k) {
    const double rel = (e[k] - e[0]) + (deltas[k] - deltas[0]);
    s.phases[k] = rel * T / constants::hbar;
  }
  return s;
}

double concurrence(const TwoBodyState& state) { return std::abs(std::sin(0.5 * state.combined_phase())); }

bool TwoBodyReport::entangling_dominates() const {
  return std::abs(e_ent_rad_s) * evolution_time >= 10.0 * std::abs(delta_noise_rad_s) * evolution_time;
}

ScalingRow TwoBodyReport::row() const {
  ScalingRow r;
  r.t = t;
  r.n_points = n_points;
  r.delta_signal_hz = delta_signal_hz;
  r.delta_noise_hz = delta_noise_hz;
  r.ratio = delta_noise_hz == 0.0 ? std::numeric_limits<double>::infinity()
                                  : delta_signal_hz / delta_noise_hz;
  r.e_ent_hz = std::abs(e_ent_hz);
  return r;
}

namespace {

TwoBodyReport two_body_study(int t, const RigidBody& body, const Vec3& separation,
                             const SourceModel& noise, const OptimizerConfig& optimizer,
                             double evolution_time) {
  const auto objective = [&](const OrientationPair& p) {
    return std::abs(entangling_energy(pair_energies(body, body, p, p, separation)));
  };
  const auto best = optimize_pair(objective, optimizer);

  TwoBodyReport rep;
  rep.t = t;
  rep.pair = best.pair;
  rep.energies = pair_energies(body, body, best.pair, best.pair, separation);
  rep.e_ent_joule = entangling_energy(rep.energies);
  rep.e_ent_rad_s = energy_to_rad_per_s(rep.e_ent_joule);
  rep.e_ent_hz = energy_to_hz(rep.e_ent_joule);

  const PhaseRate noise_rate = phase_rate(body, best.pair, noise);
  rep.delta_noise_rad_s = std::abs(noise_rate.rad_per_s);
  rep.delta_noise_hz = noise_rate.magnitude_hz();

  // noise shifts relative to the R1 branch; B's source position is taken in B's frame
  SourceModel noise_b = noise;
  for (auto& s : noise_b.sources) s.position -= separation;
  const double a2 = -potential_energy_difference(body, best.pair.r1, best.pair.r2, noise);
  const double b2 = -potential_energy_difference(body, best.pair.r1, best.pair.r2, noise_b);
  rep.evolution_time = evolution_time;
  rep.concurrence = concurrence(evolve(rep.energies, local_shifts(0.0, a2, 0.0, b2), evolution_time));

  SourceModel field_of_b{body.kind, {}};
  for (const auto& e : body.elements) {
    field_of_b.sources.push_back({rotate(best.pair.r1, e.position) + separation, e.weight});
  }
  rep.delta_signal_hz = phase_rate(body, best.pair, field_of_b).magnitude_hz();
  return rep;
}

}  // namespace

TwoBodyReport gravitational_scenario(int t, const GravityParams& params) {
  if (t < 1 || t > 3) throw InvalidArgument("gravitational scenario covers t = 1, 2, 3");
  return gravitational_scenario(catalog_design(t), params);
}

TwoBodyReport gravitational_scenario(const TDesign& design, const GravityParams& params) {
  const RigidBody body = sphere_composite(design.points, params.composite);
  double extent = 0.0;
  for (const auto& sp : body.spheres) extent = std::max(extent, norm(sp.center) + sp.radius);
  if (!(norm(params.separation) > 2.0 * extent)) {
    throw InvalidArgument("sphere-composite bodies can overlap at this separation");
  }
  const SourceModel noise = SourceModel::point(Kind::mass, params.noise_position, params.noise_mass);
  TwoBodyReport rep = two_body_study(design.t, body, params.separation, noise, params.optimizer,
                                     params.evolution_time);
  rep.n_points = static_cast<int>(design.size());
  return rep;
}

TwoBodyReport electrostatic_scenario(const TDesign& design, const ElectrostaticParams& params) {
  const RigidBody body = build_body(design, params.radius, params.unit_weight, Kind::charge);
  TwoBodyReport rep = two_body_study(design.t, body, params.separation, params.noise,
                                     params.optimizer, params.evolution_time);
  rep.n_points = static_cast<int>(design.size());
  return rep;
}

std::string summary(const TwoBodyReport& r) {
  std::ostringstream os;
  os << "t = " << r.t << " (" << r.n_points << " points)\n"
     << "  E_ent          = " << io::format_double(r.e_ent_joule) << " J = "
     << io::format_double(r.e_ent_rad_s) << " rad/s = " << io::format_double(r.e_ent_hz) << " Hz\n"
     << "  |Delta_noise|  = " << io::format_double(r.delta_noise_rad_s) << " rad/s = "
     << io::format_double(r.delta_noise_hz) << " Hz\n"
     << "  concurrence(T = " << io::format_double(r.evolution_time)
     << " s) = " << io::format_double(r.concurrence) << "\n"
     << "  E_ent T/hbar >= 10 |Delta| T: " << (r.entangling_dominates() ? "yes" : "no") << "\n";
  return os.str();
}

}  // namespace tdesign
