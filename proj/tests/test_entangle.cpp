#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tdesign/designs.hpp"
#include "tdesign/entangle.hpp"
#include "tdesign/error.hpp"

using namespace tdesign;

namespace {

TwoBodyState state_with_combined(double phi) { return TwoBodyState{{0.0, 0.0, 0.0, phi}}; }

double generic_concurrence(const TwoBodyState& s) {
  const auto a = s.amplitudes();
  return oracle::concurrence(a.data());
}

OptimizerConfig quick() {
  OptimizerConfig cfg;
  cfg.restarts = 4;
  cfg.max_iters = 800;
  return cfg;
}

}  // namespace

TEST_SUITE("entangle") {
  TEST_CASE("entangling energy arithmetic") {
    CHECK(entangling_energy({5, 1, 2, 3}) == 5.0);
    CHECK(entangling_energy({2, 2, 2, 2}) == 0.0);
    const double a1 = 0.25, a2 = -1.75, b1 = 2.25, b2 = 0.5;  // dyadic: exact sums
    CHECK(entangling_energy({a1 + b1, a1 + b2, a2 + b1, a2 + b2}) == 0.0);
  }

  TEST_CASE("property: gauge and separable-shift invariance") {
    std::mt19937_64 g(2);
    std::uniform_int_distribution<int> u(-1000, 1000);
    for (int k = 0; k < 200; ++k) {
      // integers keep the arithmetic exact
      const PairEnergies pe{double(u(g)), double(u(g)), double(u(g)), double(u(g))};
      const double c = u(g), a1 = u(g), a2 = u(g), b1 = u(g), b2 = u(g);
      CHECK(entangling_energy({pe.e11 + c, pe.e12 + c, pe.e21 + c, pe.e22 + c}) == entangling_energy(pe));
      CHECK(entangling_energy({pe.e11 + a1 + b1, pe.e12 + a1 + b2, pe.e21 + a2 + b1, pe.e22 + a2 + b2}) ==
            entangling_energy(pe));
    }
  }

  TEST_CASE("pair energies: trivial pairs and symmetric body") {
    const RigidBody body = build_body(catalog_design(2), 2e-6, 1.6e-19, Kind::charge);
    const Rotation r = random_rotation(3);
    const auto pe = pair_energies(body, body, {r, r}, {r, r}, {10e-6, 0, 0});
    CHECK(pe.e11 == pe.e12);
    CHECK(pe.e11 == pe.e21);
    CHECK(pe.e11 == pe.e22);

    const RigidBody point{Kind::charge, {{{}, 1.6e-19}}, {}};
    const OrientationPair pb{random_rotation(4), random_rotation(5)};
    const auto sym = pair_energies(point, body, {random_rotation(6), random_rotation(7)}, pb, {10e-6, 0, 0});
    CHECK(sym.e11 == sym.e21);
    CHECK(sym.e12 == sym.e22);
    CHECK(entangling_energy(sym) == 0.0);
  }

  TEST_CASE("pair energies of two 2-designs at 10 um cluster around the monopole") {
    const double e = constants::elementary_charge;
    const RigidBody body = build_body(catalog_design(2), 2e-6, e, Kind::charge);
    const OrientationPair p{random_rotation(8), random_rotation(9)};
    const auto pe = pair_energies(body, body, p, p, {10e-6, 0, 0});
    const double mono = constants::coulomb_k * 16 * e * e / 10e-6;
    for (double v : {pe.e11, pe.e12, pe.e21, pe.e22}) {
      CHECK(std::abs(v - mono) / mono <= 0.05);
    }
    const auto a = rotated(body, p.r1);
    const auto b = translated(rotated(body, p.r2), {10e-6, 0, 0});
    const double ref = constants::coulomb_k * static_cast<double>(oracle::pair_sum(a.elements, b.elements));
    CHECK(pe.e12 == doctest::Approx(ref).epsilon(1e-13));
  }

  TEST_CASE("pair energies reject overlapping composites") {
    const RigidBody c = sphere_composite(catalog_design(1).points, CompositeParams{});
    const OrientationPair p{Rotation::identity(), Rotation::identity()};
    CHECK_THROWS_AS(pair_energies(c, c, p, p, {15e-6, 0, 0}), InvalidArgument);
  }

  TEST_CASE("concurrence examples and the generic oracle") {
    CHECK(concurrence(state_with_combined(0.0)) == 0.0);
    for (int n = -3; n <= 3; ++n) CHECK(concurrence(state_with_combined(2 * constants::pi * n)) <= 1e-15);
    CHECK(concurrence(state_with_combined(constants::pi / 2)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(concurrence(state_with_combined(constants::pi)) == doctest::Approx(1.0));
    std::mt19937_64 g(1);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int k = 0; k < 500; ++k) {
      const TwoBodyState s{{u(g), u(g), u(g), u(g)}};
      CHECK(std::abs(concurrence(s) - generic_concurrence(s)) <= 1e-12);
      double norm2 = 0.0;
      for (const auto& a : s.amplitudes()) norm2 += std::norm(a);
      CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-15));
    }
  }

  TEST_CASE("evolve: T = 0, common deltas and maximal entanglement") {
    const PairEnergies pe{4e-34, 1e-34, -2e-34, 3e-34};
    CHECK(concurrence(evolve(pe, {}, 0.0)) == 0.0);
    const double T = 0.37;
    const double c0 = concurrence(evolve(pe, {}, T));
    CHECK(concurrence(evolve(pe, {5e-35, 5e-35, 5e-35, 5e-35}, T)) == doctest::Approx(c0).epsilon(1e-12));
    const double e_ent = entangling_energy(pe);
    const double t_pi = constants::pi * constants::hbar / e_ent;
    CHECK(concurrence(evolve(pe, {}, t_pi)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(generic_concurrence(evolve(pe, {}, t_pi)) - 1.0) <= 1e-12);
    CHECK_THROWS_AS(evolve(pe, {}, -1.0), InvalidArgument);
  }

  TEST_CASE("property: periodicity and zeros of the concurrence") {
    const PairEnergies pe{3e-34, -1e-34, 0.5e-34, 2e-34};
    const double e_ent = entangling_energy(pe);
    const double period = constants::two_pi * constants::hbar / e_ent;
    for (int k = 0; k < 100; ++k) {
      const double T = 0.013 * k;
      CHECK(std::abs(concurrence(evolve(pe, {}, T + period)) - concurrence(evolve(pe, {}, T))) <= 1e-12);
      CHECK(concurrence(evolve(pe, {}, k * period)) <= 1e-12);
    }
  }

  TEST_CASE("local noise shifts never entangle") {
    const BranchShifts d = local_shifts(1e-34, -2e-34, 3e-34, 0.5e-34);
    CHECK(concurrence(evolve({0, 0, 0, 0}, d, 2.0)) <= 1e-15);
    const PairEnergies pe{3e-34, -1e-34, 0.5e-34, 2e-34};
    CHECK(concurrence(evolve(pe, d, 0.7)) == doctest::Approx(concurrence(evolve(pe, {}, 0.7))).epsilon(1e-12));
  }

  TEST_CASE("composites without peripherals have zero entangling energy") {
    const RigidBody c = sphere_composite({}, CompositeParams{});
    const OrientationPair p{random_rotation(1), random_rotation(2)};
    CHECK(entangling_energy(pair_energies(c, c, p, p, {200e-6, 0, 0})) == 0.0);
  }

  TEST_CASE("gravitational scenario, t = 1 and 3 (reduced optimizer)") {
    GravityParams gp;
    gp.optimizer = quick();
    const auto r1 = gravitational_scenario(1, gp);
    CHECK(std::abs(r1.e_ent_hz) >= 1.6);
    CHECK(std::abs(r1.e_ent_hz) <= 160.0);
    CHECK(r1.delta_noise_hz >= 0.07);
    CHECK(r1.delta_noise_hz <= 700.0);
    const auto r3 = gravitational_scenario(3, gp);
    CHECK(std::abs(r3.e_ent_hz) >= 1e-4);
    CHECK(std::abs(r3.e_ent_hz) <= 1e-2);
    CHECK(r3.delta_noise_hz <= 1e-9);
    CHECK(r3.entangling_dominates());
    CHECK(r3.evolution_time == 1.0);
    CHECK(r1.row().e_ent_hz.has_value());
    CHECK(!summary(r3).empty());
    CHECK_THROWS_AS(gravitational_scenario(4, gp), InvalidArgument);
  }

  TEST_CASE("gravitational scenario rejects overlapping separation") {
    GravityParams gp;
    gp.optimizer = quick();
    gp.separation = {30e-6, 0, 0};
    CHECK_THROWS_AS(gravitational_scenario(2, gp), InvalidArgument);
  }

  TEST_CASE("electrostatic scenario is deterministic and finite") {
    ElectrostaticParams ep;
    ep.optimizer = quick();
    const auto a = electrostatic_scenario(catalog_design(2), ep);
    const auto b = electrostatic_scenario(catalog_design(2), ep);
    CHECK(a.e_ent_joule == b.e_ent_joule);
    CHECK(a.delta_noise_hz == b.delta_noise_hz);
    CHECK(std::isfinite(a.e_ent_hz));
    CHECK(a.delta_signal_hz > 0.0);
    CHECK(a.concurrence >= 0.0);
    CHECK(a.concurrence <= 1.0);
    CHECK(a.n_points == 4);
  }
}
