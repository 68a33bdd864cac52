#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tdesign/designs.hpp"
#include "tdesign/io.hpp"
#include "tdesign/phases.hpp"

using namespace tdesign;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<ScalingRow> charged_rows(const ScalingOptions& opt = {}) {
  const std::vector<int> ts{1, 2, 3, 5};
  return scaling_study(charged_sensing_scenario(), ts, default_design_provider(), opt);
}

}  // namespace

TEST_SUITE("phases") {
  TEST_CASE("unit conversions") {
    const PhaseRate r{constants::two_pi};
    CHECK(r.hz() == doctest::Approx(1.0));
    CHECK(PhaseRate{-3.0}.magnitude_hz() == doctest::Approx(3.0 / constants::two_pi));
    CHECK(energy_to_rad_per_s(constants::hbar) == doctest::Approx(1.0));
  }

  TEST_CASE("trivial phase rates") {
    const RigidBody body = build_body(catalog_design(2), 2e-6, 1e-19, Kind::charge);
    const auto src = SourceModel::point(Kind::charge, {0, 0, 1e-5}, 1e-19);
    const Rotation r = random_rotation(1);
    CHECK(phase_rate(body, {r, r}, src).rad_per_s == 0.0);
    const RigidBody central = sphere_composite({}, CompositeParams{});
    const auto msrc = SourceModel::point(Kind::mass, {1e-4, 0, 0}, 1.0);
    CHECK(phase_rate(central, {random_rotation(2), random_rotation(3)}, msrc).rad_per_s == 0.0);
  }

  TEST_CASE("property: antisymmetry, linearity and joint-rotation covariance") {
    const RigidBody body = build_body(catalog_design(3), 2e-6, 1.6e-19, Kind::charge);
    const auto src = SourceModel::point(Kind::charge, {1e-6, -2e-6, 20e-6}, 1.6e-19);
    for (int k = 0; k < 20; ++k) {
      const Rotation a = random_rotation(k, 0), b = random_rotation(k, 1);
      const double d = phase_rate(body, {a, b}, src).rad_per_s;
      CHECK(phase_rate(body, {b, a}, src).rad_per_s == -d);
      CHECK(rel(phase_rate(body, {a, b}, scaled(src, 3.7)).rad_per_s, 3.7 * d) <= 1e-12);
      const Rotation g = random_rotation(k, 2);
      CHECK(rel(phase_rate(body, {g * a, g * b}, rotated(src, g)).rad_per_s, d) <= 1e-12);
    }
  }

  TEST_CASE("property: truncated-field rate vanishes to order t; exact rate led by degree t+1") {
    const double R = 1.0, L = 60.0;
    const Vec3 s = normalized({0.3, -0.5, 1.0}) * L;
    const auto src = SourceModel::point(Kind::charge, s, 1.0);
    const auto ex = expand(src, 12);
    for (int t : {1, 2, 3, 5}) {
      const RigidBody body = build_body(catalog_design(t), R, 1.0, Kind::charge);
      for (int k = 0; k < 10; ++k) {
        const Rotation a = random_rotation(k, 5), b = random_rotation(k, 6);
        const double v = std::abs(potential_energy(body, src));
        const double trunc = potential_energy(rotated(body, a), src, EnergyMode::truncated(t)) -
                             potential_energy(rotated(body, b), src, EnergyMode::truncated(t));
        CHECK(std::abs(trunc) <= 1e-9 * v);
        double lead = 0.0;
        for (const auto& e : body.elements) {
          lead += e.weight * (eval_degree(ex, rotate(a, e.position), t + 1) - eval_degree(ex, rotate(b, e.position), t + 1));
        }
        const double exact = potential_energy_difference(body, a, b, src);
        if (std::abs(lead) > 1e-3 * std::pow(R / L, t + 1) * v) {
          const double ratio = exact / lead;
          CHECK(ratio >= 0.5);
          CHECK(ratio <= 2.0);
        }
      }
    }
  }

  TEST_CASE("signal_noise: identical sources give ratio 1, zero noise flagged") {
    const RigidBody body = build_body(catalog_design(2), 2e-6, 1.6e-19, Kind::charge);
    const auto src = SourceModel::point(Kind::charge, {0, 3e-6, 9e-6}, 1.6e-19);
    const OrientationPair p{random_rotation(1), random_rotation(2)};
    CHECK(signal_noise(body, p, src, src).ratio == doctest::Approx(1.0));
    const SourceModel none{Kind::charge, {{{0, 0, 1e-3}, 0.0}}};
    const auto sn = signal_noise(body, p, src, none);
    CHECK(sn.ratio_infinite);
    CHECK(std::isinf(sn.ratio));
  }

  TEST_CASE("charged scenario, t = 2: ratio near (L/D)^(t+1)") {
    // same pair for signal and noise; a point charge of 1e3 e at L versus e at D
    // also carries the monopole factor (q_s / D) / (q_n / L) = 0.02
    const auto sc = charged_sensing_scenario();
    const RigidBody body = build_body(catalog_design(2), sc.radius, sc.unit_weight, sc.kind);
    const auto pair = choose_pair(body, sc, ScalingOptions{});
    const auto sn = signal_noise(body, pair, sc.signal, sc.noise);
    const double monopole = (1.0 / 10e-6) / (1e3 / 200e-6);
    CHECK(sn.ratio / monopole >= 8000.0 / 5);
    CHECK(sn.ratio / monopole <= 8000.0 * 5);
    CHECK(sn.ratio >= 160.0 / 5);
    CHECK(sn.ratio <= 160.0 * 5);
  }

  TEST_CASE("noise moved to 2L") {
    const auto sc = charged_sensing_scenario();
    for (int t : {1, 2, 3, 5}) {
      const RigidBody body = build_body(catalog_design(t), sc.radius, sc.unit_weight, sc.kind);
      const auto pair = choose_pair(body, sc, ScalingOptions{});
      const double base = std::abs(phase_rate(body, pair, sc.noise).rad_per_s);
      const auto far = SourceModel::point(Kind::charge, sc.noise.sources[0].position * 2.0,
                                          sc.noise.sources[0].strength);
      // fixed source strength: the degree-(t+1) term falls by 2^(t+2)
      const double fixed_q = base / std::abs(phase_rate(body, pair, far).rad_per_s);
      CHECK(fixed_q == doctest::Approx(std::pow(2.0, t + 2)).epsilon(0.2));
      // fixed monopole potential at the body (strength doubled): 2^(t+1)
      const double fixed_v = base / std::abs(phase_rate(body, pair, scaled(far, 2.0)).rad_per_s);
      CHECK(fixed_v == doctest::Approx(std::pow(2.0, t + 1)).epsilon(0.2));
    }
  }

  TEST_CASE("scaling study: slope, ratio growth and linearity") {
    const auto rows = charged_rows();
    REQUIRE(rows.size() == 4);
    std::vector<double> ts, ln_noise;
    for (const auto& r : rows) {
      CHECK(!r.missing);
      CHECK(r.delta_signal_hz > 0.0);
      CHECK(r.delta_noise_hz > 0.0);
      ts.push_back(r.t);
      ln_noise.push_back(std::log(r.delta_noise_hz));
    }
    const double slope = least_squares_slope(ts, ln_noise);
    CHECK(slope == doctest::Approx(-std::log(100.0)).epsilon(0.15));
    for (std::size_t i = 0; i + 1 < 3; ++i) {
      const double growth = rows[i + 1].ratio / rows[i].ratio;  // t = 1, 2, 3
      CHECK(growth >= 10.0);
      CHECK(growth <= 40.0);
    }

    auto sc = charged_sensing_scenario();
    sc.noise = scaled(sc.noise, 2.0);
    const std::vector<int> ts_int{1, 2, 3, 5};
    const auto doubled = scaling_study(sc, ts_int, default_design_provider(), ScalingOptions{});
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(doubled[i].delta_noise_hz == doctest::Approx(2.0 * rows[i].delta_noise_hz).epsilon(1e-12));
    }
  }

  TEST_CASE("scaling study: default pair, worst-case noise and missing rows") {
    ScalingOptions fixed;
    fixed.optimize = false;
    const auto a = charged_rows(fixed);
    const auto b = charged_rows(fixed);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].delta_noise_hz == b[i].delta_noise_hz);

    ScalingOptions worst;
    worst.noise_pair = NoisePair::worst_case;
    const auto w = charged_rows(worst);
    const auto s = charged_rows();
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(w[i].delta_noise_hz >= s[i].delta_noise_hz * (1 - 1e-9));

    const std::vector<int> ts{2, 4};
    const DesignProvider only_catalog = [](int t) { return catalog_design(t); };
    const auto rows = scaling_study(charged_sensing_scenario(), ts, only_catalog, fixed);
    CHECK(!rows[0].missing);
    CHECK(rows[1].missing);
  }

  TEST_CASE("default pair is a documented quarter turn") {
    const RigidBody body = build_body(catalog_design(1), 1.0, 1.0, Kind::charge);
    const auto p = default_pair(body);
    CHECK(p.r1 == Rotation::identity());
    CHECK(p.r2.angle() == doctest::Approx(constants::pi / 2));
    // axis perpendicular to the antipodal axis (z)
    CHECK(std::abs(p.r2.rotation_vector().z) <= 1e-12);
    CHECK(default_pair(body).r2 == p.r2);
  }

  TEST_CASE("scaling CSV schema") {
    std::vector<ScalingRow> rows(2);
    rows[0] = {1, 2, 3.5, 0.25, 14.0, std::nullopt, false};
    rows[1].t = 4;
    rows[1].missing = true;
    std::ostringstream os;
    write_scaling_csv(os, rows);
    CHECK(os.str() == "t,n_points,delta_signal_hz,delta_noise_hz,ratio,e_ent_hz\n1,2,3.5,0.25,14,\n4,,,,,\n");
    const auto parsed = io::read_csv(os.str());
    CHECK(parsed.size() == 3);
    for (const auto& r : parsed) CHECK(r.size() == 6);
  }

  TEST_CASE("least squares slope") {
    const std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
    CHECK(least_squares_slope(x, y) == doctest::Approx(2.0));
    CHECK_THROWS(least_squares_slope(std::vector<double>{1}, std::vector<double>{1}));
  }
}
