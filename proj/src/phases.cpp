#include "tdesign/phases.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <ostream>

#include "tdesign/error.hpp"
#include "tdesign/io.hpp"

namespace tdesign {

double PhaseRate::magnitude_hz() const { return std::abs(hz()); }

PhaseRate phase_rate(const RigidBody& body, const OrientationPair& pair, const SourceModel& src) {
  if (pair.r1 == pair.r2) return {};
  return {energy_to_rad_per_s(potential_energy_difference(body, pair.r1, pair.r2, src))};
}

SignalNoise signal_noise(const RigidBody& body, const OrientationPair& pair,
                         const SourceModel& signal_src, const SourceModel& noise_src) {
  SignalNoise out;
  out.signal = phase_rate(body, pair, signal_src);
  out.noise = phase_rate(body, pair, noise_src);
  const double s = std::abs(out.signal.rad_per_s);
  const double n = std::abs(out.noise.rad_per_s);
  if (n == 0.0) {
    out.ratio_infinite = true;
    out.ratio = s == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                         : std::numeric_limits<double>::infinity();
  } else {
    out.ratio = s / n;
  }
  return out;
}

OrientationPair default_pair(const RigidBody& body) {
  if (body.elements.empty()) return {Rotation::identity(), Rotation::identity()};

  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  for (const auto& e : body.elements) {
    const Eigen::Vector3d p(e.position.x, e.position.y, e.position.z);
    m += std::abs(e.weight) * p * p.transpose();
  }
  Vec3 dir;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(m);
  const auto& ev = eig.eigenvalues();  // ascending
  const double top = ev(2);
  if (top > 0.0 && (top - ev(1)) > 1e-9 * top) {
    const auto v = eig.eigenvectors().col(2);
    dir = {v(0), v(1), v(2)};
  } else {
    dir = body.elements.front().position;
    if (norm(dir) == 0.0) dir = {0, 0, 1};
  }
  dir = normalized(dir);

  const Vec3 axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const Vec3* least = &axes[0];
  for (const auto& a : axes) {
    if (std::abs(dot(a, dir)) < std::abs(dot(*least, dir))) least = &a;
  }
  const Vec3 axis = normalized(cross(dir, *least));
  return {Rotation::identity(), Rotation::from_axis_angle(axis, 0.5 * constants::pi)};
}

SensingScenario charged_sensing_scenario() {
  SensingScenario sc;
  sc.radius = 2e-6;
  sc.unit_weight = constants::elementary_charge;
  sc.kind = Kind::charge;
  sc.signal = SourceModel::point(Kind::charge, {0, 0, 10e-6}, constants::elementary_charge);
  sc.noise = SourceModel::point(Kind::charge, {0, 0, 200e-6}, 1e3 * constants::elementary_charge);
  return sc;
}

DesignProvider default_design_provider(std::uint64_t solver_seed, SolverOptions solver) {
  return [solver_seed, solver](int t) {
    if (in_catalog(t)) return catalog_design(t);
    return solve_design(t, default_point_count(t), solver_seed, solver);
  };
}

OrientationPair choose_pair(const RigidBody& body, const SensingScenario& sc,
                            const ScalingOptions& opt) {
  if (!opt.optimize) return default_pair(body);
  const auto objective = [&](const OrientationPair& p) {
    return std::abs(phase_rate(body, p, sc.signal).rad_per_s);
  };
  return optimize_pair(objective, opt.optimizer).pair;
}

std::vector<ScalingRow> scaling_study(const SensingScenario& scenario, std::span<const int> t_list,
                                      const DesignProvider& designs, const ScalingOptions& options) {
  std::vector<ScalingRow> rows;
  rows.reserve(t_list.size());
  for (const int t : t_list) {
    ScalingRow row;
    row.t = t;
    TDesign design;
    try {
      design = designs(t);
    } catch (const Error&) {
      row.missing = true;
      rows.push_back(row);
      continue;
    }
    const RigidBody body = build_body(design, scenario.radius, scenario.unit_weight, scenario.kind);
    const OrientationPair pair = choose_pair(body, scenario, options);

    OrientationPair noise_pair = pair;
    if (options.noise_pair == NoisePair::worst_case) {
      const auto objective = [&](const OrientationPair& p) {
        return std::abs(phase_rate(body, p, scenario.noise).rad_per_s);
      };
      noise_pair = optimize_pair(objective, options.optimizer).pair;
    }
    const PhaseRate signal = phase_rate(body, pair, scenario.signal);
    const PhaseRate noise = phase_rate(body, noise_pair, scenario.noise);

    row.n_points = static_cast<int>(design.size());
    row.delta_signal_hz = signal.magnitude_hz();
    row.delta_noise_hz = noise.magnitude_hz();
    row.ratio = row.delta_noise_hz == 0.0 ? std::numeric_limits<double>::infinity()
                                          : row.delta_signal_hz / row.delta_noise_hz;
    rows.push_back(row);
  }
  return rows;
}

void write_scaling_csv(std::ostream& out, std::span<const ScalingRow> rows) {
  out << "t,n_points,delta_signal_hz,delta_noise_hz,ratio,e_ent_hz\n";
  for (const auto& r : rows) {
    if (r.missing) {
      out << io::csv_row({std::to_string(r.t), "", "", "", "", ""});
      continue;
    }
    out << io::csv_row({std::to_string(r.t), std::to_string(r.n_points),
                        io::format_double(r.delta_signal_hz), io::format_double(r.delta_noise_hz),
                        io::format_double(r.ratio),
                        r.e_ent_hz ? io::format_double(*r.e_ent_hz) : std::string()});
  }
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("slope fit needs >= 2 matched points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw InvalidArgument("slope fit needs distinct abscissae");
  return sxy / sxx;
}

}  // namespace tdesign
