#include "tdesign/geometry.hpp"

#include <cmath>
#include <ostream>
#include <random>

#include "tdesign/designs.hpp"
#include "tdesign/error.hpp"

namespace tdesign {

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  if (!(n > 0.0)) throw InvalidArgument("cannot normalize a zero vector");
  return v * (1.0 / n);
}

bool is_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

std::ostream& operator<<(std::ostream& os, const Vec3& v) {
  return os << '(' << v.x << ", " << v.y << ", " << v.z << ')';
}

Rotation::Rotation(double w, double x, double y, double z) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("quaternion must be finite and nonzero");
  w /= n; x /= n; y /= n; z /= n;
  bool flip = w < 0.0;
  if (w == 0.0) {
    for (double c : {x, y, z}) {
      if (c != 0.0) {
        flip = c < 0.0;
        break;
      }
    }
  }
  if (flip) {
    w = -w; x = -x; y = -y; z = -z;
  }
  w_ = w; x_ = x; y_ = y; z_ = z;
}

Rotation Rotation::from_axis_angle(const Vec3& axis, double angle) {
  const Vec3 u = normalized(axis);
  const double s = std::sin(0.5 * angle);
  return {std::cos(0.5 * angle), s * u.x, s * u.y, s * u.z};
}

Rotation Rotation::from_rotation_vector(const Vec3& v) {
  const double theta = norm(v);
  if (theta < 1e-8) {
    // second-order series keeps exp smooth at the origin of the chart
    const double half = 0.5;
    return {1.0 - theta * theta / 8.0, half * v.x, half * v.y, half * v.z};
  }
  return from_axis_angle(v, theta);
}

Vec3 Rotation::rotation_vector() const {
  const double s = std::sqrt(x_ * x_ + y_ * y_ + z_ * z_);
  if (s < 1e-300) return {};
  const double theta = 2.0 * std::atan2(s, w_);
  const double f = theta / s;
  return {f * x_, f * y_, f * z_};
}

double Rotation::angle() const {
  const double s = std::sqrt(x_ * x_ + y_ * y_ + z_ * z_);
  return 2.0 * std::atan2(s, w_);
}

std::array<double, 9> Rotation::matrix() const {
  const double w = w_, x = x_, y = y_, z = z_;
  return {1 - 2 * (y * y + z * z), 2 * (x * y - w * z),     2 * (x * z + w * y),
          2 * (x * y + w * z),     1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
          2 * (x * z - w * y),     2 * (y * z + w * x),     1 - 2 * (x * x + y * y)};
}

Rotation operator*(const Rotation& a, const Rotation& b) {
  return {a.w_ * b.w_ - a.x_ * b.x_ - a.y_ * b.y_ - a.z_ * b.z_,
          a.w_ * b.x_ + a.x_ * b.w_ + a.y_ * b.z_ - a.z_ * b.y_,
          a.w_ * b.y_ - a.x_ * b.z_ + a.y_ * b.w_ + a.z_ * b.x_,
          a.w_ * b.z_ + a.x_ * b.y_ - a.y_ * b.x_ + a.z_ * b.w_};
}

Vec3 rotate(const Rotation& r, const Vec3& p) {
  // p' = p + 2w (u x p) + 2 u x (u x p)
  const Vec3 u{r.x(), r.y(), r.z()};
  const Vec3 c = cross(u, p);
  const Vec3 cc = cross(u, c);
  return p + (2.0 * r.w()) * c + 2.0 * cc;
}

double angle_between(const Rotation& a, const Rotation& b) {
  return (a.inverse() * b).angle();
}

namespace {

Rotation haar_from(std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double w = normal(gen);
  const double x = normal(gen);
  const double y = normal(gen);
  const double z = normal(gen);
  return {w, x, y, z};
}

}  // namespace

Rotation random_rotation(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  return haar_from(gen);
}

Rotation random_rotation(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 gen(seq);
  return haar_from(gen);
}

std::string to_string(Kind k) { return k == Kind::charge ? "charge" : "mass"; }

double RigidBody::total_weight() const {
  double s = 0.0;
  for (const auto& e : elements) s += e.weight;
  return s;
}

RigidBody rotated(const RigidBody& body, const Rotation& r) {
  RigidBody out = body;
  for (auto& e : out.elements) e.position = rotate(r, e.position);
  for (auto& s : out.spheres) s.center = rotate(r, s.center);
  return out;
}

RigidBody translated(const RigidBody& body, const Vec3& offset) {
  RigidBody out = body;
  for (auto& e : out.elements) e.position += offset;
  for (auto& s : out.spheres) s.center += offset;
  return out;
}

bool spheres_overlap(const RigidBody& a, const RigidBody& b) {
  for (const auto& sa : a.spheres) {
    for (const auto& sb : b.spheres) {
      if (norm(sa.center - sb.center) < sa.radius + sb.radius) return true;
    }
  }
  return false;
}

RigidBody build_body(std::span<const Vec3> unit_points, double radius, double unit_weight,
                     Kind kind) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument("body radius must be positive");
  }
  RigidBody body;
  body.kind = kind;
  body.elements.reserve(unit_points.size());
  for (const auto& p : unit_points) {
    if (!is_finite(p)) throw InvalidArgument("non-finite design point");
    body.elements.push_back({p * radius, unit_weight});
  }
  return body;
}

RigidBody build_body(const TDesign& design, double radius, double unit_weight, Kind kind) {
  return build_body(design.points, radius, unit_weight, kind);
}

double sphere_volume(double radius) { return 4.0 / 3.0 * constants::pi * radius * radius * radius; }

double sphere_radius_for_mass(double mass, double density) {
  return std::cbrt(mass / (4.0 / 3.0 * constants::pi * density));
}

RigidBody attach_spheres(const RigidBody& body, const CentralSphere& central,
                         double peripheral_mass_each, const Material& material,
                         std::optional<double> mass_budget) {
  if (body.kind != Kind::mass) throw InvalidArgument("attach_spheres needs a mass body");
  if (!(material.density > 0.0) || !std::isfinite(material.density)) {
    throw InvalidArgument("material density not set");
  }
  if (!(central.radius > 0.0)) throw InvalidArgument("central sphere radius must be positive");
  if (central.mass < 0.0 || !std::isfinite(central.mass)) {
    throw InvalidArgument("central sphere mass must be non-negative");
  }
  if (!body.elements.empty() && !(peripheral_mass_each > 0.0)) {
    throw InvalidArgument("peripheral sphere mass must be positive");
  }
  const double total =
      central.mass + static_cast<double>(body.elements.size()) * peripheral_mass_each;
  if (mass_budget && total > *mass_budget * (1.0 + 1e-12)) {
    throw InvalidArgument("sphere masses exceed the mass budget");
  }

  RigidBody out;
  out.kind = Kind::mass;
  out.elements.push_back({{}, central.mass});
  out.spheres.push_back({{}, central.radius, central.mass});
  if (body.elements.empty()) return out;

  const double rp = sphere_radius_for_mass(peripheral_mass_each, material.density);
  for (const auto& e : body.elements) {
    const Vec3 c = normalized(e.position) * (central.radius + rp);
    out.elements.push_back({c, peripheral_mass_each});
    out.spheres.push_back({c, rp, peripheral_mass_each});
  }
  return out;
}

RigidBody sphere_composite(std::span<const Vec3> unit_points, const CompositeParams& params) {
  const double central_mass = params.material.density * sphere_volume(params.central_radius);
  if (central_mass > params.total_mass * (1.0 + 1e-12)) {
    throw InvalidArgument("central sphere alone exceeds the total mass");
  }
  RigidBody skeleton = build_body(unit_points, 1.0, 0.0, Kind::mass);
  const double each = unit_points.empty()
                          ? 0.0
                          : (params.total_mass - central_mass) /
                                static_cast<double>(unit_points.size());
  return attach_spheres(skeleton, {params.central_radius, central_mass}, each, params.material,
                        params.total_mass);
}

double body_radius(const RigidBody& body) {
  double r = 0.0;
  for (const auto& e : body.elements) r = std::max(r, norm(e.position));
  return r;
}

}  // namespace tdesign
