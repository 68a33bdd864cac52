#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tdesign/constants.hpp"

namespace tdesign {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s; y *= s; z *= s;
    return *this;
  }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double norm(const Vec3& v);
Vec3 normalized(const Vec3& v);
bool is_finite(const Vec3& v);
std::ostream& operator<<(std::ostream& os, const Vec3& v);

/// Orientation in SO(3) stored as a unit quaternion (w, x, y, z), scalar first.
///
/// The quaternion is renormalized on construction and its sign is
/// canonicalized (w >= 0, ties broken on the first nonzero vector
/// component), so q and -q produce the same stored value.
class Rotation {
 public:
  Rotation() = default;
  Rotation(double w, double x, double y, double z);

  static Rotation identity() { return {}; }
  /// Right-handed rotation by `angle` radians about `axis` (need not be unit).
  static Rotation from_axis_angle(const Vec3& axis, double angle);
  /// Exponential map: axis = v/|v|, angle = |v|.
  static Rotation from_rotation_vector(const Vec3& v);

  /// Logarithm map, angle in [0, pi].
  Vec3 rotation_vector() const;
  double angle() const;
  Rotation inverse() const { return {w_, -x_, -y_, -z_}; }
  /// 3x3 matrix, row-major.
  std::array<double, 9> matrix() const;

  const std::array<double, 4> quaternion() const { return {w_, x_, y_, z_}; }
  double w() const { return w_; }
  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }

  /// Composition: (a * b) applies b first, then a.
  friend Rotation operator*(const Rotation& a, const Rotation& b);
  friend bool operator==(const Rotation&, const Rotation&) = default;

 private:
  double w_ = 1.0;
  double x_ = 0.0;
  double y_ = 0.0;
  double z_ = 0.0;
};

Vec3 rotate(const Rotation& r, const Vec3& p);

/// Geodesic distance on SO(3) between two orientations, in [0, pi].
double angle_between(const Rotation& a, const Rotation& b);

/// Haar-uniform rotation from four standard normals; same seed, same result.
Rotation random_rotation(std::uint64_t seed);

/// Two-stream variant used for multi-start sampling.
Rotation random_rotation(std::uint64_t seed, std::uint64_t stream);

enum class Kind { charge, mass };
std::string to_string(Kind k);

struct Element {
  Vec3 position;   // m
  double weight;   // C or kg
};

struct Sphere {
  Vec3 center;     // m
  double radius;   // m
  double mass;     // kg
};

/// Point charges or point masses rigidly attached to a frame whose origin is
/// the rotation centre. Spheres are carried for overlap checks only; their
/// mass already appears as an element at the sphere centre.
struct RigidBody {
  Kind kind = Kind::charge;
  std::vector<Element> elements;
  std::vector<Sphere> spheres;

  double total_weight() const;
};

RigidBody rotated(const RigidBody& body, const Rotation& r);
RigidBody translated(const RigidBody& body, const Vec3& offset);

/// True when any sphere of `a` intersects any sphere of `b`.
bool spheres_overlap(const RigidBody& a, const RigidBody& b);

struct TDesign;

/// Elements at radius * P_i with weight unit_weight each.
RigidBody build_body(std::span<const Vec3> unit_points, double radius, double unit_weight,
                     Kind kind);
RigidBody build_body(const TDesign& design, double radius, double unit_weight, Kind kind);

struct Material {
  double density = 0.0;  // kg/m^3
};
inline constexpr Material diamond{constants::diamond_density};

struct CentralSphere {
  double radius = 0.0;  // m
  double mass = 0.0;    // kg
};

/// Replaces every point element of a mass body by a uniform sphere of mass
/// `peripheral_mass_each` on the same direction, tangent to a central sphere
/// at the origin. The radius of each peripheral sphere follows from the
/// material density. When `mass_budget` is given, the total mass must not
/// exceed it (relative slack 1e-12).
RigidBody attach_spheres(const RigidBody& body, const CentralSphere& central,
                         double peripheral_mass_each, const Material& material,
                         std::optional<double> mass_budget = std::nullopt);

double sphere_volume(double radius);
double sphere_radius_for_mass(double mass, double density);

/// Parameters of a central sphere plus peripheral spheres with a fixed total mass.
struct CompositeParams {
  double central_radius = 1e-5;    // m
  double total_mass = 1.83e-11;    // kg
  Material material = diamond;
};

/// Sphere-composite mass body on `unit_points`; equal peripheral masses share
/// whatever the central sphere leaves of the total. An empty point set gives
/// the central sphere alone.
RigidBody sphere_composite(std::span<const Vec3> unit_points, const CompositeParams& params);

/// Maximum element distance from the origin.
double body_radius(const RigidBody& body);

}  // namespace tdesign
