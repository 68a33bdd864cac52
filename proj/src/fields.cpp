#include "tdesign/fields.hpp"

#include <cmath>
#include <limits>

#include "tdesign/constants.hpp"
#include "tdesign/detail/wide.hpp"
#include "tdesign/error.hpp"
#include "tdesign/harmonics.hpp"

namespace tdesign {

using detail::wide;
using detail::WideRotation;
using detail::WideVec;

double SourceModel::min_distance() const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& s : sources) d = std::min(d, norm(s.position));
  return d;
}

SourceModel rotated(const SourceModel& src, const Rotation& r) {
  SourceModel out = src;
  for (auto& s : out.sources) s.position = rotate(r, s.position);
  return out;
}

SourceModel scaled(const SourceModel& src, double factor) {
  SourceModel out = src;
  for (auto& s : out.sources) s.strength *= factor;
  return out;
}

double coupling(Kind kind) {
  return kind == Kind::charge ? constants::coulomb_k : -constants::gravitational_G;
}

double MultipoleExpansion::coefficient(int l, int m) const {
  if (l < 0 || l > order || m < -l || m > l) throw InvalidArgument("coefficient index out of range");
  return coefficients[harmonics::index(l, m)];
}

double exact_potential(const SourceModel& src, const Vec3& x) {
  double phi = 0.0;
  for (const auto& s : src.sources) {
    const double r = norm(x - s.position);
    if (!(r > 0.0)) throw InvalidArgument("potential evaluated at a source position");
    phi += s.strength / r;
  }
  return coupling(src.kind) * phi;
}

MultipoleExpansion expand(const SourceModel& src, int order) {
  if (order < 0 || order > constants::max_degree) {
    throw InvalidArgument("expansion order must lie in [0, 32]");
  }
  MultipoleExpansion exp;
  exp.kind = src.kind;
  exp.order = order;
  exp.coefficients.assign(harmonics::count(order), 0.0);
  exp.convergence_radius = src.min_distance();

  std::vector<double> y(harmonics::count(order));
  const double k = coupling(src.kind);
  for (const auto& s : src.sources) {
    const double d = norm(s.position);
    if (!(d > 0.0)) throw InvalidArgument("source at the expansion origin");
    harmonics::solid(s.position * (1.0 / d), order, y);
    double inv_pow = 1.0 / d;  // 1/d^{l+1}
    for (int l = 0; l <= order; ++l) {
      const double f = k * s.strength * 4.0 * constants::pi / (2.0 * l + 1.0) * inv_pow;
      for (int m = -l; m <= l; ++m) exp.coefficients[harmonics::index(l, m)] += f * y[harmonics::index(l, m)];
      inv_pow /= d;
    }
  }
  return exp;
}

namespace {

void check_inside(const MultipoleExpansion& exp, const Vec3& x) {
  if (!(norm(x) < exp.convergence_radius)) {
    throw InvalidArgument("point outside the expansion's convergence region");
  }
}

}  // namespace

double eval_truncated(const MultipoleExpansion& exp, const Vec3& x, int order) {
  if (order < 0 || order > exp.order) throw InvalidArgument("truncation order exceeds stored order");
  check_inside(exp, x);
  const auto r = harmonics::solid(x, order);
  double phi = 0.0;
  for (std::size_t k = 0; k < r.size(); ++k) phi += exp.coefficients[k] * r[k];
  return phi;
}

double eval_degree(const MultipoleExpansion& exp, const Vec3& x, int l) {
  if (l < 0 || l > exp.order) throw InvalidArgument("degree exceeds stored order");
  check_inside(exp, x);
  const auto r = harmonics::solid(x, l);
  double phi = 0.0;
  for (int m = -l; m <= l; ++m) phi += exp.coefficients[harmonics::index(l, m)] * r[harmonics::index(l, m)];
  return phi;
}

namespace {

void check_kinds(Kind body, Kind src) {
  if (body != src) {
    throw InvalidArgument("kind mismatch: " + to_string(body) + " body in a " + to_string(src) +
                          " field");
  }
}

wide exact_energy_wide(const RigidBody& body, const WideRotation* rot, const SourceModel& src) {
  wide total = 0;
  for (const auto& e : body.elements) {
    WideVec p = detail::widen(e.position);
    if (rot) p = rot->apply(p);
    wide phi = 0;
    for (const auto& s : src.sources) {
      const WideVec d = p - detail::widen(s.position);
      const wide r = detail::sqrt(dot(d, d));
      if (!(r > 0)) throw InvalidArgument("body element coincides with a source");
      phi += static_cast<wide>(s.strength) / r;
    }
    total += static_cast<wide>(e.weight) * phi;
  }
  return static_cast<wide>(coupling(src.kind)) * total;
}

}  // namespace

double potential_energy(const RigidBody& body, const SourceModel& src, EnergyMode mode) {
  check_kinds(body.kind, src.kind);
  if (mode.exact) return static_cast<double>(exact_energy_wide(body, nullptr, src));

  const auto exp = expand(src, mode.order);
  double v = 0.0;
  for (const auto& e : body.elements) v += e.weight * eval_truncated(exp, e.position, mode.order);
  return v;
}

double potential_energy_difference(const RigidBody& body, const Rotation& r1, const Rotation& r2,
                                   const SourceModel& src) {
  check_kinds(body.kind, src.kind);
  const WideRotation w1(r1);
  const WideRotation w2(r2);
  return static_cast<double>(exact_energy_wide(body, &w1, src) - exact_energy_wide(body, &w2, src));
}

namespace {

wide pair_sum_wide(const RigidBody& a, const WideRotation& ra, const RigidBody& b,
                   const WideRotation& rb, const WideVec& offset) {
  std::vector<WideVec> pb;
  pb.reserve(b.elements.size());
  for (const auto& e : b.elements) pb.push_back(rb.apply(detail::widen(e.position)) + offset);

  wide total = 0;
  for (const auto& ea : a.elements) {
    const WideVec pa = ra.apply(detail::widen(ea.position));
    wide inner = 0;
    for (std::size_t j = 0; j < pb.size(); ++j) {
      const WideVec d = pa - pb[j];
      const wide r = detail::sqrt(dot(d, d));
      if (!(r > 0)) throw InvalidArgument("coincident elements in interacting bodies");
      inner += static_cast<wide>(b.elements[j].weight) / r;
    }
    total += static_cast<wide>(ea.weight) * inner;
  }
  return static_cast<wide>(coupling(a.kind)) * total;
}

}  // namespace

double interaction_energy(const RigidBody& a, const RigidBody& b) {
  if (a.kind != b.kind) throw InvalidArgument("interacting bodies must share a kind");
  if (spheres_overlap(a, b)) throw InvalidArgument("bodies overlap");
  const WideRotation id(Rotation::identity());
  return static_cast<double>(pair_sum_wide(a, id, b, id, WideVec{}));
}

double placed_interaction_energy(const RigidBody& a, const Rotation& ra, const RigidBody& b,
                                 const Rotation& rb, const Vec3& offset) {
  if (a.kind != b.kind) throw InvalidArgument("interacting bodies must share a kind");
  if (spheres_overlap(rotated(a, ra), translated(rotated(b, rb), offset))) {
    throw InvalidArgument("bodies overlap");
  }
  return static_cast<double>(
      pair_sum_wide(a, WideRotation(ra), b, WideRotation(rb), detail::widen(offset)));
}

}  // namespace tdesign
