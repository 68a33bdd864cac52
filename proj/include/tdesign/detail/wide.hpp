#pragma once

// binary128 helpers for sums whose result cancels far below double precision.

#include "tdesign/geometry.hpp"

namespace tdesign::detail {

using wide = __float128;

struct WideVec {
  wide x = 0;
  wide y = 0;
  wide z = 0;
};

inline WideVec widen(const Vec3& v) { return {v.x, v.y, v.z}; }
inline WideVec operator-(const WideVec& a, const WideVec& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline WideVec operator+(const WideVec& a, const WideVec& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline wide dot(const WideVec& a, const WideVec& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

wide sqrt(wide v);

/// Rotation applied with the quaternion renormalized in binary128.
class WideRotation {
 public:
  explicit WideRotation(const Rotation& r);
  WideVec apply(const WideVec& p) const;

 private:
  wide m_[9];
};

}  // namespace tdesign::detail
