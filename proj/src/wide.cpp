#include "tdesign/detail/wide.hpp"

#include <quadmath.h>

namespace tdesign::detail {

wide sqrt(wide v) { return sqrtq(v); }

WideRotation::WideRotation(const Rotation& r) {
  wide w = r.w(), x = r.x(), y = r.y(), z = r.z();
  const wide n = sqrtq(w * w + x * x + y * y + z * z);
  w /= n; x /= n; y /= n; z /= n;
  m_[0] = 1 - 2 * (y * y + z * z);
  m_[1] = 2 * (x * y - w * z);
  m_[2] = 2 * (x * z + w * y);
  m_[3] = 2 * (x * y + w * z);
  m_[4] = 1 - 2 * (x * x + z * z);
  m_[5] = 2 * (y * z - w * x);
  m_[6] = 2 * (x * z - w * y);
  m_[7] = 2 * (y * z + w * x);
  m_[8] = 1 - 2 * (x * x + y * y);
}

WideVec WideRotation::apply(const WideVec& p) const {
  return {m_[0] * p.x + m_[1] * p.y + m_[2] * p.z,
          m_[3] * p.x + m_[4] * p.y + m_[5] * p.z,
          m_[6] * p.x + m_[7] * p.y + m_[8] * p.z};
}

}  // namespace tdesign::detail
