#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tdesign/geometry.hpp"

// Real orthonormal spherical harmonics without the Condon-Shortley phase:
//   Y_l0 = Pbar_l0(cos theta)
//   Y_lm = sqrt(2) Pbar_lm(cos theta) cos(m phi),   m > 0
//   Y_l-m = sqrt(2) Pbar_lm(cos theta) sin(m phi),  m > 0
// with Pbar normalized so that each Y_lm has unit L2 norm on S^2.
namespace tdesign::harmonics {

constexpr std::size_t index(int l, int m) { return static_cast<std::size_t>(l * l + l + m); }
constexpr std::size_t count(int lmax) { return static_cast<std::size_t>((lmax + 1) * (lmax + 1)); }

/// Regular solid harmonics R_lm(x) = |x|^l Y_lm(x/|x|) for 0 <= l <= lmax,
/// written to out[index(l, m)]. Polynomial in x, so x = 0 is allowed.
/// `out` must hold count(lmax) values.
void solid(const Vec3& x, int lmax, std::span<double> out);
std::vector<double> solid(const Vec3& x, int lmax);

/// Y_lm at a unit vector; same layout as solid().
inline std::vector<double> spherical(const Vec3& unit, int lmax) { return solid(unit, lmax); }

/// Legendre polynomials P_l(x) and derivatives P_l'(x) for l = 0..lmax.
void legendre(double x, int lmax, std::span<double> p, std::span<double> dp);

}  // namespace tdesign::harmonics
