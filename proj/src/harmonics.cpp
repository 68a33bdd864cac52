#include "tdesign/harmonics.hpp"

#include <array>
#include <cmath>

#include "tdesign/constants.hpp"
#include "tdesign/error.hpp"

namespace tdesign::harmonics {

namespace {

constexpr int kMax = constants::max_degree;

// Recursion coefficients for the z-polynomial part of Pbar_lm.
struct Coefficients {
  std::array<double, kMax + 1> diag{};                  // Pbar_mm / sin^m
  std::array<std::array<double, kMax + 1>, kMax + 1> a{};
  std::array<std::array<double, kMax + 1>, kMax + 1> b{};

  Coefficients() {
    diag[0] = std::sqrt(1.0 / (4.0 * constants::pi));
    for (int m = 1; m <= kMax; ++m) {
      diag[m] = diag[m - 1] * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
    }
    for (int m = 0; m <= kMax; ++m) {
      for (int l = m + 2; l <= kMax; ++l) {
        const double l2 = static_cast<double>(l) * l;
        const double m2 = static_cast<double>(m) * m;
        const double lm1 = static_cast<double>(l - 1);
        a[l][m] = std::sqrt((4.0 * l2 - 1.0) / (l2 - m2));
        b[l][m] = std::sqrt((lm1 * lm1 - m2) / (4.0 * lm1 * lm1 - 1.0));
      }
    }
  }
};

const Coefficients& coefficients() {
  static const Coefficients c;
  return c;
}

}  // namespace

void solid(const Vec3& x, int lmax, std::span<double> out) {
  if (lmax < 0 || lmax > kMax) throw InvalidArgument("harmonic degree out of range [0, 32]");
  if (out.size() < count(lmax)) throw InvalidArgument("output span too small");
  const auto& c = coefficients();
  const double r2 = dot(x, x);
  const double sqrt2 = std::sqrt(2.0);

  // cm + i sm = (x + i y)^m
  double cm = 1.0;
  double sm = 0.0;
  for (int m = 0; m <= lmax; ++m) {
    if (m > 0) {
      const double cn = cm * x.x - sm * x.y;
      sm = cm * x.y + sm * x.x;
      cm = cn;
    }
    const double fc = m == 0 ? 1.0 : sqrt2 * cm;
    const double fs = sqrt2 * sm;

    double q_prev = 0.0;
    double q = c.diag[m];
    for (int l = m; l <= lmax; ++l) {
      if (l == m + 1) {
        q_prev = q;
        q = std::sqrt(2.0 * m + 3.0) * x.z * q_prev;
      } else if (l > m + 1) {
        const double next = c.a[l][m] * (x.z * q - c.b[l][m] * r2 * q_prev);
        q_prev = q;
        q = next;
      }
      out[index(l, m)] = q * fc;
      if (m > 0) out[index(l, -m)] = q * fs;
    }
  }
}

std::vector<double> solid(const Vec3& x, int lmax) {
  std::vector<double> out(count(lmax));
  solid(x, lmax, out);
  return out;
}

void legendre(double x, int lmax, std::span<double> p, std::span<double> dp) {
  if (lmax < 0) throw InvalidArgument("negative Legendre degree");
  if (p.size() < static_cast<std::size_t>(lmax + 1) || dp.size() < static_cast<std::size_t>(lmax + 1)) {
    throw InvalidArgument("output span too small");
  }
  p[0] = 1.0;
  dp[0] = 0.0;
  if (lmax == 0) return;
  p[1] = x;
  dp[1] = 1.0;
  for (int l = 2; l <= lmax; ++l) {
    p[l] = ((2.0 * l - 1.0) * x * p[l - 1] - (l - 1.0) * p[l - 2]) / l;
    dp[l] = dp[l - 2] + (2.0 * l - 1.0) * p[l - 1];
  }
}

}  // namespace tdesign::harmonics
