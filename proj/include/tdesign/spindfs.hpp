#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "tdesign/designs.hpp"

namespace tdesign {

struct SpinSite {
  Vec3 position;
  int sign = 1;  // +1 for |1>, -1 for |0>
};

struct SpinConfiguration {
  std::vector<SpinSite> sites;
  double moment = 1.0;  // J/T
};

/// Up spins on the design points (times radius), down spins on the same
/// points rotated by r.
SpinConfiguration dfs_configuration(const TDesign& design, const Rotation& r, double radius = 1.0,
                                    double moment = 1.0);

/// Scalar field polynomial B(x, y, z) = sum c_abc x^a y^b z^c, a+b+c <= degree, in tesla.
class FieldPolynomial {
 public:
  struct Term {
    int a, b, c;
    double coefficient;
  };

  FieldPolynomial() = default;
  FieldPolynomial(int degree, std::vector<Term> terms);

  /// i.i.d. uniform coefficients in [-1, 1] on every monomial of degree <= `degree`.
  static FieldPolynomial random(int degree, std::mt19937_64& gen);
  static FieldPolynomial constant(double value) { return {0, {{0, 0, 0, value}}}; }

  int degree() const { return degree_; }
  const std::vector<Term>& terms() const { return terms_; }
  double operator()(const Vec3& p) const;

 private:
  int degree_ = 0;
  std::vector<Term> terms_;
};

/// moment * (sum over up sites B - sum over down sites B).
double spin_energy(const SpinConfiguration& cfg, const FieldPolynomial& field);

/// Relative phase rate between |1..10..0> and |0..01..1>: 2 E / hbar (rad/s).
double basis_phase_rate(const SpinConfiguration& cfg, const FieldPolynomial& field);

struct DfsDegreeRow {
  int degree = 0;
  double max_phase_rate = 0.0;  // rad/s
  double max_relative = 0.0;    // |E| / (moment * sum_up |B|)
};

struct DfsReport {
  int design_t = 0;
  std::vector<DfsDegreeRow> rows;  // degrees 1..field_degree

  /// Every degree <= design_t has max_relative <= tol.
  bool protected_through_t(double tol = 1e-10) const;
};

DfsReport dfs_check(const TDesign& design, const Rotation& r, int field_degree, int trials,
                    std::uint64_t seed, double moment = 1.0);

/// CSV with header `degree,max_phase_rate`.
void write_dfs_csv(std::ostream& out, const DfsReport& report);

}  // namespace tdesign
