#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tdesign/geometry.hpp"

namespace tdesign {

enum class Provenance { catalog, solved, file };
std::string to_string(Provenance p);

/// Points on S^2 whose average of every polynomial of degree <= t equals the
/// sphere average. `residual` is the largest normalized harmonic sum over
/// 1 <= l <= t.
struct TDesign {
  std::vector<Vec3> points;
  int t = 0;
  Provenance provenance = Provenance::file;
  double residual = 0.0;

  std::size_t size() const { return points.size(); }
};

inline constexpr double default_verify_tolerance = 1e-10;
inline constexpr double unit_sphere_tolerance = 1e-9;

struct VerificationReport {
  /// residuals[l - 1] = max_m |sum_i Y_lm(P_i)| / N for l = 1..t_max.
  std::vector<double> residuals;
  int certified_t = 0;
  double tolerance = default_verify_tolerance;

  int t_max() const { return static_cast<int>(residuals.size()); }
  double residual(int l) const { return residuals.at(static_cast<std::size_t>(l - 1)); }
  /// Largest residual over 1..t (0 when t = 0).
  double max_residual(int t) const;
};

/// Harmonic-sum test of the design property. Throws InvalidArgument for
/// off-sphere points (beyond unit_sphere_tolerance), empty input, or
/// t_max outside [1, 32].
VerificationReport verify_design(std::span<const Vec3> points, int t_max,
                                 double tol = default_verify_tolerance);

/// Frame potential of degree t: sum over 1 <= l <= t of sum_m |sum_i Y_lm(P_i)|^2 / N^2.
/// Non-negative, zero exactly on t-designs.
double frame_potential(std::span<const Vec3> points, int t);

/// Closed-form designs exist here for t in {1, 2, 3, 5}.
bool in_catalog(int t);

/// Antipodal pair (t=1), regular tetrahedron (t=2), octahedron (t=3),
/// icosahedron (t=5). Other t throw InvalidArgument pointing at the solver.
TDesign catalog_design(int t);

/// Wraps externally supplied points, checking that they certify order t.
TDesign make_design(std::vector<Vec3> points, int t, Provenance provenance,
                    double tol = default_verify_tolerance);

struct SolverOptions {
  int restarts = 32;
  int max_iterations = 100000;
  double gradient_tolerance = 1e-12;
  double verify_tolerance = 1e-9;
  int memory = 20;
};

/// Point count used when the caller gives none: the smallest even integer
/// >= (t+1)^2 / 2, plus 2.
int default_point_count(int t);

/// Multi-start minimization of the frame potential over N points in
/// spherical angles. The lowest-residual restart wins (lowest index on ties).
/// Throws NonConvergence carrying the best residual when no restart verifies
/// at options.verify_tolerance.
TDesign solve_design(int t, int n, std::uint64_t seed, const SolverOptions& options = {});

/// Point-set text format: one point per line as three whitespace-separated
/// decimals; lines whose first non-blank character is '#' are comments.
/// Throws ParseError naming the offending line.
std::vector<Vec3> read_points(std::istream& in);
std::vector<Vec3> read_points_file(const std::filesystem::path& path);
void write_points(std::ostream& out, std::span<const Vec3> points);

/// CSV with header `l,residual`.
void write_report_csv(std::ostream& out, const VerificationReport& report);

}  // namespace tdesign
