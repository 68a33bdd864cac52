#include "tdesign/designs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "tdesign/error.hpp"
#include "tdesign/harmonics.hpp"
#include "tdesign/io.hpp"

namespace tdesign {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::catalog: return "catalog";
    case Provenance::solved: return "solved";
    case Provenance::file: return "file";
  }
  return "unknown";
}

namespace {

void check_points(std::span<const Vec3> points) {
  if (points.empty()) throw InvalidArgument("empty point set");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double r = norm(points[i]);
    if (!std::isfinite(r) || std::abs(r - 1.0) > unit_sphere_tolerance) {
      throw InvalidArgument("point " + std::to_string(i) + " is not on the unit sphere");
    }
  }
}

// S_lm = sum_i Y_lm(P_i) for 0 <= l <= lmax.
std::vector<double> harmonic_sums(std::span<const Vec3> points, int lmax) {
  std::vector<double> sums(harmonics::count(lmax), 0.0);
  std::vector<double> y(harmonics::count(lmax));
  for (const auto& p : points) {
    harmonics::solid(p, lmax, y);
    for (std::size_t k = 0; k < sums.size(); ++k) sums[k] += y[k];
  }
  return sums;
}

double frame_potential_unchecked(std::span<const Vec3> points, int t) {
  const auto sums = harmonic_sums(points, t);
  double acc = 0.0;
  for (std::size_t k = 1; k < sums.size(); ++k) acc += sums[k] * sums[k];
  const double n = static_cast<double>(points.size());
  return acc / (n * n);
}

}  // namespace

double VerificationReport::max_residual(int t) const {
  double r = 0.0;
  for (int l = 1; l <= std::min(t, t_max()); ++l) r = std::max(r, residual(l));
  return r;
}

VerificationReport verify_design(std::span<const Vec3> points, int t_max, double tol) {
  if (t_max < 1 || t_max > constants::max_degree) {
    throw InvalidArgument("t_max must lie in [1, 32]");
  }
  check_points(points);
  const auto sums = harmonic_sums(points, t_max);
  const double n = static_cast<double>(points.size());

  VerificationReport report;
  report.tolerance = tol;
  report.residuals.resize(static_cast<std::size_t>(t_max));
  for (int l = 1; l <= t_max; ++l) {
    double r = 0.0;
    for (int m = -l; m <= l; ++m) r = std::max(r, std::abs(sums[harmonics::index(l, m)]));
    report.residuals[static_cast<std::size_t>(l - 1)] = r / n;
  }
  int certified = 0;
  while (certified < t_max && report.residuals[static_cast<std::size_t>(certified)] <= tol) {
    ++certified;
  }
  report.certified_t = certified;
  return report;
}

double frame_potential(std::span<const Vec3> points, int t) {
  if (t < 1 || t > constants::max_degree) throw InvalidArgument("t must lie in [1, 32]");
  check_points(points);
  return frame_potential_unchecked(points, t);
}

bool in_catalog(int t) { return t == 1 || t == 2 || t == 3 || t == 5; }

TDesign catalog_design(int t) {
  std::vector<Vec3> pts;
  switch (t) {
    case 1:
      pts = {{0, 0, 1}, {0, 0, -1}};
      break;
    case 2: {
      const double c = 1.0 / std::sqrt(3.0);
      pts = {{c, c, c}, {c, -c, -c}, {-c, c, -c}, {-c, -c, c}};
      break;
    }
    case 3:
      pts = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
      break;
    case 5: {
      // cyclic permutations of (0, +-1, +-phi), normalized
      const double phi = 0.5 * (1.0 + std::sqrt(5.0));
      const double s = 1.0 / std::sqrt(1.0 + phi * phi);
      const double a = s;
      const double b = phi * s;
      for (double sa : {1.0, -1.0}) {
        for (double sb : {1.0, -1.0}) {
          pts.push_back({0.0, sa * a, sb * b});
          pts.push_back({sa * a, sb * b, 0.0});
          pts.push_back({sb * b, 0.0, sa * a});
        }
      }
      break;
    }
    default:
      throw InvalidArgument("no closed-form design for t = " + std::to_string(t) +
                            " (catalog has t = 1, 2, 3, 5); use the solver or a point file");
  }
  return make_design(std::move(pts), t, Provenance::catalog);
}

TDesign make_design(std::vector<Vec3> points, int t, Provenance provenance, double tol) {
  if (t < 1) throw InvalidArgument("design order must be >= 1");
  const auto report = verify_design(points, t, tol);
  if (report.certified_t < t) {
    throw InvalidArgument("points certify only t = " + std::to_string(report.certified_t) +
                          " < " + std::to_string(t));
  }
  TDesign d;
  d.points = std::move(points);
  d.t = t;
  d.provenance = provenance;
  d.residual = report.max_residual(t);
  return d;
}

int default_point_count(int t) {
  if (t < 1) throw InvalidArgument("t must be >= 1");
  const int half = ((t + 1) * (t + 1) + 1) / 2;  // ceil((t+1)^2 / 2)
  return half + (half % 2) + 2;
}

namespace {

std::vector<Vec3> points_from_angles(std::span<const double> angles) {
  const std::size_t n = angles.size() / 2;
  std::vector<Vec3> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double th = angles[i];
    const double ph = angles[n + i];
    pts[i] = {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
  }
  return pts;
}

// Frame potential (harmonic-sum form) and its gradient in spherical angles.
// The gradient uses the pairwise identity
//   sum_m S_lm^2 = (2l+1)/(4 pi) sum_ij P_l(P_i . P_j).
class FrameObjective {
 public:
  FrameObjective(int t, std::size_t n) : t_(t), n_(n), p_(t + 1), dp_(t + 1) {}

  double value(std::span<const double> angles) const {
    return frame_potential_unchecked(points_from_angles(angles), t_);
  }

  double value_and_gradient(std::span<const double> angles, std::span<double> grad) {
    const auto pts = points_from_angles(angles);
    const double nn = static_cast<double>(n_) * static_cast<double>(n_);
    const double scale = 2.0 / (4.0 * constants::pi * nn);
    for (std::size_t i = 0; i < n_; ++i) {
      Vec3 g{};
      for (std::size_t j = 0; j < n_; ++j) {
        if (j == i) continue;
        const double c = std::clamp(dot(pts[i], pts[j]), -1.0, 1.0);
        harmonics::legendre(c, t_, p_, dp_);
        double w = 0.0;
        for (int l = 1; l <= t_; ++l) w += (2.0 * l + 1.0) * dp_[static_cast<std::size_t>(l)];
        g += pts[j] * w;
      }
      g *= scale;
      const double th = angles[i];
      const double ph = angles[n_ + i];
      const Vec3 e_th{std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), -std::sin(th)};
      const Vec3 e_ph{-std::sin(th) * std::sin(ph), std::sin(th) * std::cos(ph), 0.0};
      grad[i] = dot(g, e_th);
      grad[n_ + i] = dot(g, e_ph);
    }
    return frame_potential_unchecked(pts, t_);
  }

 private:
  int t_;
  std::size_t n_;
  std::vector<double> p_;
  std::vector<double> dp_;
};

double inner(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct DescentResult {
  std::vector<double> angles;
  double value = 0.0;
};

// L-BFGS directions with Armijo backtracking.
DescentResult descend(FrameObjective& obj, std::vector<double> x, const SolverOptions& opt) {
  const std::size_t dim = x.size();
  std::vector<double> g(dim), g_new(dim), d(dim), x_new(dim);
  double f = obj.value_and_gradient(x, g);

  struct Pair {
    std::vector<double> s, y;
    double rho;
  };
  std::deque<Pair> memory;
  std::vector<double> alpha(static_cast<std::size_t>(opt.memory));

  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    const double gnorm = std::sqrt(inner(g, g));
    if (gnorm <= opt.gradient_tolerance || f == 0.0) break;

    // two-loop recursion
    d = g;
    for (std::size_t k = memory.size(); k-- > 0;) {
      alpha[k] = memory[k].rho * inner(memory[k].s, d);
      for (std::size_t i = 0; i < dim; ++i) d[i] -= alpha[k] * memory[k].y[i];
    }
    if (!memory.empty()) {
      const auto& last = memory.back();
      const double gamma = inner(last.s, last.y) / inner(last.y, last.y);
      for (auto& v : d) v *= gamma;
    } else {
      const double s0 = std::min(1.0, 0.1 / gnorm);
      for (auto& v : d) v *= s0;
    }
    for (std::size_t k = 0; k < memory.size(); ++k) {
      const double beta = memory[k].rho * inner(memory[k].y, d);
      for (std::size_t i = 0; i < dim; ++i) d[i] += (alpha[k] - beta) * memory[k].s[i];
    }
    for (auto& v : d) v = -v;

    double slope = inner(g, d);
    if (!(slope < 0.0)) {
      memory.clear();
      for (std::size_t i = 0; i < dim; ++i) d[i] = -g[i] * std::min(1.0, 0.1 / gnorm);
      slope = inner(g, d);
    }

    double step = 1.0;
    double f_new = f;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t i = 0; i < dim; ++i) x_new[i] = x[i] + step * d[i];
      f_new = obj.value_and_gradient(x_new, g_new);
      // strict decrease: near the rounding floor the Armijo bound equals f
      if (f_new < f && f_new <= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (memory.empty()) break;  // steepest descent cannot improve: precision floor
      memory.clear();
      continue;
    }

    Pair pr{std::vector<double>(dim), std::vector<double>(dim), 0.0};
    for (std::size_t i = 0; i < dim; ++i) {
      pr.s[i] = x_new[i] - x[i];
      pr.y[i] = g_new[i] - g[i];
    }
    const double sy = inner(pr.s, pr.y);
    if (sy > 1e-300) {
      pr.rho = 1.0 / sy;
      memory.push_back(std::move(pr));
      if (memory.size() > static_cast<std::size_t>(opt.memory)) memory.pop_front();
    }
    x.swap(x_new);
    g.swap(g_new);
    f = f_new;
  }
  return {std::move(x), f};
}

}  // namespace

TDesign solve_design(int t, int n, std::uint64_t seed, const SolverOptions& options) {
  if (t < 1 || t > constants::max_degree) throw InvalidArgument("t must lie in [1, 32]");
  if (n < 2) throw InvalidArgument("a design needs at least 2 points");
  if (options.restarts < 1) throw InvalidArgument("restarts must be >= 1");

  const auto nn = static_cast<std::size_t>(n);
  FrameObjective objective(t, nn);

  double best_residual = std::numeric_limits<double>::infinity();
  std::vector<Vec3> best_points;
  for (int restart = 0; restart < options.restarts; ++restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(restart), 0x7e5u};
    std::mt19937_64 gen(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> angles(2 * nn);
    for (std::size_t i = 0; i < nn; ++i) {
      Vec3 v;
      do {
        v = {normal(gen), normal(gen), normal(gen)};
      } while (norm(v) < 1e-12);
      v = normalized(v);
      angles[i] = std::acos(std::clamp(v.z, -1.0, 1.0));
      angles[nn + i] = std::atan2(v.y, v.x);
    }
    const auto result = descend(objective, std::move(angles), options);
    auto pts = points_from_angles(result.angles);
    for (auto& p : pts) p = normalized(p);
    const double residual = verify_design(pts, t, options.verify_tolerance).max_residual(t);
    if (residual < best_residual) {
      best_residual = residual;
      best_points = std::move(pts);
    }
  }

  if (!(best_residual <= options.verify_tolerance)) {
    std::ostringstream msg;
    msg << "no restart converged to a " << t << "-design with " << n
        << " points (best residual " << best_residual << ")";
    throw NonConvergence(msg.str(), best_residual);
  }
  TDesign d;
  d.points = std::move(best_points);
  d.t = t;
  d.provenance = Provenance::solved;
  d.residual = best_residual;
  return d;
}

std::vector<Vec3> read_points(std::istream& in) {
  std::vector<Vec3> pts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::vector<double> vals;
    std::size_t pos = first;
    while (pos < line.size()) {
      const auto end = line.find_first_of(" \t\r", pos);
      const std::string_view tok(line.data() + pos, (end == std::string::npos ? line.size() : end) - pos);
      const auto v = io::parse_double(tok);
      if (!v || !std::isfinite(*v)) {
        throw ParseError(lineno, "not a finite number: '" + std::string(tok) + "'");
      }
      vals.push_back(*v);
      if (end == std::string::npos) break;
      pos = line.find_first_not_of(" \t\r", end);
      if (pos == std::string::npos) break;
    }
    if (vals.size() != 3) {
      throw ParseError(lineno, "expected 3 coordinates, found " + std::to_string(vals.size()));
    }
    const Vec3 p{vals[0], vals[1], vals[2]};
    if (std::abs(norm(p) - 1.0) > unit_sphere_tolerance) {
      throw ParseError(lineno, "point is not on the unit sphere (|p| = " +
                                   io::format_double(norm(p)) + ")");
    }
    pts.push_back(p);
  }
  if (pts.empty()) throw ParseError(0, "point file contains no points");
  return pts;
}

std::vector<Vec3> read_points_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open point file " + path.string());
  return read_points(in);
}

void write_points(std::ostream& out, std::span<const Vec3> points) {
  for (const auto& p : points) {
    out << io::format_double(p.x) << ' ' << io::format_double(p.y) << ' '
        << io::format_double(p.z) << '\n';
  }
}

void write_report_csv(std::ostream& out, const VerificationReport& report) {
  out << "l,residual\n";
  for (int l = 1; l <= report.t_max(); ++l) {
    out << l << ',' << io::format_double(report.residual(l)) << '\n';
  }
}

}  // namespace tdesign
