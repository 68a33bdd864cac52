#include "tdesign/spindfs.hpp"

#include <cmath>
#include <ostream>

#include "tdesign/constants.hpp"
#include "tdesign/error.hpp"
#include "tdesign/io.hpp"

namespace tdesign {

SpinConfiguration dfs_configuration(const TDesign& design, const Rotation& r, double radius,
                                    double moment) {
  SpinConfiguration cfg;
  cfg.moment = moment;
  cfg.sites.reserve(2 * design.size());
  for (const auto& p : design.points) cfg.sites.push_back({p * radius, +1});
  for (const auto& p : design.points) cfg.sites.push_back({rotate(r, p) * radius, -1});
  return cfg;
}

FieldPolynomial::FieldPolynomial(int degree, std::vector<Term> terms)
    : degree_(degree), terms_(std::move(terms)) {
  if (degree < 0 || degree > constants::max_degree) {
    throw InvalidArgument("field polynomial degree must lie in [0, 32]");
  }
  for (const auto& t : terms_) {
    if (t.a < 0 || t.b < 0 || t.c < 0 || t.a + t.b + t.c > degree) {
      throw InvalidArgument("monomial exceeds the polynomial degree");
    }
  }
}

FieldPolynomial FieldPolynomial::random(int degree, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<Term> terms;
  for (int total = 0; total <= degree; ++total) {
    for (int a = total; a >= 0; --a) {
      for (int b = total - a; b >= 0; --b) terms.push_back({a, b, total - a - b, coef(gen)});
    }
  }
  return {degree, std::move(terms)};
}

double FieldPolynomial::operator()(const Vec3& p) const {
  double v = 0.0;
  for (const auto& t : terms_) {
    v += t.coefficient * std::pow(p.x, t.a) * std::pow(p.y, t.b) * std::pow(p.z, t.c);
  }
  return v;
}

double spin_energy(const SpinConfiguration& cfg, const FieldPolynomial& field) {
  double up = 0.0;
  double down = 0.0;
  for (const auto& s : cfg.sites) {
    if (s.sign > 0) {
      up += field(s.position);
    } else {
      down += field(s.position);
    }
  }
  return cfg.moment * (up - down);
}

double basis_phase_rate(const SpinConfiguration& cfg, const FieldPolynomial& field) {
  return 2.0 * spin_energy(cfg, field) / constants::hbar;
}

bool DfsReport::protected_through_t(double tol) const {
  for (const auto& r : rows) {
    if (r.degree <= design_t && !(r.max_relative <= tol)) return false;
  }
  return true;
}

DfsReport dfs_check(const TDesign& design, const Rotation& r, int field_degree, int trials,
                    std::uint64_t seed, double moment) {
  if (field_degree < 1) throw InvalidArgument("field degree must be >= 1");
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  const SpinConfiguration cfg = dfs_configuration(design, r, 1.0, moment);

  DfsReport report;
  report.design_t = design.t;
  std::mt19937_64 gen(seed);
  for (int degree = 1; degree <= field_degree; ++degree) {
    DfsDegreeRow row;
    row.degree = degree;
    for (int k = 0; k < trials; ++k) {
      const auto field = FieldPolynomial::random(degree, gen);
      const double e = spin_energy(cfg, field);
      double scale = 0.0;
      for (const auto& s : cfg.sites) {
        if (s.sign > 0) scale += std::abs(field(s.position));
      }
      scale *= std::abs(moment);
      row.max_phase_rate = std::max(row.max_phase_rate, std::abs(2.0 * e / constants::hbar));
      row.max_relative = std::max(row.max_relative, scale > 0.0 ? std::abs(e) / scale : 0.0);
    }
    report.rows.push_back(row);
  }
  return report;
}

void write_dfs_csv(std::ostream& out, const DfsReport& report) {
  out << "degree,max_phase_rate\n";
  for (const auto& r : report.rows) {
    out << r.degree << ',' << io::format_double(r.max_phase_rate) << '\n';
  }
}

}  // namespace tdesign
