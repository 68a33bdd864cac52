#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>

#include "tdesign/cli.hpp"
#include "tdesign/constants.hpp"
#include "tdesign/designs.hpp"
#include "tdesign/entangle.hpp"
#include "tdesign/io.hpp"
#include "tdesign/spindfs.hpp"
#include "tdesign/svg.hpp"

namespace tdesign::cli {

namespace {

struct Context {
  std::ostream& out;
  std::ostream& err;
};

/// Writes `text` atomically to `path` when given, otherwise to `out`.
void emit(Context& ctx, const std::filesystem::path& path, const std::string& text, const char* what) {
  if (path.empty()) {
    ctx.out << text;
    return;
  }
  const auto p = output_path(path);
  io::write_file_atomic(p, text);
  ctx.out << "wrote " << what << ": " << p.string() << "\n";
}

DesignProvider provider_for(const ScenarioConfig& cfg) {
  SolverOptions solver;
  switch (cfg.design_source) {
    case DesignSource::catalog:
      return [cfg, solver](int t) {
        if (in_catalog(t)) return catalog_design(t);
        const int n = cfg.design_n > 0 ? cfg.design_n : default_point_count(t);
        return solve_design(t, n, cfg.design_seed, solver);
      };
    case DesignSource::solve:
      return [cfg, solver](int t) {
        const int n = cfg.design_n > 0 ? cfg.design_n : default_point_count(t);
        return solve_design(t, n, cfg.design_seed, solver);
      };
    case DesignSource::file: {
      if (cfg.design_file.empty()) throw ConfigError({"design.file"}, "design.source = file needs design.file");
      const auto points = read_points_file(cfg.design_file);
      return [points](int t) { return make_design(points, t, Provenance::file); };
    }
  }
  throw InvalidArgument("unknown design source");
}

ScenarioConfig load_with_overrides(const std::string& path, const std::optional<std::uint64_t>& seed) {
  ScenarioConfig cfg = load_config_file(path);
  if (seed) {
    cfg.optimizer.seed = *seed;
    cfg.design_seed = *seed;
  }
  return cfg;
}

std::filesystem::path pick(const std::string& flag, const std::filesystem::path& from_config) {
  return flag.empty() ? from_config : std::filesystem::path(flag);
}

// verify ---------------------------------------------------------------------

struct VerifyArgs {
  std::string file;
  int t = 0;
  int t_max = 0;
  double tol = default_verify_tolerance;
  std::string out_csv;
};

int cmd_verify(Context& ctx, const VerifyArgs& a) {
  std::vector<Vec3> points;
  if (a.file.empty()) {
    points = catalog_design(a.t).points;
  } else {
    try {
      points = read_points_file(a.file);
    } catch (const ParseError& e) {
      ctx.err << a.file << ": " << e.what() << "\n";
      return bad_input;
    }
  }
  const int t_max = a.t_max > 0 ? a.t_max : std::min(constants::max_degree, a.t + 1);
  if (t_max < a.t) throw InvalidArgument("--t-max must be >= --t");
  const auto report = verify_design(points, t_max, a.tol);

  ctx.out << "points = " << points.size() << "\n"
          << "requested_t = " << a.t << "\n"
          << "certified_t = " << report.certified_t << "\n";
  for (int l = 1; l <= report.t_max(); ++l) {
    ctx.out << "  l = " << l << "  residual = " << io::format_double(report.residual(l)) << "\n";
  }
  if (!a.out_csv.empty()) {
    std::ostringstream csv;
    write_report_csv(csv, report);
    emit(ctx, a.out_csv, csv.str(), "report");
  }
  return report.certified_t >= a.t ? ok : check_failed;
}

// solve ----------------------------------------------------------------------

struct SolveArgs {
  int t = 0;
  int n = 0;
  std::uint64_t seed = 0;
  int restarts = 32;
  std::string out;
  std::string out_csv;
};

int cmd_solve(Context& ctx, const SolveArgs& a) {
  SolverOptions opts;
  opts.restarts = a.restarts;
  const int n = a.n > 0 ? a.n : default_point_count(a.t);
  TDesign d;
  try {
    d = solve_design(a.t, n, a.seed, opts);
  } catch (const NonConvergence& e) {
    ctx.err << e.what() << "\nbest residual = " << io::format_double(e.best_residual()) << "\n";
    return non_convergence;
  }
  std::ostringstream pts;
  pts << "# t = " << a.t << ", n = " << n << ", seed = " << a.seed << "\n";
  write_points(pts, d.points);
  if (a.out.empty()) {
    ctx.out << pts.str();
  } else {
    emit(ctx, a.out, pts.str(), "points");
  }
  const auto report = verify_design(d.points, a.t, opts.verify_tolerance);
  ctx.out << "certified_t = " << report.certified_t << "\n"
          << "residual = " << io::format_double(d.residual) << "\n";
  if (!a.out_csv.empty()) {
    std::ostringstream csv;
    write_report_csv(csv, report);
    emit(ctx, a.out_csv, csv.str(), "report");
  }
  return ok;
}

// scaling --------------------------------------------------------------------

struct StudyArgs {
  std::string config;
  std::string out_csv;
  std::string out_svg;
  std::optional<std::uint64_t> seed;
};

int cmd_scaling(Context& ctx, const StudyArgs& a) {
  const ScenarioConfig cfg = load_with_overrides(a.config, a.seed);
  cfg.require({"design.t_list", "body.radius_m", "signal.position_m", "signal.strength",
               "noise.position_m", "noise.strength"});

  SensingScenario sc;
  sc.kind = cfg.body_kind;
  sc.radius = cfg.body_radius_m;
  sc.unit_weight = cfg.body_unit_weight;
  sc.signal = SourceModel::point(cfg.body_kind, cfg.signal_position_m, cfg.signal_strength);
  sc.noise = SourceModel::point(cfg.body_kind, cfg.noise_position_m, cfg.noise_strength);
  ScalingOptions opt;
  opt.optimize = cfg.optimize;
  opt.optimizer = cfg.optimizer;
  opt.noise_pair = cfg.noise_pair;

  const auto rows = scaling_study(sc, cfg.t_list, provider_for(cfg), opt);
  std::ostringstream csv;
  write_scaling_csv(csv, rows);
  emit(ctx, pick(a.out_csv, cfg.output_csv), csv.str(), "csv");

  const auto svg_path = pick(a.out_svg, cfg.output_svg);
  if (!svg_path.empty()) {
    svg::Series sig{"|signal| (Hz)", {}, {}}, noi{"|noise| (Hz)", {}, {}}, rat{"ratio", {}, {}};
    for (const auto& r : rows) {
      if (r.missing) continue;
      sig.x.push_back(r.t);
      sig.y.push_back(r.delta_signal_hz);
      noi.x.push_back(r.t);
      noi.y.push_back(r.delta_noise_hz);
      rat.x.push_back(r.t);
      rat.y.push_back(r.ratio);
    }
    svg::ChartOptions co;
    co.title = "Dephasing rate vs design order";
    co.x_label = "t";
    co.y_label = "rate / ratio";
    emit(ctx, svg_path, svg::log_chart({sig, noi, rat}, co), "svg");
  }
  for (const auto& r : rows) {
    if (r.missing) ctx.err << "warning: no design for t = " << r.t << "\n";
  }
  return ok;
}

// entangle -------------------------------------------------------------------

int cmd_entangle(Context& ctx, const StudyArgs& a) {
  const ScenarioConfig cfg = load_with_overrides(a.config, a.seed);
  cfg.require({"design.t_list", "body.radius_m", "separation_m", "noise.position_m", "noise.strength"});
  if (cfg.body_kind != Kind::charge) {
    throw ConfigError({"body.kind"}, "entangle covers charged bodies; use gravity for masses");
  }
  ElectrostaticParams p;
  p.radius = cfg.body_radius_m;
  p.unit_weight = cfg.body_unit_weight;
  p.separation = cfg.separation_m;
  p.noise = SourceModel::point(Kind::charge, cfg.noise_position_m, cfg.noise_strength);
  p.optimizer = cfg.optimizer;
  p.evolution_time = cfg.evolution_time_s;

  const auto designs = provider_for(cfg);
  std::vector<ScalingRow> rows;
  for (const int t : cfg.t_list) {
    TDesign d;
    try {
      d = designs(t);
    } catch (const Error& e) {
      ctx.err << "warning: no design for t = " << t << ": " << e.what() << "\n";
      ScalingRow miss;
      miss.t = t;
      miss.missing = true;
      rows.push_back(miss);
      continue;
    }
    const auto rep = electrostatic_scenario(d, p);
    ctx.out << summary(rep);
    rows.push_back(rep.row());
  }
  std::ostringstream csv;
  write_scaling_csv(csv, rows);
  emit(ctx, pick(a.out_csv, cfg.output_csv), csv.str(), "csv");
  return ok;
}

// gravity --------------------------------------------------------------------

struct GravityArgs {
  int t = 0;
  std::string config;
  std::string out_csv;
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
};

int cmd_gravity(Context& ctx, const GravityArgs& a) {
  ScenarioConfig cfg;
  if (!a.config.empty()) cfg = load_config_file(a.config);
  GravityParams p;
  p.composite.central_radius = cfg.body_central_radius_m;
  p.composite.total_mass = cfg.body_total_mass_kg;
  p.composite.material = Material{cfg.body_density_kg_m3};
  if (cfg.has("separation_m")) p.separation = cfg.separation_m;
  if (cfg.has("noise.position_m")) p.noise_position = cfg.noise_position_m;
  if (cfg.has("noise.strength")) p.noise_mass = cfg.noise_strength;
  p.optimizer = cfg.optimizer;
  if (a.seed) {
    p.optimizer.seed = *a.seed;
    cfg.design_seed = *a.seed;
  }
  if (a.restarts) p.optimizer.restarts = *a.restarts;
  p.evolution_time = cfg.evolution_time_s;

  const TDesign d = (a.t >= 1 && a.t <= 3 && cfg.design_source == DesignSource::catalog)
                        ? catalog_design(a.t)
                        : provider_for(cfg)(a.t);
  const auto rep = gravitational_scenario(d, p);
  ctx.out << summary(rep) << "e_ent_hz = " << io::format_double(std::abs(rep.e_ent_hz)) << "\n"
          << "delta_noise_hz = " << io::format_double(rep.delta_noise_hz) << "\n";
  const std::vector<ScalingRow> rows{rep.row()};
  std::ostringstream csv;
  write_scaling_csv(csv, rows);
  if (const auto path = pick(a.out_csv, cfg.output_csv); !path.empty()) emit(ctx, path, csv.str(), "csv");
  return ok;
}

// spin -----------------------------------------------------------------------

struct SpinArgs {
  int t = 0;
  int field_order = 0;
  int trials = 100;
  std::uint64_t seed = 0;
  double moment = constants::bohr_magneton;
  std::string file;
  std::string out_csv;
};

int cmd_spin(Context& ctx, const SpinArgs& a) {
  TDesign d;
  if (!a.file.empty()) {
    d = make_design(read_points_file(a.file), a.t, Provenance::file);
  } else if (in_catalog(a.t)) {
    d = catalog_design(a.t);
  } else {
    d = solve_design(a.t, default_point_count(a.t), a.seed);
  }
  const Rotation r = random_rotation(a.seed, 0x5b1d);
  const auto report = dfs_check(d, r, a.field_order, a.trials, a.seed, a.moment);

  ctx.out << "t = " << d.t << " (" << d.size() << " points per set)\n";
  for (const auto& row : report.rows) {
    ctx.out << "  degree " << row.degree << ": max phase rate = " << io::format_double(row.max_phase_rate)
            << " rad/s, max relative = " << io::format_double(row.max_relative) << "\n";
  }
  const bool protected_ok = report.protected_through_t();
  ctx.out << "protected through degree " << d.t << ": " << (protected_ok ? "yes" : "no") << "\n";

  std::ostringstream csv;
  write_dfs_csv(csv, report);
  if (!a.out_csv.empty()) emit(ctx, a.out_csv, csv.str(), "csv");
  return protected_ok ? ok : check_failed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{out, err};
  CLI::App app{"Spherical t-design bodies: designs, multipole dephasing, entanglement and spin DFS"};
  app.name("tdesign");
  app.require_subcommand(1);
  std::function<int()> action;

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Certify the design order of a point set");
  verify->add_option("file", va.file, "Point file (omit to use the catalog design for --t)");
  verify->add_option("--t", va.t, "Requested design order")->required()->check(CLI::Range(1, 32));
  verify->add_option("--t-max", va.t_max, "Highest degree to report (default t+1)")->check(CLI::Range(1, 32));
  verify->add_option("--tol", va.tol, "Residual tolerance");
  verify->add_option("--out-csv", va.out_csv, "Per-degree residual CSV");
  verify->callback([&] { action = [&] { return cmd_verify(ctx, va); }; });

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Numerically construct a t-design");
  solve->add_option("--t", sa.t, "Design order")->required()->check(CLI::Range(1, 32));
  solve->add_option("--n", sa.n, "Point count (default from t)")->check(CLI::Range(1, 100000));
  solve->add_option("--seed", sa.seed, "Restart seed");
  solve->add_option("--restarts", sa.restarts, "Number of restarts")->check(CLI::Range(1, 100000));
  solve->add_option("--out", sa.out, "Point file to write (default: stdout)");
  solve->add_option("--out-csv", sa.out_csv, "Per-degree residual CSV");
  solve->callback([&] { action = [&] { return cmd_solve(ctx, sa); }; });

  StudyArgs sc;
  auto* scaling = app.add_subcommand("scaling", "Signal and noise dephasing rates versus t");
  scaling->add_option("--config", sc.config, "Scenario file")->required();
  scaling->add_option("--out-csv", sc.out_csv, "CSV output (overrides output.csv)");
  scaling->add_option("--out-svg", sc.out_svg, "SVG chart (overrides output.svg)");
  scaling->add_option("--seed", sc.seed, "Overrides optimizer.seed and design.seed");
  scaling->callback([&] { action = [&] { return cmd_scaling(ctx, sc); }; });

  StudyArgs en;
  auto* entangle = app.add_subcommand("entangle", "Entangling energy of two charged bodies");
  entangle->add_option("--config", en.config, "Scenario file")->required();
  entangle->add_option("--out-csv", en.out_csv, "CSV output (overrides output.csv)");
  entangle->add_option("--seed", en.seed, "Overrides optimizer.seed and design.seed");
  entangle->callback([&] { action = [&] { return cmd_entangle(ctx, en); }; });

  GravityArgs ga;
  auto* gravity = app.add_subcommand("gravity", "Gravitational entanglement of two diamond composites");
  gravity->add_option("--t", ga.t, "Design order")->required()->check(CLI::Range(1, 32));
  gravity->add_option("--config", ga.config, "Scenario file overriding the defaults");
  gravity->add_option("--out-csv", ga.out_csv, "CSV output");
  gravity->add_option("--seed", ga.seed, "Overrides optimizer.seed and design.seed");
  gravity->add_option("--restarts", ga.restarts, "Optimizer restarts")->check(CLI::Range(1, 100000));
  gravity->callback([&] { action = [&] { return cmd_gravity(ctx, ga); }; });

  SpinArgs pa;
  auto* spin = app.add_subcommand("spin", "Decoherence-free spin basis check");
  spin->add_option("--t", pa.t, "Design order")->required()->check(CLI::Range(1, 32));
  spin->add_option("--field-order", pa.field_order, "Highest field polynomial degree")
      ->required()
      ->check(CLI::Range(1, 32));
  spin->add_option("--trials", pa.trials, "Random fields per degree")->check(CLI::Range(1, 1000000));
  spin->add_option("--seed", pa.seed, "Field and rotation seed");
  spin->add_option("--moment", pa.moment, "Magnetic moment per spin (J/T)");
  spin->add_option("--file", pa.file, "Point file instead of the catalog design");
  spin->add_option("--out-csv", pa.out_csv, "CSV output");
  spin->callback([&] { action = [&] { return cmd_spin(ctx, pa); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Error& e) {
    // help requests exit 0; anything else is a usage error
    return app.exit(e, out, err) == 0 ? ok : bad_input;
  }

  try {
    return action();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return bad_input;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return bad_input;
  } catch (const NonConvergence& e) {
    err << "non-convergence: " << e.what() << "\nbest residual = " << io::format_double(e.best_residual())
        << "\n";
    return non_convergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return bad_input;
  }
}

}  // namespace tdesign::cli
