#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tdesign/cli.hpp"
#include "tdesign/designs.hpp"
#include "tdesign/io.hpp"

using namespace tdesign;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "tdesign_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write(const std::string& name, const std::string& text) {
  const auto p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

const char* kQuickScaling =
    "design.t_list = 1, 2, 3\n"
    "body.radius_m = 2e-6\n"
    "body.unit_weight = 1.602176634e-19\n"
    "signal.position_m = 0, 0, 10e-6\n"
    "signal.strength = 1.602176634e-19\n"
    "noise.position_m = 0, 0, 200e-6\n"
    "noise.strength = 1.602176634e-16\n"
    "optimizer.restarts = 3\n"
    "optimizer.max_iters = 600\n";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("verify: catalog, failing order and malformed files") {
    const auto ok = run({"verify", "--t", "2"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("certified_t = 2") != std::string::npos);

    std::ostringstream tet;
    write_points(tet, catalog_design(2).points);
    const auto tet_file = write("tet.txt", tet.str());
    CHECK(run({"verify", tet_file.string(), "--t", "2"}).code == 0);
    CHECK(run({"verify", tet_file.string(), "--t", "3"}).code == 1);

    const auto bad = write("bad.txt", "0 0 1\n# c\n0 0 1.2\n");
    const auto r = run({"verify", bad.string(), "--t", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);
    CHECK(run({"verify", scratch("none.txt").string(), "--t", "1"}).code == 2);
    CHECK(run({"verify", "--t", "4"}).code == 2);  // not in the catalog
  }

  TEST_CASE("verify writes a report CSV") {
    const auto csv = scratch("report.csv");
    CHECK(run({"verify", "--t", "5", "--out-csv", csv.string()}).code == 0);
    const auto rows = io::read_csv(io::read_file(csv));
    REQUIRE(rows.size() == 7);
    CHECK(rows[0] == std::vector<std::string>{"l", "residual"});
  }

  TEST_CASE("solve: output verifies; antipodal pair; non-convergence") {
    const auto pts = scratch("t2.txt");
    const auto r = run({"solve", "--t", "2", "--n", "4", "--seed", "1", "--out", pts.string()});
    CHECK(r.code == 0);
    CHECK(run({"verify", pts.string(), "--t", "2"}).code == 0);

    const auto pair = scratch("t1.txt");
    CHECK(run({"solve", "--t", "1", "--n", "2", "--out", pair.string()}).code == 0);
    const auto p = read_points_file(pair);
    CHECK(norm(p[0] + p[1]) <= 1e-9);

    const auto nc = run({"solve", "--t", "3", "--n", "4", "--restarts", "2"});
    CHECK(nc.code == 3);
    CHECK(nc.err.find("best residual") != std::string::npos);
  }

  TEST_CASE("solve: some seed recovers a 12-point 5-design") {
    bool any = false;
    for (int seed = 0; seed < 5 && !any; ++seed) {
      const auto f = scratch("t5_" + std::to_string(seed) + ".txt");
      if (run({"solve", "--t", "5", "--n", "12", "--seed", std::to_string(seed), "--out", f.string()}).code == 0) {
        any = run({"verify", f.string(), "--t", "5"}).code == 0;
      }
    }
    CHECK(any);
  }

  TEST_CASE("usage errors and help") {
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"verify"}).code == 2);
    CHECK(run({"solve", "--t", "x"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    const auto h = run({"spin", "--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("--field-order") != std::string::npos);
  }

  TEST_CASE("config parsing rejects typos, duplicates and bad values") {
    CHECK_THROWS_AS(cli::parse_config_text("a = 1\na = 2\n"), ParseError);
    CHECK_THROWS_AS(cli::parse_config_text("just words\n"), ParseError);
    const auto raw = cli::parse_config_text("# c\n body.radius_m = 2e-6  # trailing\n\n");
    CHECK(raw.at("body.radius_m").value == "2e-6");
    CHECK(raw.at("body.radius_m").line == 2);
    try {
      cli::load_config(cli::parse_config_text("body.radius = 1\nbody.radius_m = -1\nnoise.pair = both\n"));
      FAIL("expected ConfigError");
    } catch (const cli::ConfigError& e) {
      CHECK(e.keys().size() == 3);
    }
    const auto cfg = cli::load_config(cli::parse_config_text("design.t_list = 3, 1\nseparation_m = 1, 2, 3\n"));
    CHECK(cfg.t_list == std::vector<int>{3, 1});
    CHECK(cfg.separation_m == Vec3{1, 2, 3});
    CHECK(cfg.has("separation_m"));
    CHECK_THROWS_AS(cfg.require({"body.radius_m"}), cli::ConfigError);
    CHECK(cli::known_keys().size() > 20);
  }

  TEST_CASE("scaling: validation failures exit 2 naming keys") {
    const auto empty = write("empty.cfg", std::string(kQuickScaling) + "design.t_list =\n");
    // duplicate key is a parse error
    CHECK(run({"scaling", "--config", empty.string()}).code == 2);
    const auto no_t = write("no_t.cfg", "design.t_list =\nbody.radius_m = 2e-6\n");
    const auto r = run({"scaling", "--config", no_t.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("design.t_list") != std::string::npos);
    const auto typo = write("typo.cfg", std::string(kQuickScaling) + "optimiser.seed = 3\n");
    const auto t = run({"scaling", "--config", typo.string()});
    CHECK(t.code == 2);
    CHECK(t.err.find("optimiser.seed") != std::string::npos);
    const auto missing = write("missing.cfg", "design.t_list = 1\n");
    const auto m = run({"scaling", "--config", missing.string()});
    CHECK(m.code == 2);
    CHECK(m.err.find("noise.strength") != std::string::npos);
  }

  TEST_CASE("scaling: deterministic CSV, SVG, seed override and output dir") {
    const auto cfg = write("quick.cfg", kQuickScaling);
    const auto a = scratch("a.csv"), b = scratch("b.csv"), svg = scratch("a.svg");
    CHECK(run({"scaling", "--config", cfg.string(), "--out-csv", a.string(), "--out-svg", svg.string()}).code == 0);
    CHECK(run({"scaling", "--config", cfg.string(), "--out-csv", b.string()}).code == 0);
    CHECK(io::read_file(a) == io::read_file(b));
    const auto rows = io::read_csv(io::read_file(a));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0][0] == "t");
    CHECK(io::read_file(svg).find("<polyline") != std::string::npos);

    const auto c = scratch("c.csv");
    CHECK(run({"scaling", "--config", cfg.string(), "--out-csv", c.string(), "--seed", "99"}).code == 0);
    CHECK(io::read_csv(io::read_file(c)).size() == 4);

    const auto outdir = scratch("outdir");
    fs::remove_all(outdir);
    ::setenv("TDESIGN_OUTPUT_DIR", outdir.string().c_str(), 1);
    const auto r = run({"scaling", "--config", cfg.string(), "--out-csv", "rel.csv"});
    ::unsetenv("TDESIGN_OUTPUT_DIR");
    CHECK(r.code == 0);
    CHECK(fs::exists(outdir / "rel.csv"));
  }

  TEST_CASE("scaling from a point file source") {
    std::ostringstream oct;
    write_points(oct, catalog_design(3).points);
    write("oct.txt", oct.str());
    const auto cfg = write("file.cfg", std::string(kQuickScaling) + "design.source = file\ndesign.file = oct.txt\n");
    const auto out = scratch("file.csv");
    CHECK(run({"scaling", "--config", cfg.string(), "--out-csv", out.string()}).code == 0);
    const auto rows = io::read_csv(io::read_file(out));
    REQUIRE(rows.size() == 4);
    CHECK(rows[3][1] == "6");
  }

  TEST_CASE("entangle: charged pair report") {
    const auto cfg = write("ent.cfg",
                           "design.t_list = 1, 2\nbody.radius_m = 2e-6\nseparation_m = 10e-6, 0, 0\n"
                           "noise.position_m = 200e-6, 0, 0\nnoise.strength = 1.602176634e-16\n"
                           "optimizer.restarts = 2\noptimizer.max_iters = 400\n");
    const auto a = scratch("ent_a.csv"), b = scratch("ent_b.csv");
    const auto r = run({"entangle", "--config", cfg.string(), "--out-csv", a.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("E_ent") != std::string::npos);
    CHECK(run({"entangle", "--config", cfg.string(), "--out-csv", b.string()}).code == 0);
    CHECK(io::read_file(a) == io::read_file(b));
    const auto rows = io::read_csv(io::read_file(a));
    REQUIRE(rows.size() == 3);
    CHECK(!rows[1][5].empty());
  }

  TEST_CASE("gravity and spin subcommands") {
    const auto g1 = run({"gravity", "--t", "1", "--restarts", "4"});
    CHECK(g1.code == 0);
    CHECK(g1.out.find("e_ent_hz = ") != std::string::npos);
    const auto g3 = scratch("g3.csv");
    CHECK(run({"gravity", "--t", "3", "--restarts", "4", "--out-csv", g3.string()}).code == 0);
    const auto rows = io::read_csv(io::read_file(g3));
    REQUIRE(rows.size() == 2);
    CHECK(std::stod(rows[1][3]) <= 1e-9);

    const auto s = scratch("spin.csv");
    const auto sp = run({"spin", "--t", "2", "--field-order", "3", "--out-csv", s.string()});
    CHECK(sp.code == 0);
    const auto srows = io::read_csv(io::read_file(s));
    REQUIRE(srows.size() == 4);
    CHECK(std::stod(srows[3][1]) > 0.0);
    CHECK(sp.out.find("protected through degree 2: yes") != std::string::npos);
  }
}
