#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "tdesign/error.hpp"
#include "tdesign/io.hpp"
#include "tdesign/svg.hpp"

using namespace tdesign;

TEST_SUITE("io") {
  TEST_CASE("format_double round trips") {
    for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -1.602176634e-19, 5e-324, 1.7976931348623157e308}) {
      const auto s = io::format_double(v);
      CHECK(io::parse_double(s).value() == v);
    }
    CHECK(io::format_double(2.0) == "2");
    CHECK(io::format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(io::format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(io::format_double(std::nan("")) == "nan");
  }

  TEST_CASE("parse_double is strict") {
    CHECK(io::parse_double(" 1e-3 ").value() == 1e-3);
    CHECK(!io::parse_double("1e-3x"));
    CHECK(!io::parse_double(""));
    CHECK(!io::parse_double("abc"));
  }

  TEST_CASE("csv rows and reader") {
    CHECK(io::csv_row({"a", "", "3"}) == "a,,3\n");
    const auto rows = io::read_csv("x,y\n1,\"a,b\"\n2,\n");
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][1] == "a,b");
    CHECK(rows[2].size() == 2);
    CHECK(rows[2][1].empty());
  }

  TEST_CASE("atomic write creates directories and replaces content") {
    const auto dir = std::filesystem::temp_directory_path() / "tdesign_io_test";
    std::filesystem::remove_all(dir);
    const auto p = dir / "nested" / "f.txt";
    io::write_file_atomic(p, "one");
    io::write_file_atomic(p, "two");
    CHECK(io::read_file(p) == "two");
    CHECK(!std::filesystem::exists(p.string() + ".tmp"));
    std::filesystem::remove_all(dir);
    CHECK_THROWS_AS(io::read_file(dir / "missing"), Error);
  }
}

TEST_SUITE("svg") {
  TEST_CASE("log chart structure") {
    svg::Series a{"noise", {1, 2, 3}, {1e2, 1e0, 1e-2}};
    svg::Series b{"a<b", {1, 2, 3}, {5.0, -1.0, 50.0}};  // non-positive skipped
    svg::ChartOptions opt;
    opt.title = "rates";
    const std::string s = svg::log_chart({a, b}, opt);
    CHECK(s.rfind("<?xml", 0) == 0);
    CHECK(s.find("<svg xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
    CHECK(s.find("</svg>") != std::string::npos);
    std::size_t polylines = 0, circles = 0;
    for (std::size_t p = s.find("<polyline"); p != std::string::npos; p = s.find("<polyline", p + 1)) ++polylines;
    for (std::size_t p = s.find("<circle"); p != std::string::npos; p = s.find("<circle", p + 1)) ++circles;
    CHECK(polylines == 2);
    CHECK(circles == 5);
    CHECK(s.find("1e-2") != std::string::npos);
    CHECK(s.find("1e2") != std::string::npos);
    CHECK(s.find("a&lt;b") != std::string::npos);
    CHECK(s.find("href") == std::string::npos);
    CHECK_THROWS_AS(svg::log_chart({svg::Series{"bad", {1, 2}, {1}}}, opt), InvalidArgument);
    CHECK(svg::log_chart({}, opt).find("</svg>") != std::string::npos);
  }
}
