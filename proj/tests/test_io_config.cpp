#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "tripod/config.hpp"
#include "tripod/errors.hpp"
#include "tripod/io.hpp"

using namespace tripod;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "tripod_test_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("snapshot round trip is bit exact") {
  GridSpec g{8, 4, 3.0, 2.5, 0.01, 0, 1};
  FullField f(g);
  for (std::size_t n = 0; n < f.psi.size(); ++n) f.psi[n] = cd(std::sin(0.3 * n), std::cos(1.7 * n) / 3.0);
  const auto path = scratch("round.bin");
  write_snapshot(path, make_snapshot(f, 1.25));
  const Snapshot s = read_snapshot(path);
  CHECK(s.components == 5);
  CHECK(s.nx == 8);
  CHECK(s.ny == 4);
  CHECK(s.lx == 3.0);
  CHECK(s.ly == 2.5);
  CHECK(s.time == 1.25);
  REQUIRE(s.data.size() == f.psi.size());
  for (std::size_t n = 0; n < f.psi.size(); ++n) CHECK(s.data[n] == f.psi[n]);
  CHECK(std::filesystem::file_size(path) == 8 + 4 * 4 + 3 * 8 + 16 * f.psi.size());
}

TEST_CASE("snapshot errors") {
  CHECK_THROWS_AS(read_snapshot(scratch("missing.bin")), IoError);
  const auto bad = scratch("bad.bin");
  {
    std::ofstream out(bad, std::ios::binary);
    out << "NOTASNAPSHOT";
  }
  CHECK_THROWS_AS(read_snapshot(bad), IoError);

  GridSpec g{4, 4, 1.0, 1.0, 0.01, 0, 1};
  const auto path = scratch("short.bin");
  write_snapshot(path, make_snapshot(SpinorField(g), 0.0));
  std::filesystem::resize_file(path, std::filesystem::file_size(path) - 8);
  CHECK_THROWS_AS(read_snapshot(path), IoError);

  CHECK_THROWS_AS(write_snapshot("/nonexistent-dir/x.bin", make_snapshot(SpinorField(g), 0.0)), IoError);
}

TEST_CASE("report output has one row per sample") {
  EvolutionReport r;
  r.times = {0.0, 2.0};
  r.mean_position = {Vec2(0.0, 0.0), Vec2(1.0, -1.0)};
  r.norm = {1.0, 1.0};
  r.energy = {0.5, 0.5};
  r.populations = {{0.7, 0.6}, {0.3, 0.4}};
  r.spin_x = {0.0, 0.1};
  r.spin_y = {0.0, 0.2};
  r.spin_z = {1.0, 0.9};
  std::ostringstream out;
  write_report(out, r, RecoilUnits{1.0, 1.0});
  std::istringstream in(out.str());
  std::string header, row;
  std::getline(in, header);
  CHECK(header.rfind("#", 0) == 0);
  CHECK(header.find("sigma_z") != std::string::npos);
  int rows = 0;
  double t = -1, x, y, n, e;
  while (std::getline(in, row)) {
    std::istringstream fields(row);
    fields >> t >> x >> y >> n >> e;
    ++rows;
  }
  CHECK(rows == 2);
  // 2 time units = 1 hbar/E_r, energy 0.5 = 1 E_r.
  CHECK(t == doctest::Approx(1.0));
  CHECK(e == doctest::Approx(1.0));
}

TEST_CASE("config parses comments and converts units") {
  const std::string text = R"({
    // recoil units throughout
    "scheme": {"omega": 10, "kappa": 2.0, "mass": 0.5},
    "grid": {"nx": 64, "ny": 32, "lx": 40, "ly": 20, "dt": 0.02, "n_steps": 7, "sample_stride": 2},
    /* packet in 1/kappa and kappa */
    "experiment": {"mode": "full",
                   "packet": {"center": [1, -2], "width": 3, "momentum": [0.25, 0], "spin": [[0, 1], 0]}},
    "output": {"dir": "results"},
    "seed": 42
  })";
  const RunConfig c = parse_config(text);
  CHECK(c.seed == 42);
  CHECK(c.output_dir == "results");
  CHECK(c.experiment.mode == "full");

  // E_r = kappa^2/2m = 4, hbar/E_r = 0.25, 1/kappa = 0.5.
  const LaserConfig laser = laser_config(c);
  CHECK(laser.omega == doctest::Approx(40.0));
  CHECK(laser.wavevectors[0].norm() == doctest::Approx(2.0));
  const GridSpec g = grid_spec(c);
  CHECK(g.nx == 64);
  CHECK(g.lx == doctest::Approx(20.0));
  CHECK(g.ly == doctest::Approx(10.0));
  CHECK(g.dt == doctest::Approx(0.005));
  const PacketParams p = packet_params(c);
  CHECK(p.center.y() == doctest::Approx(-1.0));
  CHECK(p.width == doctest::Approx(1.5));
  CHECK(p.momentum.x() == doctest::Approx(0.5));
  CHECK(p.spin[0] == cd(0.0, 1.0));
}

TEST_CASE("config is strict") {
  CHECK_THROWS_AS(parse_config(R"({"scheme": {"omegaa": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"extra": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"grid": {"nx": 100}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scheme": {"kappa": -1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"experiment": {"mode": "fast"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"grid": {"dt": "big"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config("{ not json"), ConfigError);
  CHECK_THROWS_AS(load_config(scratch("absent.json")), ConfigError);
  CHECK_NOTHROW(parse_config("{}"));
}

TEST_CASE("zero coupling removes the laser wavevectors") {
  const RunConfig c = parse_config(R"({"scheme": {"zero_coupling": true}})");
  for (const auto& k : laser_config(c).wavevectors) CHECK(k.norm() == 0.0);
}
