#include "tripod/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tripod/errors.hpp"
#include "tripod/gauge.hpp"

namespace tripod {

namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
}

void reject_unknown(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  require_object(j, where);
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) throw ConfigError("unknown key '" + where + "." + item.key() + "'");
  }
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("bad value for '" + where + "." + key + "': " + e.what());
  }
}

cd read_complex(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ConfigError(where + " must be a number or [re, im]");
}

std::array<double, 2> read_pair(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError(where + " must be [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

void parse_scheme(const json& j, SchemeConfig& s) {
  reject_unknown(j, "scheme", {"omega", "kappa", "mass", "phases", "wavevectors", "zero_coupling"});
  read(j, "omega", s.omega, "scheme");
  read(j, "kappa", s.kappa, "scheme");
  read(j, "mass", s.mass, "scheme");
  read(j, "zero_coupling", s.zero_coupling, "scheme");
  if (j.contains("phases")) {
    const json& p = j["phases"];
    if (!p.is_array() || p.size() != 3) throw ConfigError("scheme.phases must be a 3x2 array");
    PhaseMatrix m;
    for (int r = 0; r < 3; ++r) {
      const auto row = read_pair(p[r], "scheme.phases[" + std::to_string(r) + "]");
      m(r, 0) = row[0];
      m(r, 1) = row[1];
    }
    s.phases = m;
  }
  if (j.contains("wavevectors")) {
    const json& w = j["wavevectors"];
    if (!w.is_array() || w.size() != 3) throw ConfigError("scheme.wavevectors must hold three [x, y]");
    WaveVectors k;
    for (int r = 0; r < 3; ++r) {
      const auto v = read_pair(w[r], "scheme.wavevectors[" + std::to_string(r) + "]");
      k[r] = Vec2(v[0], v[1]);
    }
    s.wavevectors = k;
  }
}

void parse_grid(const json& j, GridConfig& g) {
  reject_unknown(j, "grid", {"nx", "ny", "lx", "ly", "dt", "n_steps", "sample_stride"});
  read(j, "nx", g.nx, "grid");
  read(j, "ny", g.ny, "grid");
  read(j, "lx", g.lx, "grid");
  read(j, "ly", g.ly, "grid");
  read(j, "dt", g.dt, "grid");
  read(j, "n_steps", g.n_steps, "grid");
  read(j, "sample_stride", g.sample_stride, "grid");
}

void parse_packet(const json& j, PacketConfig& p) {
  reject_unknown(j, "experiment.packet", {"center", "width", "momentum", "spin"});
  if (j.contains("center")) p.center = read_pair(j["center"], "experiment.packet.center");
  if (j.contains("momentum")) p.momentum = read_pair(j["momentum"], "experiment.packet.momentum");
  read(j, "width", p.width, "experiment.packet");
  if (j.contains("spin")) {
    const json& s = j["spin"];
    if (!s.is_array() || s.size() != 2) throw ConfigError("experiment.packet.spin must have two entries");
    p.spin = {read_complex(s[0], "experiment.packet.spin[0]"),
              read_complex(s[1], "experiment.packet.spin[1]")};
  }
}

void parse_experiment(const json& j, ExperimentConfig& e) {
  reject_unknown(j, "experiment",
                 {"mode", "packet", "omega_list", "trap_frequency", "samples", "position_range",
                  "difference_step", "n_radial", "n_angular", "k_max", "snapshot"});
  read(j, "mode", e.mode, "experiment");
  if (j.contains("packet")) parse_packet(j["packet"], e.packet);
  read(j, "omega_list", e.omega_list, "experiment");
  read(j, "trap_frequency", e.trap_frequency, "experiment");
  read(j, "samples", e.samples, "experiment");
  read(j, "position_range", e.position_range, "experiment");
  read(j, "difference_step", e.difference_step, "experiment");
  read(j, "n_radial", e.n_radial, "experiment");
  read(j, "n_angular", e.n_angular, "experiment");
  read(j, "k_max", e.k_max, "experiment");
  read(j, "snapshot", e.snapshot, "experiment");
}

}  // namespace

void validate(const RunConfig& c) {
  const auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw ConfigError(std::string(name) + " must be positive");
  };
  if (!(c.scheme.omega >= 0.0)) throw ConfigError("scheme.omega must be non-negative");
  positive(c.scheme.kappa, "scheme.kappa");
  positive(c.scheme.mass, "scheme.mass");
  positive(c.grid.lx, "grid.lx");
  positive(c.grid.ly, "grid.ly");
  positive(c.grid.dt, "grid.dt");
  if (c.grid.n_steps < 0) throw ConfigError("grid.n_steps must be non-negative");
  if (c.grid.sample_stride < 1) throw ConfigError("grid.sample_stride must be >= 1");
  try {
    grid_spec(c).validate();
  } catch (const InvalidGrid& e) {
    throw ConfigError(e.what());
  }
  positive(c.experiment.packet.width, "experiment.packet.width");
  const auto& m = c.experiment.mode;
  if (m != "reduced" && m != "full" && m != "adiabatic") {
    throw ConfigError("experiment.mode must be reduced, full or adiabatic");
  }
  for (double w : c.experiment.omega_list) positive(w, "experiment.omega_list entries");
  if (!(c.experiment.trap_frequency >= 0.0)) throw ConfigError("experiment.trap_frequency must be >= 0");
  if (c.experiment.samples < 1) throw ConfigError("experiment.samples must be >= 1");
  positive(c.experiment.position_range, "experiment.position_range");
  positive(c.experiment.difference_step, "experiment.difference_step");
  positive(c.experiment.k_max, "experiment.k_max");
  if (c.experiment.n_radial < 3 || c.experiment.n_angular < 1) {
    throw ConfigError("experiment.n_radial must be >= 3 and n_angular >= 1");
  }
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("parse error: ") + e.what());
  }
  reject_unknown(j, "config", {"scheme", "grid", "experiment", "output", "seed"});
  RunConfig c;
  if (j.contains("scheme")) parse_scheme(j["scheme"], c.scheme);
  if (j.contains("grid")) parse_grid(j["grid"], c.grid);
  if (j.contains("experiment")) parse_experiment(j["experiment"], c.experiment);
  if (j.contains("output")) {
    reject_unknown(j["output"], "output", {"dir"});
    std::string dir = c.output_dir.string();
    read(j["output"], "dir", dir, "output");
    c.output_dir = dir;
  }
  read(j, "seed", c.seed, "config");
  validate(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

LaserConfig laser_config(const RunConfig& c) {
  const RecoilUnits units{c.scheme.kappa, c.scheme.mass};
  LaserConfig laser = LaserConfig::canonical(c.scheme.omega * units.energy(), c.scheme.kappa,
                                             c.scheme.mass);
  if (c.scheme.phases) laser.phases = *c.scheme.phases;
  if (c.scheme.wavevectors) {
    for (int j = 0; j < 3; ++j) laser.wavevectors[j] = (*c.scheme.wavevectors)[j] * c.scheme.kappa;
  }
  if (c.scheme.zero_coupling) {
    for (auto& k : laser.wavevectors) k.setZero();
  }
  return laser;
}

GridSpec grid_spec(const RunConfig& c) {
  const RecoilUnits units{c.scheme.kappa, c.scheme.mass};
  GridSpec g;
  g.nx = c.grid.nx;
  g.ny = c.grid.ny;
  g.lx = c.grid.lx * units.length();
  g.ly = c.grid.ly * units.length();
  g.dt = c.grid.dt * units.time();
  g.n_steps = c.grid.n_steps;
  g.sample_stride = c.grid.sample_stride;
  return g;
}

PacketParams packet_params(const RunConfig& c) {
  const RecoilUnits units{c.scheme.kappa, c.scheme.mass};
  const PacketConfig& p = c.experiment.packet;
  PacketParams out;
  out.center = Vec2(p.center[0], p.center[1]) * units.length();
  out.width = p.width * units.length();
  out.momentum = Vec2(p.momentum[0], p.momentum[1]) * units.momentum();
  out.spin = p.spin;
  return out;
}

}  // namespace tripod
