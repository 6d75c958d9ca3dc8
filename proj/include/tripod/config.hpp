#pragma once

// Run configuration for the command-line driver. The file is JSON with
// // and /* */ comments allowed; every object is parsed strictly and unknown
// keys are an error. Physical inputs use recoil units: lengths in 1/kappa,
// momenta in kappa, energies in E_r = kappa^2/2m, times in hbar/E_r.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tripod/atomlight.hpp"
#include "tripod/dynamics.hpp"
#include "tripod/grid.hpp"

namespace tripod {

struct SchemeConfig {
  double omega = 20.0;  // E_r
  double kappa = 1.0;
  double mass = 1.0;
  std::optional<PhaseMatrix> phases;       // radians
  std::optional<WaveVectors> wavevectors;  // kappa
  bool zero_coupling = false;              // all k_j = 0: no gauge fields
};

struct GridConfig {
  int nx = 256;
  int ny = 256;
  double lx = 128.0;  // 1/kappa
  double ly = 128.0;
  double dt = 0.01;   // hbar/E_r
  int n_steps = 500;
  int sample_stride = 10;
};

struct PacketConfig {
  std::array<double, 2> center{0.0, 0.0};    // 1/kappa
  double width = 5.0;                        // 1/kappa
  std::array<double, 2> momentum{0.0, 0.0};  // kappa
  std::array<cd, 2> spin{cd(1.0), cd(0.0)};
};

struct ExperimentConfig {
  std::string mode = "reduced";  // reduced | full | adiabatic
  PacketConfig packet;
  std::vector<double> omega_list{2.0, 5.0, 10.0, 20.0, 50.0, 100.0};  // E_r
  double trap_frequency = 0.0;   // E_r / hbar
  int samples = 100;             // spectrum: random positions
  double position_range = 50.0;  // spectrum: half-width of the sampling box, 1/kappa
  double difference_step = 1e-4; // gauge: 1/kappa
  int n_radial = 512;            // bands
  int n_angular = 64;
  double k_max = 1.0;            // bands: kappa
  bool snapshot = false;         // evolve: write final state
};

struct RunConfig {
  SchemeConfig scheme;
  GridConfig grid;
  ExperimentConfig experiment;
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 1;
};

/// Throws ConfigError on malformed input, unknown keys or invalid values.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Fills in defaults and checks ranges. Called by the parsers.
void validate(const RunConfig& config);

LaserConfig laser_config(const RunConfig& config);
GridSpec grid_spec(const RunConfig& config);
PacketParams packet_params(const RunConfig& config);

}  // namespace tripod
