#pragma once

// Columnar text output and binary grid snapshots.
//
// Snapshot layout (all little-endian):
//   char[8]  magic "TRIPODSN"
//   uint32   version (1)
//   uint32   components
//   uint32   nx
//   uint32   ny
//   float64  lx, ly, time
//   payload  components * nx * ny complex values as (re, im) float64 pairs,
//            component-major, then row-major (x index slowest).

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "tripod/bands.hpp"
#include "tripod/dynamics.hpp"
#include "tripod/units.hpp"

namespace tripod {

/// One row per sample. Times in hbar/E_r, positions in 1/kappa, energies in
/// E_r.
void write_report(std::ostream& out, const EvolutionReport& report, const RecoilUnits& units);

/// Columns k_x, k_y (kappa), E_lower, E_upper (E_r); ring radius and minimum
/// energy in the footer.
void write_dispersion(std::ostream& out, const DispersionResult& result, const RecoilUnits& units);

struct Snapshot {
  int components = 0;
  int nx = 0;
  int ny = 0;
  double lx = 0.0;
  double ly = 0.0;
  double time = 0.0;
  std::vector<cd> data;
};

void write_snapshot(const std::filesystem::path& path, const Snapshot& snapshot);
Snapshot read_snapshot(const std::filesystem::path& path);

template <int C>
Snapshot make_snapshot(const Field<C>& field, double time) {
  return {C, field.grid.nx, field.grid.ny, field.grid.lx, field.grid.ly, time, field.psi};
}

}  // namespace tripod
