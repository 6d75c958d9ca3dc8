#pragma once

// Effective spin-1/2 Hamiltonian of the ground doublet,
//   H = (1/2m)(p - A)^2 + Phi + V,
// and its plane-wave dispersion when V = 0.

#include <array>
#include <optional>
#include <vector>

#include "tripod/gauge.hpp"
#include "tripod/types.hpp"

namespace tripod {

/// V(r) = m w^2 |r - r_c|^2 / 2 with r_c the box centre.
struct HarmonicTrap {
  double frequency = 0.0;
};

struct EffectiveHamiltonianSpec {
  GaugeFields fields;
  double mass = 1.0;
  std::optional<HarmonicTrap> external_potential;
};

/// H(k) = (1/2m) sum_a (k_a I - A_a)^2 + Phi. Throws PotentialPresent when
/// an external potential is set.
Mat2c bloch_hamiltonian(const EffectiveHamiltonianSpec& spec, const Vec2& k);

/// Ascending eigenvalues of a Hermitian 2x2 matrix (closed form).
std::array<double, 2> hermitian_eigenvalues(const Mat2c& h);

/// Polar momentum grid |k| in [0, k_max] x angle in [0, 2pi).
struct PolarGrid {
  double k_max = 1.0;
  int n_radial = 512;
  int n_angular = 64;

  double radial_spacing() const { return k_max / (n_radial - 1); }
  std::vector<Vec2> points() const;  // radial index major
};

struct DispersionResult {
  std::vector<Vec2> k_grid;
  std::vector<double> lower_band;
  std::vector<double> upper_band;
  double ring_radius = 0.0;
  double min_energy = 0.0;
};

/// Bands on a polar grid. The lower-band minimum over angles is located in
/// |k| and refined by a parabola through the neighbouring radial samples.
/// Throws GridTooCoarse when the radial spacing exceeds k_max/128.
DispersionResult dispersion(const EffectiveHamiltonianSpec& spec, const PolarGrid& grid);

}  // namespace tripod
