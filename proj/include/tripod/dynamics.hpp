#pragma once

// Split-step propagation of wavepackets on a periodic 2D grid, for the
// reduced two-level Hamiltonian and the full five-level one.

#include <array>
#include <vector>

#include "tripod/atomlight.hpp"
#include "tripod/bands.hpp"
#include "tripod/grid.hpp"
#include "tripod/kernels.hpp"

namespace tripod {

using kernels::Backend;

struct EvolutionReport {
  std::vector<double> times;
  std::vector<Vec2> mean_position;
  std::vector<double> norm;
  std::vector<double> energy;
  /// populations[level][sample]; two levels for the reduced model, five
  /// (eigenbasis() order) for the full one.
  std::vector<std::vector<double>> populations;
  std::vector<double> spin_x, spin_y, spin_z;  // reduced only
  std::vector<double> ground_fidelity;         // full only

  std::size_t samples() const { return times.size(); }
};

template <class FieldT>
struct Evolution {
  EvolutionReport report;
  FieldT state;
};

/// Gaussian envelope exp(-|r - center|^2 / (2 width^2)) times a plane wave
/// times a constant spinor, normalised on the grid.
struct PacketParams {
  Vec2 center = Vec2::Zero();
  double width = 5.0;
  Vec2 momentum = Vec2::Zero();
  std::array<cd, 2> spin{cd(1.0), cd(0.0)};
};

/// Throws PacketTooNarrow if width < 4 dx (or 4 dy) and
/// PacketTouchesBoundary if the envelope at the box edge exceeds 1e-12 of
/// its peak.
SpinorField gaussian_packet(const GridSpec& grid, const PacketParams& params);

/// psi(r) = sum_q Psi_q(r) |q,+,r>.
FullField map_to_full(const LaserConfig& config, const SpinorField& reduced);

/// Gaussian envelope (spin ignored) carried by a single dressed state; level
/// uses eigenbasis() order (0,1: |p,+>, 2: |D>, 3,4: |p,->).
FullField dressed_packet(const LaserConfig& config, const GridSpec& grid,
                         const PacketParams& envelope, int level);

/// Integral of a^dagger b over the grid.
template <int C>
cd inner_product(const Field<C>& a, const Field<C>& b) {
  cd sum = 0.0;
  for (std::size_t i = 0; i < a.psi.size(); ++i) sum += std::conj(a.psi[i]) * b.psi[i];
  return sum * a.grid.cell_area();
}

template <int C>
double field_norm(const Field<C>& f) {
  return inner_product(f, f).real();
}

/// <H> of the reduced Hamiltonian (kinetic + gauge + Phi + V).
double reduced_energy(const EffectiveHamiltonianSpec& spec, const SpinorField& field);
/// <H> of the full Hamiltonian (p^2/2m + H0).
double full_energy(const LaserConfig& config, const FullField& field);

/// Largest |eigenvalue| of the reduced Hamiltonian's pieces on the grid; dt
/// must stay below pi divided by it.
double reduced_energy_bound(const EffectiveHamiltonianSpec& spec, const GridSpec& grid);
double full_energy_bound(const LaserConfig& config, const GridSpec& grid);

/// Strang splitting V/2 - K - V/2. The kinetic-plus-gauge factor
/// exp(-i dt (k - A)^2 / 2m) is exact per k; the position factor carries
/// Phi and the optional trap. Throws UnstableStep if dt > pi / bound.
Evolution<SpinorField> evolve_reduced(const EffectiveHamiltonianSpec& spec, SpinorField initial,
                                      const GridSpec& grid, Backend backend = Backend::parallel);

/// Strang splitting H0/2 - K - H0/2 with the coupling factor evaluated from
/// the closed-form eigensystem at every point. Throws DegenerateCoupling for
/// omega == 0 and UnstableStep as above.
Evolution<FullField> evolve_full(const LaserConfig& config, FullField initial,
                                 const GridSpec& grid, Backend backend = Backend::parallel);

struct AdiabaticRow {
  double omega_over_recoil = 0.0;
  double overlap = 0.0;         ///< |<mapped reduced | full>|^2 at the final time
  double ground_fidelity = 0.0; ///< final ground-doublet population of the full run
};

/// For each Omega (in recoil units) evolve the same packet reduced and full
/// for grid.n_steps * grid.dt and compare. Sweeps run as independent jobs.
std::vector<AdiabaticRow> compare_adiabatic(const LaserConfig& config, const GridSpec& grid,
                                            const PacketParams& packet,
                                            const std::vector<double>& omega_list);

/// Dominant angular frequency of a uniformly sampled series: DFT magnitude
/// after mean removal, peak refined by a parabola.
double dominant_frequency(const std::vector<double>& times, const std::vector<double>& series);

/// Band splitting E_upper(k) - E_lower(k) averaged over |Psi(k)|^2.
double packet_averaged_splitting(const EffectiveHamiltonianSpec& spec, const SpinorField& field);

}  // namespace tripod
