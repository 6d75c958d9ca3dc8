#pragma once

// Per-grid-point work of the split-step evolvers. Every kernel exists in two
// flavours: an OpenMP-parallel one used by the evolvers and a plain serial
// reference kept for testing. The reference versions favour the direct
// formula over speed (e.g. the coupling step rebuilds the dressed frame at
// every point).

#include <array>
#include <vector>

#include "tripod/atomlight.hpp"
#include "tripod/grid.hpp"
#include "tripod/types.hpp"

namespace tripod::kernels {

enum class Backend { parallel, reference };

/// Sum of f(i, j) over the grid. Rows are summed independently and then
/// accumulated in row order, so the result does not depend on the backend
/// or the thread count.
template <class F>
double grid_sum(Backend backend, const GridSpec& grid, F&& f) {
  std::vector<double> rows(grid.nx, 0.0);
  if (backend == Backend::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < grid.nx; ++i) {
      double s = 0.0;
      for (int j = 0; j < grid.ny; ++j) s += f(i, j);
      rows[i] = s;
    }
  } else {
    for (int i = 0; i < grid.nx; ++i) {
      double s = 0.0;
      for (int j = 0; j < grid.ny; ++j) s += f(i, j);
      rows[i] = s;
    }
  }
  double total = 0.0;
  for (double r : rows) total += r;
  return total;
}

/// exp(-i H t) for Hermitian 2x2 H, via the Pauli decomposition.
Mat2c expm_hermitian2(const Mat2c& h, double t);

/// psi_c[n] <- sum_d u[n](c, d) psi_d[n] for a two-component field.
void apply_local_2x2(Backend backend, const std::vector<Mat2c>& u, cd* psi, std::size_t n);

/// psi_c[n] <- phase[n] * (u psi)_c[n]; an empty phase vector means 1.
void apply_uniform_2x2(Backend backend, const Mat2c& u, const std::vector<cd>& phase, cd* psi,
                       std::size_t n);

/// psi_c[n] <- phase[n] psi_c[n] for every component.
void apply_phase(Backend backend, const std::vector<cd>& phase, cd* psi, std::size_t n,
                 int components);

/// Laser configuration sampled on a grid. H0(r) = W(r) H0(0) W(r)^dagger with
/// W = diag(e^{-i k_j.r}, 1, 1), so the dressed states at r are W(r) times
/// those at the origin.
struct DressedGrid {
  LaserConfig config;
  GridSpec grid;
  Mat5c basis0;                 ///< eigenbasis() at r = 0
  std::array<double, 5> energies{};
  std::vector<cd> bare_phase;   ///< e^{-i k_j.r}, index j * points + n

  DressedGrid(const LaserConfig& config, const GridSpec& grid);
  Vec2 position(std::size_t n) const;
};

/// exp(-i H0(r) dt) at every grid point.
struct CouplingStep {
  const DressedGrid* dressed = nullptr;
  double dt = 0.0;
  Mat5c propagator0;  ///< exp(-i H0(0) dt) from the closed-form eigensystem

  CouplingStep(const DressedGrid& dressed, double dt);
};

void apply_coupling(Backend backend, const CouplingStep& step, cd* psi);

/// |<n(r)|psi(r)>|^2 integrated over the grid for the five dressed states in
/// eigenbasis() order.
std::array<double, 5> dressed_populations(Backend backend, const DressedGrid& dressed,
                                          const cd* psi);

/// Integral of psi^dagger H0(r) psi.
double coupling_energy(Backend backend, const DressedGrid& dressed, const cd* psi);

}  // namespace tripod::kernels
