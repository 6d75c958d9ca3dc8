#include "tripod/bands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tripod/errors.hpp"

namespace tripod {

Mat2c bloch_hamiltonian(const EffectiveHamiltonianSpec& spec, const Vec2& k) {
  if (spec.external_potential) {
    throw PotentialPresent("momentum-space Hamiltonian requires V = 0");
  }
  const Mat2c px = k.x() * Mat2c::Identity() - spec.fields.a_x;
  const Mat2c py = k.y() * Mat2c::Identity() - spec.fields.a_y;
  return (px * px + py * py) / (2.0 * spec.mass) + spec.fields.phi;
}

std::array<double, 2> hermitian_eigenvalues(const Mat2c& h) {
  const double mean = 0.5 * (h(0, 0).real() + h(1, 1).real());
  const double half_diff = 0.5 * (h(0, 0).real() - h(1, 1).real());
  const double radius = std::hypot(half_diff, std::abs(h(0, 1)));
  return {mean - radius, mean + radius};
}

std::vector<Vec2> PolarGrid::points() const {
  std::vector<Vec2> pts;
  pts.reserve(static_cast<size_t>(n_radial) * n_angular);
  for (int ir = 0; ir < n_radial; ++ir) {
    const double kr = ir * radial_spacing();
    for (int ia = 0; ia < n_angular; ++ia) {
      const double a = 2.0 * std::numbers::pi * ia / n_angular;
      pts.emplace_back(kr * std::cos(a), kr * std::sin(a));
    }
  }
  return pts;
}

DispersionResult dispersion(const EffectiveHamiltonianSpec& spec, const PolarGrid& grid) {
  if (grid.n_radial < 3 || grid.n_angular < 1 || !(grid.k_max > 0.0) ||
      grid.radial_spacing() > grid.k_max / 128.0) {
    throw GridTooCoarse("radial spacing must not exceed k_max/128");
  }

  DispersionResult out;
  out.k_grid = grid.points();
  const auto n = static_cast<std::ptrdiff_t>(out.k_grid.size());
  out.lower_band.resize(n);
  out.upper_band.resize(n);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto ev = hermitian_eigenvalues(bloch_hamiltonian(spec, out.k_grid[i]));
    out.lower_band[i] = ev[0];
    out.upper_band[i] = ev[1];
  }

  std::vector<double> radial_min(grid.n_radial, std::numeric_limits<double>::infinity());
  for (int ir = 0; ir < grid.n_radial; ++ir) {
    for (int ia = 0; ia < grid.n_angular; ++ia) {
      radial_min[ir] = std::min(radial_min[ir], out.lower_band[ir * grid.n_angular + ia]);
    }
  }
  const int best = static_cast<int>(
      std::min_element(radial_min.begin(), radial_min.end()) - radial_min.begin());

  // At the origin the band is even in |k|, so mirror the first sample.
  const double left = best == 0 ? radial_min[1] : radial_min[best - 1];
  const double mid = radial_min[best];
  const double right = best == grid.n_radial - 1 ? radial_min[best - 1] : radial_min[best + 1];
  const double curvature = left - 2.0 * mid + right;
  double offset = 0.0;
  if (curvature > 0.0) offset = std::clamp(0.5 * (left - right) / curvature, -1.0, 1.0);
  if (best == 0) offset = 0.0;

  const double h = grid.radial_spacing();
  out.ring_radius = (best + offset) * h;
  out.min_energy = mid - 0.25 * (left - right) * offset;
  return out;
}

}  // namespace tripod
