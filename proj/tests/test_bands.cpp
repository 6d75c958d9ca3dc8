#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "tripod/bands.hpp"
#include "tripod/errors.hpp"

using namespace tripod;

namespace {

EffectiveHamiltonianSpec regular(double kappa = 1.0, double mass = 1.0) {
  const LaserConfig c = LaserConfig::canonical(1.0, kappa, mass);
  return {gauge_fields_analytic(c), mass, std::nullopt};
}

// E_-+(k) = (1/2m)(k^2 -+ kappa|k|/2 + kappa^2/8) + phi
std::array<double, 2> closed_form(const Vec2& k, double kappa, double mass, double phi) {
  const double kk = k.norm();
  return {(k.squaredNorm() - kappa * kk / 2.0 + kappa * kappa / 8.0) / (2.0 * mass) + phi,
          (k.squaredNorm() + kappa * kk / 2.0 + kappa * kappa / 8.0) / (2.0 * mass) + phi};
}

std::array<double, 2> brute_force(const Mat2c& h) {
  Eigen::SelfAdjointEigenSolver<Mat2c> s(h);
  return {s.eigenvalues()(0), s.eigenvalues()(1)};
}

}  // namespace

TEST_CASE("bloch hamiltonian at k = 0") {
  const EffectiveHamiltonianSpec spec = regular();
  const Mat2c h = bloch_hamiltonian(spec, Vec2::Zero());
  // (1/2m)(A_x^2 + A_y^2) = kappa^2/16m times the identity.
  const Mat2c expected = Mat2c::Identity() / 16.0 + spec.fields.phi;
  CHECK(max_abs_diff(h, expected) < 1e-15);
  const auto ev = hermitian_eigenvalues(h);
  CHECK(ev[1] - ev[0] < 1e-15);
}

TEST_CASE("zero gauge fields give the free particle") {
  const EffectiveHamiltonianSpec spec{GaugeFields{}, 2.0, std::nullopt};
  const Vec2 k(0.3, -1.1);
  CHECK(max_abs_diff(bloch_hamiltonian(spec, k), k.squaredNorm() / 4.0 * Mat2c::Identity()) < 1e-15);
}

TEST_CASE("lower band on the ring") {
  const EffectiveHamiltonianSpec spec = regular();
  const double recoil = 0.5;
  const double phi = spec.fields.phi(0, 0).real();
  const auto ev = hermitian_eigenvalues(bloch_hamiltonian(spec, Vec2(0.25, 0.0)));
  CHECK(ev[0] == doctest::Approx(recoil / 16.0 + phi).epsilon(1e-14));
  CHECK(ev[1] - ev[0] == doctest::Approx(recoil / 4.0).epsilon(1e-14));
}

TEST_CASE("bands match the closed form and brute-force diagonalisation") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (double mass : {1.0, 0.5}) {
    const EffectiveHamiltonianSpec spec = regular(1.0, mass);
    const double phi = spec.fields.phi(0, 0).real();
    for (int n = 0; n < 1000; ++n) {
      const Vec2 k(u(rng), u(rng));
      const Mat2c h = bloch_hamiltonian(spec, k);
      const auto ev = hermitian_eigenvalues(h);
      const auto cf = closed_form(k, 1.0, mass, phi);
      const auto bf = brute_force(h);
      CHECK(std::abs(ev[0] - cf[0]) <= 1e-12);
      CHECK(std::abs(ev[1] - cf[1]) <= 1e-12);
      CHECK(std::abs(ev[0] - bf[0]) <= 1e-12);
      CHECK(std::abs(ev[1] - bf[1]) <= 1e-12);
      CHECK(ev[1] - ev[0] > 0.0);
    }
  }
}

TEST_CASE("dispersion ring and gap") {
  const EffectiveHamiltonianSpec spec = regular();
  const PolarGrid grid{1.0, 513, 32};
  const DispersionResult d = dispersion(spec, grid);
  CHECK(std::abs(d.ring_radius - 0.25) <= grid.radial_spacing());
  for (std::size_t n = 0; n < d.k_grid.size(); ++n) CHECK(d.upper_band[n] >= d.lower_band[n]);

  const double phi = spec.fields.phi(0, 0).real();
  CHECK(d.min_energy == doctest::Approx(0.5 / 16.0 + phi).epsilon(1e-6));
  const auto ev = hermitian_eigenvalues(bloch_hamiltonian(spec, Vec2(0.0, d.ring_radius)));
  CHECK(ev[1] - ev[0] == doctest::Approx(0.5 / 4.0).epsilon(1e-3));
}

TEST_CASE("free particle has its minimum at the origin") {
  const EffectiveHamiltonianSpec spec{GaugeFields{}, 1.0, std::nullopt};
  const DispersionResult d = dispersion(spec, PolarGrid{1.0, 256, 16});
  CHECK(d.ring_radius == 0.0);
  CHECK(d.min_energy == doctest::Approx(0.0));
}

TEST_CASE("ring radius converges under refinement") {
  const EffectiveHamiltonianSpec spec = regular();
  double previous = 1.0;
  for (int n : {129, 257, 513, 1025}) {
    const DispersionResult d = dispersion(spec, PolarGrid{1.0, n, 8});
    const double err = std::abs(d.ring_radius - 0.25);
    CHECK(err <= previous + 1e-15);
    previous = err;
  }
  CHECK(previous < 1e-6);
}

TEST_CASE("bands are isotropic") {
  const EffectiveHamiltonianSpec spec = regular();
  const PolarGrid grid{1.0, 129, 24};
  const DispersionResult d = dispersion(spec, grid);
  for (int ir = 0; ir < grid.n_radial; ++ir) {
    const double ref = d.lower_band[ir * grid.n_angular];
    for (int ia = 1; ia < grid.n_angular; ++ia) {
      CHECK(std::abs(d.lower_band[ir * grid.n_angular + ia] - ref) < 1e-13);
    }
  }
}

TEST_CASE("relabelled fields give the mirrored dispersion") {
  const EffectiveHamiltonianSpec spec = regular();
  EffectiveHamiltonianSpec relabelled = spec;
  relabelled.fields = rashba_relabel(spec.fields);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 0; n < 200; ++n) {
    const Vec2 k(u(rng), u(rng));
    const auto a = hermitian_eigenvalues(bloch_hamiltonian(spec, k));
    const auto b = hermitian_eigenvalues(bloch_hamiltonian(relabelled, Vec2(k.y(), k.x())));
    CHECK(std::abs(a[0] - b[0]) < 1e-14);
    CHECK(std::abs(a[1] - b[1]) < 1e-14);
  }

  const PolarGrid grid{1.0, 129, 16};
  auto sorted = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto da = dispersion(spec, grid);
  const auto db = dispersion(relabelled, grid);
  const auto la = sorted(da.lower_band), lb = sorted(db.lower_band);
  for (std::size_t n = 0; n < la.size(); ++n) CHECK(std::abs(la[n] - lb[n]) < 1e-13);
}

TEST_CASE("bands touch only at the origin") {
  const EffectiveHamiltonianSpec spec = regular();
  const DispersionResult d = dispersion(spec, PolarGrid{1.0, 257, 16});
  for (std::size_t n = 0; n < d.k_grid.size(); ++n) {
    const double gap = d.upper_band[n] - d.lower_band[n];
    if (d.k_grid[n].norm() == 0.0) {
      CHECK(gap < 1e-15);
    } else {
      CHECK(gap > 0.0);
    }
  }
}

TEST_CASE("band errors") {
  EffectiveHamiltonianSpec spec = regular();
  CHECK_THROWS_AS(dispersion(spec, PolarGrid{1.0, 64, 8}), GridTooCoarse);
  spec.external_potential = HarmonicTrap{0.1};
  CHECK_THROWS_AS(bloch_hamiltonian(spec, Vec2::Zero()), PotentialPresent);
}
