#include <cmath>
#include <random>

#include "doctest.h"
#include "tripod/gauge.hpp"
#include "tripod/kernels.hpp"

using namespace tripod;
using kernels::Backend;

namespace {

std::vector<cd> random_field(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cd> v(n);
  for (cd& x : v) x = {g(rng), g(rng)};
  return v;
}

double max_diff(const std::vector<cd>& a, const std::vector<cd>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Mat2c random_hermitian(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat2c m;
  m << g(rng), cd(g(rng), g(rng)), 0.0, g(rng);
  m(1, 0) = std::conj(m(0, 1));
  return m;
}

const GridSpec kGrid{16, 32, 12.0, 20.0, 0.05, 0, 1};

}  // namespace

TEST_CASE("2x2 exponential matches eigen-decomposition") {
  std::mt19937_64 rng(1);
  for (int n = 0; n < 100; ++n) {
    const Mat2c h = random_hermitian(rng);
    const double t = 0.37;
    Eigen::SelfAdjointEigenSolver<Mat2c> s(h);
    const Eigen::Vector2cd phases(std::polar(1.0, -s.eigenvalues()(0) * t),
                                  std::polar(1.0, -s.eigenvalues()(1) * t));
    const Mat2c oracle = s.eigenvectors() * phases.asDiagonal() * s.eigenvectors().adjoint();
    const Mat2c u = kernels::expm_hermitian2(h, t);
    CHECK((u - oracle).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((u.adjoint() * u - Mat2c::Identity()).cwiseAbs().maxCoeff() < 1e-14);
  }
  // Scalar matrices (r = 0) are a pure phase.
  const Mat2c u = kernels::expm_hermitian2(0.7 * Mat2c::Identity(), 2.0);
  CHECK((u - std::polar(1.0, -1.4) * Mat2c::Identity()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("local and uniform 2x2 kernels agree across backends") {
  const std::size_t n = kGrid.points();
  std::mt19937_64 rng(2);
  std::vector<Mat2c> u(n);
  for (auto& m : u) m = kernels::expm_hermitian2(random_hermitian(rng), 0.3);
  const auto psi = random_field(2 * n, 3);

  auto a = psi, b = psi;
  kernels::apply_local_2x2(Backend::parallel, u, a.data(), n);
  kernels::apply_local_2x2(Backend::reference, u, b.data(), n);
  CHECK(max_diff(a, b) < 1e-14);

  const Mat2c single = u[5];
  const auto phase = random_field(n, 4);
  a = psi;
  b = psi;
  kernels::apply_uniform_2x2(Backend::parallel, single, phase, a.data(), n);
  kernels::apply_uniform_2x2(Backend::reference, single, phase, b.data(), n);
  CHECK(max_diff(a, b) < 1e-13);

  a = psi;
  b = psi;
  kernels::apply_uniform_2x2(Backend::parallel, single, {}, a.data(), n);
  kernels::apply_uniform_2x2(Backend::reference, single, {}, b.data(), n);
  CHECK(max_diff(a, b) < 1e-14);
}

TEST_CASE("phase kernel agrees across backends") {
  const std::size_t n = kGrid.points();
  const auto psi = random_field(5 * n, 5);
  const auto phase = random_field(n, 6);
  auto a = psi, b = psi;
  kernels::apply_phase(Backend::parallel, phase, a.data(), n, 5);
  kernels::apply_phase(Backend::reference, phase, b.data(), n, 5);
  CHECK(max_diff(a, b) == 0.0);
}

TEST_CASE("coupling step: factorised form equals per-point spectral sum") {
  for (double omega : {0.5, 20.0}) {
    const LaserConfig c = LaserConfig::canonical(omega);
    const kernels::DressedGrid dg(c, kGrid);
    const kernels::CouplingStep step(dg, 0.013);
    const auto psi = random_field(5 * kGrid.points(), 7);
    auto a = psi, b = psi;
    kernels::apply_coupling(Backend::parallel, step, a.data());
    kernels::apply_coupling(Backend::reference, step, b.data());
    CHECK(max_diff(a, b) < 1e-12);
  }
}

TEST_CASE("coupling step is the exponential of H0") {
  const LaserConfig c = LaserConfig::canonical(3.0);
  const GridSpec g{4, 4, 7.0, 5.0, 0.1, 0, 1};
  const kernels::DressedGrid dg(c, g);
  const double dt = 0.21;
  const kernels::CouplingStep step(dg, dt);
  const auto psi = random_field(5 * g.points(), 8);
  auto out = psi;
  kernels::apply_coupling(Backend::parallel, step, out.data());
  for (std::size_t n = 0; n < g.points(); ++n) {
    Mat5c h = build_hamiltonian(rabi_matrix(c, dg.position(n)));
    Eigen::SelfAdjointEigenSolver<Mat5c> s(h);
    Eigen::Matrix<cd, 5, 1> ph;
    for (int i = 0; i < 5; ++i) ph(i) = std::polar(1.0, -s.eigenvalues()(i) * dt);
    const Mat5c u = s.eigenvectors() * ph.asDiagonal() * s.eigenvectors().adjoint();
    Vec5c v;
    for (int k = 0; k < 5; ++k) v(k) = psi[k * g.points() + n];
    const Vec5c expected = u * v;
    for (int k = 0; k < 5; ++k) CHECK(std::abs(out[k * g.points() + n] - expected(k)) < 1e-12);
  }
}

TEST_CASE("dressed populations and coupling energy agree across backends") {
  const LaserConfig c = LaserConfig::canonical(2.0);
  const kernels::DressedGrid dg(c, kGrid);
  const auto psi = random_field(5 * kGrid.points(), 9);
  const auto pa = kernels::dressed_populations(Backend::parallel, dg, psi.data());
  const auto pb = kernels::dressed_populations(Backend::reference, dg, psi.data());
  double total = 0.0, direct = 0.0;
  for (int l = 0; l < 5; ++l) {
    CHECK(pa[l] == doctest::Approx(pb[l]).epsilon(1e-12));
    total += pa[l];
  }
  for (const cd& v : psi) direct += std::norm(v);
  CHECK(total == doctest::Approx(direct * kGrid.cell_area()).epsilon(1e-12));

  const double ea = kernels::coupling_energy(Backend::parallel, dg, psi.data());
  const double eb = kernels::coupling_energy(Backend::reference, dg, psi.data());
  CHECK(ea == doctest::Approx(eb).epsilon(1e-12));
}

TEST_CASE("grid sums are backend independent") {
  auto f = [](int i, int j) { return std::sin(0.1 * i) * std::cos(0.37 * j) + 1e-9 * i * j; };
  const double a = kernels::grid_sum(Backend::parallel, kGrid, f);
  const double b = kernels::grid_sum(Backend::reference, kGrid, f);
  CHECK(a == b);
}
