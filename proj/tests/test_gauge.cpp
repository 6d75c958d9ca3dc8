#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "tripod/errors.hpp"
#include "tripod/gauge.hpp"

using namespace tripod;

namespace {

// Literal closed form for the default phases with 1-based s, q:
// A_{s,q} = (1/6) sum_j k_j exp(i (2 pi / 3)(j - 2)(s - q)).
MatrixVector2 closed_form_connection(const WaveVectors& k) {
  MatrixVector2 a;
  for (int s = 1; s <= 2; ++s) {
    for (int q = 1; q <= 2; ++q) {
      for (int j = 1; j <= 3; ++j) {
        const cd ph = std::polar(1.0, 2.0 * std::numbers::pi / 3.0 * (j - 2) * (s - q)) / 6.0;
        a.x(s - 1, q - 1) += k[j - 1].x() * ph;
        a.y(s - 1, q - 1) += k[j - 1].y() * ph;
      }
    }
  }
  return a;
}

// Completeness: sum over all states of A_{sn} A_{nq} is <grad s|grad q>, so
// the excluded-state sum is that minus the in-doublet part. For the ground
// doublet <grad s|grad s> = (1/2)(1/3) sum_j |k_j|^2.
double scalar_diagonal_oracle(const WaveVectors& k, const MatrixVector2& a, double mass) {
  double grad2 = 0.0;
  for (const auto& v : k) grad2 += v.squaredNorm();
  grad2 /= 6.0;
  const double inside = std::norm(a.x(0, 0)) + std::norm(a.x(0, 1)) + std::norm(a.y(0, 0)) +
                        std::norm(a.y(0, 1));
  return (grad2 - inside) / (2.0 * mass);
}

}  // namespace

TEST_CASE("regular triangle wave vectors") {
  const WaveVectors k = regular_triangle_wavevectors(1.0);
  CHECK((k[1] - Vec2(1.0, 0.0)).norm() < 1e-15);
  CHECK((k[0] - Vec2(-0.5, -std::sqrt(3.0) / 2.0)).norm() < 1e-15);
  CHECK((k[2] - Vec2(-0.5, std::sqrt(3.0) / 2.0)).norm() < 1e-15);
  CHECK((k[0] + k[1] + k[2]).norm() < 1e-15);

  for (const Vec2& v : regular_triangle_wavevectors(2.5)) CHECK(v.norm() == doctest::Approx(2.5));
  CHECK_THROWS_AS(regular_triangle_wavevectors(0.0), InvalidKappa);
  CHECK_THROWS_AS(regular_triangle_wavevectors(-1.0), InvalidKappa);
}

TEST_CASE("analytic connection for the regular triangle is kappa/4 sigma") {
  for (double kappa : {1.0, 0.7, 3.0}) {
    const LaserConfig c = LaserConfig::canonical(1.0, kappa);
    const MatrixVector2 a = vector_potential_analytic(c);
    CHECK(max_abs_diff(a.x, kappa / 4.0 * pauli_x()) < 1e-15 * kappa);
    CHECK(max_abs_diff(a.y, kappa / 4.0 * pauli_y()) < 1e-15 * kappa);
    CHECK(max_abs_diff(a, closed_form_connection(c.wavevectors)) < 1e-15 * kappa);
  }
  const MatrixVector2 a = vector_potential_analytic(LaserConfig::canonical(1.0));
  CHECK(std::abs(a.x(0, 1) - cd(0.25, 0.0)) < 1e-15);
  CHECK(std::abs(a.y(0, 1) - cd(0.0, -0.25)) < 1e-15);
}

TEST_CASE("zero wave vectors give no gauge fields") {
  LaserConfig c = LaserConfig::canonical(1.0);
  c.wavevectors = {Vec2::Zero(), Vec2::Zero(), Vec2::Zero()};
  const GaugeFields analytic = gauge_fields_analytic(c);
  CHECK(analytic.a_x.cwiseAbs().maxCoeff() == 0.0);
  CHECK(analytic.a_y.cwiseAbs().maxCoeff() == 0.0);
  CHECK(analytic.phi.cwiseAbs().maxCoeff() == 0.0);
  const GaugeFields numeric = gauge_fields_numeric(c, Vec2(1.0, 2.0), 1e-4);
  CHECK(numeric.a_x.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(numeric.a_y.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(numeric.phi.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("closed triangles have a traceless-diagonal connection") {
  std::mt19937_64 rng(2024);
  for (int n = 0; n < 50; ++n) {
    LaserConfig c = LaserConfig::canonical(1.0);
    c.wavevectors = random_closed_triangle(rng, 1.0);
    const MatrixVector2 a = vector_potential_analytic(c);
    CHECK(std::abs(a.x(0, 0)) <= 1e-12);
    CHECK(std::abs(a.x(1, 1)) <= 1e-12);
    CHECK(std::abs(a.y(0, 0)) <= 1e-12);
    CHECK(std::abs(a.y(1, 1)) <= 1e-12);
    CHECK(max_abs_diff(a, closed_form_connection(c.wavevectors)) < 1e-14);

    const MatrixVector2 num = vector_potential_numeric(c, Vec2(0.4, -0.9), 1e-4);
    CHECK(std::abs(num.x(0, 0)) <= 1e-7);
    CHECK(std::abs(num.y(1, 1)) <= 1e-7);
  }
}

TEST_CASE("open triangles keep the diagonal sum_j k_j / 6") {
  LaserConfig c = LaserConfig::canonical(1.0);
  c.wavevectors = {Vec2(1.0, 0.0), Vec2(0.5, 0.5), Vec2(0.0, -0.2)};
  const MatrixVector2 a = vector_potential_analytic(c);
  CHECK(a.x(0, 0).real() == doctest::Approx(1.5 / 6.0));
  CHECK(a.y(1, 1).real() == doctest::Approx(0.3 / 6.0));
}

TEST_CASE("numeric connection matches the closed form at second order") {
  const LaserConfig c = LaserConfig::canonical(1.0);
  const double h = default_difference_step(c.kappa);
  CHECK(h == 1e-4);
  const MatrixVector2 num = vector_potential_numeric(c, Vec2::Zero(), h);
  CHECK(max_abs_diff(num, vector_potential_analytic(c)) <= 1e-6);

  const ConvergenceCheck conv = differencing_convergence(c, Vec2(0.7, 0.2), h);
  CHECK(conv.a_error_h <= 1e-6);
  CHECK(conv.a_order >= 1.9);
  CHECK(conv.phi_order >= 1.9);
}

TEST_CASE("numeric potentials are position independent") {
  const LaserConfig c = LaserConfig::canonical(1.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  const GaugeFields ref = gauge_fields_numeric(c, Vec2::Zero(), 1e-4);
  for (int n = 0; n < 20; ++n) {
    const GaugeFields g = gauge_fields_numeric(c, Vec2(u(rng), u(rng)), 1e-4);
    CHECK(max_abs_diff(g.vector_potential(), ref.vector_potential()) <= 1e-6);
    CHECK(max_abs_diff(g.phi, ref.phi) <= 1e-6);
  }
}

TEST_CASE("scalar potential of the regular triangle") {
  for (double mass : {1.0, 0.5, 2.0}) {
    const LaserConfig c = LaserConfig::canonical(1.0, 1.0, mass);
    const Mat2c analytic = scalar_potential_analytic(c);
    const Mat2c numeric = scalar_potential_numeric(c, Vec2::Zero(), 1e-4);
    const double oracle = scalar_diagonal_oracle(c.wavevectors, vector_potential_analytic(c), mass);

    CHECK(oracle == doctest::Approx(3.0 / (16.0 * mass)));
    CHECK(max_abs_diff(analytic, oracle * Mat2c::Identity()) < 1e-14);
    CHECK(max_abs_diff(numeric, analytic) <= 1e-6);
    // In recoil units the offset is 3/8 E_r.
    CHECK(analytic(0, 0).real() / c.units().energy() == doctest::Approx(0.375));
  }
}

TEST_CASE("scalar potential for irregular triangles matches the completeness oracle") {
  std::mt19937_64 rng(99);
  for (int n = 0; n < 10; ++n) {
    LaserConfig c = LaserConfig::canonical(1.0);
    c.wavevectors = random_closed_triangle(rng, 1.0);
    const Mat2c phi = scalar_potential_analytic(c);
    const double oracle = scalar_diagonal_oracle(c.wavevectors, vector_potential_analytic(c), c.mass);
    CHECK(phi(0, 0).real() == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(max_abs_diff(scalar_potential_numeric(c, Vec2(1.0, 1.0), 1e-4), phi) <= 1e-6);
  }
}

TEST_CASE("gauge fields are Hermitian and Phi is positive semidefinite") {
  const LaserConfig c = LaserConfig::canonical(1.0);
  const GaugeFields g = gauge_fields_numeric(c, Vec2(3.0, -2.0), 1e-4);
  CHECK(max_abs_diff(g.a_x, g.a_x.adjoint()) <= 1e-12);
  CHECK(max_abs_diff(g.a_y, g.a_y.adjoint()) <= 1e-12);
  CHECK(max_abs_diff(g.phi, g.phi.adjoint()) <= 1e-12);
  Eigen::SelfAdjointEigenSolver<Mat2c> solver(g.phi);
  CHECK(solver.eigenvalues().minCoeff() >= 0.0);
}

TEST_CASE("difference step guard") {
  const LaserConfig c = LaserConfig::canonical(1.0);
  CHECK_THROWS_AS(vector_potential_numeric(c, Vec2::Zero(), 1e-13), StepTooSmall);
  CHECK_THROWS_AS(scalar_potential_numeric(c, Vec2::Zero(), 0.0), StepTooSmall);
  CHECK_NOTHROW(vector_potential_numeric(c, Vec2::Zero(), 1e-12));
}

TEST_CASE("rashba relabel swaps the Cartesian components") {
  const GaugeFields d = gauge_fields_analytic(LaserConfig::canonical(1.0));
  const GaugeFields r = rashba_relabel(d);
  CHECK(max_abs_diff(r.a_x, 0.25 * pauli_y()) < 1e-15);
  CHECK(max_abs_diff(r.a_y, 0.25 * pauli_x()) < 1e-15);
  CHECK(max_abs_diff(r.phi, d.phi) == 0.0);

  const GaugeFields twice = rashba_relabel(r);
  CHECK(max_abs_diff(twice.vector_potential(), d.vector_potential()) == 0.0);

  const GaugeFields zero = rashba_relabel(GaugeFields{});
  CHECK(zero.a_x.cwiseAbs().maxCoeff() == 0.0);
  CHECK(zero.a_y.cwiseAbs().maxCoeff() == 0.0);
}
