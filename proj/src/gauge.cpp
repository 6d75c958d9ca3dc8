#include "tripod/gauge.hpp"

#include <cmath>
#include <numbers>

#include "tripod/errors.hpp"

namespace tripod {

namespace {

// Frames are independent of the Rabi amplitude up to energies; the gauge
// potentials never look at energies.
LaserConfig unit_coupling(const LaserConfig& config) {
  LaserConfig c = config;
  c.omega = 1.0;
  return c;
}

Mat2c hermitian_part(const Mat2c& m) { return 0.5 * (m + m.adjoint()); }

void check_step(const LaserConfig& config, double h) {
  const double scale = config.kappa > 0.0 ? config.kappa : 1.0;
  if (!(h >= 1e-12 / scale)) {
    throw StepTooSmall("difference step below 1e-12/kappa");
  }
}

struct FrameDerivative {
  DressedFrame frame;
  std::array<Mat5c, 2> gradient;  // per axis, columns follow eigenbasis()
};

FrameDerivative differentiate_frame(const LaserConfig& config, const Vec2& r, double h) {
  FrameDerivative d;
  d.frame = dressed_frame(config, r);
  for (int axis = 0; axis < 2; ++axis) {
    Vec2 step = Vec2::Zero();
    step(axis) = h;
    const Mat5c fwd = dressed_frame(config, r + step).eigenbasis();
    const Mat5c bwd = dressed_frame(config, r - step).eigenbasis();
    d.gradient[axis] = (fwd - bwd) / (2.0 * h);
  }
  return d;
}

MatrixVector2 connection_from(const FrameDerivative& d) {
  const Mat5c basis = d.frame.eigenbasis();
  MatrixVector2 a;
  for (int axis = 0; axis < 2; ++axis) {
    const Mat5c overlap = basis.adjoint() * d.gradient[axis];
    a[axis] = hermitian_part(cd(0, 1) * overlap.topLeftCorner<2, 2>());
  }
  return a;
}

Mat2c scalar_from(const FrameDerivative& d, double mass) {
  const Mat5c basis = d.frame.eigenbasis();
  Mat2c phi = Mat2c::Zero();
  for (int axis = 0; axis < 2; ++axis) {
    // <n|grad|m> for all pairs; rows/cols 2..4 are the excluded states.
    const Mat5c g = basis.adjoint() * d.gradient[axis];
    phi += g.block<2, 3>(0, 2) * g.block<3, 2>(2, 0);
  }
  return hermitian_part(-phi / (2.0 * mass));
}

}  // namespace

WaveVectors regular_triangle_wavevectors(double kappa) {
  if (!(kappa > 0.0)) throw InvalidKappa("kappa must be positive");
  WaveVectors k;
  for (int j = 0; j < 3; ++j) {
    const double angle = 2.0 * std::numbers::pi / 3.0 * (j - 1);
    k[j] = kappa * Vec2(std::cos(angle), std::sin(angle));
  }
  return k;
}

WaveVectors random_closed_triangle(std::mt19937_64& rng, double kappa) {
  std::uniform_real_distribution<double> length(0.3 * kappa, 1.5 * kappa);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  WaveVectors k;
  for (int j = 0; j < 2; ++j) {
    const double a = angle(rng);
    k[j] = length(rng) * Vec2(std::cos(a), std::sin(a));
  }
  k[2] = -k[0] - k[1];
  return k;
}

MatrixVector2 vector_potential_analytic(const LaserConfig& config) {
  MatrixVector2 a;
  for (int s = 0; s < 2; ++s) {
    for (int q = 0; q < 2; ++q) {
      for (int j = 0; j < 3; ++j) {
        const cd phase = std::polar(1.0, config.phases(j, s) - config.phases(j, q)) / 6.0;
        a.x(s, q) += config.wavevectors[j].x() * phase;
        a.y(s, q) += config.wavevectors[j].y() * phase;
      }
    }
  }
  return a;
}

Mat2c scalar_potential_analytic(const LaserConfig& config) {
  const DressedFrame frame = dressed_frame(unit_coupling(config), Vec2::Zero());
  const Mat5c basis = frame.eigenbasis();
  Mat2c phi = Mat2c::Zero();
  for (int axis = 0; axis < 2; ++axis) {
    Mat5c k = Mat5c::Zero();
    for (int j = 0; j < 3; ++j) k(j, j) = config.wavevectors[j](axis);
    // grad|n> = -i K|n>, so <s|grad|X><X|grad|q> = -<s|K|X><X|K|q>.
    const Mat5c kb = basis.adjoint() * k * basis;
    phi += kb.block<2, 3>(0, 2) * kb.block<3, 2>(2, 0);
  }
  return hermitian_part(phi / (2.0 * config.mass));
}

GaugeFields gauge_fields_analytic(const LaserConfig& config) {
  const MatrixVector2 a = vector_potential_analytic(config);
  return {a.x, a.y, scalar_potential_analytic(config)};
}

double default_difference_step(double kappa) { return 1e-4 / kappa; }

MatrixVector2 vector_potential_numeric(const LaserConfig& config, const Vec2& r, double h) {
  check_step(config, h);
  return connection_from(differentiate_frame(unit_coupling(config), r, h));
}

Mat2c scalar_potential_numeric(const LaserConfig& config, const Vec2& r, double h) {
  check_step(config, h);
  return scalar_from(differentiate_frame(unit_coupling(config), r, h), config.mass);
}

GaugeFields gauge_fields_numeric(const LaserConfig& config, const Vec2& r, double h) {
  check_step(config, h);
  const FrameDerivative d = differentiate_frame(unit_coupling(config), r, h);
  const MatrixVector2 a = connection_from(d);
  return {a.x, a.y, scalar_from(d, config.mass)};
}

ConvergenceCheck differencing_convergence(const LaserConfig& config, const Vec2& r, double h) {
  const GaugeFields exact = gauge_fields_analytic(config);
  const GaugeFields coarse = gauge_fields_numeric(config, r, h);
  const GaugeFields fine = gauge_fields_numeric(config, r, 0.5 * h);

  ConvergenceCheck c;
  c.a_error_h = max_abs_diff(coarse.vector_potential(), exact.vector_potential());
  c.a_error_half = max_abs_diff(fine.vector_potential(), exact.vector_potential());
  c.a_order = std::log2(c.a_error_h / c.a_error_half);
  c.phi_error_h = max_abs_diff(coarse.phi, exact.phi);
  c.phi_error_half = max_abs_diff(fine.phi, exact.phi);
  c.phi_order = std::log2(c.phi_error_h / c.phi_error_half);
  return c;
}

GaugeFields rashba_relabel(const GaugeFields& fields) {
  return {fields.a_y, fields.a_x, fields.phi};
}

double max_abs_diff(const Mat2c& a, const Mat2c& b) { return (a - b).cwiseAbs().maxCoeff(); }

double max_abs_diff(const MatrixVector2& a, const MatrixVector2& b) {
  return std::max(max_abs_diff(a.x, b.x), max_abs_diff(a.y, b.y));
}

}  // namespace tripod
