#include "tripod/atomlight.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tripod/errors.hpp"
#include "tripod/gauge.hpp"

namespace tripod {

PhaseMatrix default_phases() {
  PhaseMatrix s;
  for (int j = 0; j < 3; ++j) {
    for (int p = 0; p < 2; ++p) {
      // 1-based: (-1)^p (pi/3)(j-2)  ->  0-based p=0 carries the minus sign.
      const double sign = (p == 0) ? -1.0 : 1.0;
      s(j, p) = sign * std::numbers::pi / 3.0 * (j - 1);
    }
  }
  return s;
}

LaserConfig LaserConfig::canonical(double omega, double kappa, double mass) {
  LaserConfig c;
  c.omega = omega;
  c.kappa = kappa;
  c.mass = mass;
  c.wavevectors = regular_triangle_wavevectors(kappa);
  c.phases = default_phases();
  return c;
}

double orthogonality_residual(const PhaseMatrix& phases) {
  cd sum = 0.0;
  for (int j = 0; j < 3; ++j) {
    sum += std::polar(1.0, phases(j, 1) - phases(j, 0));
  }
  return std::abs(sum) / 3.0;
}

RabiMatrix rabi_matrix(const LaserConfig& config, const Vec2& r) {
  RabiMatrix rabi;
  for (int p = 0; p < 2; ++p) {
    double norm2 = 0.0;
    for (int j = 0; j < 3; ++j) {
      const cd v = std::polar(config.omega, config.wavevectors[j].dot(r) + config.phases(j, p));
      rabi.values(j, p) = v;
      norm2 += std::norm(v);
    }
    rabi.totals[p] = std::sqrt(norm2);
  }
  return rabi;
}

Mat5c build_hamiltonian(const RabiMatrix& rabi) {
  Mat5c h = Mat5c::Zero();
  for (int p = 0; p < 2; ++p) {
    for (int j = 0; j < 3; ++j) {
      h(3 + p, j) = -rabi.values(j, p);
      h(j, 3 + p) = -std::conj(rabi.values(j, p));
    }
  }
  return h;
}

Mat5c DressedFrame::eigenbasis() const {
  Mat5c m;
  m.col(0) = plus[0];
  m.col(1) = plus[1];
  m.col(2) = dark;
  m.col(3) = minus[0];
  m.col(4) = minus[1];
  return m;
}

const Vec5c& DressedFrame::state(int n) const {
  switch (n) {
    case 0: return plus[0];
    case 1: return plus[1];
    case 2: return dark;
    case 3: return minus[0];
    default: return minus[1];
  }
}

Vec3c dark_profile(const PhaseMatrix& phases) {
  Vec3c b1, b2;
  for (int j = 0; j < 3; ++j) {
    b1(j) = std::polar(1.0, -phases(j, 0)) / std::sqrt(3.0);
    b2(j) = std::polar(1.0, -phases(j, 1)) / std::sqrt(3.0);
  }
  // conj(a x b) is orthogonal to a and b under the Hermitian product.
  Vec3c d = b1.cross(b2).conjugate();
  d.normalize();
  for (int j = 0; j < 3; ++j) {
    if (std::abs(d(j)) > 1e-8) {
      d *= std::conj(d(j)) / std::abs(d(j));
      break;
    }
  }
  return d;
}

DressedFrame dressed_frame(const LaserConfig& config, const Vec2& r) {
  if (!(config.omega > 0.0)) {
    throw DegenerateCoupling("Rabi amplitude must be positive to build the dressed frame");
  }
  const double residual = orthogonality_residual(config.phases);
  if (residual > kOrthogonalityTolerance) {
    std::ostringstream msg;
    msg << "|<B2|B1>| = " << residual << " exceeds " << kOrthogonalityTolerance;
    throw OrthogonalityViolation(msg.str());
  }

  const RabiMatrix rabi = rabi_matrix(config, r);
  const Vec3c profile = dark_profile(config.phases);

  DressedFrame f;
  f.position = r;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int p = 0; p < 2; ++p) {
    Vec5c b = Vec5c::Zero();
    for (int j = 0; j < 3; ++j) b(j) = std::conj(rabi.values(j, p)) / rabi.totals[p];
    Vec5c e = Vec5c::Zero();
    e(3 + p) = 1.0;
    f.bright[p] = b;
    f.plus[p] = (b + e) * inv_sqrt2;
    f.minus[p] = (b - e) * inv_sqrt2;
  }
  for (int j = 0; j < 3; ++j) {
    f.dark(j) = std::polar(1.0, -config.wavevectors[j].dot(r)) * profile(j);
  }
  f.energies = {-rabi.totals[0], -rabi.totals[1], 0.0, rabi.totals[0], rabi.totals[1]};
  return f;
}

std::array<double, 5> hermitian_spectrum(const Mat5c& h) {
  Eigen::SelfAdjointEigenSolver<Mat5c> solver(h, Eigen::EigenvaluesOnly);
  std::array<double, 5> out{};
  for (int i = 0; i < 5; ++i) out[i] = solver.eigenvalues()(i);
  return out;
}

FrameCheck verify_frame_against_eigensolver(const LaserConfig& config, const Vec2& r) {
  FrameCheck check;
  const Mat5c h = build_hamiltonian(rabi_matrix(config, r));
  Eigen::SelfAdjointEigenSolver<Mat5c> solver(h);

  if (!(config.omega > 0.0)) {
    check.totally_degenerate = true;
    check.eigenvalue_deviation = solver.eigenvalues().cwiseAbs().maxCoeff();
    return check;
  }

  const DressedFrame frame = dressed_frame(config, r);
  std::array<double, 5> analytic = frame.energies;
  std::sort(analytic.begin(), analytic.end());
  for (int i = 0; i < 5; ++i) {
    check.eigenvalue_deviation =
        std::max(check.eigenvalue_deviation, std::abs(solver.eigenvalues()(i) - analytic[i]));
  }

  Eigen::Matrix<cd, 5, 2> qa;
  qa.col(0) = frame.plus[0];
  qa.col(1) = frame.plus[1];
  const Eigen::Matrix<cd, 5, 2> qn = solver.eigenvectors().leftCols<2>();
  const Eigen::Matrix<cd, 5, 2> rest = qn - qa * (qa.adjoint() * qn);
  Eigen::JacobiSVD<Eigen::Matrix<cd, 5, 2>> svd(rest);
  const double s = std::min(1.0, svd.singularValues()(0));
  check.subspace_angle = std::asin(s);
  return check;
}

}  // namespace tripod
