#include "tripod/kernels.hpp"

#include <cmath>

namespace tripod::kernels {

namespace {

using Index = std::ptrdiff_t;

Mat5c spectral_propagator(const DressedFrame& frame, double dt) {
  Mat5c u = Mat5c::Zero();
  for (int n = 0; n < 5; ++n) {
    const Vec5c& v = frame.state(n);
    u += std::polar(1.0, -frame.energies[n] * dt) * (v * v.adjoint());
  }
  return u;
}

Vec5c gather(const cd* psi, std::size_t points, std::size_t n) {
  Vec5c v;
  for (int c = 0; c < 5; ++c) v(c) = psi[c * points + n];
  return v;
}

void scatter(const Vec5c& v, cd* psi, std::size_t points, std::size_t n) {
  for (int c = 0; c < 5; ++c) psi[c * points + n] = v(c);
}

// W(r)^dagger psi: strip the laser phases from the bare components.
Vec5c to_origin_frame(const DressedGrid& d, const cd* psi, std::size_t n) {
  const std::size_t points = d.grid.points();
  Vec5c v = gather(psi, points, n);
  for (int j = 0; j < 3; ++j) v(j) *= std::conj(d.bare_phase[j * points + n]);
  return v;
}

}  // namespace

Mat2c expm_hermitian2(const Mat2c& h, double t) {
  const double h0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
  const double hz = 0.5 * (h(0, 0).real() - h(1, 1).real());
  const cd off = h(0, 1);  // hx - i hy
  const double r = std::hypot(hz, std::abs(off));
  const cd global = std::polar(1.0, -h0 * t);
  const double c = std::cos(r * t);
  // sin(r t)/r, finite at r = 0
  const double s = r > 0.0 ? std::sin(r * t) / r : t;
  Mat2c u;
  u(0, 0) = global * cd(c, -s * hz);
  u(1, 1) = global * cd(c, s * hz);
  u(0, 1) = global * cd(0.0, -s) * off;
  u(1, 0) = global * cd(0.0, -s) * std::conj(off);
  return u;
}

void apply_local_2x2(Backend backend, const std::vector<Mat2c>& u, cd* psi, std::size_t n) {
  cd* a = psi;
  cd* b = psi + n;
  if (backend == Backend::parallel) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < static_cast<Index>(n); ++i) {
      const Mat2c& m = u[i];
      const cd x = a[i], y = b[i];
      a[i] = m(0, 0) * x + m(0, 1) * y;
      b[i] = m(1, 0) * x + m(1, 1) * y;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      Eigen::Vector2cd v(a[i], b[i]);
      v = u[i] * v;
      a[i] = v(0);
      b[i] = v(1);
    }
  }
}

void apply_uniform_2x2(Backend backend, const Mat2c& u, const std::vector<cd>& phase, cd* psi,
                       std::size_t n) {
  cd* a = psi;
  cd* b = psi + n;
  const bool has_phase = !phase.empty();
  if (backend == Backend::parallel) {
    const cd u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < static_cast<Index>(n); ++i) {
      const cd p = has_phase ? phase[i] : cd(1.0);
      const cd x = a[i], y = b[i];
      a[i] = p * (u00 * x + u01 * y);
      b[i] = p * (u10 * x + u11 * y);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      Eigen::Vector2cd v(a[i], b[i]);
      v = u * v;
      if (has_phase) v *= phase[i];
      a[i] = v(0);
      b[i] = v(1);
    }
  }
}

void apply_phase(Backend backend, const std::vector<cd>& phase, cd* psi, std::size_t n,
                 int components) {
  if (backend == Backend::parallel) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < static_cast<Index>(n); ++i) {
      const cd p = phase[i];
      for (int c = 0; c < components; ++c) psi[c * n + i] *= p;
    }
  } else {
    for (int c = 0; c < components; ++c) {
      for (std::size_t i = 0; i < n; ++i) psi[c * n + i] *= phase[i];
    }
  }
}

DressedGrid::DressedGrid(const LaserConfig& cfg, const GridSpec& g)
    : config(cfg), grid(g), bare_phase(3 * g.points()) {
  const DressedFrame origin = dressed_frame(config, Vec2::Zero());
  basis0 = origin.eigenbasis();
  energies = origin.energies;
  const std::size_t points = grid.points();
#pragma omp parallel for schedule(static)
  for (Index n = 0; n < static_cast<Index>(points); ++n) {
    const Vec2 r = position(n);
    for (int j = 0; j < 3; ++j) {
      bare_phase[j * points + n] = std::polar(1.0, -config.wavevectors[j].dot(r));
    }
  }
}

Vec2 DressedGrid::position(std::size_t n) const {
  const int i = static_cast<int>(n / grid.ny);
  const int j = static_cast<int>(n % grid.ny);
  return {grid.x(i), grid.y(j)};
}

CouplingStep::CouplingStep(const DressedGrid& d, double step) : dressed(&d), dt(step) {
  DressedFrame origin;
  origin.plus = {Vec5c(d.basis0.col(0)), Vec5c(d.basis0.col(1))};
  origin.dark = d.basis0.col(2);
  origin.minus = {Vec5c(d.basis0.col(3)), Vec5c(d.basis0.col(4))};
  origin.energies = d.energies;
  propagator0 = spectral_propagator(origin, dt);
}

void apply_coupling(Backend backend, const CouplingStep& step, cd* psi) {
  const DressedGrid& d = *step.dressed;
  const std::size_t points = d.grid.points();
  if (backend == Backend::parallel) {
#pragma omp parallel for schedule(static)
    for (Index n = 0; n < static_cast<Index>(points); ++n) {
      Vec5c v = step.propagator0 * to_origin_frame(d, psi, n);
      for (int j = 0; j < 3; ++j) v(j) *= d.bare_phase[j * points + n];
      scatter(v, psi, points, n);
    }
  } else {
    for (std::size_t n = 0; n < points; ++n) {
      const DressedFrame frame = dressed_frame(d.config, d.position(n));
      const Mat5c u = spectral_propagator(frame, step.dt);
      scatter(u * gather(psi, points, n), psi, points, n);
    }
  }
}

std::array<double, 5> dressed_populations(Backend backend, const DressedGrid& d, const cd* psi) {
  const std::size_t points = d.grid.points();
  const double area = d.grid.cell_area();
  std::array<double, 5> pops{};
  for (int level = 0; level < 5; ++level) {
    if (backend == Backend::parallel) {
      const Vec5c v0 = d.basis0.col(level);
      pops[level] = area * grid_sum(backend, d.grid, [&](int i, int j) {
        const std::size_t n = d.grid.index(i, j);
        return std::norm(v0.dot(to_origin_frame(d, psi, n)));
      });
    } else {
      pops[level] = area * grid_sum(backend, d.grid, [&](int i, int j) {
        const std::size_t n = d.grid.index(i, j);
        const DressedFrame frame = dressed_frame(d.config, d.position(n));
        return std::norm(frame.state(level).dot(gather(psi, points, n)));
      });
    }
  }
  return pops;
}

double coupling_energy(Backend backend, const DressedGrid& d, const cd* psi) {
  const std::size_t points = d.grid.points();
  const double area = d.grid.cell_area();
  if (backend == Backend::parallel) {
    const Mat5c h0 = build_hamiltonian(rabi_matrix(d.config, Vec2::Zero()));
    return area * grid_sum(backend, d.grid, [&](int i, int j) {
      const Vec5c v = to_origin_frame(d, psi, d.grid.index(i, j));
      return v.dot(h0 * v).real();
    });
  }
  return area * grid_sum(backend, d.grid, [&](int i, int j) {
    const std::size_t n = d.grid.index(i, j);
    const Mat5c h = build_hamiltonian(rabi_matrix(d.config, d.position(n)));
    const Vec5c v = gather(psi, points, n);
    return v.dot(h * v).real();
  });
}

}  // namespace tripod::kernels
