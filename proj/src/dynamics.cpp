#include "tripod/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tripod/errors.hpp"

namespace tripod {

namespace {

using Index = std::ptrdiff_t;

EffectiveHamiltonianSpec free_of_potential(const EffectiveHamiltonianSpec& spec) {
  EffectiveHamiltonianSpec s = spec;
  s.external_potential.reset();
  return s;
}

// Kinetic-plus-gauge part (k - A)^2 / 2m without Phi.
EffectiveHamiltonianSpec kinetic_only(const EffectiveHamiltonianSpec& spec) {
  EffectiveHamiltonianSpec s = free_of_potential(spec);
  s.fields.phi.setZero();
  return s;
}

std::vector<double> trap_potential(const EffectiveHamiltonianSpec& spec, const GridSpec& grid) {
  std::vector<double> v;
  if (!spec.external_potential || spec.external_potential->frequency == 0.0) return v;
  const double w = spec.external_potential->frequency;
  v.resize(grid.points());
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      const double r2 = grid.x(i) * grid.x(i) + grid.y(j) * grid.y(j);
      v[grid.index(i, j)] = 0.5 * spec.mass * w * w * r2;
    }
  }
  return v;
}

void check_same_space(const GridSpec& a, const GridSpec& b) {
  if (!a.same_space(b)) throw InvalidGrid("field grid does not match the evolution grid");
}

void check_step(double dt, double bound) {
  if (dt * bound > std::numbers::pi) {
    std::ostringstream msg;
    msg << "dt = " << dt << " exceeds pi / max|H| = " << std::numbers::pi / bound;
    throw UnstableStep(msg.str());
  }
}

bool is_sample_step(int step, const GridSpec& grid) {
  return step % grid.sample_stride == 0 || step == grid.n_steps;
}

template <int C>
Vec2 mean_position(const Field<C>& f, double norm) {
  const GridSpec& g = f.grid;
  const double area = g.cell_area();
  auto density = [&](int i, int j) {
    double d = 0.0;
    for (int c = 0; c < C; ++c) d += std::norm(f.at(c, i, j));
    return d;
  };
  const double x = area * kernels::grid_sum(Backend::parallel, g, [&](int i, int j) {
    return g.x(i) * density(i, j);
  });
  const double y = area * kernels::grid_sum(Backend::parallel, g, [&](int i, int j) {
    return g.y(j) * density(i, j);
  });
  return Vec2(x, y) / norm;
}

void record_reduced(EvolutionReport& rep, const EffectiveHamiltonianSpec& spec,
                    const SpinorField& f, double t, Backend backend) {
  const GridSpec& g = f.grid;
  const double area = g.cell_area();
  const double p0 = area * kernels::grid_sum(backend, g, [&](int i, int j) {
    return std::norm(f.at(0, i, j));
  });
  const double p1 = area * kernels::grid_sum(backend, g, [&](int i, int j) {
    return std::norm(f.at(1, i, j));
  });
  const double norm = p0 + p1;
  const double sx = area * kernels::grid_sum(backend, g, [&](int i, int j) {
    return 2.0 * (std::conj(f.at(0, i, j)) * f.at(1, i, j)).real();
  });
  const double sy = area * kernels::grid_sum(backend, g, [&](int i, int j) {
    return 2.0 * (std::conj(f.at(0, i, j)) * f.at(1, i, j)).imag();
  });
  rep.times.push_back(t);
  rep.norm.push_back(norm);
  rep.mean_position.push_back(mean_position(f, norm));
  rep.populations[0].push_back(p0);
  rep.populations[1].push_back(p1);
  rep.spin_x.push_back(sx / norm);
  rep.spin_y.push_back(sy / norm);
  rep.spin_z.push_back((p0 - p1) / norm);
  rep.energy.push_back(reduced_energy(spec, f));
}

double full_energy_on(const kernels::DressedGrid& dg, const FullField& field) {
  const GridSpec& g = field.grid;
  FullField k = field;
  Fft2d fft(g.nx, g.ny, 5);
  fft.forward(k.psi.data());
  const double m = dg.config.mass;
  const double scale = g.cell_area() / static_cast<double>(g.points());
  const double kinetic = scale * kernels::grid_sum(Backend::parallel, g, [&](int i, int j) {
    double d = 0.0;
    for (int c = 0; c < 5; ++c) d += std::norm(k.at(c, i, j));
    return (g.kx(i) * g.kx(i) + g.ky(j) * g.ky(j)) / (2.0 * m) * d;
  });
  return kinetic + kernels::coupling_energy(Backend::parallel, dg, field.psi.data());
}

void record_full(EvolutionReport& rep, const kernels::DressedGrid& dg, const FullField& f,
                 double t, Backend backend) {
  const auto pops = kernels::dressed_populations(backend, dg, f.psi.data());
  const double area = f.grid.cell_area();
  const double norm = area * kernels::grid_sum(backend, f.grid, [&](int i, int j) {
    double d = 0.0;
    for (int c = 0; c < 5; ++c) d += std::norm(f.at(c, i, j));
    return d;
  });
  rep.times.push_back(t);
  rep.norm.push_back(norm);
  rep.mean_position.push_back(mean_position(f, norm));
  for (int l = 0; l < 5; ++l) rep.populations[l].push_back(pops[l]);
  rep.ground_fidelity.push_back(pops[0] + pops[1]);
  rep.energy.push_back(full_energy_on(dg, f));
}

}  // namespace

SpinorField gaussian_packet(const GridSpec& grid, const PacketParams& p) {
  grid.validate();
  if (!(p.width >= 4.0 * grid.dx()) || !(p.width >= 4.0 * grid.dy())) {
    throw PacketTooNarrow("packet width must be at least 4 grid spacings");
  }
  const double lo_x = p.center.x() - grid.x(0);
  const double hi_x = grid.x(grid.nx - 1) - p.center.x();
  const double lo_y = p.center.y() - grid.y(0);
  const double hi_y = grid.y(grid.ny - 1) - p.center.y();
  const double d = std::min({lo_x, hi_x, lo_y, hi_y});
  if (d <= 0.0 || std::exp(-d * d / (2.0 * p.width * p.width)) > 1e-12) {
    throw PacketTouchesBoundary("packet envelope exceeds 1e-12 of its peak at the box edge");
  }

  const double spin_norm = std::sqrt(std::norm(p.spin[0]) + std::norm(p.spin[1]));
  if (!(spin_norm > 0.0)) throw PacketTooNarrow("spinor amplitudes are all zero");

  SpinorField f(grid);
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      const Vec2 r(grid.x(i), grid.y(j));
      const Vec2 s = r - p.center;
      const cd env = std::exp(-s.squaredNorm() / (2.0 * p.width * p.width)) *
                     std::polar(1.0, p.momentum.dot(r));
      f.at(0, i, j) = env * p.spin[0] / spin_norm;
      f.at(1, i, j) = env * p.spin[1] / spin_norm;
    }
  }
  const double scale = 1.0 / std::sqrt(field_norm(f));
  for (cd& v : f.psi) v *= scale;
  return f;
}

FullField map_to_full(const LaserConfig& config, const SpinorField& reduced) {
  const kernels::DressedGrid dg(config, reduced.grid);
  const std::size_t points = reduced.grid.points();
  FullField full(reduced.grid);
#pragma omp parallel for schedule(static)
  for (Index n = 0; n < static_cast<Index>(points); ++n) {
    Vec5c v = reduced.psi[n] * dg.basis0.col(0) + reduced.psi[points + n] * dg.basis0.col(1);
    for (int j = 0; j < 3; ++j) v(j) *= dg.bare_phase[j * points + n];
    for (int c = 0; c < 5; ++c) full.psi[c * points + n] = v(c);
  }
  return full;
}

FullField dressed_packet(const LaserConfig& config, const GridSpec& grid,
                         const PacketParams& envelope, int level) {
  PacketParams p = envelope;
  p.spin = {cd(1.0), cd(0.0)};
  const SpinorField env = gaussian_packet(grid, p);
  const kernels::DressedGrid dg(config, grid);
  const std::size_t points = grid.points();
  FullField full(grid);
  for (std::size_t n = 0; n < points; ++n) {
    Vec5c v = env.psi[n] * dg.basis0.col(level);
    for (int j = 0; j < 3; ++j) v(j) *= dg.bare_phase[j * points + n];
    for (int c = 0; c < 5; ++c) full.psi[c * points + n] = v(c);
  }
  return full;
}

double reduced_energy(const EffectiveHamiltonianSpec& spec, const SpinorField& field) {
  const GridSpec& g = field.grid;
  const EffectiveHamiltonianSpec kin = kinetic_only(spec);
  SpinorField k = field;
  Fft2d fft(g.nx, g.ny, 2);
  fft.forward(k.psi.data());
  const double scale = g.cell_area() / static_cast<double>(g.points());
  const double kinetic = scale * kernels::grid_sum(Backend::parallel, g, [&](int i, int j) {
    const Eigen::Vector2cd v(k.at(0, i, j), k.at(1, i, j));
    return v.dot(bloch_hamiltonian(kin, Vec2(g.kx(i), g.ky(j))) * v).real();
  });
  const std::vector<double> trap = trap_potential(spec, g);
  const Mat2c& phi = spec.fields.phi;
  const double local = g.cell_area() * kernels::grid_sum(Backend::parallel, g, [&](int i, int j) {
    const Eigen::Vector2cd v(field.at(0, i, j), field.at(1, i, j));
    double e = v.dot(phi * v).real();
    if (!trap.empty()) e += trap[g.index(i, j)] * v.squaredNorm();
    return e;
  });
  return kinetic + local;
}

double full_energy(const LaserConfig& config, const FullField& field) {
  const kernels::DressedGrid dg(config, field.grid);
  return full_energy_on(dg, field);
}

double reduced_energy_bound(const EffectiveHamiltonianSpec& spec, const GridSpec& grid) {
  const EffectiveHamiltonianSpec s = free_of_potential(spec);
  double bound = 0.0;
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      const auto ev = hermitian_eigenvalues(bloch_hamiltonian(s, Vec2(grid.kx(i), grid.ky(j))));
      bound = std::max({bound, std::abs(ev[0]), std::abs(ev[1])});
    }
  }
  const std::vector<double> trap = trap_potential(spec, grid);
  if (!trap.empty()) bound += *std::max_element(trap.begin(), trap.end());
  return bound;
}

double full_energy_bound(const LaserConfig& config, const GridSpec& grid) {
  const double k2 = grid.kx_max() * grid.kx_max() + grid.ky_max() * grid.ky_max();
  const RabiMatrix rabi = rabi_matrix(config, Vec2::Zero());
  return k2 / (2.0 * config.mass) + std::max(rabi.totals[0], rabi.totals[1]);
}

Evolution<SpinorField> evolve_reduced(const EffectiveHamiltonianSpec& spec, SpinorField initial,
                                      const GridSpec& grid, Backend backend) {
  grid.validate();
  check_same_space(initial.grid, grid);
  check_step(grid.dt, reduced_energy_bound(spec, grid));

  const std::size_t points = grid.points();
  const EffectiveHamiltonianSpec kin = kinetic_only(spec);
  std::vector<Mat2c> kinetic(points);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      const Mat2c h = bloch_hamiltonian(kin, Vec2(grid.kx(i), grid.ky(j)));
      kinetic[grid.index(i, j)] = kernels::expm_hermitian2(h, grid.dt);
    }
  }
  const Mat2c phi_half = kernels::expm_hermitian2(spec.fields.phi, 0.5 * grid.dt);
  std::vector<cd> trap_half;
  for (double v : trap_potential(spec, grid)) trap_half.push_back(std::polar(1.0, -0.5 * grid.dt * v));

  Fft2d fft(grid.nx, grid.ny, 2);
  Evolution<SpinorField> out{{}, std::move(initial)};
  out.state.grid = grid;
  out.report.populations.assign(2, {});
  cd* psi = out.state.psi.data();

  for (int step = 0;; ++step) {
    if (is_sample_step(step, grid)) record_reduced(out.report, spec, out.state, step * grid.dt, backend);
    if (step == grid.n_steps) break;
    kernels::apply_uniform_2x2(backend, phi_half, trap_half, psi, points);
    fft.forward(psi);
    kernels::apply_local_2x2(backend, kinetic, psi, points);
    fft.backward(psi);
    kernels::apply_uniform_2x2(backend, phi_half, trap_half, psi, points);
  }
  return out;
}

Evolution<FullField> evolve_full(const LaserConfig& config, FullField initial,
                                 const GridSpec& grid, Backend backend) {
  grid.validate();
  if (!(config.omega > 0.0)) {
    throw DegenerateCoupling("full evolution needs a non-zero Rabi amplitude");
  }
  check_same_space(initial.grid, grid);
  double k_laser = 0.0;
  for (const Vec2& k : config.wavevectors) k_laser = std::max(k_laser, k.norm());
  if (k_laser > 0.0 && std::max(grid.dx(), grid.dy()) > std::numbers::pi / (4.0 * k_laser)) {
    throw InvalidGrid("grid spacing must resolve the laser phases (dx <= pi / (4 |k_j|))");
  }
  check_step(grid.dt, full_energy_bound(config, grid));

  const std::size_t points = grid.points();
  const kernels::DressedGrid dg(config, grid);
  const kernels::CouplingStep half(dg, 0.5 * grid.dt);
  std::vector<cd> kinetic(points);
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      const double e = (grid.kx(i) * grid.kx(i) + grid.ky(j) * grid.ky(j)) / (2.0 * config.mass);
      kinetic[grid.index(i, j)] = std::polar(1.0, -e * grid.dt);
    }
  }

  Fft2d fft(grid.nx, grid.ny, 5);
  Evolution<FullField> out{{}, std::move(initial)};
  out.state.grid = grid;
  out.report.populations.assign(5, {});
  cd* psi = out.state.psi.data();

  for (int step = 0;; ++step) {
    if (is_sample_step(step, grid)) record_full(out.report, dg, out.state, step * grid.dt, backend);
    if (step == grid.n_steps) break;
    kernels::apply_coupling(backend, half, psi);
    fft.forward(psi);
    kernels::apply_phase(backend, kinetic, psi, points, 5);
    fft.backward(psi);
    kernels::apply_coupling(backend, half, psi);
  }
  return out;
}

std::vector<AdiabaticRow> compare_adiabatic(const LaserConfig& config, const GridSpec& grid,
                                            const PacketParams& packet,
                                            const std::vector<double>& omega_list) {
  const SpinorField reduced0 = gaussian_packet(grid, packet);
  std::vector<AdiabaticRow> rows(omega_list.size());
  const double recoil = config.units().energy();

#pragma omp parallel for schedule(dynamic)
  for (Index n = 0; n < static_cast<Index>(omega_list.size()); ++n) {
    LaserConfig c = config;
    c.omega = omega_list[n] * recoil;
    const EffectiveHamiltonianSpec spec{gauge_fields_analytic(c), c.mass, std::nullopt};
    const auto reduced = evolve_reduced(spec, reduced0, grid);
    const auto full = evolve_full(c, map_to_full(c, reduced0), grid);
    const FullField mapped = map_to_full(c, reduced.state);
    rows[n] = {omega_list[n], std::norm(inner_product(mapped, full.state)),
               full.report.ground_fidelity.back()};
  }
  return rows;
}

double dominant_frequency(const std::vector<double>& times, const std::vector<double>& series) {
  const std::size_t n = series.size();
  if (n < 4 || times.size() != n) return 0.0;
  const double step = times[1] - times[0];
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(n);

  std::vector<double> magnitude(n / 2 + 1);
  for (std::size_t m = 0; m < magnitude.size(); ++m) {
    cd sum = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      sum += (series[t] - mean) * std::polar(1.0, -2.0 * std::numbers::pi * m * t / n);
    }
    magnitude[m] = std::abs(sum);
  }
  const auto peak = static_cast<std::size_t>(
      std::max_element(magnitude.begin() + 1, magnitude.end()) - magnitude.begin());
  double offset = 0.0;
  if (peak + 1 < magnitude.size()) {
    const double l = magnitude[peak - 1], c = magnitude[peak], r = magnitude[peak + 1];
    const double curvature = l - 2.0 * c + r;
    if (curvature < 0.0) offset = 0.5 * (l - r) / curvature;
  }
  return 2.0 * std::numbers::pi * (static_cast<double>(peak) + offset) / (static_cast<double>(n) * step);
}

double packet_averaged_splitting(const EffectiveHamiltonianSpec& spec, const SpinorField& field) {
  const GridSpec& g = field.grid;
  const EffectiveHamiltonianSpec s = free_of_potential(spec);
  SpinorField k = field;
  Fft2d fft(g.nx, g.ny, 2);
  fft.forward(k.psi.data());
  double weight = 0.0, total = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      const double w = std::norm(k.at(0, i, j)) + std::norm(k.at(1, i, j));
      const auto ev = hermitian_eigenvalues(bloch_hamiltonian(s, Vec2(g.kx(i), g.ky(j))));
      weight += w;
      total += w * (ev[1] - ev[0]);
    }
  }
  return total / weight;
}

}  // namespace tripod
