#include "tripod/acceptance.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "tripod/bands.hpp"
#include "tripod/dynamics.hpp"
#include "tripod/gauge.hpp"

namespace tripod::acceptance {

namespace {

// Canonical setup: kappa = m = 1, Omega = 20 E_r.
LaserConfig canonical() {
  LaserConfig c = LaserConfig::canonical(1.0);
  c.omega = 20.0 * c.units().energy();
  return c;
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

struct Outcome {
  bool passed = false;
  std::string detail;
};

Outcome spectrum(std::uint64_t seed) {
  const LaserConfig c = canonical();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-50.0, 50.0);
  const double s3 = std::sqrt(3.0) * c.omega;
  const std::array<double, 5> expected{-s3, -s3, 0.0, s3, s3};
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Vec2 r(pos(rng), pos(rng));
    const auto ev = hermitian_spectrum(build_hamiltonian(rabi_matrix(c, r)));
    for (int i = 0; i < 5; ++i) worst = std::max(worst, std::abs(ev[i] - expected[i]) / s3);
  }
  return {worst <= 1e-12, "max relative error " + fmt(worst) + " (tol 1e-12) over 100 positions"};
}

Outcome vector_potential(std::uint64_t seed) {
  const LaserConfig c = canonical();
  const double q = c.kappa / 4.0;
  const MatrixVector2 expected{q * pauli_x(), q * pauli_y()};
  const double h = default_difference_step(c.kappa);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-20.0, 20.0);
  double worst = 0.0, order = std::numeric_limits<double>::infinity();
  for (int n = 0; n < 10; ++n) {
    const Vec2 r(pos(rng), pos(rng));
    worst = std::max(worst, max_abs_diff(vector_potential_numeric(c, r, h), expected));
    order = std::min(order, differencing_convergence(c, r, h).a_order);
  }
  const bool ok = worst <= 1e-6 * c.kappa && order >= 1.9;
  return {ok, "max |A_num - A| = " + fmt(worst) + " kappa (tol 1e-6), min order " + fmt(order) +
                  " (>= 1.9)"};
}

Outcome scalar_potential(std::uint64_t seed) {
  const LaserConfig c = canonical();
  const double recoil = c.units().energy();
  const Mat2c expected = 0.75 * recoil * Mat2c::Identity();
  const double h = default_difference_step(c.kappa);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-20.0, 20.0);
  double worst = 0.0;
  Mat2c last = Mat2c::Zero();
  for (int n = 0; n < 10; ++n) {
    last = scalar_potential_numeric(c, Vec2(pos(rng), pos(rng)), h);
    worst = std::max(worst, max_abs_diff(last, expected));
  }
  return {worst <= 1e-6 * recoil,
          "numeric Phi = " + fmt(last(0, 0).real() / recoil, 8) + " E_r * I, target 0.75 E_r * I, max dev " +
              fmt(worst / recoil) + " E_r (tol 1e-6)"};
}

Outcome triangle_closure(std::uint64_t seed) {
  LaserConfig c = canonical();
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int n = 0; n < 50; ++n) {
    c.wavevectors = random_closed_triangle(rng, c.kappa);
    const MatrixVector2 a = vector_potential_analytic(c);
    for (int axis = 0; axis < 2; ++axis) {
      for (int s = 0; s < 2; ++s) worst = std::max(worst, std::abs(a[axis](s, s)));
    }
  }
  return {worst <= 1e-12 * c.kappa, "max |A_ss| = " + fmt(worst) + " kappa (tol 1e-12) over 50 triangles"};
}

Outcome dispersion_geometry(std::uint64_t) {
  const LaserConfig c = canonical();
  const double recoil = c.units().energy();
  const EffectiveHamiltonianSpec spec{gauge_fields_analytic(c), c.mass, std::nullopt};
  const PolarGrid grid{c.kappa, 512, 64};
  const DispersionResult d = dispersion(spec, grid);

  const double ring = c.kappa / 4.0;
  const bool on_ring = std::abs(d.ring_radius - ring) <= grid.radial_spacing();

  // Closed form E_-+ = (k^2 -+ kappa k / 2 + kappa^2/8) / 2m + Phi, Phi from the analytic fields.
  const double phi = spec.fields.phi(0, 0).real();
  const auto closed = [&](double k, double sign) {
    return (k * k + sign * c.kappa * k / 2.0 + c.kappa * c.kappa / 8.0) / (2.0 * c.mass) + phi;
  };
  const double gap_closed = closed(d.ring_radius, 1.0) - closed(d.ring_radius, -1.0);

  double gap_brute = 0.0;
  for (int ia = 0; ia < grid.n_angular; ++ia) {
    const double a = 2.0 * std::numbers::pi * ia / grid.n_angular;
    const Vec2 k = d.ring_radius * Vec2(std::cos(a), std::sin(a));
    Eigen::SelfAdjointEigenSolver<Mat2c> solver(bloch_hamiltonian(spec, k), Eigen::EigenvaluesOnly);
    gap_brute = std::max(gap_brute, solver.eigenvalues()(1) - solver.eigenvalues()(0));
  }
  const double target = recoil / 4.0;
  const double err_closed = std::abs(gap_closed - target) / target;
  const double err_brute = std::abs(gap_brute - target) / target;
  const double err_min = std::abs(d.min_energy - closed(ring, -1.0)) / recoil;
  const bool ok = on_ring && err_closed <= 1e-3 && err_brute <= 1e-3 && err_min <= 1e-3;
  return {ok, "ring radius " + fmt(d.ring_radius, 8) + " kappa (target 0.25 +- " +
                  fmt(grid.radial_spacing()) + "), gap rel err closed-form " + fmt(err_closed) +
                  ", 2x2 eigensolver " + fmt(err_brute) + " (tol 1e-3), minimum energy err " +
                  fmt(err_min) + " E_r"};
}

Outcome unitarity_and_order(std::uint64_t) {
  const LaserConfig c = canonical();
  const double t_unit = c.units().time();
  EffectiveHamiltonianSpec spec{gauge_fields_analytic(c), c.mass, std::nullopt};

  GridSpec g{256, 256, 128.0, 128.0, 0.01 * t_unit, 1000, 100};
  PacketParams p;
  p.width = 5.0;
  p.momentum = Vec2(0.5, 0.2);
  const SpinorField s0 = gaussian_packet(g, p);

  const auto drift = [](const EvolutionReport& r) {
    double worst = 0.0;
    for (double n : r.norm) worst = std::max(worst, std::abs(n - r.norm.front()));
    return worst;
  };
  const double drift_reduced = drift(evolve_reduced(spec, s0, g).report);
  const double drift_full = drift(evolve_full(c, map_to_full(c, s0), g).report);

  // Error ratio at dt and dt/2 against a dt/8 reference; asymptotically 63/15 = 4.2.
  spec.external_potential = HarmonicTrap{0.2 * c.units().energy()};
  const auto final_state = [&](double dt_recoil, bool full) {
    GridSpec gs = g;
    gs.dt = dt_recoil * t_unit;
    gs.n_steps = static_cast<int>(std::lround(1.0 / dt_recoil));
    gs.sample_stride = gs.n_steps;
    return full ? evolve_full(c, map_to_full(c, s0), gs).state.psi : evolve_reduced(spec, s0, gs).state.psi;
  };
  const auto distance = [](const std::vector<cd>& a, const std::vector<cd>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
  };
  std::array<double, 2> ratio{};
  for (int full = 0; full < 2; ++full) {
    const auto ref = final_state(0.00125, full);
    ratio[full] = distance(final_state(0.01, full), ref) / distance(final_state(0.005, full), ref);
  }
  const bool ok = drift_reduced <= 1e-10 && drift_full <= 1e-10 && std::abs(ratio[0] - 4.0) <= 0.8 &&
                  std::abs(ratio[1] - 4.0) <= 0.8;
  return {ok, "norm drift reduced " + fmt(drift_reduced) + ", full " + fmt(drift_full) +
                  " (tol 1e-10); error ratio reduced " + fmt(ratio[0]) + ", full " + fmt(ratio[1]) +
                  " (4 +- 0.8)"};
}

Outcome adiabaticity(std::uint64_t) {
  const LaserConfig c = LaserConfig::canonical(1.0);
  const double t_unit = c.units().time();
  GridSpec g{256, 256, 128.0, 128.0, 0.005 * t_unit, 1000, 1000};
  PacketParams p;
  p.width = 5.0;
  const auto rows = compare_adiabatic(c, g, p, {2.0, 5.0, 10.0, 20.0, 50.0, 100.0});
  bool monotone = true;
  std::string listing;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i].overlap < rows[i - 1].overlap) monotone = false;
    listing += (i ? ", " : "") + fmt(rows[i].omega_over_recoil) + ":" + fmt(rows[i].overlap, 8);
  }
  const bool ok = monotone && rows.back().overlap > 0.999;
  return {ok, std::string("overlap at t = 5 hbar/E_r {") + listing + "}, " +
                  (monotone ? "monotone" : "NOT monotone")};
}

Outcome zitterbewegung(std::uint64_t) {
  const LaserConfig c = LaserConfig::canonical(1.0);
  const double t_unit = c.units().time();
  const EffectiveHamiltonianSpec spec{gauge_fields_analytic(c), c.mass, std::nullopt};
  GridSpec g{256, 256, 160.0, 160.0, 0.01 * t_unit, 5000, 50};

  // At rest on the ring minimum k = (0, kappa/4): lower spinor (1, i)/sqrt2, upper (1, -i)/sqrt2.
  const double lower = std::sqrt(0.75), upper = std::sqrt(0.25);
  PacketParams p;
  p.width = 10.0;
  p.momentum = Vec2(0.0, c.kappa / 4.0);
  p.spin = {cd(lower + upper, 0.0) / std::sqrt(2.0), cd(0.0, lower - upper) / std::sqrt(2.0)};
  const SpinorField s0 = gaussian_packet(g, p);

  const auto run = evolve_reduced(spec, s0, g);
  std::vector<double> x;
  for (const Vec2& r : run.report.mean_position) x.push_back(r.x());
  const double measured = dominant_frequency(run.report.times, x);
  const double expected = packet_averaged_splitting(spec, s0);
  const double amplitude = *std::max_element(x.begin(), x.end()) - *std::min_element(x.begin(), x.end());
  const double rel = std::abs(measured - expected) / expected;
  return {rel <= 0.1, "<x> frequency " + fmt(measured * t_unit) + " E_r/hbar vs splitting " +
                          fmt(expected * t_unit) + " E_r/hbar, rel err " + fmt(rel) +
                          " (tol 0.1), peak-to-peak " + fmt(amplitude) + " / kappa"};
}

struct Criterion {
  const char* name;
  double budget;
  std::function<Outcome(std::uint64_t)> run;
};

const std::vector<Criterion>& table() {
  static const std::vector<Criterion> t{
      {"spectrum reproduction", 1.0, spectrum},
      {"vector potential", 1.0, vector_potential},
      {"scalar potential", 1.0, scalar_potential},
      {"triangle closure", 1.0, triangle_closure},
      {"dispersion geometry", 5.0, dispersion_geometry},
      {"unitarity and splitting order", 120.0, unitarity_and_order},
      {"adiabaticity", 600.0, adiabaticity},
      {"zitterbewegung", 120.0, zitterbewegung},
  };
  return t;
}

}  // namespace

std::vector<int> criterion_ids() {
  std::vector<int> ids;
  for (std::size_t i = 0; i < table().size(); ++i) ids.push_back(static_cast<int>(i) + 1);
  return ids;
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
  if (id < 1 || id > static_cast<int>(table().size())) {
    throw std::out_of_range("unknown criterion " + std::to_string(id));
  }
  const Criterion& c = table()[id - 1];
  CriterionResult r;
  r.id = id;
  r.name = c.name;
  r.time_budget = c.budget;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome o = c.run(seed);
    r.passed = o.passed;
    r.detail = o.detail;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.seconds > r.time_budget) {
    r.passed = false;
    r.detail += "; over time budget";
  }
  return r;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream s;
  s << "criterion " << r.id << " " << (r.passed ? "PASS" : "FAIL") << " [" << r.name << "] " << r.detail
    << " (" << std::fixed << std::setprecision(2) << r.seconds << " s, budget " << std::setprecision(0)
    << r.time_budget << " s)";
  return s.str();
}

}  // namespace tripod::acceptance
