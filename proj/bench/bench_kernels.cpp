#include <chrono>
#include <complex>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <string>

#include <omp.h>

#include "tripod/dynamics.hpp"
#include "tripod/gauge.hpp"
#include "tripod/kernels.hpp"

using namespace tripod;
using kernels::Backend;

namespace {

double seconds_per_call(const std::function<void()>& f, int reps) {
  f();  // warm up
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / reps;
}

void report(const std::string& name, double parallel, double reference) {
  std::cout << std::left << std::setw(28) << name << std::right << std::scientific << std::setprecision(3)
            << std::setw(14) << parallel << std::setw(14) << reference << std::fixed << std::setprecision(2)
            << std::setw(10) << reference / parallel << "\n";
}

}  // namespace

// Usage: bench_kernels [n] [reps]
int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 256;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 5;

  LaserConfig config = LaserConfig::canonical(1.0);
  config.omega = 20.0 * config.units().energy();
  GridSpec grid{n, n, 0.5 * n, 0.5 * n, 0.01 * config.units().time(), 20, 20};
  grid.validate();

  PacketParams packet;
  packet.width = grid.lx / 16.0;
  packet.momentum = Vec2(0.5, 0.2);
  const SpinorField reduced = gaussian_packet(grid, packet);
  const FullField full = map_to_full(config, reduced);
  const EffectiveHamiltonianSpec spec{gauge_fields_analytic(config), config.mass, std::nullopt};

  const kernels::DressedGrid dressed(config, grid);
  const kernels::CouplingStep step(dressed, grid.dt);
  std::vector<Mat2c> local(grid.points(), kernels::expm_hermitian2(pauli_x() + pauli_z(), grid.dt));

  std::cout << "grid " << n << "x" << n << ", " << omp_get_max_threads() << " OpenMP threads, "
            << reps << " repetitions\n";
  std::cout << std::left << std::setw(28) << "kernel" << std::right << std::setw(14) << "parallel[s]"
            << std::setw(14) << "reference[s]" << std::setw(10) << "speedup" << "\n";

  const auto both = [&](const std::string& name, const std::function<void(Backend)>& f, int r) {
    const double p = seconds_per_call([&] { f(Backend::parallel); }, r);
    const double s = seconds_per_call([&] { f(Backend::reference); }, r);
    report(name, p, s);
  };

  both("apply_local_2x2", [&](Backend b) {
    std::vector<cd> psi = reduced.psi;
    kernels::apply_local_2x2(b, local, psi.data(), grid.points());
  }, reps);
  both("apply_coupling", [&](Backend b) {
    std::vector<cd> psi = full.psi;
    kernels::apply_coupling(b, step, psi.data());
  }, reps);
  both("dressed_populations", [&](Backend b) {
    volatile double sink = kernels::dressed_populations(b, dressed, full.psi.data())[0];
    (void)sink;
  }, reps);
  both("coupling_energy", [&](Backend b) {
    volatile double sink = kernels::coupling_energy(b, dressed, full.psi.data());
    (void)sink;
  }, reps);
  both("evolve_reduced (20 steps)", [&](Backend b) { evolve_reduced(spec, reduced, grid, b); }, 1);
  both("evolve_full (20 steps)", [&](Backend b) { evolve_full(config, full, grid, b); }, 1);
  return 0;
}
