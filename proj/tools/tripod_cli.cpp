#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "tripod/acceptance.hpp"
#include "tripod/bands.hpp"
#include "tripod/config.hpp"
#include "tripod/dynamics.hpp"
#include "tripod/errors.hpp"
#include "tripod/gauge.hpp"
#include "tripod/io.hpp"

using namespace tripod;

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kUsageError = 2;

struct Options {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  bool rashba = false;
  int criterion = 0;
};

RunConfig resolve(const Options& o) {
  RunConfig c = o.config_path.empty() ? parse_config("{}") : load_config(o.config_path);
  if (!o.out_dir.empty()) c.output_dir = o.out_dir;
  if (o.seed) c.seed = *o.seed;
  return c;
}

std::ofstream open_output(const RunConfig& c, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(c.output_dir, ec);
  if (ec) throw IoError("cannot create output directory " + c.output_dir.string() + ": " + ec.message());
  const auto path = c.output_dir / name;
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << std::scientific << std::setprecision(12);
  return out;
}

void finish(std::ofstream& out, const std::string& what) {
  out.flush();
  if (!out) throw IoError("failed writing " + what);
}

void print_matrix(std::ostream& out, const std::string& label, const Mat2c& m, double scale) {
  out << "# " << label << " = [";
  for (int r = 0; r < 2; ++r) {
    out << (r ? "; " : "");
    for (int q = 0; q < 2; ++q) {
      const cd v = m(r, q) / scale;
      out << (q ? ", " : "") << "(" << v.real() << ", " << v.imag() << ")";
    }
  }
  out << "]\n";
}

EffectiveHamiltonianSpec reduced_spec(const LaserConfig& laser, const RunConfig& c, bool rashba,
                                      bool with_trap) {
  GaugeFields fields = gauge_fields_analytic(laser);
  if (rashba) fields = rashba_relabel(fields);
  EffectiveHamiltonianSpec spec{fields, laser.mass, std::nullopt};
  if (with_trap && c.experiment.trap_frequency > 0.0) {
    spec.external_potential = HarmonicTrap{c.experiment.trap_frequency * laser.units().energy()};
  }
  return spec;
}

int run_spectrum(const Options& o) {
  const RunConfig c = resolve(o);
  const LaserConfig laser = laser_config(c);
  const double residual = orthogonality_residual(laser.phases);
  if (residual > kOrthogonalityTolerance) {
    std::cerr << "OrthogonalityViolation: phase residual |sum_j exp(i(S_j2 - S_j1))|/3 = " << residual
              << " exceeds " << kOrthogonalityTolerance << "\n";
    return kValidationFailure;
  }

  std::mt19937_64 rng(c.seed);
  const double range = c.experiment.position_range * laser.units().length();
  std::uniform_real_distribution<double> pos(-range, range);
  const double s3 = std::sqrt(3.0) * laser.omega;
  const std::array<double, 5> expected{-s3, -s3, 0.0, s3, s3};

  auto out = open_output(c, "spectrum.txt");
  out << "# x[1/kappa] y[1/kappa] E_1..E_5[hbar*Omega] relative_residual subspace_angle\n";
  double worst = 0.0, worst_angle = 0.0;
  for (int n = 0; n < c.experiment.samples; ++n) {
    const Vec2 r(pos(rng), pos(rng));
    dressed_frame(laser, r);  // raises on degenerate coupling
    const auto ev = hermitian_spectrum(build_hamiltonian(rabi_matrix(laser, r)));
    const FrameCheck check = verify_frame_against_eigensolver(laser, r);
    double res = 0.0;
    for (int i = 0; i < 5; ++i) res = std::max(res, std::abs(ev[i] - expected[i]) / s3);
    const double angle = check.subspace_angle.value_or(0.0);
    worst = std::max(worst, res);
    worst_angle = std::max(worst_angle, angle);
    out << r.x() / laser.units().length() << ' ' << r.y() / laser.units().length();
    for (double e : ev) out << ' ' << e / laser.omega;
    out << ' ' << res << ' ' << angle << '\n';
  }
  out << "# max_relative_residual = " << worst << "\n# max_subspace_angle = " << worst_angle << '\n';
  finish(out, "spectrum.txt");

  const bool ok = worst <= 1e-12 && worst_angle <= 1e-10;
  std::cout << std::setprecision(6) << "spectrum [hbar*Omega]: {" << -std::sqrt(3.0) << ", "
            << -std::sqrt(3.0) << ", 0, " << std::sqrt(3.0) << ", " << std::sqrt(3.0) << "}\n"
            << "positions: " << c.experiment.samples << ", max relative residual " << worst
            << " (tol 1e-12), max ground-subspace angle " << worst_angle << " (tol 1e-10)\n"
            << (ok ? "OK" : "FAILED") << "\n";
  return ok ? kOk : kValidationFailure;
}

int run_gauge(const Options& o) {
  const RunConfig c = resolve(o);
  const LaserConfig laser = laser_config(c);
  const double kappa = laser.kappa, recoil = laser.units().energy();
  const double h = c.experiment.difference_step * laser.units().length();

  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> pos(-c.experiment.position_range, c.experiment.position_range);
  const Vec2 r = Vec2(pos(rng), pos(rng)) * laser.units().length();

  GaugeFields analytic = gauge_fields_analytic(laser);
  GaugeFields numeric = gauge_fields_numeric(laser, r, h);
  if (o.rashba) {
    analytic = rashba_relabel(analytic);
    numeric = rashba_relabel(numeric);
  }
  const ConvergenceCheck conv = differencing_convergence(laser, r, h);
  const double dev_a = max_abs_diff(analytic.vector_potential(), numeric.vector_potential()) / kappa;
  const double dev_phi = max_abs_diff(analytic.phi, numeric.phi) / recoil;
  const double diag = std::max({std::abs(analytic.a_x(0, 0)), std::abs(analytic.a_x(1, 1)),
                                std::abs(analytic.a_y(0, 0)), std::abs(analytic.a_y(1, 1))}) / kappa;

  auto out = open_output(c, "gauge.txt");
  out << "# position[1/kappa] = " << r.x() * kappa << ' ' << r.y() * kappa << '\n'
      << "# difference_step[1/kappa] = " << h * kappa << '\n'
      << "# labels = " << (o.rashba ? "rashba (x <-> y)" : "dresselhaus") << '\n';
  print_matrix(out, "A_x analytic [kappa]", analytic.a_x, kappa);
  print_matrix(out, "A_y analytic [kappa]", analytic.a_y, kappa);
  print_matrix(out, "Phi analytic [E_r]", analytic.phi, recoil);
  print_matrix(out, "A_x numeric [kappa]", numeric.a_x, kappa);
  print_matrix(out, "A_y numeric [kappa]", numeric.a_y, kappa);
  print_matrix(out, "Phi numeric [E_r]", numeric.phi, recoil);
  out << "# max_dev_A[kappa] = " << dev_a << "\n# max_dev_Phi[E_r] = " << dev_phi
      << "\n# max_diag_A[kappa] = " << diag << "\n# order_A = " << conv.a_order
      << "\n# order_Phi = " << conv.phi_order << '\n';

  // For the regular triangle, compare with (kappa/4) sigma and the quoted 3 kappa^2/(8m) scalar.
  const auto& k = laser.wavevectors;
  const WaveVectors regular = regular_triangle_wavevectors(kappa);
  bool is_regular = true;
  for (int j = 0; j < 3; ++j) is_regular = is_regular && (k[j] - regular[j]).norm() < 1e-12 * kappa;
  if (is_regular) {
    GaugeFields ref;
    ref.a_x = kappa / 4.0 * pauli_x();
    ref.a_y = kappa / 4.0 * pauli_y();
    if (o.rashba) std::swap(ref.a_x, ref.a_y);
    const double quoted = 3.0 * kappa * kappa / (8.0 * laser.mass);
    out << "# closed_form_dev_A[kappa] = "
        << max_abs_diff(ref.vector_potential(), numeric.vector_potential()) / kappa
        << "\n# quoted_Phi[E_r] = " << quoted / recoil << "\n# quoted_Phi_dev[E_r] = "
        << max_abs_diff(quoted * Mat2c::Identity(), numeric.phi) / recoil << '\n';
  }
  finish(out, "gauge.txt");

  const bool ok = dev_a <= 1e-6 && dev_phi <= 1e-6 && conv.a_order >= 1.9;
  std::cout << std::setprecision(6) << "A: numeric vs analytic max deviation " << dev_a
            << " kappa (tol 1e-6), order " << conv.a_order << "\n"
            << "Phi: numeric " << numeric.phi(0, 0).real() / recoil << " E_r * I, max deviation " << dev_phi
            << " E_r (tol 1e-6)\n"
            << "diagonal A entries: " << diag << " kappa\n"
            << (ok ? "OK" : "FAILED") << "\n";
  return ok ? kOk : kValidationFailure;
}

int run_bands(const Options& o) {
  const RunConfig c = resolve(o);
  const LaserConfig laser = laser_config(c);
  const EffectiveHamiltonianSpec spec = reduced_spec(laser, c, o.rashba, false);
  const PolarGrid grid{c.experiment.k_max * laser.kappa, c.experiment.n_radial, c.experiment.n_angular};
  const DispersionResult d = dispersion(spec, grid);
  auto out = open_output(c, "dispersion.txt");
  write_dispersion(out, d, laser.units());
  finish(out, "dispersion.txt");
  std::cout << std::setprecision(8) << "ring radius " << d.ring_radius / laser.kappa << " kappa (spacing "
            << grid.radial_spacing() / laser.kappa << "), minimum energy "
            << d.min_energy / laser.units().energy() << " E_r\n";
  return kOk;
}

int run_evolve(const Options& o) {
  const RunConfig c = resolve(o);
  const LaserConfig laser = laser_config(c);
  const RecoilUnits units = laser.units();
  const GridSpec grid = grid_spec(c);
  const PacketParams packet = packet_params(c);
  const std::string& mode = c.experiment.mode;

  if (mode == "adiabatic") {
    const auto rows = compare_adiabatic(laser, grid, packet, c.experiment.omega_list);
    auto out = open_output(c, "adiabatic.txt");
    out << "# omega[E_r] overlap ground_fidelity\n";
    bool monotone = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out << rows[i].omega_over_recoil << ' ' << rows[i].overlap << ' ' << rows[i].ground_fidelity << '\n';
      if (i > 0 && rows[i].omega_over_recoil > rows[i - 1].omega_over_recoil &&
          rows[i].overlap < rows[i - 1].overlap) {
        monotone = false;
      }
    }
    out << "# monotone = " << (monotone ? "yes" : "no") << '\n';
    finish(out, "adiabatic.txt");
    std::cout << std::setprecision(8);
    for (const auto& r : rows) std::cout << "Omega " << r.omega_over_recoil << " E_r: overlap " << r.overlap << "\n";
    std::cout << "monotone in Omega: " << (monotone ? "yes" : "no") << "\n";
    return kOk;
  }

  const SpinorField initial = gaussian_packet(grid, packet);
  EvolutionReport report;
  Snapshot snapshot;
  if (mode == "reduced") {
    const auto run = evolve_reduced(reduced_spec(laser, c, o.rashba, true), initial, grid);
    report = run.report;
    snapshot = make_snapshot(run.state, report.times.back() / units.time());
  } else {
    if (c.experiment.trap_frequency > 0.0) {
      throw ConfigError("experiment.trap_frequency is only supported in reduced mode");
    }
    const auto run = evolve_full(laser, map_to_full(laser, initial), grid);
    report = run.report;
    snapshot = make_snapshot(run.state, report.times.back() / units.time());
  }
  auto out = open_output(c, "observables.txt");
  write_report(out, report, units);
  finish(out, "observables.txt");
  if (c.experiment.snapshot) write_snapshot(c.output_dir / "final_state.bin", snapshot);

  double drift = 0.0;
  for (double n : report.norm) drift = std::max(drift, std::abs(n - report.norm.front()));
  std::cout << std::setprecision(6) << mode << " evolution: " << grid.n_steps << " steps, "
            << report.samples() << " samples, max norm drift " << drift << "\n";
  return kOk;
}

int run_validate(const Options& o) {
  const std::uint64_t seed = o.seed.value_or(o.config_path.empty() ? 1 : resolve(o).seed);
  std::vector<int> ids = acceptance::criterion_ids();
  if (o.criterion != 0) ids = {o.criterion};
  bool all = true;
  for (int id : ids) {
    const auto r = acceptance::run_criterion(id, seed);
    std::cout << acceptance::format_line(r) << std::endl;
    all = all && r.passed;
  }
  return all ? kOk : kValidationFailure;
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kUsageError;
  } catch (const OrthogonalityViolation& e) {
    std::cerr << e.what() << "\n";
    return kValidationFailure;
  } catch (const Error& e) {
    // Parameter combinations the solvers refuse are configuration problems;
    // physics and I/O failures are reported as validation failures.
    static const std::vector<std::string> usage{"InvalidGrid",     "InvalidKappa",   "GridTooCoarse",
                                                "PacketTooNarrow", "PacketTouchesBoundary",
                                                "UnstableStep",    "StepTooSmall"};
    std::cerr << e.what() << "\n";
    return std::find(usage.begin(), usage.end(), e.kind()) != usage.end() ? kUsageError : kValidationFailure;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double-tripod spin-orbit coupling toolkit"};
  app.require_subcommand(1);
  Options opts;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_dir, "output directory (overrides the config)");
    sub->add_option("--seed", opts.seed, "random seed (overrides the config)");
    sub->add_flag("--rashba", opts.rashba, "relabel x <-> y to obtain the Rashba form");
  };

  std::function<int()> action;
  const auto subcommand = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub);
    sub->callback([&action, &opts, fn] { action = [fn, &opts] { return fn(opts); }; });
    return sub;
  };
  subcommand("spectrum", "verify the dressed-state spectrum at random positions", run_spectrum);
  subcommand("gauge", "compare analytic and numerically differentiated gauge potentials", run_gauge);
  subcommand("bands", "write the dispersion of the effective spin-orbit Hamiltonian", run_bands);
  subcommand("evolve", "propagate a wavepacket (reduced, full or adiabatic comparison)", run_evolve);
  CLI::App* validate = subcommand("validate", "run the acceptance suite", run_validate);
  validate->add_option("--criterion", opts.criterion, "run a single criterion")->check(CLI::Range(1, 8));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }
  return run_guarded(action);
}
