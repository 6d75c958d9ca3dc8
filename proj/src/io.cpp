#include "tripod/io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "tripod/errors.hpp"

namespace tripod {

namespace {

constexpr char kMagic[8] = {'T', 'R', 'I', 'P', 'O', 'D', 'S', 'N'};
constexpr std::uint32_t kVersion = 1;

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> b;
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b.data(), 8);
}
void put_u32(std::ostream& out, std::uint32_t v) {
  std::array<char, 4> b;
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b.data(), 4);
}
void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(std::istream& in) {
  std::array<unsigned char, 8> b{};
  in.read(reinterpret_cast<char*>(b.data()), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}
std::uint32_t get_u32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  in.read(reinterpret_cast<char*>(b.data()), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}
double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

}  // namespace

void write_report(std::ostream& out, const EvolutionReport& r, const RecoilUnits& units) {
  const bool full = !r.ground_fidelity.empty();
  const double e = units.energy();
  const double len = units.length();
  out << "# time[hbar/E_r] x[1/kappa] y[1/kappa] norm energy[E_r]";
  for (std::size_t l = 0; l < r.populations.size(); ++l) {
    if (full) {
      static const char* names[] = {"pop_1+", "pop_2+", "pop_D", "pop_1-", "pop_2-"};
      out << ' ' << names[l];
    } else {
      out << " pop_" << (l + 1);
    }
  }
  out << (full ? " ground_fidelity" : " sigma_x sigma_y sigma_z") << '\n';

  out << std::scientific << std::setprecision(12);
  for (std::size_t n = 0; n < r.samples(); ++n) {
    out << r.times[n] * e << ' ' << r.mean_position[n].x() / len << ' '
        << r.mean_position[n].y() / len << ' ' << r.norm[n] << ' ' << r.energy[n] / e;
    for (const auto& pop : r.populations) out << ' ' << pop[n];
    if (full) {
      out << ' ' << r.ground_fidelity[n];
    } else {
      out << ' ' << r.spin_x[n] << ' ' << r.spin_y[n] << ' ' << r.spin_z[n];
    }
    out << '\n';
  }
}

void write_dispersion(std::ostream& out, const DispersionResult& d, const RecoilUnits& units) {
  const double e = units.energy();
  const double k = units.momentum();
  out << "# k_x[kappa] k_y[kappa] E_lower[E_r] E_upper[E_r]\n";
  out << std::scientific << std::setprecision(12);
  for (std::size_t n = 0; n < d.k_grid.size(); ++n) {
    out << d.k_grid[n].x() / k << ' ' << d.k_grid[n].y() / k << ' ' << d.lower_band[n] / e << ' '
        << d.upper_band[n] / e << '\n';
  }
  out << "# ring_radius[kappa] = " << d.ring_radius / k << '\n';
  out << "# min_energy[E_r] = " << d.min_energy / e << '\n';
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(kMagic, sizeof(kMagic));
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(s.components));
  put_u32(out, static_cast<std::uint32_t>(s.nx));
  put_u32(out, static_cast<std::uint32_t>(s.ny));
  put_f64(out, s.lx);
  put_f64(out, s.ly);
  put_f64(out, s.time);
  for (const cd& v : s.data) {
    put_f64(out, v.real());
    put_f64(out, v.imag());
  }
  if (!out) throw IoError("failed writing " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0) throw IoError("not a snapshot file: " + path.string());
  if (get_u32(in) != kVersion) throw IoError("unsupported snapshot version");
  Snapshot s;
  s.components = static_cast<int>(get_u32(in));
  s.nx = static_cast<int>(get_u32(in));
  s.ny = static_cast<int>(get_u32(in));
  s.lx = get_f64(in);
  s.ly = get_f64(in);
  s.time = get_f64(in);
  s.data.resize(static_cast<std::size_t>(s.components) * s.nx * s.ny);
  for (cd& v : s.data) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    v = {re, im};
  }
  if (!in) throw IoError("truncated snapshot " + path.string());
  return s;
}

}  // namespace tripod
