#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "tripod/types.hpp"

namespace tripod {

/// Periodic rectangular grid centred on the origin plus the time stepping
/// that goes with it. Positions x_i = -lx/2 + i dx; momenta follow the DFT
/// ordering 0, 1, ..., n/2-1, -n/2, ..., -1 (times 2 pi / l).
struct GridSpec {
  int nx = 256;
  int ny = 256;
  double lx = 128.0;
  double ly = 128.0;
  double dt = 0.01;
  int n_steps = 1000;
  int sample_stride = 10;

  /// Throws InvalidGrid unless nx, ny are powers of two and all lengths and
  /// counts are positive.
  void validate() const;

  std::size_t points() const { return static_cast<std::size_t>(nx) * ny; }
  double dx() const { return lx / nx; }
  double dy() const { return ly / ny; }
  double cell_area() const { return dx() * dy(); }
  double x(int i) const { return -0.5 * lx + i * dx(); }
  double y(int j) const { return -0.5 * ly + j * dy(); }
  double kx(int i) const;
  double ky(int j) const;
  double kx_max() const;
  double ky_max() const;
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * ny + j; }
  bool same_space(const GridSpec& other) const {
    return nx == other.nx && ny == other.ny && lx == other.lx && ly == other.ly;
  }
};

/// Complex field with `Components` components on a GridSpec, stored
/// component-major then row-major: psi[c * nx * ny + i * ny + j].
template <int Components>
struct Field {
  static constexpr int components = Components;

  GridSpec grid;
  std::vector<cd> psi;

  Field() = default;
  explicit Field(const GridSpec& g) : grid(g), psi(static_cast<std::size_t>(Components) * g.points()) {}

  cd& at(int c, int i, int j) { return psi[c * grid.points() + grid.index(i, j)]; }
  const cd& at(int c, int i, int j) const { return psi[c * grid.points() + grid.index(i, j)]; }
  cd* component(int c) { return psi.data() + c * grid.points(); }
  const cd* component(int c) const { return psi.data() + c * grid.points(); }
};

using SpinorField = Field<2>;
using FullField = Field<5>;

/// In-place 2D FFTW transforms of `howmany` contiguous nx x ny arrays.
/// backward() includes the 1/(nx ny) normalisation. Plan creation is
/// serialised internally; execution is thread-safe.
class Fft2d {
 public:
  Fft2d(int nx, int ny, int howmany);
  ~Fft2d();
  Fft2d(const Fft2d&) = delete;
  Fft2d& operator=(const Fft2d&) = delete;

  void forward(cd* data) const;
  void backward(cd* data) const;

 private:
  int nx_, ny_, howmany_;
  void* forward_plan_ = nullptr;
  void* backward_plan_ = nullptr;
};

}  // namespace tripod
