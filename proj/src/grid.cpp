#include "tripod/grid.hpp"

#include <fftw3.h>

#include <bit>
#include <mutex>
#include <numbers>

#include "tripod/errors.hpp"

namespace tripod {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

double dft_momentum(int i, int n, double length) {
  const int f = i < n / 2 ? i : i - n;
  return 2.0 * std::numbers::pi * f / length;
}

}  // namespace

void GridSpec::validate() const {
  if (nx < 2 || ny < 2 || !std::has_single_bit(static_cast<unsigned>(nx)) ||
      !std::has_single_bit(static_cast<unsigned>(ny))) {
    throw InvalidGrid("nx and ny must be powers of two >= 2");
  }
  if (!(lx > 0.0) || !(ly > 0.0)) throw InvalidGrid("box lengths must be positive");
  if (!(dt >= 0.0)) throw InvalidGrid("dt must be non-negative");
  if (n_steps < 0) throw InvalidGrid("n_steps must be non-negative");
  if (sample_stride < 1) throw InvalidGrid("sample_stride must be >= 1");
}

double GridSpec::kx(int i) const { return dft_momentum(i, nx, lx); }
double GridSpec::ky(int j) const { return dft_momentum(j, ny, ly); }
double GridSpec::kx_max() const { return std::numbers::pi * nx / lx; }
double GridSpec::ky_max() const { return std::numbers::pi * ny / ly; }

Fft2d::Fft2d(int nx, int ny, int howmany) : nx_(nx), ny_(ny), howmany_(howmany) {
  std::lock_guard lock(planner_mutex());
  const int dims[2] = {nx, ny};
  const int dist = nx * ny;
  // FFTW_ESTIMATE never touches the buffer, so a dummy one is enough.
  std::vector<cd> scratch(static_cast<std::size_t>(dist) * howmany);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_plan_ = fftw_plan_many_dft(2, dims, howmany, buf, nullptr, 1, dist, buf, nullptr, 1,
                                     dist, FFTW_FORWARD, flags);
  backward_plan_ = fftw_plan_many_dft(2, dims, howmany, buf, nullptr, 1, dist, buf, nullptr, 1,
                                      dist, FFTW_BACKWARD, flags);
}

Fft2d::~Fft2d() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
}

void Fft2d::forward(cd* data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), p, p);
}

void Fft2d::backward(cd* data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(backward_plan_), p, p);
  const double scale = 1.0 / (static_cast<double>(nx_) * ny_);
  const std::size_t n = static_cast<std::size_t>(nx_) * ny_ * howmany_;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) data[i] *= scale;
}

}  // namespace tripod
