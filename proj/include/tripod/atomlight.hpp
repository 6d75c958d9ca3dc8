#pragma once

// Atom-light coupling of the double tripod: three bare states |1>,|2>,|3>
// each coupled to two mutually uncoupled states |e1>,|e2> by plane-wave
// lasers. Global basis order is (|1>,|2>,|3>,|e1>,|e2>).

#include <array>
#include <optional>

#include "tripod/types.hpp"
#include "tripod/units.hpp"

namespace tripod {

inline constexpr int kBareStates = 3;
inline constexpr int kLevels = 5;

/// Maximum |<B2|B1>| accepted for a custom phase matrix.
inline constexpr double kOrthogonalityTolerance = 1e-10;

using WaveVectors = std::array<Vec2, 3>;
using PhaseMatrix = Eigen::Matrix<double, 3, 2>;

/// S(j,p) = (-1)^p (pi/3)(j-2) in 1-based labels; makes the two bright
/// states orthogonal.
PhaseMatrix default_phases();

struct LaserConfig {
  double omega = 1.0;  ///< common Rabi amplitude
  double kappa = 1.0;  ///< wave-vector magnitude
  WaveVectors wavevectors{};
  PhaseMatrix phases = default_phases();
  double mass = 1.0;

  /// Regular triangle of wave vectors with the default phases.
  static LaserConfig canonical(double omega, double kappa = 1.0, double mass = 1.0);

  RecoilUnits units() const { return {kappa, mass}; }
};

/// |<B2|B1>| for equal-amplitude couplings with the given phases. Position
/// independent.
double orthogonality_residual(const PhaseMatrix& phases);

struct RabiMatrix {
  Eigen::Matrix<cd, 3, 2> values = Eigen::Matrix<cd, 3, 2>::Zero();
  std::array<double, 2> totals{};
};

RabiMatrix rabi_matrix(const LaserConfig& config, const Vec2& r);

/// H0 = -sum_p sum_j (Omega_{j,p} |e_p><j| + h.c.)
Mat5c build_hamiltonian(const RabiMatrix& rabi);

/// Exact eigensystem of H0 at one position, built from closed formulas so
/// that every vector is a smooth function of r.
struct DressedFrame {
  Vec2 position = Vec2::Zero();
  std::array<Vec5c, 2> bright{};
  Vec5c dark = Vec5c::Zero();
  std::array<Vec5c, 2> plus{};
  std::array<Vec5c, 2> minus{};
  std::array<double, 5> energies{};

  /// Columns (|1,+>, |2,+>, |D>, |1,->, |2,->), matching `energies`.
  Mat5c eigenbasis() const;
  /// Column n of eigenbasis().
  const Vec5c& state(int n) const;
};

/// Position-independent part of the dark state: the unit 3-vector orthogonal
/// to both phase-stripped bright vectors, with its first component real
/// and positive.
Vec3c dark_profile(const PhaseMatrix& phases);

/// Throws DegenerateCoupling when omega == 0 and OrthogonalityViolation when
/// the phases do not make the bright states orthogonal.
DressedFrame dressed_frame(const LaserConfig& config, const Vec2& r);

struct FrameCheck {
  bool totally_degenerate = false;
  double eigenvalue_deviation = 0.0;
  /// Largest principal angle between the analytic ground doublet and the
  /// lowest two eigenvectors of a dense solve. Empty when undefined.
  std::optional<double> subspace_angle;
};

FrameCheck verify_frame_against_eigensolver(const LaserConfig& config, const Vec2& r);

/// Eigenvalues of a Hermitian 5x5 matrix, ascending.
std::array<double, 5> hermitian_spectrum(const Mat5c& h);

}  // namespace tripod
