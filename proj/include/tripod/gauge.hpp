#pragma once

// Geometric gauge potentials of the dressed ground doublet {|1,+>, |2,+>}:
//   A_{s,q}   = i <s,+|grad|q,+>
//   Phi_{s,q} = -(1/2m) sum_X <s,+|grad|X> . <X|grad|q,+>,  X in {|1,->,|2,->,|D>}
// computed in closed form and by central differences of the analytic frame.

#include <array>
#include <random>

#include "tripod/atomlight.hpp"
#include "tripod/types.hpp"

namespace tripod {

struct GaugeFields {
  Mat2c a_x = Mat2c::Zero();
  Mat2c a_y = Mat2c::Zero();
  Mat2c phi = Mat2c::Zero();

  MatrixVector2 vector_potential() const { return {a_x, a_y}; }
};

/// k_j = kappa (cos(2pi(j-2)/3), sin(2pi(j-2)/3)), j = 1..3. Throws
/// InvalidKappa for kappa <= 0.
WaveVectors regular_triangle_wavevectors(double kappa);

/// Random closed triangle (k1 + k2 + k3 = 0) with edge lengths of order kappa.
WaveVectors random_closed_triangle(std::mt19937_64& rng, double kappa);

/// A_{s,q} = (1/6) sum_j k_j exp(i (S_{j,s} - S_{j,q})). Position independent.
MatrixVector2 vector_potential_analytic(const LaserConfig& config);

/// Phi = (1/2m) sum_a P K_a (1 - P) K_a P with K_a = diag(k_{j,a}) on the bare
/// states and P the ground-doublet projector. Exact for any geometry and
/// independent of the Rabi amplitude.
Mat2c scalar_potential_analytic(const LaserConfig& config);

GaugeFields gauge_fields_analytic(const LaserConfig& config);

/// 1e-4 / kappa
double default_difference_step(double kappa);

MatrixVector2 vector_potential_numeric(const LaserConfig& config, const Vec2& r, double h);
Mat2c scalar_potential_numeric(const LaserConfig& config, const Vec2& r, double h);
GaugeFields gauge_fields_numeric(const LaserConfig& config, const Vec2& r, double h);

/// Step-halving comparison of the numeric potentials against the closed
/// forms: errors at h and h/2 and the observed order log2(e_h / e_{h/2}).
struct ConvergenceCheck {
  double a_error_h = 0.0;
  double a_error_half = 0.0;
  double a_order = 0.0;
  double phi_error_h = 0.0;
  double phi_error_half = 0.0;
  double phi_order = 0.0;
};

ConvergenceCheck differencing_convergence(const LaserConfig& config, const Vec2& r, double h);

/// Dresselhaus <-> Rashba by exchanging the Cartesian labels x <-> y.
GaugeFields rashba_relabel(const GaugeFields& fields);

/// max_{ij} |a_ij - b_ij|
double max_abs_diff(const Mat2c& a, const Mat2c& b);
double max_abs_diff(const MatrixVector2& a, const MatrixVector2& b);

}  // namespace tripod
