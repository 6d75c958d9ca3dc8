#pragma once

// hbar = 1 throughout. Lengths, energies and times are plain numbers in the
// units implied by the configured kappa and mass; the helpers below convert
// from the natural recoil scale (1/kappa, E_r = kappa^2/2m, 1/E_r).

namespace tripod {

struct RecoilUnits {
  double kappa = 1.0;
  double mass = 1.0;

  double energy() const { return kappa * kappa / (2.0 * mass); }
  double time() const { return 1.0 / energy(); }
  double length() const { return 1.0 / kappa; }
  double momentum() const { return kappa; }
};

}  // namespace tripod
