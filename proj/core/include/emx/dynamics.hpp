#pragma once

#include "emx/field.hpp"
#include "emx/operators.hpp"

namespace emx {

/// Run parameters: speed of light c >= c0 > 0, final time T. The
/// conductivity sigma and the magnetic diffusivity are fixed at 1.
struct Params {
  double c = 1.0;
  double c0 = 1.0;
  double T = 0.5;

  void validate() const {
    if (c0 <= 0.0) throw ConfigError("Params: c0 must be positive");
    if (c < c0) throw ConfigError("Params: c must be >= c0");
    if (T <= 0.0) throw ConfigError("Params: T must be positive");
  }
};

/// Euler-Maxwell state (u, E, B) at time t; all fields divergence-free with
/// zero mean. Pressure is eliminated by projection (see recover_pressure).
struct EMState {
  double t = 0.0;
  double c = 1.0;
  SpectralField u, E, B;
};

/// MHD state (u_bar, B_bar); the formal c -> infinity limit system.
struct MHDState {
  double t = 0.0;
  SpectralField u_bar, B_bar;
};

/// Auxiliary damped-Maxwell state (E_L, B_L), driven by Ebar; B_L(0) = 0.
struct LinState {
  double t = 0.0;
  double c = 1.0;
  SpectralField E_L, B_L;
};

struct EMTendency {
  SpectralField du;          // full projected Euler tendency
  SpectralField dE_forcing;  // -c P(u x B); the stiff -c^2 E and the wave
                             // coupling live in the exact propagator
  // dB_forcing is identically zero for Euler-Maxwell
};

struct MHDTendency {
  SpectralField du_bar;         // P[-(u.grad)u + (curl B) x B]
  SpectralField dB_bar_forcing; // curl(u x B); the Laplacian is exact
};

struct LinTendency {
  SpectralField dE_forcing;  // c * Ebar
  SpectralField dB_forcing;  // curl Ebar
};

/// Ohm's law j = c E + P(u x B) (sigma = 1).
SpectralField ohm_current(const EMState& s);

EMTendency em_rhs(const EMState& s);
MHDTendency mhd_rhs(const MHDState& s);

/// Ebar = curl B_bar - P(u_bar x B_bar).
SpectralField compute_ebar(const MHDState& s);
/// jbar = curl B_bar.
SpectralField compute_jbar(const MHDState& s);

LinTendency lin_rhs(const LinState& s, const SpectralField& ebar);

/// Pressure diagnostic from the projected Euler equation:
/// grad p = (I - P)(j x B - (u.grad)u), zero mean.
SpectralScalar recover_pressure(const EMState& s);

}  // namespace emx
