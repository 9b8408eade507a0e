#pragma once

#include <complex>
#include <vector>

#include "emx/field.hpp"
#include "emx/grid.hpp"

namespace emx {

struct PhiTriple {
  cplx phi0, phi1, phi2;
};

/// phi0 = e^z, phi1 = (e^z - 1)/z, phi2 = (e^z - 1 - z)/z^2, with a series
/// branch near z = 0. Relative error <= 1e-12 for |z| up to 1e6.
PhiTriple phi_functions(cplx z);

/// Real-argument phi_0..phi_mmax chain (series for small |a|, recurrence
/// otherwise). Used for divided-difference Taylor expansions.
std::vector<double> phi_chain(double a, int mmax);

/// Per-mode weights of the damped-Maxwell block
///   dE/dt = -c^2 E + c (ik x B) + F_E,  dB/dt = -c (ik x E) + F_B
/// restricted to the plane orthogonal to k, where (ik x)^2 = |k|^2. With
/// mu = -c^2/2 the exact propagator and its phi-functions reduce to
///   f(dt*M) = even * I + odd * dt * (M - mu I),
/// with even/odd the symmetric/antisymmetric divided differences of f at the
/// eigenvalues z+- = dt*(mu +- nu), nu^2 = c^4/4 - c^2|k|^2. All seven scalars
/// are evaluated by branch-free stable kernels (expm1 / sin / series), so the
/// degenerate double root |k| = c/2 needs no special casing by the caller.
struct BlockWeights {
  double g_ee = 0, g_bb = 0, w_c = 0;  // homogeneous: E' = g_ee E + w_c ikxB, ...
  double p1_even = 0, p1_odd = 0;      // phi1 pair
  double p2_even = 0, p2_odd = 0;      // phi2 pair
};

/// k2 = |k|^2 (real; tests probe non-integer magnitudes near the double root).
BlockWeights block_weights(double k2, double c, double dt);

/// Stable eigenvalues of the block, roots of lambda^2 + c^2 lambda + c^2|k|^2.
/// Returned as complex; real parts are always <= 0.
std::pair<cplx, cplx> block_eigenvalues(double k2, double c);

/// Exact one-mode propagator plus forcing weights for time step dt.
struct ModePropagator {
  Vec3i k;
  double c = 0, dt = 0;
  BlockWeights w;

  /// (E,B) <- exp(dt M)(E,B).
  void apply_homogeneous(const cplx e_in[3], const cplx b_in[3], cplx e_out[3],
                         cplx b_out[3]) const;
  /// acc += scale * dt * phi_j(dt M)(F_E, F_B), j in {1,2}.
  void add_phi_forcing(int j, const cplx fe[3], const cplx fb[3], cplx e_acc[3],
                       cplx b_acc[3], double scale) const;
};

ModePropagator build_propagator(Vec3i k, double c, double dt);

/// Whole-grid table of block weights for a fixed (c, dt).
struct PropagatorTable {
  GridSpec grid;
  double c = 0, dt = 0;
  std::vector<BlockWeights> w;

  static PropagatorTable build(GridSpec grid, double c, double dt);

  /// (E,B) <- exp(dt M)(E,B) on every mode.
  void homogeneous(SpectralField& E, SpectralField& B) const;
  /// (Eacc,Bacc) += scale * dt * phi_j(dt M)(FE, FB).
  void add_phi_forcing(int j, const SpectralField& FE, const SpectralField& FB,
                       SpectralField& Eacc, SpectralField& Bacc, double scale) const;
};

/// Exact heat-semigroup table e^{-|k|^2 dt} with phi1/phi2 forcing weights
/// (the -Delta B term of the MHD induction equation).
struct HeatTable {
  GridSpec grid;
  double dt = 0;
  std::vector<double> e0, p1, p2;

  static HeatTable build(GridSpec grid, double dt);
  void homogeneous(SpectralField& B) const;
  void add_phi_forcing(int j, const SpectralField& F, SpectralField& acc,
                       double scale) const;
};

}  // namespace emx
