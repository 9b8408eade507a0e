#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "emx/dft.hpp"
#include "emx/field.hpp"
#include "emx/operators.hpp"

namespace emx::oracle {

// O(n^6) direct-summation references. Only meant for tiny grids (4^3, 8^3);
// they exist to cross-check the FFT pipeline, never to be fast.

/// Pointwise evaluation of f(x_j) = sum_k fhat(k) e^{i k.x_j} by direct sums.
PhysicalField eval_physical(const SpectralField& f);

/// Coefficients from collocation values by the direct forward sum / n^3.
SpectralField coeffs_from_physical(const PhysicalField& f);

/// curl computed through the physical side: differentiate the Fourier sum
/// pointwise, assemble curl on the grid, then extract coefficients directly.
SpectralField curl(const SpectralField& f);
SpectralScalar divergence(const SpectralField& f);

/// Per-mode projector matrix applied from scratch.
SpectralField leray_project(const SpectralField& f);

/// Full convolution sum in k-space (with the same mean-zero and 2/3-rule
/// truncation conventions as product_fields).
SpectralField product_convolution(const SpectralField& a, const SpectralField& b,
                                  ProductKind kind);

/// Dense matrix exponential (scaling and squaring + Taylor) of the 6x6
/// damped-Maxwell block acting on stacked (E,B) mode vectors.
void dense_block_exp_apply(Vec3i k, double c, double dt, const cplx e_in[3],
                           const cplx b_in[3], cplx e_out[3], cplx b_out[3]);

/// Same, on the scalar 2x2 block [[-c^2, c*kappa], [-c*kappa, 0]] with real
/// kappa = |k| (supports non-integer magnitudes for degeneracy probes).
/// Returns the four entries of exp(dt*M) row-major.
std::array<double, 4> dense_scalar_block_exp(double kappa, double c, double dt);

/// Variation-of-constants solution of x' = M x + F(t), x(0) = x0, on the
/// scalar 2x2 block, by adaptive Simpson quadrature of the Duhamel integral.
std::array<double, 2> duhamel_scalar(double kappa, double c, double t,
                                     const std::array<double, 2>& x0,
                                     const std::function<std::array<double, 2>(double)>& forcing,
                                     int panels = 4096);

/// phi0/phi1/phi2 evaluated in 50-digit arithmetic, rounded to double.
std::array<double, 3> phi_reference(double re, double im, std::array<double, 3>* imag_out = nullptr);

/// Brute-force DFT provider satisfying the DftProvider contract; used to
/// demonstrate pluggability and to cross-check FFTW.
std::unique_ptr<DftProvider> make_naive_provider();

/// Self-check suite behind the `oracle` CLI subcommand. Runs every 4^3-grid
/// equivalence check plus the propagator and quadrature oracles; prints one
/// line per check to stdout and returns the number of failures.
int run_selfcheck(bool verbose);

}  // namespace emx::oracle
