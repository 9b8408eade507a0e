#pragma once

#include <complex>
#include <memory>

#include "emx/field.hpp"
#include "emx/grid.hpp"

namespace emx {

/// Pluggable 3D DFT backend.
///
/// Contract: forward is the unnormalized DFT
///   X(k) = sum_j x(j) exp(-i k.x_j),
/// inverse applies the 1/n^3-normalized adjoint so inverse(forward(x)) == x
/// to <= 1e-13 relative. Implementations must be callable from multiple
/// threads concurrently on distinct buffers.
class DftProvider {
 public:
  virtual ~DftProvider() = default;
  virtual void forward(const GridSpec& g, const cplx* in, cplx* out) = 0;
  virtual void inverse(const GridSpec& g, const cplx* in, cplx* out) = 0;
  virtual const char* name() const = 0;
};

/// FFTW3-backed provider (plans cached per grid, FFTW_ESTIMATE for
/// reproducibility). Thread count is read from EMX_DFT_THREADS.
std::unique_ptr<DftProvider> make_fftw_provider();

/// Process-wide provider used by the spectral operators. Defaults to FFTW.
DftProvider& dft_provider();
/// Swap the provider (tests plug in the brute-force one); returns the old one.
std::unique_ptr<DftProvider> set_dft_provider(std::unique_ptr<DftProvider> p);

// Conversions under the convention f(x) = sum_k fhat(k) e^{i k.x}:
// to_physical evaluates the Fourier sum on the collocation grid (imaginary
// residue of a Hermitian field is discarded), to_spectral inverts it.
PhysicalField to_physical(const SpectralField& f);
SpectralField to_spectral(const PhysicalField& f);
void scalar_to_physical(const SpectralScalar& s, std::vector<double>& out);

}  // namespace emx
