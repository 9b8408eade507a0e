#pragma once

#include <array>
#include <complex>
#include <vector>

#include "emx/grid.hpp"

namespace emx {

using cplx = std::complex<double>;

/// Three-component vector field stored as Fourier coefficients,
/// f(x) = sum_k fhat(k) e^{i k.x}. Real fields keep Hermitian symmetry
/// fhat(-k) = conj(fhat(k)); evolved fields keep fhat(0) = 0.
struct SpectralField {
  GridSpec grid;
  std::array<std::vector<cplx>, 3> comp;

  SpectralField() = default;
  explicit SpectralField(GridSpec g) : grid(g) {
    for (auto& c : comp) c.assign(g.size(), cplx(0.0, 0.0));
  }

  static SpectralField zeros(GridSpec g) { return SpectralField(g); }

  cplx& at(int c, std::size_t idx) { return comp[c][idx]; }
  const cplx& at(int c, std::size_t idx) const { return comp[c][idx]; }
};

/// Scalar spectral field (divergence, pressure).
struct SpectralScalar {
  GridSpec grid;
  std::vector<cplx> coef;

  SpectralScalar() = default;
  explicit SpectralScalar(GridSpec g) : grid(g), coef(g.size(), cplx(0.0, 0.0)) {}
};

/// Collocation-point values of a three-component real field.
struct PhysicalField {
  GridSpec grid;
  std::array<std::vector<double>, 3> comp;

  PhysicalField() = default;
  explicit PhysicalField(GridSpec g) : grid(g) {
    for (auto& c : comp) c.assign(g.size(), 0.0);
  }
};

// In-place linear algebra on matching grids.
void field_scale(SpectralField& f, double a);
void field_axpy(SpectralField& y, double a, const SpectralField& x);  // y += a*x
SpectralField field_add(const SpectralField& a, const SpectralField& b);
SpectralField field_sub(const SpectralField& a, const SpectralField& b);
SpectralField field_scaled(const SpectralField& f, double a);
void require_same_grid(const GridSpec& a, const GridSpec& b, const char* where);

}  // namespace emx
