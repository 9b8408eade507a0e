#include "emx/dynamics.hpp"

namespace emx {

SpectralField ohm_current(const EMState& s) {
  SpectralField j = field_scaled(s.E, s.c);
  field_axpy(j, 1.0, leray_project(product_fields(s.u, s.B, ProductKind::Cross)));
  return j;
}

EMTendency em_rhs(const EMState& s) {
  EMTendency t;
  SpectralField uxB = leray_project(product_fields(s.u, s.B, ProductKind::Cross));
  SpectralField j = field_scaled(s.E, s.c);
  field_axpy(j, 1.0, uxB);

  SpectralField force = product_fields(s.u, s.u, ProductKind::Advection);
  field_scale(force, -1.0);
  field_axpy(force, 1.0, product_fields(j, s.B, ProductKind::Cross));
  t.du = leray_project(force);

  t.dE_forcing = field_scaled(uxB, -s.c);
  return t;
}

MHDTendency mhd_rhs(const MHDState& s) {
  MHDTendency t;
  SpectralField jbar = curl(s.B_bar);
  SpectralField force = product_fields(s.u_bar, s.u_bar, ProductKind::Advection);
  field_scale(force, -1.0);
  field_axpy(force, 1.0, product_fields(jbar, s.B_bar, ProductKind::Cross));
  t.du_bar = leray_project(force);
  t.dB_bar_forcing = curl(product_fields(s.u_bar, s.B_bar, ProductKind::Cross));
  return t;
}

SpectralField compute_ebar(const MHDState& s) {
  SpectralField e = curl(s.B_bar);
  field_axpy(e, -1.0, leray_project(product_fields(s.u_bar, s.B_bar, ProductKind::Cross)));
  return e;
}

SpectralField compute_jbar(const MHDState& s) { return curl(s.B_bar); }

LinTendency lin_rhs(const LinState& s, const SpectralField& ebar) {
  LinTendency t;
  t.dE_forcing = field_scaled(ebar, s.c);
  t.dB_forcing = curl(ebar);
  return t;
}

SpectralScalar recover_pressure(const EMState& s) {
  SpectralField uxB = leray_project(product_fields(s.u, s.B, ProductKind::Cross));
  SpectralField j = field_scaled(s.E, s.c);
  field_axpy(j, 1.0, uxB);
  SpectralField g = product_fields(j, s.B, ProductKind::Cross);
  field_axpy(g, -1.0, product_fields(s.u, s.u, ProductKind::Advection));

  // grad p = (I - P) g  =>  phat = -i (k.ghat)/|k|^2, mean-free
  const GridSpec& grid = g.grid;
  SpectralScalar p(grid);
  for (int ix = 0; ix < grid.n; ++ix) {
    const double kx = grid.wavenumber(ix);
    for (int iy = 0; iy < grid.n; ++iy) {
      const double ky = grid.wavenumber(iy);
      for (int iz = 0; iz < grid.n; ++iz) {
        const double kz = grid.wavenumber(iz);
        const std::size_t i = grid.index(ix, iy, iz);
        const double k2 = kx * kx + ky * ky + kz * kz;
        if (k2 == 0.0) continue;
        const cplx kdotg = kx * g.comp[0][i] + ky * g.comp[1][i] + kz * g.comp[2][i];
        p.coef[i] = cplx(0.0, -1.0) * kdotg / k2;
      }
    }
  }
  return p;
}

}  // namespace emx
