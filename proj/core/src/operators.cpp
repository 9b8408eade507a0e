#include "emx/operators.hpp"

#include <algorithm>
#include <cmath>

namespace emx {

namespace {

constexpr cplx kI(0.0, 1.0);

// splitmix64: counter-based generator so coefficients depend only on
// (seed, k, component), not on iteration order or grid size.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform01(std::uint64_t h) {
  return double(h >> 11) * 0x1.0p-53;
}

}  // namespace

SpectralField curl(const SpectralField& f) {
  SpectralField out(f.grid);
  const GridSpec& g = f.grid;
  for (int ix = 0; ix < g.n; ++ix) {
    const double kx = g.wavenumber(ix);
    for (int iy = 0; iy < g.n; ++iy) {
      const double ky = g.wavenumber(iy);
      for (int iz = 0; iz < g.n; ++iz) {
        const double kz = g.wavenumber(iz);
        const std::size_t i = g.index(ix, iy, iz);
        const cplx fx = f.comp[0][i], fy = f.comp[1][i], fz = f.comp[2][i];
        out.comp[0][i] = kI * (ky * fz - kz * fy);
        out.comp[1][i] = kI * (kz * fx - kx * fz);
        out.comp[2][i] = kI * (kx * fy - ky * fx);
      }
    }
  }
  return out;
}

SpectralScalar divergence(const SpectralField& f) {
  SpectralScalar out(f.grid);
  const GridSpec& g = f.grid;
  for (int ix = 0; ix < g.n; ++ix) {
    const double kx = g.wavenumber(ix);
    for (int iy = 0; iy < g.n; ++iy) {
      const double ky = g.wavenumber(iy);
      for (int iz = 0; iz < g.n; ++iz) {
        const double kz = g.wavenumber(iz);
        const std::size_t i = g.index(ix, iy, iz);
        out.coef[i] = kI * (kx * f.comp[0][i] + ky * f.comp[1][i] + kz * f.comp[2][i]);
      }
    }
  }
  return out;
}

SpectralField gradient(const SpectralScalar& s) {
  SpectralField out(s.grid);
  const GridSpec& g = s.grid;
  for (int ix = 0; ix < g.n; ++ix) {
    const double kx = g.wavenumber(ix);
    for (int iy = 0; iy < g.n; ++iy) {
      const double ky = g.wavenumber(iy);
      for (int iz = 0; iz < g.n; ++iz) {
        const std::size_t i = g.index(ix, iy, iz);
        const cplx v = kI * s.coef[i];
        out.comp[0][i] = kx * v;
        out.comp[1][i] = ky * v;
        out.comp[2][i] = double(g.wavenumber(iz)) * v;
      }
    }
  }
  return out;
}

SpectralField leray_project(const SpectralField& f) {
  const GridSpec& g = f.grid;
  const double scale = max_abs_coeff(f);
  const double mean_mag =
      std::abs(f.comp[0][0]) + std::abs(f.comp[1][0]) + std::abs(f.comp[2][0]);
  if (mean_mag > 1e-12 * std::max(scale, 1e-300))
    throw ConfigError("leray_project: nonzero mean mode (undefined at k=0)");
  SpectralField out(f.grid);
  for (int ix = 0; ix < g.n; ++ix) {
    const double kx = g.wavenumber(ix);
    for (int iy = 0; iy < g.n; ++iy) {
      const double ky = g.wavenumber(iy);
      for (int iz = 0; iz < g.n; ++iz) {
        const double kz = g.wavenumber(iz);
        const std::size_t i = g.index(ix, iy, iz);
        const double k2 = kx * kx + ky * ky + kz * kz;
        if (k2 == 0.0) continue;
        const cplx kdotf = kx * f.comp[0][i] + ky * f.comp[1][i] + kz * f.comp[2][i];
        const cplx q = kdotf / k2;
        out.comp[0][i] = f.comp[0][i] - kx * q;
        out.comp[1][i] = f.comp[1][i] - ky * q;
        out.comp[2][i] = f.comp[2][i] - kz * q;
      }
    }
  }
  return out;
}

void dealias_inplace(SpectralField& f) {
  const GridSpec& g = f.grid;
  const int kc = g.dealias_cutoff;
  for (int ix = 0; ix < g.n; ++ix) {
    const int kx = std::abs(g.wavenumber(ix));
    for (int iy = 0; iy < g.n; ++iy) {
      const int ky = std::abs(g.wavenumber(iy));
      for (int iz = 0; iz < g.n; ++iz) {
        const int kz = std::abs(g.wavenumber(iz));
        if (kx > kc || ky > kc || kz > kc) {
          const std::size_t i = g.index(ix, iy, iz);
          f.comp[0][i] = f.comp[1][i] = f.comp[2][i] = cplx(0.0, 0.0);
        }
      }
    }
  }
}

SpectralField dealias(const SpectralField& f) {
  SpectralField out = f;
  dealias_inplace(out);
  return out;
}

double sobolev_norm(const SpectralField& f, double s) {
  if (s < 0.0) throw ConfigError("sobolev_norm: negative s not supported");
  const GridSpec& g = f.grid;
  double sum = 0.0;
  for (int ix = 0; ix < g.n; ++ix) {
    const double kx = g.wavenumber(ix);
    for (int iy = 0; iy < g.n; ++iy) {
      const double ky = g.wavenumber(iy);
      for (int iz = 0; iz < g.n; ++iz) {
        const double kz = g.wavenumber(iz);
        const std::size_t i = g.index(ix, iy, iz);
        const double mag2 = std::norm(f.comp[0][i]) + std::norm(f.comp[1][i]) +
                            std::norm(f.comp[2][i]);
        const double k2 = kx * kx + ky * ky + kz * kz;
        sum += (s == 0.0 ? mag2 : std::pow(1.0 + k2, s) * mag2);
      }
    }
  }
  return std::sqrt(kTwoPi * kTwoPi * kTwoPi * sum);
}

double l2_norm(const SpectralField& f) { return sobolev_norm(f, 0.0); }

double l2_inner(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid, b.grid, "l2_inner");
  double sum = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < a.grid.size(); ++i)
      sum += (std::conj(a.comp[c][i]) * b.comp[c][i]).real();
  return kTwoPi * kTwoPi * kTwoPi * sum;
}

double sobolev_seminorm(const SpectralField& f, double s) {
  const GridSpec& g = f.grid;
  double sum = 0.0;
  for (int ix = 0; ix < g.n; ++ix) {
    const double kx = g.wavenumber(ix);
    for (int iy = 0; iy < g.n; ++iy) {
      const double ky = g.wavenumber(iy);
      for (int iz = 0; iz < g.n; ++iz) {
        const double kz = g.wavenumber(iz);
        const std::size_t i = g.index(ix, iy, iz);
        const double k2 = kx * kx + ky * ky + kz * kz;
        if (k2 == 0.0) continue;
        const double mag2 = std::norm(f.comp[0][i]) + std::norm(f.comp[1][i]) +
                            std::norm(f.comp[2][i]);
        sum += std::pow(k2, s) * mag2;
      }
    }
  }
  return std::sqrt(kTwoPi * kTwoPi * kTwoPi * sum);
}

double linf_norm(const SpectralField& f) {
  PhysicalField p = to_physical(f);
  double m = 0.0;
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    const double v2 = p.comp[0][i] * p.comp[0][i] + p.comp[1][i] * p.comp[1][i] +
                      p.comp[2][i] * p.comp[2][i];
    m = std::max(m, v2);
  }
  return std::sqrt(m);
}

double grad_linf_norm(const SpectralField& f) {
  const GridSpec& g = f.grid;
  std::vector<double> frob2(g.size(), 0.0);
  SpectralScalar d(g);
  std::vector<double> buf;
  for (int c = 0; c < 3; ++c) {
    for (int axis = 0; axis < 3; ++axis) {
      for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
          for (int iz = 0; iz < g.n; ++iz) {
            const std::size_t i = g.index(ix, iy, iz);
            const int k = axis == 0 ? g.wavenumber(ix)
                        : axis == 1 ? g.wavenumber(iy)
                                    : g.wavenumber(iz);
            d.coef[i] = kI * double(k) * f.comp[c][i];
          }
      scalar_to_physical(d, buf);
      for (std::size_t i = 0; i < g.size(); ++i) frob2[i] += buf[i] * buf[i];
    }
  }
  double m = 0.0;
  for (double v : frob2) m = std::max(m, v);
  return std::sqrt(m);
}

SpectralField product_fields(const SpectralField& a, const SpectralField& b,
                             ProductKind kind) {
  require_same_grid(a.grid, b.grid, "product_fields");
  const GridSpec& g = a.grid;
  const std::size_t m = g.size();
  PhysicalField out(g);

  if (kind == ProductKind::Cross) {
    PhysicalField pa = to_physical(a);
    PhysicalField pb = to_physical(b);
    for (std::size_t i = 0; i < m; ++i) {
      const double ax = pa.comp[0][i], ay = pa.comp[1][i], az = pa.comp[2][i];
      const double bx = pb.comp[0][i], by = pb.comp[1][i], bz = pb.comp[2][i];
      out.comp[0][i] = ay * bz - az * by;
      out.comp[1][i] = az * bx - ax * bz;
      out.comp[2][i] = ax * by - ay * bx;
    }
  } else {
    PhysicalField pa = to_physical(a);
    // (a.grad)b_c = sum_axis a_axis * d_axis b_c, gradients taken spectrally.
    SpectralScalar d(g);
    std::vector<double> buf;
    for (int c = 0; c < 3; ++c) {
      for (int axis = 0; axis < 3; ++axis) {
        for (int ix = 0; ix < g.n; ++ix)
          for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
              const std::size_t i = g.index(ix, iy, iz);
              const int k = axis == 0 ? g.wavenumber(ix)
                          : axis == 1 ? g.wavenumber(iy)
                                      : g.wavenumber(iz);
              d.coef[i] = kI * double(k) * b.comp[c][i];
            }
        scalar_to_physical(d, buf);
        for (std::size_t i = 0; i < m; ++i) out.comp[c][i] += pa.comp[axis][i] * buf[i];
      }
    }
  }

  SpectralField r = to_spectral(out);
  dealias_inplace(r);
  // Torus convention: no background fields, so quadratic tendencies are
  // mean-free by contract.
  r.comp[0][0] = r.comp[1][0] = r.comp[2][0] = cplx(0.0, 0.0);
  return r;
}

SpectralField random_divfree_field(GridSpec grid, std::uint64_t seed,
                                   double amplitude, double decay) {
  if (!(decay > 3.5))
    throw ConfigError("random_divfree_field: decay must exceed 7/2");
  SpectralField f(grid);
  const int kc = grid.dealias_cutoff;
  for (int kx = -kc; kx <= kc; ++kx)
    for (int ky = -kc; ky <= kc; ++ky)
      for (int kz = -kc; kz <= kc; ++kz) {
        if (kx == 0 && ky == 0 && kz == 0) continue;
        // Fill the lexicographically positive half-space; mirror the rest.
        const bool positive = (kx > 0) || (kx == 0 && ky > 0) || (kx == 0 && ky == 0 && kz > 0);
        if (!positive) continue;
        const double k2 = double(kx * kx + ky * ky + kz * kz);
        const double mag = amplitude * std::pow(1.0 + k2, -decay / 2.0);
        const std::size_t ip = grid.index(grid.mode_index(kx), grid.mode_index(ky),
                                          grid.mode_index(kz));
        const std::size_t im = grid.index(grid.mode_index(-kx), grid.mode_index(-ky),
                                          grid.mode_index(-kz));
        for (int c = 0; c < 3; ++c) {
          std::uint64_t h = seed;
          h = splitmix64(h ^ (std::uint64_t(std::uint32_t(kx + 512)) << 0));
          h = splitmix64(h ^ (std::uint64_t(std::uint32_t(ky + 512)) << 20));
          h = splitmix64(h ^ (std::uint64_t(std::uint32_t(kz + 512)) << 40));
          h = splitmix64(h ^ std::uint64_t(c + 1));
          const double phase = kTwoPi * uniform01(h);
          const cplx v = mag * cplx(std::cos(phase), std::sin(phase));
          f.comp[c][ip] = v;
          f.comp[c][im] = std::conj(v);
        }
      }
  return leray_project(f);
}

double max_divergence_ratio(const SpectralField& f) {
  const GridSpec& g = f.grid;
  double worst = 0.0;
  for (int ix = 0; ix < g.n; ++ix) {
    const double kx = g.wavenumber(ix);
    for (int iy = 0; iy < g.n; ++iy) {
      const double ky = g.wavenumber(iy);
      for (int iz = 0; iz < g.n; ++iz) {
        const double kz = g.wavenumber(iz);
        const std::size_t i = g.index(ix, iy, iz);
        const double km = std::sqrt(kx * kx + ky * ky + kz * kz);
        if (km == 0.0) continue;
        const double mag = std::sqrt(std::norm(f.comp[0][i]) + std::norm(f.comp[1][i]) +
                                     std::norm(f.comp[2][i]));
        if (mag == 0.0) continue;
        const double div = std::abs(kx * f.comp[0][i] + ky * f.comp[1][i] +
                                    kz * f.comp[2][i]);
        worst = std::max(worst, div / (km * mag));
      }
    }
  }
  return worst;
}

double hermitian_defect(const SpectralField& f) {
  const GridSpec& g = f.grid;
  double worst = 0.0;
  for (int ix = 0; ix < g.n; ++ix)
    for (int iy = 0; iy < g.n; ++iy)
      for (int iz = 0; iz < g.n; ++iz) {
        const int jx = g.mode_index(-g.wavenumber(ix));
        const int jy = g.mode_index(-g.wavenumber(iy));
        const int jz = g.mode_index(-g.wavenumber(iz));
        // Nyquist wavenumber n/2 is its own mirror; skip (not representable
        // as a conjugate pair on this index set).
        if (g.wavenumber(ix) == g.n / 2 || g.wavenumber(iy) == g.n / 2 ||
            g.wavenumber(iz) == g.n / 2)
          continue;
        const std::size_t i = g.index(ix, iy, iz);
        const std::size_t j = g.index(jx, jy, jz);
        for (int c = 0; c < 3; ++c)
          worst = std::max(worst, std::abs(f.comp[c][j] - std::conj(f.comp[c][i])));
      }
  return worst;
}

double max_abs_coeff(const SpectralField& f) {
  double m = 0.0;
  for (const auto& c : f.comp)
    for (const auto& v : c) m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(const SpectralField& f) {
  for (const auto& c : f.comp)
    for (const auto& v : c)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

}  // namespace emx
