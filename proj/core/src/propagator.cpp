#include "emx/propagator.hpp"

#include <cmath>

#include "emx/errors.hpp"

namespace emx {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// phi_j(z) = sum_{n>=0} z^n / (n+j)!
cplx phi_series(cplx z, int j, int terms = 26) {
  cplx sum(0.0, 0.0);
  cplx zn(1.0, 0.0);
  for (int n = 0; n < terms; ++n) {
    sum += zn / factorial(n + j);
    zn *= z;
  }
  return sum;
}

// Eigenvalue data for the block, with z+ computed through the root product
// so widely separated roots lose no precision.
struct EigenData {
  bool real = true;
  double a = 0;        // dt * mu, exact
  double zp = 0, zm = 0, dz = 0;  // real case: eigenvalue times dt, dz = zp - zm
  double theta = 0;    // imaginary case: Im(z+)
  double u = 0;        // (dz/2)^2, negative for the oscillatory case
};

EigenData eigen_data(double k2, double c, double dt) {
  EigenData e;
  e.a = -0.5 * c * c * dt;
  const double disc = c * c * c * c - 4.0 * c * c * k2;
  if (disc >= 0.0) {
    const double rt = std::sqrt(disc);
    const double lm = -0.5 * (c * c + rt);
    const double lp = (k2 == 0.0) ? 0.0 : (c * c * k2) / lm;
    e.real = true;
    e.zp = lp * dt;
    e.zm = lm * dt;
    e.dz = rt * dt;
    e.u = 0.25 * e.dz * e.dz;
  } else {
    e.real = false;
    e.theta = 0.5 * std::sqrt(-disc) * dt;
    e.u = -e.theta * e.theta;
  }
  return e;
}

// Even/odd divided differences of exp at the eigenvalues. expm1 handles the
// real near-degenerate cancellation, sin(t)/t the oscillatory one.
void exp_even_odd(const EigenData& e, double& even, double& odd) {
  if (e.real) {
    even = 0.5 * (std::exp(e.zp) + std::exp(e.zm));
    if (e.dz < 2e-8) {
      odd = std::exp(e.a) * (1.0 + e.u / 6.0);
    } else if (e.dz < 0.5) {
      odd = std::exp(e.zm) * std::expm1(e.dz) / e.dz;
    } else {
      // separated exponentials: direct difference is cancellation-free and
      // avoids exp(zm)*expm1(dz) hitting 0*inf for widely split roots
      odd = (std::exp(e.zp) - std::exp(e.zm)) / e.dz;
    }
  } else {
    const double ea = std::exp(e.a);
    even = ea * std::cos(e.theta);
    odd = (e.theta < 1e-8) ? ea * (1.0 + e.u / 6.0) : ea * (std::sin(e.theta) / e.theta);
  }
}

double phi_real_one(double a, int j) {
  if (std::abs(a) < 0.5) return phi_series(cplx(a, 0.0), j).real();
  const double em1 = std::expm1(a);
  switch (j) {
    case 0: return std::exp(a);
    case 1: return em1 / a;
    default: return (em1 - a) / (a * a);
  }
}

// Derivatives of phi_j in the phi basis: D phi_m = phi_m - m phi_{m+1}.
// coeffs[m] are the weights of phi_{j+m} in d^n/da^n phi_j.
void phi_derivative_coeffs(int j, int n, std::vector<double>& coeffs) {
  coeffs.assign(1, 1.0);
  for (int d = 0; d < n; ++d) {
    std::vector<double> next(coeffs.size() + 1, 0.0);
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
      next[m] += coeffs[m];
      next[m + 1] -= coeffs[m] * double(j + int(m));
    }
    coeffs.swap(next);
  }
}

double phi_derivative(const std::vector<double>& chain, int j, int n) {
  std::vector<double> coeffs;
  phi_derivative_coeffs(j, n, coeffs);
  double v = 0.0;
  for (std::size_t m = 0; m < coeffs.size(); ++m) v += coeffs[m] * chain[j + m];
  return v;
}

// Even/odd divided differences of phi_j at a +- h via Taylor in u = h^2,
// valid for |h| <= 0.25 (terms through u^6, remainder far below 1e-13).
void phi_even_odd_taylor(const std::vector<double>& chain, int j, double a,
                         double u, double& even, double& odd) {
  (void)a;
  even = 0.0;
  odd = 0.0;
  double un = 1.0;
  for (int m = 0; m <= 6; ++m) {
    even += phi_derivative(chain, j, 2 * m) * un / factorial(2 * m);
    odd += phi_derivative(chain, j, 2 * m + 1) * un / factorial(2 * m + 1);
    un *= u;
  }
}

void phi_even_odd(int j, const EigenData& e, double& even, double& odd) {
  if (std::abs(e.u) <= 0.0625) {
    // chain up to j + 13 covers the 13th derivative used above
    const std::vector<double> chain = phi_chain(e.a, j + 14);
    phi_even_odd_taylor(chain, j, e.a, e.u, even, odd);
    return;
  }
  if (e.real) {
    const double fp = phi_real_one(e.zp, j), fm = phi_real_one(e.zm, j);
    even = 0.5 * (fp + fm);
    odd = (fp - fm) / e.dz;
  } else {
    // phi_j(conj z) = conj phi_j(z): one complex evaluation gives both parts.
    cplx f;
    const cplx z(e.a, e.theta);
    if (std::abs(z) < 0.5) {
      f = phi_series(z, j);
    } else {
      const cplx ez = std::exp(z);
      f = (j == 0) ? ez : (j == 1) ? (ez - 1.0) / z : (ez - 1.0 - z) / (z * z);
    }
    even = f.real();
    odd = f.imag() / e.theta;
  }
}

inline void i_k_cross(const Vec3i& k, const cplx v[3], cplx out[3]) {
  const cplx i(0.0, 1.0);
  out[0] = i * (double(k.y) * v[2] - double(k.z) * v[1]);
  out[1] = i * (double(k.z) * v[0] - double(k.x) * v[2]);
  out[2] = i * (double(k.x) * v[1] - double(k.y) * v[0]);
}

}  // namespace

PhiTriple phi_functions(cplx z) {
  PhiTriple t;
  t.phi0 = std::exp(z);
  if (std::abs(z) < 0.5) {
    t.phi1 = phi_series(z, 1);
    t.phi2 = phi_series(z, 2);
    return t;
  }
  if (z.imag() == 0.0) {
    const double em1 = std::expm1(z.real());
    t.phi1 = cplx(em1 / z.real(), 0.0);
    t.phi2 = cplx((em1 - z.real()) / (z.real() * z.real()), 0.0);
  } else {
    t.phi1 = (t.phi0 - 1.0) / z;
    t.phi2 = (t.phi0 - 1.0 - z) / (z * z);
  }
  return t;
}

std::vector<double> phi_chain(double a, int mmax) {
  std::vector<double> chain(mmax + 1);
  if (std::abs(a) < 4.0) {
    for (int m = 0; m <= mmax; ++m) chain[m] = phi_series(cplx(a, 0.0), m, 40).real();
  } else {
    chain[0] = std::exp(a);
    double inv_fact = 1.0;  // 1/0!
    for (int m = 0; m < mmax; ++m) {
      chain[m + 1] = (chain[m] - inv_fact) / a;
      inv_fact /= double(m + 1);
    }
  }
  return chain;
}

std::pair<cplx, cplx> block_eigenvalues(double k2, double c) {
  const double disc = c * c * c * c - 4.0 * c * c * k2;
  if (disc >= 0.0) {
    const double rt = std::sqrt(disc);
    const double lm = 0.5 * (-c * c - rt);
    const double lp = (k2 == 0.0) ? 0.0 : (c * c * k2) / lm;
    return {cplx(lp, 0.0), cplx(lm, 0.0)};
  }
  const double om = 0.5 * std::sqrt(-disc);
  return {cplx(-0.5 * c * c, om), cplx(-0.5 * c * c, -om)};
}

BlockWeights block_weights(double k2, double c, double dt) {
  if (dt <= 0.0) throw ConfigError("block_weights: dt must be positive");
  if (c <= 0.0) throw ConfigError("block_weights: c must be positive");
  const EigenData e = eigen_data(k2, c, dt);

  BlockWeights bw;
  double e_even, e_odd;
  exp_even_odd(e, e_even, e_odd);
  bw.g_ee = e_even + e.a * e_odd;
  bw.g_bb = e_even - e.a * e_odd;
  bw.w_c = e_odd * dt * c;
  phi_even_odd(1, e, bw.p1_even, bw.p1_odd);
  phi_even_odd(2, e, bw.p2_even, bw.p2_odd);
  return bw;
}

ModePropagator build_propagator(Vec3i k, double c, double dt) {
  ModePropagator p;
  p.k = k;
  p.c = c;
  p.dt = dt;
  p.w = block_weights(double(k.norm2()), c, dt);
  return p;
}

void ModePropagator::apply_homogeneous(const cplx e_in[3], const cplx b_in[3],
                                       cplx e_out[3], cplx b_out[3]) const {
  cplx ikxe[3], ikxb[3];
  i_k_cross(k, e_in, ikxe);
  i_k_cross(k, b_in, ikxb);
  for (int c3 = 0; c3 < 3; ++c3) {
    e_out[c3] = w.g_ee * e_in[c3] + w.w_c * ikxb[c3];
    b_out[c3] = w.g_bb * b_in[c3] - w.w_c * ikxe[c3];
  }
}

void ModePropagator::add_phi_forcing(int j, const cplx fe[3], const cplx fb[3],
                                     cplx e_acc[3], cplx b_acc[3],
                                     double scale) const {
  const double pe = (j == 1) ? w.p1_even : w.p2_even;
  const double po = (j == 1) ? w.p1_odd : w.p2_odd;
  cplx ikxfe[3], ikxfb[3];
  i_k_cross(k, fe, ikxfe);
  i_k_cross(k, fb, ikxfb);
  const double half_c2 = 0.5 * c * c;
  const double sdt = scale * dt;
  const double sdt2 = scale * dt * dt;
  for (int c3 = 0; c3 < 3; ++c3) {
    const cplx me = -half_c2 * fe[c3] + c * ikxfb[c3];   // (M - mu I) E row
    const cplx mb = half_c2 * fb[c3] - c * ikxfe[c3];    // (M - mu I) B row
    e_acc[c3] += sdt * pe * fe[c3] + sdt2 * po * me;
    b_acc[c3] += sdt * pe * fb[c3] + sdt2 * po * mb;
  }
}

PropagatorTable PropagatorTable::build(GridSpec grid, double c, double dt) {
  PropagatorTable t;
  t.grid = grid;
  t.c = c;
  t.dt = dt;
  t.w.resize(grid.size());
  // weights depend on |k|^2 only; cache per distinct k2
  const int kmax = grid.n / 2;
  std::vector<BlockWeights> by_k2(3 * kmax * kmax + 1);
  std::vector<char> have(3 * kmax * kmax + 1, 0);
  for (int ix = 0; ix < grid.n; ++ix) {
    const int kx = grid.wavenumber(ix);
    for (int iy = 0; iy < grid.n; ++iy) {
      const int ky = grid.wavenumber(iy);
      for (int iz = 0; iz < grid.n; ++iz) {
        const int kz = grid.wavenumber(iz);
        const int k2 = kx * kx + ky * ky + kz * kz;
        if (!have[k2]) {
          by_k2[k2] = block_weights(double(k2), c, dt);
          have[k2] = 1;
        }
        t.w[grid.index(ix, iy, iz)] = by_k2[k2];
      }
    }
  }
  return t;
}

void PropagatorTable::homogeneous(SpectralField& E, SpectralField& B) const {
  const GridSpec& g = grid;
  for (int ix = 0; ix < g.n; ++ix) {
    const int kx = g.wavenumber(ix);
    for (int iy = 0; iy < g.n; ++iy) {
      const int ky = g.wavenumber(iy);
      for (int iz = 0; iz < g.n; ++iz) {
        const std::size_t i = g.index(ix, iy, iz);
        const BlockWeights& bw = w[i];
        const Vec3i k{kx, ky, g.wavenumber(iz)};
        cplx e[3] = {E.comp[0][i], E.comp[1][i], E.comp[2][i]};
        cplx b[3] = {B.comp[0][i], B.comp[1][i], B.comp[2][i]};
        cplx ikxe[3], ikxb[3];
        i_k_cross(k, e, ikxe);
        i_k_cross(k, b, ikxb);
        for (int c3 = 0; c3 < 3; ++c3) {
          E.comp[c3][i] = bw.g_ee * e[c3] + bw.w_c * ikxb[c3];
          B.comp[c3][i] = bw.g_bb * b[c3] - bw.w_c * ikxe[c3];
        }
      }
    }
  }
}

void PropagatorTable::add_phi_forcing(int j, const SpectralField& FE,
                                      const SpectralField& FB, SpectralField& Eacc,
                                      SpectralField& Bacc, double scale) const {
  const GridSpec& g = grid;
  const double half_c2 = 0.5 * c * c;
  const double sdt = scale * dt;
  const double sdt2 = scale * dt * dt;
  for (int ix = 0; ix < g.n; ++ix) {
    const int kx = g.wavenumber(ix);
    for (int iy = 0; iy < g.n; ++iy) {
      const int ky = g.wavenumber(iy);
      for (int iz = 0; iz < g.n; ++iz) {
        const std::size_t i = g.index(ix, iy, iz);
        const BlockWeights& bw = w[i];
        const double pe = (j == 1) ? bw.p1_even : bw.p2_even;
        const double po = (j == 1) ? bw.p1_odd : bw.p2_odd;
        const Vec3i k{kx, ky, g.wavenumber(iz)};
        cplx fe[3] = {FE.comp[0][i], FE.comp[1][i], FE.comp[2][i]};
        cplx fb[3] = {FB.comp[0][i], FB.comp[1][i], FB.comp[2][i]};
        cplx ikxfe[3], ikxfb[3];
        i_k_cross(k, fe, ikxfe);
        i_k_cross(k, fb, ikxfb);
        for (int c3 = 0; c3 < 3; ++c3) {
          const cplx me = -half_c2 * fe[c3] + c * ikxfb[c3];
          const cplx mb = half_c2 * fb[c3] - c * ikxfe[c3];
          Eacc.comp[c3][i] += sdt * pe * fe[c3] + sdt2 * po * me;
          Bacc.comp[c3][i] += sdt * pe * fb[c3] + sdt2 * po * mb;
        }
      }
    }
  }
}

HeatTable HeatTable::build(GridSpec grid, double dt) {
  HeatTable t;
  t.grid = grid;
  t.dt = dt;
  t.e0.resize(grid.size());
  t.p1.resize(grid.size());
  t.p2.resize(grid.size());
  for (int ix = 0; ix < grid.n; ++ix) {
    const int kx = grid.wavenumber(ix);
    for (int iy = 0; iy < grid.n; ++iy) {
      const int ky = grid.wavenumber(iy);
      for (int iz = 0; iz < grid.n; ++iz) {
        const int kz = grid.wavenumber(iz);
        const std::size_t i = grid.index(ix, iy, iz);
        const double z = -double(kx * kx + ky * ky + kz * kz) * dt;
        t.e0[i] = std::exp(z);
        t.p1[i] = phi_real_one(z, 1);
        t.p2[i] = phi_real_one(z, 2);
      }
    }
  }
  return t;
}

void HeatTable::homogeneous(SpectralField& B) const {
  for (int c3 = 0; c3 < 3; ++c3)
    for (std::size_t i = 0; i < grid.size(); ++i) B.comp[c3][i] *= e0[i];
}

void HeatTable::add_phi_forcing(int j, const SpectralField& F, SpectralField& acc,
                                double scale) const {
  const std::vector<double>& p = (j == 1) ? p1 : p2;
  for (int c3 = 0; c3 < 3; ++c3)
    for (std::size_t i = 0; i < grid.size(); ++i)
      acc.comp[c3][i] += scale * dt * p[i] * F.comp[c3][i];
}

}  // namespace emx
