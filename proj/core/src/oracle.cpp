#include "emx/oracle.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <array>
#include <cmath>
#include <cstdio>

#include "emx/propagator.hpp"

namespace emx::oracle {

namespace {

using float50 = boost::multiprecision::cpp_bin_float_50;
constexpr cplx kI(0.0, 1.0);

}  // namespace

PhysicalField eval_physical(const SpectralField& f) {
  const GridSpec& g = f.grid;
  PhysicalField out(g);
  for (int jx = 0; jx < g.n; ++jx)
    for (int jy = 0; jy < g.n; ++jy)
      for (int jz = 0; jz < g.n; ++jz) {
        const double x = kTwoPi * jx / g.n, y = kTwoPi * jy / g.n, z = kTwoPi * jz / g.n;
        cplx acc[3] = {0, 0, 0};
        for (int ix = 0; ix < g.n; ++ix)
          for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
              const double kx = g.wavenumber(ix), ky = g.wavenumber(iy), kz = g.wavenumber(iz);
              const cplx ph = std::exp(kI * (kx * x + ky * y + kz * z));
              const std::size_t i = g.index(ix, iy, iz);
              for (int c = 0; c < 3; ++c) acc[c] += f.comp[c][i] * ph;
            }
        const std::size_t j = g.index(jx, jy, jz);
        for (int c = 0; c < 3; ++c) out.comp[c][j] = acc[c].real();
      }
  return out;
}

SpectralField coeffs_from_physical(const PhysicalField& f) {
  const GridSpec& g = f.grid;
  SpectralField out(g);
  const double inv_n3 = 1.0 / double(g.size());
  for (int ix = 0; ix < g.n; ++ix)
    for (int iy = 0; iy < g.n; ++iy)
      for (int iz = 0; iz < g.n; ++iz) {
        const double kx = g.wavenumber(ix), ky = g.wavenumber(iy), kz = g.wavenumber(iz);
        cplx acc[3] = {0, 0, 0};
        for (int jx = 0; jx < g.n; ++jx)
          for (int jy = 0; jy < g.n; ++jy)
            for (int jz = 0; jz < g.n; ++jz) {
              const double x = kTwoPi * jx / g.n, y = kTwoPi * jy / g.n,
                           z = kTwoPi * jz / g.n;
              const cplx ph = std::exp(-kI * (kx * x + ky * y + kz * z));
              const std::size_t j = g.index(jx, jy, jz);
              for (int c = 0; c < 3; ++c) acc[c] += f.comp[c][j] * ph;
            }
        const std::size_t i = g.index(ix, iy, iz);
        for (int c = 0; c < 3; ++c) out.comp[c][i] = acc[c] * inv_n3;
      }
  return out;
}

namespace {

// d/dx_axis of every component, evaluated pointwise by direct sums.
std::array<std::vector<double>, 3> direct_derivative(const SpectralField& f, int axis) {
  const GridSpec& g = f.grid;
  std::array<std::vector<double>, 3> out;
  for (auto& v : out) v.assign(g.size(), 0.0);
  for (int jx = 0; jx < g.n; ++jx)
    for (int jy = 0; jy < g.n; ++jy)
      for (int jz = 0; jz < g.n; ++jz) {
        const double x = kTwoPi * jx / g.n, y = kTwoPi * jy / g.n, z = kTwoPi * jz / g.n;
        cplx acc[3] = {0, 0, 0};
        for (int ix = 0; ix < g.n; ++ix)
          for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
              const double kk[3] = {double(g.wavenumber(ix)), double(g.wavenumber(iy)),
                                    double(g.wavenumber(iz))};
              const cplx ph = std::exp(kI * (kk[0] * x + kk[1] * y + kk[2] * z));
              const std::size_t i = g.index(ix, iy, iz);
              for (int c = 0; c < 3; ++c) acc[c] += kI * kk[axis] * f.comp[c][i] * ph;
            }
        const std::size_t j = g.index(jx, jy, jz);
        for (int c = 0; c < 3; ++c) out[c][j] = acc[c].real();
      }
  return out;
}

}  // namespace

SpectralField curl(const SpectralField& f) {
  const GridSpec& g = f.grid;
  auto dx = direct_derivative(f, 0);
  auto dy = direct_derivative(f, 1);
  auto dz = direct_derivative(f, 2);
  PhysicalField c(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    c.comp[0][i] = dy[2][i] - dz[1][i];
    c.comp[1][i] = dz[0][i] - dx[2][i];
    c.comp[2][i] = dx[1][i] - dy[0][i];
  }
  return coeffs_from_physical(c);
}

SpectralScalar divergence(const SpectralField& f) {
  const GridSpec& g = f.grid;
  auto dx = direct_derivative(f, 0);
  auto dy = direct_derivative(f, 1);
  auto dz = direct_derivative(f, 2);
  PhysicalField d(g);
  for (std::size_t i = 0; i < g.size(); ++i)
    d.comp[0][i] = dx[0][i] + dy[1][i] + dz[2][i];
  SpectralField coeffs = coeffs_from_physical(d);
  SpectralScalar out(g);
  out.coef = coeffs.comp[0];
  return out;
}

SpectralField leray_project(const SpectralField& f) {
  const GridSpec& g = f.grid;
  SpectralField out(g);
  for (int ix = 0; ix < g.n; ++ix)
    for (int iy = 0; iy < g.n; ++iy)
      for (int iz = 0; iz < g.n; ++iz) {
        const double k[3] = {double(g.wavenumber(ix)), double(g.wavenumber(iy)),
                             double(g.wavenumber(iz))};
        const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        const std::size_t i = g.index(ix, iy, iz);
        if (k2 == 0.0) continue;
        // projector matrix P_ab = delta_ab - k_a k_b / |k|^2, built entrywise
        for (int a = 0; a < 3; ++a) {
          cplx acc(0.0, 0.0);
          for (int b = 0; b < 3; ++b) {
            const double pab = (a == b ? 1.0 : 0.0) - k[a] * k[b] / k2;
            acc += pab * f.comp[b][i];
          }
          out.comp[a][i] = acc;
        }
      }
  return out;
}

SpectralField product_convolution(const SpectralField& a, const SpectralField& b,
                                  ProductKind kind) {
  const GridSpec& g = a.grid;
  SpectralField out(g);
  const int half = g.n / 2;
  auto in_range = [&](int k) { return k >= -half + 1 && k <= half; };
  for (int kx = -half + 1; kx <= half; ++kx)
    for (int ky = -half + 1; ky <= half; ++ky)
      for (int kz = -half + 1; kz <= half; ++kz) {
        cplx acc[3] = {0, 0, 0};
        for (int px = -half + 1; px <= half; ++px)
          for (int py = -half + 1; py <= half; ++py)
            for (int pz = -half + 1; pz <= half; ++pz) {
              const int qx = kx - px, qy = ky - py, qz = kz - pz;
              if (!in_range(qx) || !in_range(qy) || !in_range(qz)) continue;
              const std::size_t ip = g.index(g.mode_index(px), g.mode_index(py),
                                             g.mode_index(pz));
              const std::size_t iq = g.index(g.mode_index(qx), g.mode_index(qy),
                                             g.mode_index(qz));
              const cplx av[3] = {a.comp[0][ip], a.comp[1][ip], a.comp[2][ip]};
              const cplx bv[3] = {b.comp[0][iq], b.comp[1][iq], b.comp[2][iq]};
              if (kind == ProductKind::Cross) {
                acc[0] += av[1] * bv[2] - av[2] * bv[1];
                acc[1] += av[2] * bv[0] - av[0] * bv[2];
                acc[2] += av[0] * bv[1] - av[1] * bv[0];
              } else {
                const cplx adotq =
                    av[0] * cplx(0.0, qx) + av[1] * cplx(0.0, qy) + av[2] * cplx(0.0, qz);
                for (int c = 0; c < 3; ++c) acc[c] += adotq * bv[c];
              }
            }
        const std::size_t i = g.index(g.mode_index(kx), g.mode_index(ky), g.mode_index(kz));
        for (int c = 0; c < 3; ++c) out.comp[c][i] = acc[c];
      }
  dealias_inplace(out);
  out.comp[0][0] = out.comp[1][0] = out.comp[2][0] = cplx(0.0, 0.0);
  return out;
}

namespace {

// long double internals keep the scaling-and-squaring reference accurate even
// for harshly damped blocks (many squarings amplify double rounding of the
// scaled matrix to ~eps*|A| absolute error).
using lcplx = std::complex<long double>;

template <int N>
struct DenseMat {
  std::array<std::array<lcplx, N>, N> m{};

  static DenseMat identity() {
    DenseMat r;
    for (int i = 0; i < N; ++i) r.m[i][i] = 1.0L;
    return r;
  }
  DenseMat operator*(const DenseMat& o) const {
    DenseMat r;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        lcplx s(0.0L, 0.0L);
        for (int k = 0; k < N; ++k) s += m[i][k] * o.m[k][j];
        r.m[i][j] = s;
      }
    return r;
  }
  long double norm1() const {
    long double best = 0.0L;
    for (int j = 0; j < N; ++j) {
      long double s = 0.0L;
      for (int i = 0; i < N; ++i) s += std::abs(m[i][j]);
      best = std::max(best, s);
    }
    return best;
  }
};

template <int N>
DenseMat<N> dense_exp(DenseMat<N> a) {
  int squarings = 0;
  long double nrm = a.norm1();
  while (nrm > 0.25L) {
    for (auto& row : a.m)
      for (auto& v : row) v *= 0.5L;
    nrm *= 0.5L;
    ++squarings;
  }
  DenseMat<N> result = DenseMat<N>::identity();
  DenseMat<N> term = DenseMat<N>::identity();
  for (int n = 1; n <= 30; ++n) {
    term = term * a;
    for (auto& row : term.m)
      for (auto& v : row) v /= (long double)(n);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) result.m[i][j] += term.m[i][j];
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

}  // namespace

void dense_block_exp_apply(Vec3i k, double c, double dt, const cplx e_in[3],
                           const cplx b_in[3], cplx e_out[3], cplx b_out[3]) {
  // rows/cols 0..2 = E, 3..5 = B;  dE = -c^2 E + c (ik x B), dB = -c (ik x E)
  DenseMat<6> a;
  const long double kk[3] = {(long double)k.x, (long double)k.y, (long double)k.z};
  auto cross_entry = [&](int i, int j) -> lcplx {
    // i-th component of (ik x v) for v = unit vector j
    long double val = 0.0L;
    if (i == 0 && j == 1) val = -kk[2];
    if (i == 0 && j == 2) val = kk[1];
    if (i == 1 && j == 0) val = kk[2];
    if (i == 1 && j == 2) val = -kk[0];
    if (i == 2 && j == 0) val = -kk[1];
    if (i == 2 && j == 1) val = kk[0];
    return lcplx(0.0L, val);
  };
  for (int i = 0; i < 3; ++i) {
    a.m[i][i] = -(long double)c * c;
    for (int j = 0; j < 3; ++j) {
      a.m[i][j + 3] += (long double)c * cross_entry(i, j);
      a.m[i + 3][j] -= (long double)c * cross_entry(i, j);
    }
  }
  for (auto& row : a.m)
    for (auto& v : row) v *= (long double)dt;
  DenseMat<6> e = dense_exp(a);
  lcplx in[6] = {e_in[0], e_in[1], e_in[2], b_in[0], b_in[1], b_in[2]};
  lcplx out[6];
  for (int i = 0; i < 6; ++i) {
    lcplx s(0.0L, 0.0L);
    for (int j = 0; j < 6; ++j) s += e.m[i][j] * in[j];
    out[i] = s;
  }
  for (int i = 0; i < 3; ++i) {
    e_out[i] = cplx(double(out[i].real()), double(out[i].imag()));
    b_out[i] = cplx(double(out[i + 3].real()), double(out[i + 3].imag()));
  }
}

std::array<double, 4> dense_scalar_block_exp(double kappa, double c, double dt) {
  DenseMat<2> a;
  a.m[0][0] = -(long double)c * c * dt;
  a.m[0][1] = (long double)c * kappa * dt;
  a.m[1][0] = -(long double)c * kappa * dt;
  a.m[1][1] = 0.0L;
  DenseMat<2> e = dense_exp(a);
  return {double(e.m[0][0].real()), double(e.m[0][1].real()),
          double(e.m[1][0].real()), double(e.m[1][1].real())};
}

std::array<double, 2> duhamel_scalar(double kappa, double c, double t,
                                     const std::array<double, 2>& x0,
                                     const std::function<std::array<double, 2>(double)>& forcing,
                                     int panels) {
  auto propagate = [&](double tau, const std::array<double, 2>& v) {
    auto m = dense_scalar_block_exp(kappa, c, tau);
    return std::array<double, 2>{m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1]};
  };
  std::array<double, 2> acc = propagate(t, x0);
  // Simpson panels of e^{(t-s)M} F(s); the integrand is smooth once the
  // homogeneous part is handled exactly by the propagator above.
  const double h = t / panels;
  std::array<double, 2> sum = {0.0, 0.0};
  for (int p = 0; p < panels; ++p) {
    const double s0 = p * h, s1 = s0 + 0.5 * h, s2 = s0 + h;
    auto f0 = propagate(t - s0, forcing(s0));
    auto f1 = propagate(t - s1, forcing(s1));
    auto f2 = propagate(t - s2, forcing(s2));
    for (int i = 0; i < 2; ++i) sum[i] += (h / 6.0) * (f0[i] + 4.0 * f1[i] + f2[i]);
  }
  return {acc[0] + sum[0], acc[1] + sum[1]};
}

std::array<double, 3> phi_reference(double re, double im, std::array<double, 3>* imag_out) {
  using c50 = std::complex<float50>;
  const c50 z(re, im);
  c50 phi0, phi1, phi2;
  if (abs(z) < float50(0.25)) {
    c50 zn(1.0, 0.0);
    phi1 = c50(0.0, 0.0);
    phi2 = c50(0.0, 0.0);
    float50 fact1 = 1.0, fact2 = 2.0;  // (n+1)!, (n+2)!
    for (int n = 0; n < 60; ++n) {
      phi1 += zn / fact1;
      phi2 += zn / fact2;
      zn *= z;
      fact1 *= float50(n + 2);
      fact2 *= float50(n + 3);
    }
    phi0 = exp(z);
  } else {
    phi0 = exp(z);
    phi1 = (phi0 - c50(1.0, 0.0)) / z;
    phi2 = (phi0 - c50(1.0, 0.0) - z) / (z * z);
  }
  if (imag_out)
    *imag_out = {double(phi0.imag()), double(phi1.imag()), double(phi2.imag())};
  return {double(phi0.real()), double(phi1.real()), double(phi2.real())};
}

namespace {

class NaiveProvider final : public DftProvider {
 public:
  void forward(const GridSpec& g, const cplx* in, cplx* out) override {
    transform(g, in, out, -1.0, 1.0);
  }
  void inverse(const GridSpec& g, const cplx* in, cplx* out) override {
    transform(g, in, out, 1.0, 1.0 / double(g.size()));
  }
  const char* name() const override { return "naive-dft"; }

 private:
  static void transform(const GridSpec& g, const cplx* in, cplx* out, double sign,
                        double scale) {
    const int n = g.n;
    std::vector<cplx> tmp(g.size());
    for (int ax = 0; ax < n; ++ax)
      for (int ay = 0; ay < n; ++ay)
        for (int az = 0; az < n; ++az) {
          cplx acc(0.0, 0.0);
          for (int bx = 0; bx < n; ++bx)
            for (int by = 0; by < n; ++by)
              for (int bz = 0; bz < n; ++bz) {
                const double ph = sign * kTwoPi *
                                  (double(ax * bx) + double(ay * by) + double(az * bz)) / n;
                // note: exponent uses index products; equivalent to k.x since
                // e^{2pi i k j / n} depends on k j mod n only
                acc += in[g.index(bx, by, bz)] * cplx(std::cos(ph), std::sin(ph));
              }
          tmp[g.index(ax, ay, az)] = scale * acc;
        }
    std::copy(tmp.begin(), tmp.end(), out);
  }
};

struct Check {
  const char* name;
  double err;
  double tol;
};

double rel_err(const SpectralField& got, const SpectralField& want) {
  double scale = std::max(max_abs_coeff(want), 1e-300);
  SpectralField d = field_sub(got, want);
  return max_abs_coeff(d) / scale;
}

}  // namespace

std::unique_ptr<DftProvider> make_naive_provider() {
  return std::make_unique<NaiveProvider>();
}

int run_selfcheck(bool verbose) {
  std::vector<Check> checks;
  const GridSpec g = GridSpec::make(4);
  SpectralField f = random_divfree_field(g, 42, 1.0, 4.0);
  SpectralField h = random_divfree_field(g, 43, 0.7, 4.0);
  // a non-solenoidal test input for projection / divergence checks
  SpectralField raw = f;
  {
    SpectralScalar phi(g);
    phi.coef[g.index(g.mode_index(1), 0, 0)] = cplx(0.2, 0.1);
    phi.coef[g.index(g.mode_index(-1), 0, 0)] = cplx(0.2, -0.1);
    field_axpy(raw, 1.0, gradient(phi));
  }

  checks.push_back({"dft round-trip", [&] {
    PhysicalField p = to_physical(f);
    SpectralField back = to_spectral(p);
    return rel_err(back, f);
  }(), 1e-13});

  checks.push_back({"physical evaluation vs direct sum", [&] {
    PhysicalField fast = to_physical(f);
    PhysicalField slow = eval_physical(f);
    double scale = 0.0, err = 0.0;
    for (int c = 0; c < 3; ++c)
      for (std::size_t i = 0; i < g.size(); ++i) {
        scale = std::max(scale, std::abs(slow.comp[c][i]));
        err = std::max(err, std::abs(fast.comp[c][i] - slow.comp[c][i]));
      }
    return err / std::max(scale, 1e-300);
  }(), 1e-12});

  checks.push_back({"curl vs direct-DFT oracle", rel_err(emx::curl(raw), oracle::curl(raw)), 1e-12});

  checks.push_back({"divergence vs direct-DFT oracle", [&] {
    SpectralScalar fast = emx::divergence(raw);
    SpectralScalar slow = oracle::divergence(raw);
    double scale = 0.0, err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      scale = std::max(scale, std::abs(slow.coef[i]));
      err = std::max(err, std::abs(fast.coef[i] - slow.coef[i]));
    }
    return err / std::max(scale, 1e-300);
  }(), 1e-12});

  checks.push_back({"leray projection vs direct oracle",
                    rel_err(emx::leray_project(raw), oracle::leray_project(raw)), 1e-12});

  checks.push_back({"cross product vs convolution oracle",
                    rel_err(product_fields(f, h, ProductKind::Cross),
                            product_convolution(f, h, ProductKind::Cross)),
                    1e-10});

  checks.push_back({"advection vs convolution oracle",
                    rel_err(product_fields(f, h, ProductKind::Advection),
                            product_convolution(f, h, ProductKind::Advection)),
                    1e-10});

  checks.push_back({"parseval: quadrature vs spectral L2", [&] {
    PhysicalField p = to_physical(f);
    double sum = 0.0;
    for (int c = 0; c < 3; ++c)
      for (std::size_t i = 0; i < g.size(); ++i) sum += p.comp[c][i] * p.comp[c][i];
    const double dv = std::pow(kTwoPi / g.n, 3);
    const double quad = std::sqrt(sum * dv);
    const double spect = l2_norm(f);
    return std::abs(quad - spect) / spect;
  }(), 1e-10});

  checks.push_back({"linf vs direct evaluation", [&] {
    PhysicalField slow = eval_physical(f);
    double m = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      m = std::max(m, std::sqrt(slow.comp[0][i] * slow.comp[0][i] +
                                slow.comp[1][i] * slow.comp[1][i] +
                                slow.comp[2][i] * slow.comp[2][i]));
    return std::abs(linf_norm(f) - m) / m;
  }(), 1e-12});

  checks.push_back({"propagator vs dense expm (c=2,|k|=1,dt=0.1)", [&] {
    ModePropagator p = build_propagator({1, 0, 0}, 2.0, 0.1);
    cplx e_in[3] = {cplx(0, 0), cplx(0.3, 0.1), cplx(-0.2, 0.4)};
    cplx b_in[3] = {cplx(0, 0), cplx(-0.1, 0.2), cplx(0.5, -0.3)};
    cplx e1[3], b1[3], e2[3], b2[3];
    p.apply_homogeneous(e_in, b_in, e1, b1);
    dense_block_exp_apply({1, 0, 0}, 2.0, 0.1, e_in, b_in, e2, b2);
    double err = 0.0;
    for (int i = 0; i < 3; ++i)
      err = std::max({err, std::abs(e1[i] - e2[i]), std::abs(b1[i] - b2[i])});
    return err;
  }(), 1e-11});

  checks.push_back({"propagator degenerate branch (|k|=c/2 +- 1e-6)", [&] {
    const double c = 8.0, dt = 0.05;
    double err = 0.0;
    for (double kappa : {c / 2 - 1e-6, c / 2, c / 2 + 1e-6}) {
      BlockWeights w = block_weights(kappa * kappa, c, dt);
      auto m = dense_scalar_block_exp(kappa, c, dt);
      // scalar-block entries: [g_ee, c kappa S; -c kappa S, g_bb], w_c = c S
      const double eb = w.w_c * kappa;
      err = std::max(err, std::abs(w.g_ee - m[0]));
      err = std::max(err, std::abs(eb - m[1]));
      err = std::max(err, std::abs(-eb - m[2]));
      err = std::max(err, std::abs(w.g_bb - m[3]));
    }
    return err;
  }(), 1e-11});

  checks.push_back({"phi functions vs 50-digit reference", [&] {
    double err = 0.0;
    for (double z : {-1e6, -5000.0, -37.5, -2.0, -0.75, -0.3, -1e-3, -1e-9, 0.0, 0.4, 3.0}) {
      auto ref = phi_reference(z, 0.0);
      PhiTriple got = phi_functions(cplx(z, 0.0));
      err = std::max(err, std::abs(got.phi1.real() - ref[1]) / std::max(std::abs(ref[1]), 1e-300));
      err = std::max(err, std::abs(got.phi2.real() - ref[2]) / std::max(std::abs(ref[2]), 1e-300));
    }
    return err;
  }(), 1e-12});

  checks.push_back({"duhamel quadrature self-consistency", [&] {
    // the quadrature solution of x' = Mx + F must match the decomposition
    // e^{tM}x0 + (particular solution with x0 = 0) for quadratures of
    // different panel counts
    const double kappa = 2.0, c = 3.0, dt = 0.2;
    auto forcing = [](double s) {
      return std::array<double, 2>{0.3 * std::cos(s), 0.1 * s};
    };
    auto ref = duhamel_scalar(kappa, c, dt, {0.4, -0.2}, forcing, 4096);
    auto m1 = dense_scalar_block_exp(kappa, c, dt);
    std::array<double, 2> x0{0.4, -0.2};
    auto part = duhamel_scalar(kappa, c, dt, {0.0, 0.0}, forcing, 1024);
    std::array<double, 2> hom{m1[0] * x0[0] + m1[1] * x0[1], m1[2] * x0[0] + m1[3] * x0[1]};
    double err = 0.0;
    for (int i = 0; i < 2; ++i) err = std::max(err, std::abs(ref[i] - (hom[i] + part[i])));
    return err;
  }(), 1e-10});

  int failures = 0;
  for (const auto& c : checks) {
    const bool ok = c.err <= c.tol;
    if (!ok) ++failures;
    if (verbose || !ok)
      std::printf("%-50s %s  (err=%.3e tol=%.1e)\n", c.name, ok ? "PASS" : "FAIL", c.err,
                  c.tol);
  }
  return failures;
}

}  // namespace emx::oracle
