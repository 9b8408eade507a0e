#include "emx/dft.hpp"

#include <fftw3.h>

#include <cstdlib>
#include <map>
#include <mutex>

namespace emx {

namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

class FftwProvider final : public DftProvider {
 public:
  FftwProvider() {
#ifdef EMX_HAVE_FFTW_THREADS
    if (const char* env = std::getenv("EMX_DFT_THREADS")) {
      int n = std::atoi(env);
      if (n > 1) {
        fftw_init_threads();
        fftw_plan_with_nthreads(n);
      }
    }
#endif
  }

  ~FftwProvider() override {
    std::lock_guard<std::mutex> lock(mutex_);
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.fwd);
      fftw_destroy_plan(p.bwd);
    }
  }

  void forward(const GridSpec& g, const cplx* in, cplx* out) override {
    fftw_execute_dft(plan(g).fwd, to_fftw(in), to_fftw(out));
  }

  void inverse(const GridSpec& g, const cplx* in, cplx* out) override {
    fftw_execute_dft(plan(g).bwd, to_fftw(in), to_fftw(out));
    const double scale = 1.0 / double(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] *= scale;
  }

  const char* name() const override { return "fftw3"; }

 private:
  static fftw_complex* to_fftw(const cplx* p) {
    return reinterpret_cast<fftw_complex*>(const_cast<cplx*>(p));
  }

  PlanPair& plan(const GridSpec& g) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(g.n);
    if (it != plans_.end()) return it->second;
    // Planning scribbles on the buffers, so plan on scratch arrays once and
    // execute on caller buffers via the new-array interface. FFTW_UNALIGNED
    // keeps that legal for any std::vector storage.
    std::vector<cplx> a(g.size()), b(g.size());
    PlanPair p;
    p.fwd = fftw_plan_dft_3d(g.n, g.n, g.n, to_fftw(a.data()), to_fftw(b.data()),
                             FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_3d(g.n, g.n, g.n, to_fftw(a.data()), to_fftw(b.data()),
                             FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    return plans_.emplace(g.n, p).first->second;
  }

  std::mutex mutex_;
  std::map<int, PlanPair> plans_;
};

std::unique_ptr<DftProvider>& provider_slot() {
  static std::unique_ptr<DftProvider> provider = make_fftw_provider();
  return provider;
}

}  // namespace

std::unique_ptr<DftProvider> make_fftw_provider() {
  return std::make_unique<FftwProvider>();
}

DftProvider& dft_provider() { return *provider_slot(); }

std::unique_ptr<DftProvider> set_dft_provider(std::unique_ptr<DftProvider> p) {
  provider_slot().swap(p);
  return p;
}

PhysicalField to_physical(const SpectralField& f) {
  PhysicalField out(f.grid);
  const std::size_t m = f.grid.size();
  std::vector<cplx> buf(m);
  // f(x) = sum_k fhat e^{ikx} is the unnormalized backward transform,
  // i.e. n^3 times the provider's normalized inverse.
  const double n3 = double(m);
  for (int c = 0; c < 3; ++c) {
    dft_provider().inverse(f.grid, f.comp[c].data(), buf.data());
    for (std::size_t i = 0; i < m; ++i) out.comp[c][i] = n3 * buf[i].real();
  }
  return out;
}

SpectralField to_spectral(const PhysicalField& f) {
  SpectralField out(f.grid);
  const std::size_t m = f.grid.size();
  std::vector<cplx> buf(m);
  const double inv_n3 = 1.0 / double(m);
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < m; ++i) buf[i] = cplx(f.comp[c][i], 0.0);
    dft_provider().forward(f.grid, buf.data(), out.comp[c].data());
    for (std::size_t i = 0; i < m; ++i) out.comp[c][i] *= inv_n3;
  }
  return out;
}

void scalar_to_physical(const SpectralScalar& s, std::vector<double>& out) {
  const std::size_t m = s.grid.size();
  std::vector<cplx> buf(m);
  dft_provider().inverse(s.grid, s.coef.data(), buf.data());
  out.resize(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = double(m) * buf[i].real();
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* where) {
  if (a != b)
    throw ConfigError(std::string(where) + ": grid mismatch (" +
                      std::to_string(a.n) + " vs " + std::to_string(b.n) + ")");
}

void field_scale(SpectralField& f, double a) {
  for (auto& c : f.comp)
    for (auto& v : c) v *= a;
}

void field_axpy(SpectralField& y, double a, const SpectralField& x) {
  require_same_grid(y.grid, x.grid, "field_axpy");
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < y.comp[c].size(); ++i) y.comp[c][i] += a * x.comp[c][i];
}

SpectralField field_add(const SpectralField& a, const SpectralField& b) {
  SpectralField r = a;
  field_axpy(r, 1.0, b);
  return r;
}

SpectralField field_sub(const SpectralField& a, const SpectralField& b) {
  SpectralField r = a;
  field_axpy(r, -1.0, b);
  return r;
}

SpectralField field_scaled(const SpectralField& f, double a) {
  SpectralField r = f;
  field_scale(r, a);
  return r;
}

}  // namespace emx
