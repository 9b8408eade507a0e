#pragma once

#include <array>
#include <cstdint>

#include "emx/errors.hpp"

namespace emx {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Cubic periodic grid on [0,2pi)^3 with n collocation points per axis.
/// Wavevectors run over k in {-n/2+1, ..., n/2} per axis; quadratic products
/// are truncated at the 2/3-rule cutoff floor(n/3).
struct GridSpec {
  int n = 0;
  int dealias_cutoff = 0;

  static GridSpec make(int n) {
    if (n < 4 || n > 256) throw ConfigError("grid n must be in [4,256], got " + std::to_string(n));
    if (n % 2 != 0) throw ConfigError("grid n must be even, got " + std::to_string(n));
    GridSpec g;
    g.n = n;
    g.dealias_cutoff = n / 3;
    return g;
  }

  std::size_t size() const { return std::size_t(n) * n * n; }
  double dx() const { return kTwoPi / n; }

  /// FFT array index -> signed wavenumber.
  int wavenumber(int i) const { return i <= n / 2 ? i : i - n; }
  /// Signed wavenumber -> FFT array index.
  int mode_index(int k) const { return k >= 0 ? k : k + n; }

  std::size_t index(int ix, int iy, int iz) const {
    return (std::size_t(ix) * n + iy) * n + iz;
  }

  bool operator==(const GridSpec& o) const { return n == o.n; }
  bool operator!=(const GridSpec& o) const { return n != o.n; }
};

struct Vec3i {
  int x = 0, y = 0, z = 0;
  int norm2() const { return x * x + y * y + z * z; }
};

}  // namespace emx
