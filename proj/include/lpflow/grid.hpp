#pragma once

#include <cstddef>
#include <numbers>

namespace lpflow {

/// Uniform discretization of the square torus [0, 2pi)^2.
///
/// Samples are stored row-major: index i2 * n + i1 holds the value at
/// (x1, x2) = (i1 h, i2 h). Spectral arrays use the real-to-complex half
/// layout: row i2 (wavenumber xi2, signed) and column i1 = xi1 in [0, n/2].
///
/// Two level bounds are carried:
///   kmax      largest k with 2^(k+1) <= n/3, so every shell touched by a
///             level-k dynamic quantity sits inside the 2/3 dealiased band;
///   kspatial  log2(n), the last level whose shell meets the grid band. Purely
///             spatial analysis (products formed on the padded grid) may use
///             levels up to here.
struct TorusGrid {
  int n = 0;
  double length = 2.0 * std::numbers::pi;
  int k0 = 0;
  int kmax = 0;
  int kspatial = 0;

  /// Throws Error(InvalidArgument) unless n is a power of two >= 32 and the
  /// period is 2pi.
  explicit TorusGrid(int n, double length = 2.0 * std::numbers::pi);
  TorusGrid() = default;

  int half() const { return n / 2 + 1; }
  std::size_t points() const { return static_cast<std::size_t>(n) * n; }
  std::size_t modes() const { return static_cast<std::size_t>(n) * half(); }
  double spacing() const { return length / n; }
  double area() const { return length * length; }

  /// Signed wavenumber of spectral row i2; the Nyquist row maps to -n/2.
  int row_wavenumber(int i2) const { return i2 < n / 2 ? i2 : i2 - n; }

  /// Highest retained |xi_i| under 2/3-rule dealiasing.
  int dealias_cutoff() const { return n / 3; }

  bool operator==(const TorusGrid& o) const { return n == o.n && length == o.length; }
};

/// Largest k with 2^(k+1) <= n/3.
int dealiased_top_level(int n);

}  // namespace lpflow
