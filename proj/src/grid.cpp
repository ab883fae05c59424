#include "lpflow/grid.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "lpflow/error.hpp"

namespace lpflow {

int dealiased_top_level(int n) {
  int k = -1;
  while ((1 << (k + 2)) <= n / 3) ++k;
  return k;
}

TorusGrid::TorusGrid(int side, double period) : n(side), length(period) {
  if (side < 32 || !std::has_single_bit(static_cast<unsigned>(side)))
    fail(ErrorKind::InvalidArgument, "grid size must be a power of two >= 32, got " + std::to_string(side));
  if (std::abs(period - 2.0 * std::numbers::pi) > 1e-12)
    fail(ErrorKind::InvalidArgument, "only the square torus of period 2pi is supported");
  k0 = 0;
  kmax = dealiased_top_level(side);
  kspatial = std::countr_zero(static_cast<unsigned>(side));
}

}  // namespace lpflow
