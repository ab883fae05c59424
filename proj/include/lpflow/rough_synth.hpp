#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "lpflow/field.hpp"
#include "lpflow/lp_bank.hpp"

namespace lpflow {

/// v = sum_{j=j0}^{j1} 2^{-alpha j} W_j with W_j a random divergence-free field
/// on shell j (white noise -> Leray -> P_j) scaled to ||W_j||_C0 = 1. Each
/// shell draws from its own generator seeded from (seed, j), so the result is
/// independent of evaluation order. Requires 0 < alpha <= 1 and
/// k0 < j0 <= j1 < kspatial (shell k0 carries no integer modes).
VecField synth_lacunary(const LPBank& bank, double alpha, int j0, int j1, std::uint64_t seed);

/// A single normalized shell W_j.
VecField synth_shell(const LPBank& bank, int j, std::uint64_t seed);

/// Closed-form flows: "taylor_green" (stream function sin x1 sin x2),
/// "shear" ((cos x2, 0)) and "two_shell" ((cos 16 x2, cos 2 x1)).
VecField synth_named(const TorusGrid& grid, const std::string& name);

/// Seeded standard normal stream (Box-Muller on mt19937_64) with identical
/// output on every platform.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed);
  double next();

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace lpflow
