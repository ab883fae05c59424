#include "lpflow/rough_synth.hpp"

#include <cmath>
#include <vector>

#include "lpflow/error.hpp"
#include "lpflow/parallel.hpp"

namespace lpflow {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over a combination of both words.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

NormalStream::NormalStream(std::uint64_t seed) : gen_(seed) {}

double NormalStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // 53-bit uniforms in (0, 1].
  const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

VecField synth_shell(const LPBank& bank, int j, std::uint64_t seed) {
  const TorusGrid& g = bank.grid();
  if (j <= g.k0 || j >= g.kspatial) fail(ErrorKind::OutOfRange, "shell index outside the resolvable range");
  NormalStream noise(mix_seed(seed, static_cast<std::uint64_t>(j)));
  std::vector<double> a(g.points()), b(g.points());
  for (auto& x : a) x = noise.next();
  for (auto& x : b) x = noise.next();
  const VecField white{{Field::from_physical(g, std::move(a)), Field::from_physical(g, std::move(b))}};
  VecField w = bank.shell(leray_project(white), j);
  const double norm = sup_norm(w);
  if (norm == 0.0) fail(ErrorKind::InvalidArgument, "shell carries no modes on this grid");
  w *= 1.0 / norm;
  return w;
}

VecField synth_lacunary(const LPBank& bank, double alpha, int j0, int j1, std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorKind::InvalidArgument, "alpha must lie in (0, 1]");
  const TorusGrid& g = bank.grid();
  if (j0 > j1 || j0 <= g.k0 || j1 >= g.kspatial) fail(ErrorKind::OutOfRange, "shell range outside the bank");
  std::vector<VecField> shells(static_cast<std::size_t>(j1 - j0 + 1));
  parallel_for(shells.size(), [&](std::size_t i) {
    const int j = j0 + static_cast<int>(i);
    shells[i] = std::pow(2.0, -alpha * j) * synth_shell(bank, j, seed);
  });
  VecField v = VecField::zeros(g);
  for (const auto& s : shells) v += s;
  return v;
}

VecField synth_named(const TorusGrid& grid, const std::string& name) {
  if (name == "taylor_green")
    return {{Field::sample(grid, [](double x, double y) { return -std::sin(x) * std::cos(y); }),
             Field::sample(grid, [](double x, double y) { return std::cos(x) * std::sin(y); })}};
  if (name == "shear")
    return {{Field::sample(grid, [](double, double y) { return std::cos(y); }), Field::zeros(grid)}};
  if (name == "two_shell") {
    if (grid.n < 64) fail(ErrorKind::InvalidArgument, "two_shell needs n >= 64 to stay inside the dealiased band");
    return {{Field::sample(grid, [](double, double y) { return std::cos(16 * y); }),
             Field::sample(grid, [](double x, double) { return std::cos(2 * x); })}};
  }
  fail(ErrorKind::InvalidArgument, "unknown named field '" + name + "'");
}

}  // namespace lpflow
