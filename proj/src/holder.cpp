#include "lpflow/holder.hpp"

#include <cmath>

#include "lpflow/error.hpp"

namespace lpflow {
namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorKind::InvalidArgument, "Hoelder exponent must lie in (0, 1]");
}

template <class ShellNorm>
double lp_estimate(const LPBank& bank, double alpha, ShellNorm&& shell_norm) {
  const TorusGrid& g = bank.grid();
  double best = 0.0;
  for (int k = g.k0; k <= g.kspatial + 1; ++k) best = std::max(best, std::pow(2.0, alpha * k) * shell_norm(k));
  return best;
}

double sampled_estimate(std::span<const Field> comps, double alpha) {
  const TorusGrid& g = comps.front().grid();
  const int n = g.n;
  const int dirs[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
  double best = 0.0;
  for (int m = 1; m <= n / 2; m *= 2) {
    for (const auto& d : dirs) {
      const double len = m * g.spacing() * std::hypot(d[0], d[1]);
      const double scale = 1.0 / std::pow(len, alpha);
      for (int i2 = 0; i2 < n; ++i2) {
        const int j2 = ((i2 + m * d[1]) % n + n) % n;
        for (int i1 = 0; i1 < n; ++i1) {
          const int j1 = (i1 + m * d[0]) % n;
          double acc = 0.0;
          for (const Field& c : comps) {
            const double diff = c.at(j1, j2) - c.at(i1, i2);
            acc += diff * diff;
          }
          best = std::max(best, std::sqrt(acc) * scale);
        }
      }
    }
  }
  return best;
}

}  // namespace

HolderEstimate seminorm_holder(const LPBank& bank, const Field& f, double alpha) {
  check_alpha(alpha);
  HolderEstimate e;
  e.lp = lp_estimate(bank, alpha, [&](int k) { return sup_norm(bank.shell(f, k)); });
  e.sampled = sampled_estimate(std::span<const Field>(&f, 1), alpha);
  return e;
}

HolderEstimate seminorm_holder(const LPBank& bank, const VecField& v, double alpha) {
  check_alpha(alpha);
  HolderEstimate e;
  e.lp = lp_seminorm(bank, v, alpha);
  e.sampled = sampled_estimate(v.c, alpha);
  return e;
}

double lp_seminorm(const LPBank& bank, const VecField& v, double alpha) {
  check_alpha(alpha);
  return lp_estimate(bank, alpha, [&](int k) { return sup_norm(bank.shell(v, k)); });
}

}  // namespace lpflow
