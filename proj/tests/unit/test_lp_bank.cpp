#include "doctest.h"

#include <cmath>

#include "lpflow/error.hpp"
#include "lpflow/holder.hpp"
#include "lpflow/lp_bank.hpp"
#include "lpflow/rough_synth.hpp"

using namespace lpflow;

namespace {

Field random_band_limited(const TorusGrid& g, int top, std::uint64_t seed) {
  NormalStream noise(seed);
  std::vector<cplx> c(g.modes());
  for (int i2 = 0; i2 < g.n; ++i2) {
    const int xi2 = g.row_wavenumber(i2);
    for (int i1 = 0; i1 < g.half(); ++i1)
      if (i1 * i1 + xi2 * xi2 <= top * top) c[static_cast<std::size_t>(i2) * g.half() + i1] = cplx(noise.next(), noise.next());
  }
  return Field::from_spectral(g, std::move(c));
}

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.physical().size(); ++i) m = std::max(m, std::abs(a.physical()[i] - b.physical()[i]));
  return m;
}

}  // namespace

TEST_CASE("profile plateau, support and a sample value") {
  CHECK(lp_profile(0.0) == 1.0);
  CHECK(lp_profile(0.5) == 1.0);
  CHECK(lp_profile(1.0) == 0.0);
  // psi(0.75): g(0.5) / (g(0.5) + g(0.5)) = 1/2 by symmetry of the construction.
  CHECK(lp_profile(0.75) == doctest::Approx(0.5));
  const double e2 = std::exp(-1.0 / 0.4), e1 = std::exp(-1.0 / 0.6);
  CHECK(lp_profile(0.8) == doctest::Approx(e2 / (e2 + e1)).epsilon(1e-15));
  for (double r = 0; r < 1.5; r += 0.01) {
    CHECK(lp_profile(r) >= 0.0);
    CHECK(lp_profile(r) <= 1.0);
  }
}

TEST_CASE("shell multipliers on single modes") {
  TorusGrid g(64);
  LPBank bank(g);
  for (int k = 1; k <= 5; ++k) {
    const int m = 1 << (k - 1);
    const Field f = Field::sample(g, [m](double x, double) { return std::cos(m * x); });
    CHECK(max_abs_diff(bank.shell(f, k), f) < 1e-14);
    CHECK(sup_norm(bank.shell(f, k + 2)) < 1e-14);
    CHECK(sup_norm(bank.shell(f, k - 2)) < 1e-14);
  }
  // |xi| = 0.75 * 2^4 = 12: eta_{<=4}(12) = psi(0.75), eta_{<=3}(12) = 0.
  const Field f = Field::sample(g, [](double x, double) { return std::cos(12 * x); });
  CHECK(bank.shell(f, 4).coefficient(12, 0).real() == doctest::Approx(0.5 * lp_profile(0.75)).epsilon(1e-14));
  const Field c = Field::constant(g, 3.0);
  for (int k = g.k0; k <= g.kspatial; ++k) CHECK(sup_norm(bank.shell(c, k)) == 0.0);
  CHECK(bank.leq(c, 2).mean() == doctest::Approx(3.0));
}

TEST_CASE("reconstruction and projection algebra") {
  TorusGrid g(64);
  LPBank bank(g);
  const Field f = random_band_limited(g, 30, 7);
  Field sum = bank.mean(f);
  for (int k = g.k0; k <= g.kspatial + 1; ++k) sum += bank.shell(f, k);
  CHECK(max_abs_diff(sum, f) <= 1e-12 * sup_norm(f));
  for (int k = 0; k <= g.kspatial; ++k) {
    CHECK(max_abs_diff(bank.leq(bank.leq(f, k), k + 2), bank.leq(f, k)) < 1e-14 * sup_norm(f));
    CHECK(max_abs_diff(bank.band(bank.shell(f, k), k - 2, k + 2), bank.shell(f, k)) < 1e-14 * sup_norm(f));
    CHECK(max_abs_diff(derivative(bank.shell(f, k), {1, 1}), bank.shell(derivative(f, {1, 1}), k)) <
          1e-13 * sup_norm(derivative(f, {1, 1})));
  }
  CHECK_THROWS_AS(bank.leq(f, 50), Error);
}

TEST_CASE("kernel operators") {
  TorusGrid g(64);
  LPBank bank(g);
  const Field f = Field::sample(g, [](double x, double y) { return std::sin(4 * x + 4 * y) + std::cos(8 * x); });
  // cos(8x) sits on the plateau of level 4: Delta^-1 P_4 divides by -64.
  const Field r = bank.kernel_op(f, 4, Symbol::InvLapShell);
  CHECK(r.coefficient(8, 0).real() == doctest::Approx(-0.5 / 64.0).epsilon(1e-14));
  const Field gx = bank.kernel_op(f, 4, Symbol::GradInvLapShell, {1, 0});
  CHECK(max_abs_diff(gx, derivative(r, {1, 0})) < 1e-15);
  CHECK_THROWS_AS(bank.kernel_op(f, 4, Symbol::GradInvLapShell, {2, 0}), Error);
  CHECK_THROWS_AS(parse_symbol("nope"), Error);
  CHECK(bank.kernel_l1_norm(3, Symbol::Mollifier, 0) == doctest::Approx(bank.kernel_l1_norm(3, Symbol::Mollifier, 0)));
}

TEST_CASE("kernel norms scale with the symbol homogeneity") {
  TorusGrid g(256);
  LPBank bank(g);
  for (Symbol s : {Symbol::InvLapShell, Symbol::GradInvLapShell, Symbol::Mollifier, Symbol::GradMollifier}) {
    const int h = symbol_homogeneity(s);
    double lo = 1e300, hi = 0;
    for (int k = 3; k <= g.kspatial - 2; ++k) {
      const double v = bank.kernel_l1_norm(k, s, 0) * std::pow(2.0, -h * k);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(hi / lo < 1.2);
  }
  // The mollifier integrates to one and its L1 norm is a profile constant >= 1.
  CHECK(bank.kernel_l1_norm(4, Symbol::Mollifier, 0) >= 1.0);
  // Delta^-1 grad^2 P_{<=k} grows logarithmically.
  const double a = bank.kernel_l1_norm(2, Symbol::InvLapHessLow, 0);
  const double b = bank.kernel_l1_norm(6, Symbol::InvLapHessLow, 0);
  CHECK(b > a);
  CHECK(b / a < (1.0 + 6) / (1.0 + 2) * 1.5);
}

TEST_CASE("Hoelder estimators") {
  TorusGrid g(128);
  LPBank bank(g);
  const double alpha = 1.0 / 3.0;
  CHECK(seminorm_holder(bank, Field::zeros(g), alpha).lp == 0.0);
  CHECK(seminorm_holder(bank, Field::zeros(g), alpha).sampled == 0.0);
  const Field f = Field::sample(g, [&](double x, double) { return std::pow(2.0, -4 * alpha) * std::sin(16 * x); });
  const HolderEstimate e = seminorm_holder(bank, f, alpha);
  CHECK(e.lp >= 0.5);
  CHECK(e.lp <= 2.0);
  CHECK(e.sampled > 0.0);
  const Field lac = Field::sample(g, [&](double x, double) {
    double s = 0;
    for (int j = 2; j <= 6; ++j) s += std::pow(2.0, -j * alpha) * std::sin(std::ldexp(1.0, j) * x);
    return s;
  });
  const double lp = seminorm_holder(bank, lac, alpha).lp;
  CHECK(lp >= 0.5);
  CHECK(lp <= 2.0);
  CHECK_THROWS_AS(seminorm_holder(bank, f, 0.0), Error);
  CHECK_THROWS_AS(seminorm_holder(bank, f, 1.5), Error);
}

TEST_CASE("lacunary shells saturate the LP seminorm") {
  TorusGrid g(128);
  LPBank bank(g);
  for (double alpha : {0.3, 0.5}) {
    const VecField v = synth_lacunary(bank, alpha, 2, 5, 11);
    CHECK(is_divergence_free(v, 1e-12));
    const double s = lp_seminorm(bank, v, alpha);
    CHECK(s >= 0.5);
    CHECK(s <= 2.0);
    for (int j = 2; j <= 5; ++j) {
      const double r = sup_norm(bank.shell(v, j)) * std::pow(2.0, alpha * j);
      CHECK(r >= 0.4);
      CHECK(r <= 2.5);
    }
  }
  const VecField a = synth_lacunary(bank, 0.4, 2, 5, 99);
  const VecField b = synth_lacunary(bank, 0.4, 2, 5, 99);
  for (int c = 0; c < 2; ++c)
    for (std::size_t i = 0; i < g.points(); ++i) REQUIRE(a[c].physical()[i] == b[c].physical()[i]);
  CHECK_THROWS_AS(synth_lacunary(bank, 0.4, 2, 9, 1), Error);
}
