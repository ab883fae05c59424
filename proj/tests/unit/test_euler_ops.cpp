#include "doctest.h"

#include <cmath>
#include <numbers>

#include "lpflow/error.hpp"
#include "lpflow/euler_ops.hpp"
#include "lpflow/rough_synth.hpp"

using namespace lpflow;

namespace {

const double pi = std::numbers::pi;

double tensor_diff(const SymTensor& a, const SymTensor& b) { return (a - b).sup_norm(); }

}  // namespace

TEST_CASE("pressure of closed-form flows") {
  TorusGrid g(64);
  const VecField tg = synth_named(g, "taylor_green");
  const Field p = pressure(tg);
  const Field ref = Field::sample(g, [](double x, double y) { return 0.25 * (std::cos(2 * x) + std::cos(2 * y)); });
  CHECK(sup_norm(p - ref) < 1e-14);
  CHECK(std::abs(p.mean()) < 1e-16);
  CHECK(sup_norm(pressure(synth_named(g, "shear"))) < 1e-15);
  VecField shifted = tg;
  shifted[0] += Field::constant(g, 0.7);
  shifted[1] += Field::constant(g, -1.3);
  CHECK(sup_norm(pressure(shifted) - p) < 1e-14);
  VecField bad = tg;
  bad[0] += Field::sample(g, [](double x, double) { return std::sin(x); });
  CHECK_THROWS_AS(pressure(bad), Error);
}

TEST_CASE("pressure gradient is the non-solenoidal part of the advection") {
  TorusGrid g(64);
  LPBank bank(g);
  const VecField v = synth_lacunary(bank, 0.5, 1, 4, 3);
  const VecField adv = advect(v, v);
  const VecField gp = gradient(pressure(v));
  CHECK(sup_norm(gp - (leray_project(adv) - adv)) < 1e-12 * sup_norm(v) * sup_norm(v));
}

TEST_CASE("time jets of steady flows vanish") {
  TorusGrid g(64);
  for (const char* name : {"taylor_green", "shear"}) {
    const VecField v = synth_named(g, name);
    const VecJet j = velocity_time_jet(v, 3);
    for (int r = 1; r <= 3; ++r) CHECK(sup_norm(j[r]) <= 1e-10 * std::pow(sup_norm(v), r + 1));
  }
}

TEST_CASE("Leibniz rule matches direct differentiation of a product") {
  TorusGrid g(64);
  LPBank bank(g);
  const VecField v = synth_lacunary(bank, 0.5, 1, 3, 5);
  const VecJet j = velocity_time_jet(v, 2);
  const FieldJet prod = leibniz(j, [](const VecField& a, const VecField& b) { return multiply(a[0], b[1]); });
  // Second level by hand: a_2 b_0 + 2 a_1 b_1 + a_0 b_2, written in the other order.
  const Field ref = multiply(j[0][0], j[2][1]) + 2.0 * multiply(j[1][0], j[1][1]) + multiply(j[2][0], j[0][1]);
  CHECK(sup_norm(prod[2] - ref) < 1e-13 * sup_norm(ref));
  for (int r = 0; r <= 2; ++r) CHECK(is_divergence_free(j[r]));
}

TEST_CASE("Reynolds stress basics") {
  TorusGrid g(64);
  LPBank bank(g);
  const int k = 4;
  // Band-limited below 2^{k-1}: P_{<=k} acts as the identity on v and v (x) v.
  const VecField low = synth_named(g, "taylor_green");
  CHECK(reynolds_stress(bank, low, k).sup_norm() < 1e-14);
  // cos(lambda x2) e1 with lambda, 2 lambda above the cut: R11 = -P(cos^2) = -1/2.
  const int lambda = 16;
  const VecField shear{{Field::sample(g, [](double, double y) { return std::cos(lambda * y); }), Field::zeros(g)}};
  const SymTensor r = reynolds_stress(bank, shear, 3);
  CHECK(sup_norm(r.c11 - Field::constant(g, -0.5)) < 1e-14);
  CHECK(sup_norm(r.c12) < 1e-15);
  const VecField v = synth_lacunary(bank, 0.4, 1, 4, 9);
  const double vv = sup_norm(v) * sup_norm(v);
  VecField shifted = v;
  shifted[0] += Field::constant(g, 2.0);
  shifted[1] += Field::constant(g, -0.5);
  const double uu = std::pow(sup_norm(v) + std::hypot(2.0, 0.5), 2);
  for (int kk = 1; kk <= 5; ++kk) {
    CHECK(tensor_diff(reynolds_stress(bank, shifted, kk), reynolds_stress(bank, v, kk)) <= 1e-12 * uu);
    const StressTriple t = reynolds_trichotomy(bank, v, kk);
    CHECK(tensor_diff(t.hh + t.hl + t.ll, reynolds_stress(bank, v, kk)) <= 1e-12 * vv);
  }
}

TEST_CASE("trichotomy of a single high shell") {
  TorusGrid g(128);
  LPBank bank(g);
  const int k = 2;
  const VecField v = synth_shell(bank, k + 3, 4);
  const StressTriple t = reynolds_trichotomy(bank, v, k);
  CHECK(t.hl.sup_norm() < 1e-14);
  CHECK(t.ll.sup_norm() < 1e-14);
  CHECK(tensor_diff(t.hh, reynolds_stress(bank, v, k)) < 1e-14);
}

TEST_CASE("pressure increments") {
  TorusGrid g(64);
  LPBank bank(g);
  const VecField v = synth_lacunary(bank, 0.5, 1, 4, 21);
  const double vv = sup_norm(v) * sup_norm(v);
  Field sum = truncated_pressure(bank, v, g.k0);
  for (int k = g.k0; k < g.kspatial; ++k) {
    const Field dp = pressure_increment(bank, v, k);
    CHECK(sup_norm(pressure_increment_parts(bank, v, k).sum() - dp) <= 1e-12 * vv);
    sum += dp;
  }
  CHECK(sup_norm(sum - truncated_pressure(bank, v, g.kspatial)) <= 1e-12 * vv);
  // Band-limited below 2^{k-1}: p_(k+1) = p_(k).
  const VecField tg = synth_named(g, "taylor_green");
  CHECK(sup_norm(pressure_increment(bank, tg, 4)) < 1e-15);
  CHECK(sup_norm(truncated_pressure(bank, tg, 4) - pressure(tg)) < 1e-15);
}

TEST_CASE("LP pieces of the pressure") {
  TorusGrid g(64);
  LPBank bank(g);
  const VecField v = synth_lacunary(bank, 0.5, 1, 4, 8);
  const Field p = pressure(v);
  const double vv = sup_norm(v) * sup_norm(v);
  for (int k = 0; k <= g.kspatial; ++k) {
    const DerivativeSet d = lp_pressure_piece(bank, v, k, 1);
    const Field ref = bank.shell(p, k);
    CHECK(sup_norm(d.fields[0] - derivative(ref, {1, 0})) <= 1e-12 * vv * std::ldexp(1.0, k));
    CHECK(sup_norm(d.fields[1] - derivative(ref, {0, 1})) <= 1e-12 * vv * std::ldexp(1.0, k));
  }
  CHECK(sup_norm(lp_pressure_parts(bank, synth_named(g, "taylor_green"), 5).sum()) < 1e-15);
}

TEST_CASE("coarse advective derivative of the next shell") {
  TorusGrid g(128);
  LPBank bank(g);
  SUBCASE("steady Taylor-Green") {
    const EulerSnapshot s(0.0, synth_named(g, "taylor_green"), 2);
    for (int k = 0; k <= 3; ++k) {
      const VecField eq = shell_advective_derivative(bank, s, k, 1);
      const VecField ref = advect(bank.leq(s.velocity(), k), bank.shell(s.velocity(), k + 1));
      CHECK(sup_norm(eq - ref) < 1e-12);
    }
  }
  SUBCASE("equation route equals the jet route") {
    const EulerSnapshot s(0.0, synth_lacunary(bank, 0.5, 1, 4, 17), 2);
    const double vv = sup_norm(s.velocity()) * sup_norm(s.velocity());
    for (int k = 1; k <= g.kmax; ++k) {
      for (int r = 1; r <= 2; ++r) {
        const VecField eq = shell_advective_derivative(bank, s, k, r);
        const Components jet = advective_derivative(bank, s, k, AdvTarget::ShellNext, r);
        const VecField jv{{jet.fields[0], jet.fields[1]}};
        CHECK(sup_norm(eq - jv) <= 1e-11 * std::pow(vv, 0.5 * (r + 1)) * std::ldexp(1.0, r * k));
      }
    }
    CHECK_THROWS_AS(advective_derivative(bank, EulerSnapshot(0.0, s.velocity(), 1), 2, AdvTarget::ShellNext, 2), Error);
  }
  SUBCASE("k above the active modes") {
    const EulerSnapshot s(0.0, synth_named(g, "taylor_green"), 2);
    CHECK(sup_norm(shell_advective_derivative(bank, s, 4, 1)) < 1e-13);
    CHECK(advective_derivative(bank, s, 4, AdvTarget::PressureIncrement, 2).sup_norm() < 1e-13);
  }
}

TEST_CASE("Euler identity residual") {
  TorusGrid g(64);
  LPBank bank(g);
  CHECK(euler_identity_residual(EulerSnapshot(0.0, synth_named(g, "taylor_green"), 1)) < 1e-10);
  const EulerSnapshot s(0.0, synth_lacunary(bank, 0.5, 1, 3, 2), 1);
  CHECK(euler_identity_residual(s) <= 1e-8 * sup_norm(s.velocity()) * sup_norm(s.velocity()));
  VecField bad = s.velocity();
  bad[1] += Field::sample(g, [](double, double y) { return std::cos(y); });
  CHECK_THROWS_AS(EulerSnapshot(0.0, bad, 1), Error);
}

TEST_CASE("energy increments and fluxes") {
  TorusGrid g(64);
  LPBank bank(g);
  const int k = 3;
  const VecField v{{Field::sample(g, [](double, double y) { return std::cos(8 * y); }), Field::zeros(g)}};
  CHECK(energy_increment(bank, v, k) == doctest::Approx(pi * pi).epsilon(1e-14));
  const VecField tg = synth_named(g, "taylor_green");
  CHECK(kinetic_energy(tg) == doctest::Approx(pi * pi).epsilon(1e-14));
  for (int kk = 0; kk <= g.kspatial; ++kk) CHECK(std::abs(energy_flux(bank, tg, kk)) < 1e-10);
  const VecField r = synth_lacunary(bank, 0.5, 1, 4, 5);
  double sum = 0.5 * (std::pow(r[0].mean(), 2) + std::pow(r[1].mean(), 2)) * g.area() + truncated_energy(bank, r, g.k0) -
               0.5 * (std::pow(r[0].mean(), 2) + std::pow(r[1].mean(), 2)) * g.area();
  for (int kk = g.k0; kk <= g.kspatial; ++kk) sum += energy_increment(bank, r, kk);
  CHECK(sum == doctest::Approx(kinetic_energy(r)).epsilon(1e-13));
}
