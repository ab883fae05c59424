#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "lpflow/error.hpp"
#include "lpflow/rough_synth.hpp"
#include "lpflow/trajectories.hpp"

using namespace lpflow;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SnapshotSeries short_run(int n) {
  SimConfig cfg;
  cfg.n = n;
  cfg.initial = "lacunary";
  cfg.alpha = 0.5;
  cfg.j0 = 1;
  cfg.j1 = 3;
  cfg.seed = 5;
  cfg.dt = 2e-3;
  cfg.steps = 200;
  cfg.stride = 5;
  return simulate(cfg);
}

}  // namespace

TEST_CASE("wrap maps into the period") {
  const Point p = wrap({-0.5, 7.0});
  CHECK(p[0] == doctest::Approx(kTwoPi - 0.5));
  CHECK(p[1] == doctest::Approx(7.0 - kTwoPi));
}

TEST_CASE("mode sampler reproduces grid values and off-grid modes") {
  const TorusGrid g(32);
  const Field f = Field::sample(g, [](double x1, double x2) { return std::cos(3 * x1 - 2 * x2) + 0.5 * std::sin(11 * x1) + 0.25; });
  const ModeSampler s({f});
  CHECK(s({0.3, 1.7})[0] == doctest::Approx(std::cos(0.9 - 3.4) + 0.5 * std::sin(11 * 0.3) + 0.25).epsilon(1e-12));
  const double h = g.spacing();
  CHECK(s({5 * h, 7 * h})[0] == doctest::Approx(f.physical()[7 * 32 + 5]).epsilon(1e-12));
}

TEST_CASE("zero and constant fields") {
  const TorusGrid g(32);
  const LPBank bank(g);
  const Path z = integrate_flow(FlowSource::steady(bank, VecField::zeros(g), 3), {1.0, 2.0}, 0.0, 1.0);
  CHECK(z.x.back()[0] == 1.0);
  CHECK(z.x.back()[1] == 2.0);
  const VecField c{{Field::constant(g, 0.3), Field::constant(g, -1.1)}};
  const Path p = integrate_flow(FlowSource::steady(bank, c, 3), {1.0, 2.0}, 0.0, 3.0);
  const Point end = wrap(p.x.back());
  const Point expect = wrap({1.0 + 0.9, 2.0 - 3.3});
  CHECK(std::abs(end[0] - expect[0]) <= 1e-12);
  CHECK(std::abs(end[1] - expect[1]) <= 1e-12);
}

TEST_CASE("stream function is conserved along steady paths") {
  const TorusGrid g(32);
  const LPBank bank(g);
  auto psi = [](Point x) { return std::cos(x[0]) + std::cos(x[1]); };
  const VecField v = perp_gradient(Field::sample(g, [&](double a, double b) { return psi({a, b}); }));
  const Path p = integrate_flow(FlowSource::steady(bank, v, 4), {0.4, 1.3}, 0.0, 1.0);
  for (const Point& x : p.x) CHECK(std::abs(psi(x) - psi(p.x.front())) <= 1e-8);
  CHECK(p.halving_error <= 1e-8);
}

TEST_CASE("time reversal returns to the start") {
  const TorusGrid g(64);
  const LPBank bank(g);
  const VecField v = synth_lacunary(bank, 0.5, 1, 3, 4);
  const FlowSource src = FlowSource::steady(bank, v, 4);
  const Path f = integrate_flow(src, {2.0, 3.0}, 0.0, 1.0);
  const Path b = integrate_flow(src, f.x.back(), 1.0, 0.0);
  CHECK(std::hypot(b.x.back()[0] - 2.0, b.x.back()[1] - 3.0) <= 1e-8);
}

TEST_CASE("Taylor remainders on steady Taylor-Green have order N+1") {
  const TorusGrid g(32);
  const LPBank bank(g);
  const FlowSource src = FlowSource::steady(bank, synth_named(g, "taylor_green"), 3);
  for (int N = 0; N <= 3; ++N) {
    const TaylorReport r = taylor_check(src, {0.7, 0.2}, 0.0, N, 0.1);
    CHECK(std::abs(r.fitted_order - (N + 1)) <= 0.2);
  }
  std::ostringstream js;
  taylor_check(src, {0.7, 0.2}, 0.0, 1, 0.1).write_json(js);
  CHECK(nlohmann::json::parse(js.str())["schema"] == "taylorv1");
  CHECK_THROWS_AS(taylor_check(src, {0.7, 0.2}, 0.0, 4, 0.1), Error);
}

TEST_CASE("series source: Hermite interpolation and Taylor orders") {
  const TorusGrid g(32);
  const LPBank bank(g);
  const SnapshotSeries s = short_run(32);
  const FlowSource src = FlowSource::from_series(bank, s, 3);
  // At the nodes the interpolant is the stored field.
  const VecField u = bank.leq(s.velocities[4], 3);
  const auto exact = ModeSampler({u[0], u[1]})({1.0, 2.0});
  const Point at = src.velocity(s.times[4], {1.0, 2.0});
  CHECK(at[0] == doctest::Approx(exact[0]).epsilon(1e-12));
  CHECK(at[1] == doctest::Approx(exact[1]).epsilon(1e-12));
  for (int N = 0; N <= 2; ++N) {
    const TaylorReport r = taylor_check(src, {1.0, 2.0}, s.times[2], N, 4 * s.spacing());
    CHECK(std::abs(r.fitted_order - (N + 1)) <= 0.2);
  }
  CHECK_THROWS_AS(src.jet_at(s.times[2] + 0.3 * s.spacing(), 1), Error);
  CHECK_THROWS_AS(integrate_flow(src, {0, 0}, 0.0, s.times.back() + 1.0), Error);
  const Path f = integrate_flow(src, {1.0, 2.0}, s.times.front(), s.times.back());
  const Path b = integrate_flow(src, f.x.back(), s.times.back(), s.times.front());
  CHECK(std::hypot(b.x.back()[0] - 1.0, b.x.back()[1] - 2.0) <= 1e-8);
  CHECK(f.halving_error <= 1e-8 * (s.times.back() - s.times.front()));
}

TEST_CASE("k-ladder: band-limited flow stops changing, lacunary flow converges at rate alpha") {
  const TorusGrid g(128);
  const LPBank bank(g);
  const VecField tg = synth_named(g, "taylor_green");
  std::vector<FlowSource> flat;
  for (int k = 2; k <= 4; ++k) flat.push_back(FlowSource::steady(bank, tg, k));
  const ConvergenceReport c = trajectory_convergence(flat, {1.0, 1.0}, 0.0, 0.5);
  for (double d : c.differences) CHECK(d == 0.0);

  const TorusGrid g2(256);
  const LPBank bank2(g2);
  for (double alpha : {0.3, 0.5}) {
    const VecField v = synth_lacunary(bank2, alpha, 1, 7, 8);
    std::vector<FlowSource> ladder;
    std::vector<int> ks;
    for (int k = 2; k <= 6; ++k) {
      ladder.push_back(FlowSource::steady(bank2, v, k));
      ks.push_back(k);
    }
    std::vector<Point> starts = start_lattice(8);
    for (Point p : peak_starts(bank2, v, ks)) starts.push_back(p);
    FlowOptions opt;
    opt.max_step = 0.005;
    const ConvergenceReport r = trajectory_convergence(ladder, starts, 0.0, 0.02, opt);
    CHECK(r.monotone);
    CHECK(std::abs(r.rate - alpha) <= 0.15);
  }
}
