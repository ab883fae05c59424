#include "lpflow/cli/verify.hpp"

#include <cmath>
#include <functional>

#include "lpflow/commutator.hpp"
#include "lpflow/error.hpp"
#include "lpflow/euler_ops.hpp"
#include "lpflow/euler_sim.hpp"
#include "lpflow/rough_synth.hpp"
#include "lpflow/trajectories.hpp"

namespace lpflow::cli {

namespace {

using CaseFn = std::function<CaseResult()>;

void run_case(SuiteResult& suite, const std::string& name, const CaseFn& fn) {
  try {
    suite.cases.push_back(fn());
  } catch (const std::exception& e) {
    suite.cases.push_back(errored(name, e.what()));
  }
}

double tensor_gap(const SymTensor& a, const SymTensor& b) { return (a - b).sup_norm(); }

VecField dealiased(const VecField& v) { return VecField{{dealias(v[0]), dealias(v[1])}}; }

SimConfig lacunary_run(int n, std::uint64_t seed, double dt, int steps, int stride) {
  SimConfig c;
  c.n = n;
  c.initial = "lacunary";
  c.alpha = 0.5;
  c.j0 = 1;
  c.j1 = TorusGrid(n).kspatial - 2;
  c.seed = seed;
  c.dt = dt;
  c.steps = steps;
  c.stride = stride;
  return c;
}

}  // namespace

SuiteResult identities_suite(const VerifyOptions& opt) {
  SuiteResult suite{"identities", {}};
  const TorusGrid g(opt.grid);
  const LPBank bank(g);
  const VecField v = synth_lacunary(bank, 0.5, 1, g.kspatial - 2, opt.seed);
  const double vv = sup_norm(v) * sup_norm(v);

  run_case(suite, "lp_reconstruction", [&] {
    double worst = 0.0;
    for (int c = 0; c < 2; ++c) {
      Field sum = bank.leq(v[c], g.k0 - 1);
      for (int k = g.k0; k <= g.kspatial + 1; ++k) sum += bank.shell(v[c], k);
      worst = std::max(worst, sup_norm(sum - v[c]) / sup_norm(v[c]));
    }
    return check_at_most("lp_reconstruction", worst, 1e-12, "relative to |v|");
  });
  run_case(suite, "trichotomy_sum", [&] {
    double worst = 0.0;
    for (int k = g.k0; k < g.kspatial; ++k) {
      const StressTriple t = reynolds_trichotomy(bank, v, k);
      worst = std::max(worst, tensor_gap(t.hh + t.hl + t.ll, reynolds_stress(bank, v, k)) / vv);
    }
    return check_at_most("trichotomy_sum", worst, 1e-12, "relative to |v|^2");
  });
  run_case(suite, "delta_p_parts_sum", [&] {
    double worst = 0.0;
    for (int k = g.k0; k < g.kspatial; ++k)
      worst = std::max(worst, sup_norm(pressure_increment_parts(bank, v, k).sum() - pressure_increment(bank, v, k)) / vv);
    return check_at_most("delta_p_parts_sum", worst, 1e-12, "relative to |v|^2");
  });
  run_case(suite, "delta_p_telescoping", [&] {
    Field sum = truncated_pressure(bank, v, g.k0);
    for (int k = g.k0; k < g.kspatial; ++k) sum += pressure_increment(bank, v, k);
    return check_at_most("delta_p_telescoping", sup_norm(sum - truncated_pressure(bank, v, g.kspatial)) / vv, 1e-12,
                         "relative to |v|^2");
  });
  run_case(suite, "lp_pressure_parts_sum", [&] {
    const Field p = pressure(v);
    double worst = 0.0;
    for (int k = g.k0; k <= g.kspatial; ++k)
      worst = std::max(worst, sup_norm(lp_pressure_parts(bank, v, k).sum() - bank.shell(p, k)) / vv);
    return check_at_most("lp_pressure_parts_sum", worst, 1e-12, "relative to |v|^2");
  });
  run_case(suite, "galilean_invariance", [&] {
    const double u1 = 0.7, u2 = -0.4;
    VecField shifted = v;
    shifted[0] += Field::constant(g, u1);
    shifted[1] += Field::constant(g, u2);
    const double scale = std::pow(sup_norm(v) + std::hypot(u1, u2), 2);
    double worst = 0.0;
    for (int k = g.k0; k < g.kspatial; ++k)
      worst = std::max(worst, tensor_gap(reynolds_stress(bank, shifted, k), reynolds_stress(bank, v, k)) / scale);
    return check_at_most("galilean_invariance", worst, 1e-12, "relative to (|v| + |U|)^2");
  });
  run_case(suite, "advective_routes", [&] {
    const EulerSnapshot s(0.0, dealiased(v), 2);
    double worst = 0.0;
    for (int k = 1; k <= g.kmax; ++k)
      for (int r = 1; r <= 2; ++r) {
        const VecField eq = shell_advective_derivative(bank, s, k, r);
        const Components jet = advective_derivative(bank, s, k, AdvTarget::ShellNext, r);
        const double scale = std::pow(vv, 0.5 * (r + 1)) * std::ldexp(1.0, r * k);
        worst = std::max(worst, sup_norm(eq - VecField{{jet.fields[0], jet.fields[1]}}) / scale);
      }
    return check_at_most("advective_routes", worst, 1e-11, "equation vs jet, relative to |v|^{r+1} 2^{rk}");
  });
  run_case(suite, "euler_residual", [&] {
    const SnapshotSeries s = simulate(lacunary_run(g.n, opt.seed, 1e-3, 20, 10));
    double worst = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const EulerSnapshot snap(s.times[i], s.velocities[i], 1);
      const double sv = sup_norm(s.velocities[i]);
      worst = std::max(worst, euler_identity_residual(snap) / (sv * sv));
    }
    return check_at_most("euler_residual", worst, 1e-8, "relative to |v|^2 over simulator snapshots");
  });
  return suite;
}

SuiteResult commutators_suite(const VerifyOptions& opt) {
  SuiteResult suite{"commutators", {}};
  const TorusGrid g(opt.commutator_grid);
  const LPBank bank(g);
  const Symbol symbols[] = {Symbol::InvLapShell,  Symbol::GradInvLapShell, Symbol::HessInvLapShell,
                            Symbol::InvLapHessLow, Symbol::Mollifier,       Symbol::GradMollifier};
  const double alphas[] = {0.3, 0.5, 0.7};

  run_case(suite, "kernel_vs_direct", [&] {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const VecField v = synth_lacunary(bank, alphas[i % 3], 1, g.kspatial - 2, mix_seed(opt.seed, 100 + i));
      const EulerSnapshot s(0.0, dealiased(v), 1);
      const int I = 1 + i % 3;
      const VecJet u = map(s.jet(), [&](const VecField& x) { return bank.leq(x, I); });
      const FieldJet f = map(s.jet(), [&](const VecField& x) { return x[i % 2]; });
      const ConvOp op = normalized_op(symbols[i % 6], 1 + i % 4);
      const Field gap = commutator_direct(bank, u, op, f) - commutator_kernel(bank, u.value(), op, f.value());
      worst = std::max(worst, sup_norm(gap) / (gradient_sup_norm(u.value()) * sup_norm(f.value())));
    }
    return check_at_most("kernel_vs_direct", worst, 1e-10, "20 seeded cases, relative to |grad u| |f|");
  });
  run_case(suite, "second_order_expansion", [&] {
    // Products stay inside the band when 2^I < n/12.
    int top = 1;
    while (std::ldexp(1.0, top + 1) < g.n / 12.0) ++top;
    double worst = 0.0;
    for (int i = 0; i < 6; ++i) {
      const VecField v = synth_lacunary(bank, alphas[i % 3], 1, g.kspatial - 2, mix_seed(opt.seed, 200 + i));
      const EulerSnapshot s(0.0, dealiased(v), 2);
      const int I = 1 + i % top;
      const VecJet u = map(s.jet(), [&](const VecField& x) { return bank.leq(x, I); });
      const FieldJet f = map(s.jet(), [&](const VecField& x) { return x[i % 2]; });
      const ConvOp op = normalized_op(symbols[i % 6], 1 + i % 3);
      const Field gap = commutator_second(bank, s, I, op, f.value()).total() - second_commutator_oracle(bank, u, op, f);
      const double gu = gradient_sup_norm(u.value());
      const double scale =
          (gu * gu + gradient_sup_norm(material_derivative_value(u, u, 1))) * sup_norm(f.value());
      worst = std::max(worst, sup_norm(gap) / scale);
    }
    return check_at_most("second_order_expansion", worst, 1e-8, "6 seeded cases, relative to the commutator scale");
  });
  for (int r = 1; r <= 2; ++r) {
    const std::string name = "fd_oracle_order_r" + std::to_string(r);
    run_case(suite, name, [&, r] {
      const double dt = 2.5e-3;
      std::vector<double> err, spacing;
      for (int stride : {16, 8, 4}) {
        const SnapshotSeries s = simulate(lacunary_run(g.n, opt.seed, dt, 4 * stride, stride));
        const VecJet j = velocity_time_jet(s.velocities[2], r);
        err.push_back(sup_norm(time_derivative_oracle(s, 2, r) - j[r]));
        spacing.push_back(stride * dt);
      }
      double order = INFINITY;
      for (std::size_t i = 1; i < err.size(); ++i)
        order = std::min(order, std::log(err[i - 1] / err[i]) / std::log(spacing[i - 1] / spacing[i]));
      return check_at_least(name, order, 1.8, "five-point stencil against the jet, worst refinement");
    });
  }
  return suite;
}

SuiteResult trajectories_suite(const VerifyOptions& opt) {
  SuiteResult suite{"trajectories", {}};
  const TorusGrid g(opt.trajectory_grid);
  const LPBank bank(g);
  const SnapshotSeries series = simulate(lacunary_run(g.n, opt.seed, 2e-3, 200, 5));
  const int k = g.kmax;
  const FlowSource flow = FlowSource::from_series(bank, series, k);
  const FlowSource steady = FlowSource::steady(bank, synth_named(g, "taylor_green"), k);
  const Point x0{1.0, 2.0};

  for (int N = 0; N <= 2; ++N) {
    const std::string name = "taylor_order_series_N" + std::to_string(N);
    run_case(suite, name, [&, N] {
      const TaylorReport r = taylor_check(flow, x0, series.times[2], N, 4 * series.spacing());
      return check_at_most(name, std::abs(r.fitted_order - (N + 1)), 0.2,
                           "fitted order " + format_number(r.fitted_order));
    });
  }
  for (int N = 0; N <= 2; ++N) {
    const std::string name = "taylor_order_steady_N" + std::to_string(N);
    run_case(suite, name, [&, N] {
      const TaylorReport r = taylor_check(steady, x0, 0.0, N, 0.1);
      return check_at_most(name, std::abs(r.fitted_order - (N + 1)), 0.2,
                           "fitted order " + format_number(r.fitted_order));
    });
  }
  run_case(suite, "time_reversal", [&] {
    const Path f = integrate_flow(flow, x0, series.times.front(), series.times.back());
    const Path b = integrate_flow(flow, f.x.back(), series.times.back(), series.times.front());
    return check_at_most("time_reversal", std::hypot(b.x.back()[0] - x0[0], b.x.back()[1] - x0[1]), 1e-8);
  });
  run_case(suite, "step_halving", [&] {
    const double span = series.times.back() - series.times.front();
    const Path f = integrate_flow(flow, x0, series.times.front(), series.times.back());
    return check_at_most("step_halving", f.halving_error / span, 1e-8, "per unit time");
  });
  run_case(suite, "periodic_wrap", [&] {
    const VecField c{{Field::constant(g, 0.3), Field::constant(g, -1.1)}};
    const Point end = wrap(integrate_flow(FlowSource::steady(bank, c, k), x0, 0.0, 7.0).x.back());
    const Point expect = wrap({x0[0] + 0.3 * 7.0, x0[1] - 1.1 * 7.0});
    return check_at_most("periodic_wrap", std::max(std::abs(end[0] - expect[0]), std::abs(end[1] - expect[1])), 1e-12);
  });
  run_case(suite, "ladder_monotone", [&] {
    std::vector<FlowSource> ladder;
    std::vector<int> ks;
    for (int kk = 1; kk <= g.kspatial - 1; ++kk) {
      ladder.push_back(FlowSource::from_series(bank, series, kk));
      ks.push_back(kk);
    }
    std::vector<Point> starts = start_lattice(4);
    for (Point p : peak_starts(bank, series.velocities.front(), ks)) starts.push_back(p);
    const ConvergenceReport r = trajectory_convergence(ladder, starts, series.times.front(), series.times.back());
    std::string diffs;
    for (double d : r.differences) diffs += (diffs.empty() ? "" : " ") + format_number(d);
    return check_at_least("ladder_monotone", r.monotone ? 1.0 : 0.0, 1.0,
                          "differences " + diffs + "; rate " + format_number(r.rate));
  });
  return suite;
}

std::vector<SuiteResult> run_verify(const std::string& suite, const VerifyOptions& opt) {
  if (suite == "identities") return {identities_suite(opt)};
  if (suite == "commutators") return {commutators_suite(opt)};
  if (suite == "trajectories") return {trajectories_suite(opt)};
  if (suite == "all") return {identities_suite(opt), commutators_suite(opt), trajectories_suite(opt)};
  fail(ErrorKind::InvalidArgument, "unknown suite '" + suite + "' (identities, commutators, trajectories, all)");
}

}  // namespace lpflow::cli
