#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "lpflow/error.hpp"
#include "lpflow/rough_synth.hpp"
#include "lpflow/scale_scan.hpp"

using namespace lpflow;

TEST_CASE("line fit recovers an exact line") {
  const LineFit f = fit_line({0, 1, 2, 3}, {1, 3, 5, 7});
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r2 == doctest::Approx(1.0));
  CHECK_THROWS_AS(fit_line({1}, {1}), Error);
}

TEST_CASE("shell norms of a lacunary field decay at the synthesis exponent") {
  const TorusGrid g(128);
  const LPBank bank(g);
  const EulerSnapshot s(0.0, synth_lacunary(bank, 0.3, 1, 6, 7));
  ScanOptions opt;
  opt.k_lo = 1;
  opt.k_hi = 6;
  opt.fit_lo = 2;
  opt.fit_hi = 6;
  opt.alpha = 0.3;
  const ScanReport r = scan(bank, s, "Pk_v", opt);
  REQUIRE(r.fitted);
  CHECK(std::abs(r.fit.slope + 0.3) <= 0.1);
  CHECK(r.verdict);
  CHECK_FALSE(r.empty);
}

TEST_CASE("Reynolds stress of an alpha = 1/2 field decays like 2^{-k}") {
  const TorusGrid g(128);
  const LPBank bank(g);
  const EulerSnapshot s(0.0, synth_lacunary(bank, 0.5, 1, 6, 3));
  ScanOptions opt;
  opt.k_lo = 1;
  opt.k_hi = 5;
  opt.fit_lo = 2;
  opt.fit_hi = 5;
  opt.alpha = 0.5;
  const ScanReport r = scan(bank, s, "R_leqk", opt);
  REQUIRE(r.fitted);
  CHECK(std::abs(r.fit.slope + 1.0) <= 0.2);
  CHECK(r.verdict);
}

TEST_CASE("a zero field is reported empty and passes") {
  const TorusGrid g(64);
  const LPBank bank(g);
  const EulerSnapshot s(0.0, VecField::zeros(g));
  ScanOptions opt;
  opt.k_lo = 1;
  opt.k_hi = 3;
  for (const char* q : {"Pk_v", "R_leqk", "delta_p"}) {
    const ScanReport r = scan(bank, s, q, opt);
    CHECK(r.empty);
    CHECK(r.verdict);
  }
}

TEST_CASE("ratios are invariant under scaling of the field") {
  const TorusGrid g(64);
  const LPBank bank(g);
  const VecField v = synth_lacunary(bank, 0.5, 1, 4, 11);
  ScanOptions opt;
  opt.k_lo = 1;
  opt.k_hi = 3;
  opt.alpha = 0.5;
  for (const char* q : {"Pk_v", "R_leqk", "Pk_p", "delta_e"}) {
    const ScanReport a = scan(bank, EulerSnapshot(0.0, v), q, opt);
    const ScanReport b = scan(bank, EulerSnapshot(0.0, 3.0 * v), q, opt);
    for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(b.rows[i].ratio == doctest::Approx(a.rows[i].ratio).epsilon(1e-10));
  }
}

TEST_CASE("scan rejects bad requests") {
  const TorusGrid g(64);
  const LPBank bank(g);
  const EulerSnapshot s(0.0, synth_named(g, "taylor_green"), 1);
  ScanOptions opt;
  opt.k_lo = 3;
  opt.k_hi = 2;
  CHECK_THROWS_AS(scan(bank, s, "Pk_v", opt), Error);
  opt.k_lo = 1;
  opt.k_hi = 2;
  CHECK_THROWS_AS(scan(bank, s, "no_such_quantity", opt), Error);
  CHECK_THROWS_AS(scan(bank, s, "DPk1_v", opt), Error);
  opt.field_kind = "euler";
  CHECK_NOTHROW(scan(bank, s, "DPk1_v", opt));
  CHECK_THROWS_AS(scan(bank, s, "D2Pk1_v", opt), Error);
}

TEST_CASE("predicted slopes follow the quantity table") {
  CHECK(quantity_spec("Pk_v").slope_alpha == -1.0);
  CHECK(quantity_spec("D2Pk1_v").slope_offset == 2.0);
  CHECK(quantity_spec("D2Pk1_v").slope_alpha == -3.0);
  CHECK(quantity_spec("delta_p").log_power == 1);
  CHECK(quantity_table().size() == 12);
}

TEST_CASE("report serializes to csv and json") {
  ScanOptions opt;
  opt.alpha = 0.5;
  opt.seminorm = 1.0;
  opt.fit_lo = 0;
  opt.fit_hi = 4;
  const ScanReport r = make_report("Pk_v", {0, 1, 2, 3, 4}, {1, 0.7, 0.5, 0.36, 0.25}, -0.5, 1, 0, 0, opt);
  std::ostringstream csv, js;
  r.write_csv(csv);
  r.write_json(js);
  CHECK(csv.str().rfind("k,quantity,field_kind,value,ratio,bound,pass\n", 0) == 0);
  const auto j = nlohmann::json::parse(js.str());
  CHECK(j["schema"] == "scanv1");
  CHECK(j["rows"].size() == 5);
  CHECK(j["fit"]["slope"].get<double>() == doctest::Approx(-0.5).epsilon(0.02));
}

TEST_CASE("time exponents of |t|^beta") {
  for (double beta : {0.3, 0.5, 1.0}) {
    const int m = 257;
    const double h = 2.0 / (m - 1);
    std::vector<double> s(m);
    for (int i = 0; i < m; ++i) s[i] = std::pow(std::abs(-1.0 + i * h), beta);
    const TimeExponent t = holder_time_exponent(s, h);
    CHECK_FALSE(t.conserved);
    CHECK(std::abs(t.exponent - beta) <= 0.05);
  }
  const TimeExponent c = holder_time_exponent(std::vector<double>(100, 2.5), 0.1);
  CHECK(c.conserved);
  CHECK(std::isinf(c.exponent));
}

TEST_CASE("structure function of a single sine mode") {
  const TorusGrid g(64);
  const VecField v{{Field::zeros(g), Field::sample(g, [](double x1, double) { return std::sin(x1); })}};
  const std::vector<double> lags = default_lags(g);
  REQUIRE(!lags.empty());
  CHECK(lags.back() <= std::numbers::pi / 2 + 1e-12);
  for (const StructureRow& row : structure_function(v, {2}, lags)) {
    double m = 0.0;
    for (int j = 0; j < 8; ++j) {
      const double s = std::sin(row.lag * std::cos(j * std::numbers::pi / 4) / 2);
      m += 2 * s * s / 8;
    }
    CHECK(row.value == doctest::Approx(std::sqrt(m)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(structure_function(v, {5}, lags), Error);
}

TEST_CASE("structure functions: constant field and lacunary third-order slope") {
  const TorusGrid g(256);
  const LPBank bank(g);
  const VecField c{{Field::constant(g, 1.5), Field::constant(g, -0.5)}};
  for (const auto& row : structure_function(c, {2, 3, 4}, default_lags(g))) CHECK(row.value <= 1e-13);

  auto s3_slope = [&](const VecField& v) {
    std::vector<double> x, y;
    for (const auto& row : structure_function(v, {3}, default_lags(g))) {
      x.push_back(std::log(row.lag));
      y.push_back(std::log(row.value));
    }
    return fit_line(x, y).slope;
  };
  auto l3_norm = [](const VecField& w) {
    std::vector<double> m(w[0].physical().size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::pow(std::hypot(w[0].physical()[i], w[1].physical()[i]), 3);
    return std::cbrt(pairwise_sum(m) / m.size());
  };
  // Shells scaled to unit L3 norm make <|dv|^3>^{1/3} scale exactly like 2^{-alpha j}.
  VecField v = VecField::zeros(g);
  for (int j = 1; j <= 7; ++j) {
    const VecField w = synth_shell(bank, j, mix_seed(13, j));
    v += (std::exp2(-j / 3.0) / l3_norm(w)) * w;
  }
  CHECK(std::abs(s3_slope(v) - 1.0 / 3.0) <= 0.1);
  // Unit sup-norm shells have L3/C0 ratios shrinking with j, which steepens S_3.
  CHECK(s3_slope(synth_lacunary(bank, 1.0 / 3.0, 1, 7, 13)) > 1.0 / 3.0);
}

TEST_CASE("time Hoelder reports on steady and simulated flows") {
  const TorusGrid g(64);
  const LPBank bank(g);
  SimConfig steady;
  steady.n = 64;
  steady.steps = 40;
  steady.stride = 2;
  const TimeHolderReport z = time_holder_field(bank, simulate(steady), 0.5);
  CHECK(z.zero);
  CHECK(z.stable);

  SimConfig cfg;
  cfg.n = 64;
  cfg.initial = "lacunary";
  cfg.alpha = 0.5;
  cfg.j0 = 1;
  cfg.j1 = 4;
  cfg.seed = 3;
  cfg.dt = 1e-3;
  cfg.steps = 640;
  cfg.stride = 10;
  const SnapshotSeries s = simulate(cfg);
  double dtv = 0.0;
  for (const auto& v : s.velocities) dtv = std::max(dtv, sup_norm(velocity_time_jet(v, 1)[1]));
  const TimeHolderReport one = time_holder_field(bank, s, 1.0);
  CHECK(std::abs(one.raw_constant / dtv - 1.0) <= 0.3);
  const TimeHolderReport half = time_holder_field(bank, s, 0.5);
  CHECK(half.stable);

  std::vector<double> energy;
  for (const auto& v : s.velocities) energy.push_back(kinetic_energy(v));
  CHECK(holder_time_exponent(energy, s.spacing()).conserved);
  SnapshotSeries few = s;
  few.times.resize(8);
  few.velocities.resize(8);
  CHECK_THROWS_AS(time_holder_field(bank, few, 0.5), Error);
}
