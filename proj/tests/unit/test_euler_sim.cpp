#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "lpflow/error.hpp"
#include "lpflow/euler_ops.hpp"
#include "lpflow/euler_sim.hpp"
#include "lpflow/snapshot_io.hpp"

using namespace lpflow;

namespace {

std::string temp_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("lpflow_test_" + name);
  std::filesystem::remove_all(p);
  return p.string();
}

SimConfig lacunary_config(int n, int steps, double dt, int stride) {
  SimConfig c;
  c.n = n;
  c.initial = "lacunary";
  c.alpha = 0.5;
  c.j0 = 1;
  c.j1 = 3;
  c.seed = 12;
  c.dt = dt;
  c.steps = steps;
  c.stride = stride;
  return c;
}

}  // namespace

TEST_CASE("steady flows stay put") {
  for (const char* name : {"taylor_green", "shear"}) {
    SimConfig c;
    c.n = 64;
    c.initial = name;
    c.dt = 1e-2;
    c.steps = 200;
    c.stride = 50;
    const SnapshotSeries s = simulate(c);
    REQUIRE(s.size() == 5);
    for (const auto& v : s.velocities) CHECK(sup_norm(v - s.velocities.front()) < 1e-9);
  }
}

TEST_CASE("conservation on a random three-shell flow") {
  const SimConfig c = lacunary_config(64, 400, 2e-3, 20);
  const SnapshotSeries s = simulate(c);
  const double e0 = kinetic_energy(s.velocities.front());
  const double z0 = enstrophy(s.velocities.front());
  const double u0 = s.velocities.front()[0].mean();
  for (const auto& v : s.velocities) {
    CHECK(std::abs(kinetic_energy(v) - e0) <= 1e-8 * e0);
    CHECK(std::abs(enstrophy(v) - z0) <= 1e-6 * z0);
    CHECK(v[0].mean() == u0);
    CHECK(is_divergence_free(v));
  }
  // Not steady: the flow actually moved.
  CHECK(sup_norm(s.velocities.back() - s.velocities.front()) > 1e-3);
}

TEST_CASE("reversibility") {
  const VecField v = initial_velocity(lacunary_config(64, 0, 1e-3, 1));
  CHECK(reversibility_error(v, 1e-3) <= 1e-9);
}

TEST_CASE("CFL and configuration errors") {
  SimConfig c = lacunary_config(64, 10, 1.0, 1);
  CHECK_THROWS_AS(simulate(c), Error);
  c.dt = 1e-3;
  c.dealias = "none";
  CHECK_THROWS_AS(simulate(c), Error);
  c.dealias = "two_thirds";
  c.initial = "vortex";
  CHECK_THROWS_AS(simulate(c), Error);
}

TEST_CASE("jet levels against finite differences of the simulator") {
  // Error of the five-point stencil shrinks with the snapshot spacing.
  const double dt = 2.5e-3;
  std::vector<double> err1, err2, spacing;
  for (int stride : {16, 8, 4}) {
    const SnapshotSeries s = simulate(lacunary_config(64, 4 * stride, dt, stride));
    const VecJet j = velocity_time_jet(s.velocities[2], 2);
    err1.push_back(sup_norm(time_derivative_oracle(s, 2, 1) - j[1]));
    err2.push_back(sup_norm(time_derivative_oracle(s, 2, 2) - j[2]) / sup_norm(j[2]));
    spacing.push_back(stride * dt);
  }
  for (std::size_t i = 1; i < err1.size(); ++i) {
    const double order = std::log(err1[i - 1] / err1[i]) / std::log(spacing[i - 1] / spacing[i]);
    CHECK(order >= 1.8);
  }
  CHECK(err2.back() <= 1e-3);
}

TEST_CASE("series round trip") {
  const SnapshotSeries s = simulate(lacunary_config(32, 6, 1e-3, 2));
  const std::string dir = temp_dir("series");
  s.save(dir);
  const SnapshotSeries r = SnapshotSeries::load(dir);
  REQUIRE(r.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(r.times[i] == s.times[i]);
    for (int c = 0; c < 2; ++c)
      for (std::size_t p = 0; p < s.grid.points(); ++p) REQUIRE(r.velocities[i][c].physical()[p] == s.velocities[i][c].physical()[p]);
  }
  // Index and file disagree on the time.
  {
    std::ofstream idx(dir + "/index.txt", std::ios::app);
    idx << "5 snap_00000.lpsv\n";
  }
  CHECK_THROWS_AS(SnapshotSeries::load(dir), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("LPSV1 rejects foreign files") {
  const std::string dir = temp_dir("lpsv");
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir + "/bad.lpsv", std::ios::binary);
    f << "NOPE";
  }
  CHECK_THROWS_AS(read_lpsv(dir + "/bad.lpsv"), Error);
  {
    std::ofstream f(dir + "/dim3.lpsv", std::ios::binary);
    f.write("LPSV1\0", 6);
    const std::uint32_t three = 3;
    f.write(reinterpret_cast<const char*>(&three), 4);
  }
  try {
    read_lpsv(dir + "/dim3.lpsv");
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("dimension 3") != std::string::npos);
  }
  const Field f = Field::constant(TorusGrid(32), 1.5);
  write_lpsv(dir + "/ok.lpsv", 0.25, std::span<const Field>(&f, 1));
  std::filesystem::resize_file(dir + "/ok.lpsv", 100);
  CHECK_THROWS_AS(read_lpsv(dir + "/ok.lpsv"), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("five-point stencils on polynomials") {
  std::vector<double> cubic;
  const double h = 0.1;
  for (int i = 0; i < 7; ++i) cubic.push_back(std::pow(i * h, 3));
  CHECK(time_derivative_oracle(cubic, 3, 1, h) == doctest::Approx(3 * 0.09).epsilon(1e-12));
  CHECK(time_derivative_oracle(cubic, 3, 2, h) == doctest::Approx(6 * 0.3).epsilon(1e-12));
  CHECK(time_derivative_oracle(cubic, 3, 3, h) == doctest::Approx(6.0).epsilon(1e-10));
  CHECK_THROWS_AS(time_derivative_oracle(cubic, 1, 1, h), Error);
}
