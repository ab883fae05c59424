#include "lpflow/euler_sim.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lpflow/error.hpp"
#include "lpflow/fft.hpp"
#include "lpflow/lp_bank.hpp"
#include "lpflow/rough_synth.hpp"
#include "lpflow/snapshot_io.hpp"

namespace lpflow {

VecField initial_velocity(const SimConfig& cfg) {
  const TorusGrid g(cfg.n);
  if (cfg.dealias != "two_thirds") fail(ErrorKind::InvalidArgument, "unsupported dealias rule '" + cfg.dealias + "'");
  VecField v;
  if (cfg.initial == "lacunary") {
    if (std::ldexp(1.0, cfg.j1) > g.dealias_cutoff())
      fail(ErrorKind::InvalidArgument, "lacunary shells must stay inside the dealiased band");
    v = synth_lacunary(LPBank(g), cfg.alpha, cfg.j0, cfg.j1, cfg.seed);
  } else {
    v = synth_named(g, cfg.initial);
  }
  v *= cfg.amplitude;
  return v;
}

VorticityStepper::VorticityStepper(const VecField& v) : grid_(v.grid()) {
  require_divergence_free(v, "VorticityStepper");
  u1_ = v[0].mean();
  u2_ = v[1].mean();
  const Field w = curl(v);
  w_.assign(w.spectral().begin(), w.spectral().end());
  keep_.assign(grid_.modes(), 0);
  const int cut = grid_.dealias_cutoff();
  const int h = grid_.half();
  for (int i2 = 0; i2 < grid_.n; ++i2)
    for (int i1 = 0; i1 < h; ++i1)
      keep_[static_cast<std::size_t>(i2) * h + i1] = (i1 <= cut && std::abs(grid_.row_wavenumber(i2)) <= cut) ? 1 : 0;
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (!keep_[i]) w_[i] = 0.0;
}

std::vector<cplx> VorticityStepper::rhs(const std::vector<cplx>& w) const {
  const int n = grid_.n;
  const int h = grid_.half();
  const std::size_t modes = grid_.modes();
  std::vector<cplx> a(modes), b(modes), c(modes), d(modes);
  for (int i2 = 0; i2 < n; ++i2) {
    const double xi2 = grid_.row_wavenumber(i2);
    for (int i1 = 0; i1 < h; ++i1) {
      const std::size_t idx = static_cast<std::size_t>(i2) * h + i1;
      if (!keep_[idx]) continue;
      const double xi1 = i1;
      const double k2 = xi1 * xi1 + xi2 * xi2;
      const cplx psi = k2 == 0.0 ? cplx{} : -w[idx] / k2;
      a[idx] = cplx(0, -xi2) * psi;  // v1 = -d2 psi
      b[idx] = cplx(0, xi1) * psi;   // v2 = d1 psi
      c[idx] = cplx(0, xi1) * w[idx];
      d[idx] = cplx(0, xi2) * w[idx];
    }
  }
  a[0] = u1_;
  b[0] = u2_;
  std::vector<double> v1(grid_.points()), v2(grid_.points()), wx(grid_.points()), wy(grid_.points());
  fft::inverse(n, a, v1);
  fft::inverse(n, b, v2);
  fft::inverse(n, c, wx);
  fft::inverse(n, d, wy);
  for (std::size_t i = 0; i < v1.size(); ++i) v1[i] = v1[i] * wx[i] + v2[i] * wy[i];
  std::vector<cplx> out(modes);
  fft::forward(n, v1, out);
  const double scale = -1.0 / static_cast<double>(grid_.points());
  for (std::size_t i = 0; i < modes; ++i) out[i] = keep_[i] ? out[i] * scale : cplx{};
  return out;
}

void VorticityStepper::step(double dt) {
  const std::size_t m = w_.size();
  const auto k1 = rhs(w_);
  std::vector<cplx> tmp(m);
  for (std::size_t i = 0; i < m; ++i) tmp[i] = w_[i] + 0.5 * dt * k1[i];
  const auto k2 = rhs(tmp);
  for (std::size_t i = 0; i < m; ++i) tmp[i] = w_[i] + 0.5 * dt * k2[i];
  const auto k3 = rhs(tmp);
  for (std::size_t i = 0; i < m; ++i) tmp[i] = w_[i] + dt * k3[i];
  const auto k4 = rhs(tmp);
  for (std::size_t i = 0; i < m; ++i) w_[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

VecField VorticityStepper::velocity() const {
  const Field w = Field::from_spectral(grid_, w_);
  VecField v = perp_gradient(inverse_laplacian(w));
  v[0] += Field::constant(grid_, u1_);
  v[1] += Field::constant(grid_, u2_);
  return v;
}

double VorticityStepper::max_vorticity() const {
  std::vector<double> s(grid_.points());
  fft::inverse(grid_.n, w_, s);
  double m = 0.0;
  for (double x : s) m = std::max(m, std::abs(x));
  return m;
}

double SnapshotSeries::spacing() const {
  if (times.size() < 2) fail(ErrorKind::InvalidArgument, "series has fewer than two snapshots");
  return times[1] - times[0];
}

std::size_t SnapshotSeries::index_of(double t) const {
  for (std::size_t i = 0; i < times.size(); ++i)
    if (std::abs(times[i] - t) <= 1e-9 * std::max(1.0, std::abs(t))) return i;
  fail(ErrorKind::OutOfRange, "no snapshot at the requested time");
}

void SnapshotSeries::save(const std::string& dir) const {
  std::filesystem::create_directories(dir);
  std::ofstream index(dir + "/index.txt");
  if (!index) fail(ErrorKind::Io, dir + ": cannot write index");
  for (std::size_t i = 0; i < times.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "snap_%05zu.lpsv", i);
    write_lpsv(dir + "/" + name, times[i], velocities[i].c);
    char line[96];
    std::snprintf(line, sizeof(line), "%.17g %s\n", times[i], name);
    index << line;
  }
  if (!index) fail(ErrorKind::Io, dir + ": index write failed");
}

SnapshotSeries SnapshotSeries::load(const std::string& dir) {
  std::ifstream index(dir + "/index.txt");
  if (!index) fail(ErrorKind::Io, dir + ": missing index.txt");
  SnapshotSeries s;
  std::string line;
  while (std::getline(index, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    double t;
    std::string name;
    if (!(ls >> t >> name)) fail(ErrorKind::Io, dir + ": malformed index line '" + line + "'");
    const SnapshotFile f = read_lpsv(dir + "/" + name);
    if (f.time != t) fail(ErrorKind::Io, dir + "/" + name + ": time in file does not match the index");
    if (s.times.empty()) s.grid = f.grid;
    else if (!(f.grid == s.grid)) fail(ErrorKind::Io, dir + "/" + name + ": grid differs from the series");
    if (!s.times.empty() && !(t > s.times.back())) fail(ErrorKind::Io, dir + ": times not strictly increasing");
    s.times.push_back(t);
    s.velocities.push_back(as_velocity(f));
  }
  if (s.times.empty()) fail(ErrorKind::Io, dir + ": empty series");
  if (s.times.size() > 1) {
    const double h = s.spacing();
    for (std::size_t i = 1; i < s.times.size(); ++i)
      if (std::abs((s.times[i] - s.times[i - 1]) - h) > 1e-9 * h) fail(ErrorKind::Io, dir + ": non-uniform snapshot spacing");
  }
  return s;
}

void simulate(const SimConfig& cfg, const SnapshotObserver& observe) {
  if (cfg.steps < 0 || cfg.stride < 1 || !(cfg.dt > 0.0)) fail(ErrorKind::InvalidArgument, "bad step parameters");
  const VecField v0 = initial_velocity(cfg);
  const TorusGrid& g = v0.grid();
  const double vmax = sup_norm(v0);
  const double cfl = vmax * cfg.dt * g.n / g.length;
  if (cfl > 0.5) fail(ErrorKind::InvalidArgument, "CFL number " + std::to_string(cfl) + " exceeds 0.5");
  VorticityStepper stepper(v0);
  const double w0 = std::max(stepper.max_vorticity(), 1e-300);
  observe(0, 0.0, stepper.velocity());
  for (int s = 1; s <= cfg.steps; ++s) {
    stepper.step(cfg.dt);
    if (s % cfg.stride == 0) {
      if (!(stepper.max_vorticity() <= 1e6 * w0)) fail(ErrorKind::Unstable, "vorticity blow-up guard tripped");
      observe(s, s * cfg.dt, stepper.velocity());
    }
  }
}

SnapshotSeries simulate(const SimConfig& cfg) {
  SnapshotSeries out;
  out.grid = TorusGrid(cfg.n);
  simulate(cfg, [&](int, double t, const VecField& v) {
    out.times.push_back(t);
    out.velocities.push_back(v);
  });
  return out;
}

namespace {

// Five-point centered weights for f(-2h), ..., f(2h) and the power of h.
struct Stencil {
  double w[5];
  int power;
};

Stencil stencil(int r) {
  switch (r) {
    case 0: return {{0, 0, 1, 0, 0}, 0};
    case 1: return {{1.0 / 12, -8.0 / 12, 0, 8.0 / 12, -1.0 / 12}, 1};
    case 2: return {{-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12}, 2};
    case 3: return {{-0.5, 1.0, 0, -1.0, 0.5}, 3};
    default: fail(ErrorKind::InvalidArgument, "time derivative order must be at most 3");
  }
}

}  // namespace

VecField time_derivative_oracle(const SnapshotSeries& s, std::size_t index, int r) {
  const Stencil st = stencil(r);
  if (index < 2 || index + 2 >= s.size()) fail(ErrorKind::OutOfRange, "stencil needs two snapshots on each side");
  const double scale = 1.0 / std::pow(s.spacing(), st.power);
  VecField acc = VecField::zeros(s.grid);
  for (int i = 0; i < 5; ++i)
    if (st.w[i] != 0.0) acc += (st.w[i] * scale) * s.velocities[index + i - 2];
  return acc;
}

double time_derivative_oracle(const std::vector<double>& values, std::size_t index, int r, double h) {
  const Stencil st = stencil(r);
  if (index < 2 || index + 2 >= values.size()) fail(ErrorKind::OutOfRange, "stencil needs two samples on each side");
  double acc = 0.0;
  for (int i = 0; i < 5; ++i) acc += st.w[i] * values[index + i - 2];
  return acc / std::pow(h, st.power);
}

double reversibility_error(const VecField& v, double dt) {
  VorticityStepper s(v);
  const VecField start = s.velocity();
  s.step(dt);
  s.step(-dt);
  return sup_norm(s.velocity() - start);
}

}  // namespace lpflow
