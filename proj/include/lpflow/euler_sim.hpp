#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lpflow/field.hpp"

namespace lpflow {

struct SimConfig {
  int n = 128;
  /// taylor_green | shear | two_shell | lacunary
  std::string initial = "taylor_green";
  /// Lacunary initial data: shells j0..j1 with amplitudes 2^{-alpha j}.
  double alpha = 0.5;
  int j0 = 1;
  int j1 = 3;
  std::uint64_t seed = 1;
  /// Multiplies the initial velocity.
  double amplitude = 1.0;
  double dt = 1e-3;
  int steps = 100;
  int stride = 10;
  /// Only "two_thirds" is implemented.
  std::string dealias = "two_thirds";
};

VecField initial_velocity(const SimConfig& cfg);

/// RK4 integrator for d_t w + v.grad w = 0, v = U + perp_grad(Delta^-1 w),
/// with every mode |xi_i| > n/3 of w held at zero. The mean velocity U never
/// changes.
class VorticityStepper {
 public:
  /// Throws Error(NotDivergenceFree) for compressible input.
  explicit VorticityStepper(const VecField& v);

  void step(double dt);
  VecField velocity() const;
  double max_vorticity() const;
  const TorusGrid& grid() const { return grid_; }

 private:
  std::vector<cplx> rhs(const std::vector<cplx>& w) const;

  TorusGrid grid_;
  double u1_, u2_;
  std::vector<cplx> w_;
  std::vector<char> keep_;
};

/// Snapshots at uniformly spaced, strictly increasing times.
struct SnapshotSeries {
  TorusGrid grid;
  std::vector<double> times;
  std::vector<VecField> velocities;

  std::size_t size() const { return times.size(); }
  /// Spacing of consecutive snapshots.
  double spacing() const;
  /// Index whose time equals t to 1e-9 relative; Error(OutOfRange) otherwise.
  std::size_t index_of(double t) const;

  /// Directory with one LPSV1 file per snapshot and an "index.txt" holding
  /// "time filename" lines.
  void save(const std::string& dir) const;
  /// Throws Error(Io) on missing files, bad LPSV1 data, index/time mismatch
  /// or non-uniform spacing.
  static SnapshotSeries load(const std::string& dir);
};

/// Called with (step, time, velocity) at step 0 and every `stride` steps.
using SnapshotObserver = std::function<void(int, double, const VecField&)>;

/// Throws Error(InvalidArgument) when max|v| dt n / L > 0.5 and
/// Error(Unstable) when max|w| grows by more than 1e6.
void simulate(const SimConfig& cfg, const SnapshotObserver& observe);
SnapshotSeries simulate(const SimConfig& cfg);

/// d_t^r v at snapshot `index` from five-point centered stencils (r <= 3).
/// Needs two snapshots on either side.
VecField time_derivative_oracle(const SnapshotSeries& s, std::size_t index, int r);

/// Same stencils on a scalar series sampled at spacing h.
double time_derivative_oracle(const std::vector<double>& values, std::size_t index, int r, double h);

/// max|v(after dt then -dt) - v| for one RK4 step each way.
double reversibility_error(const VecField& v, double dt);

}  // namespace lpflow
