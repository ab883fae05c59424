#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <vector>

#include "lpflow/euler_sim.hpp"
#include "lpflow/jet.hpp"
#include "lpflow/lp_bank.hpp"
#include "lpflow/scale_scan.hpp"

namespace lpflow {

using Point = std::array<double, 2>;

/// Wraps each coordinate into [0, L).
Point wrap(Point x, double length = 2.0 * std::numbers::pi);

/// Evaluates several band-limited fields of one grid at off-grid points by
/// direct summation over their nonzero modes.
class ModeSampler {
 public:
  ModeSampler() = default;
  explicit ModeSampler(std::vector<Field> fields);
  /// Values of every field at x.
  std::vector<double> operator()(Point x) const;
  std::size_t mode_count() const { return xi1_.size(); }

 private:
  std::size_t nfields_ = 0;
  int top1_ = 0;
  int top2_ = 0;
  std::vector<int> xi1_, xi2_;
  std::vector<cplx> coef_;  // mode-major, nfields per mode, column weights folded in
};

/// Advecting field u = P_{<=k} v over a time interval: either a single
/// time-independent field or a snapshot series interpolated in time by cubic
/// Hermite polynomials through u and d_t u = P_{<=k} v_1 (from the Euler jet).
class FlowSource {
 public:
  /// Time-independent u = P_{<=k} v on (-inf, inf). Its time jet has zero
  /// derivative levels, so Taylor coefficients are (u.grad)^{r-1} u.
  static FlowSource steady(const LPBank& bank, const VecField& v, int k);
  static FlowSource from_series(const LPBank& bank, const SnapshotSeries& s, int k);

  int level() const { return k_; }
  double t_begin() const;
  double t_end() const;
  bool is_steady() const { return nodes_.size() == 1; }
  Point velocity(double t, Point x) const;
  /// Jet of u at t (a snapshot time for series sources). Error(OutOfRange)
  /// when t is not a snapshot time.
  VecJet jet_at(double t, int order) const;

 private:
  FlowSource() = default;
  const LPBank* bank_ = nullptr;
  int k_ = 0;
  std::vector<double> times_;
  std::vector<VecField> velocities_;  // full v at the nodes, for jets
  std::vector<ModeSampler> nodes_;    // (u1, u2, d_t u1, d_t u2) per node
};

struct Path {
  int k = 0;
  std::vector<double> t;
  std::vector<Point> x;  // unwrapped positions
  /// max |X_dt - X_{dt/2}| over the stored times from a second, halved-step run.
  double halving_error = 0.0;
  void write_csv(std::ostream& out) const;
};

struct FlowOptions {
  double max_step = 1.0 / 256.0;
  bool estimate_error = true;
};

/// RK4 for dX/dt = u(t, X), X(t0) = x0, stepping towards t1 (either
/// direction). Error(OutOfRange) when [t0, t1] leaves the source's span.
Path integrate_flow(const FlowSource& src, Point x0, double t0, double t1, const FlowOptions& opt = {});

/// Remainder |X(t0 + tau) - sum_{r<=N} tau^r / r! d^r X/dt^r (t0)| over a
/// dyadic ladder of tau, with d^r X/dt^r = (D^{r-1} u)(t0, X(t0)).
struct TaylorReport {
  static constexpr const char* schema = "taylorv1";
  int k = 0;
  int order = 0;  // N
  std::vector<double> taus;
  std::vector<double> remainders;
  LineFit fit;  // log remainder against log tau
  double fitted_order = 0.0;
  void write_json(std::ostream& out) const;
};
/// Requires N <= 3, tau0 > 0 and ladder >= 4 rungs; jets of order N at t0.
TaylorReport taylor_check(const FlowSource& src, Point x0, double t0, int N, double tau0, int ladder = 6);

/// sup_t |X_(k+1)(t) - X_(k)(t)| over a ladder of levels. Successive
/// differences are evidence for convergence, not a uniqueness certificate.
struct ConvergenceReport {
  std::vector<int> ks;
  std::vector<double> differences;  // between ks[i] and ks[i+1]
  LineFit fit;                      // log2 difference against k
  double rate = 0.0;                // -fit.slope
  bool monotone = false;
};
ConvergenceReport trajectory_convergence(const std::vector<FlowSource>& ladder, Point x0, double t0, double t1,
                                         const FlowOptions& opt = {});
/// Same with the sup also taken over several starting points; a cloud
/// samples the sup norm of the level differences instead of one point value.
ConvergenceReport trajectory_convergence(const std::vector<FlowSource>& ladder, const std::vector<Point>& starts,
                                         double t0, double t1, const FlowOptions& opt = {});
/// Grid points where |P_{<=k+1} v - P_{<=k} v| peaks, one per consecutive
/// pair of ladder levels; seeding a cloud with them sharpens the sup.
std::vector<Point> peak_starts(const LPBank& bank, const VecField& v, const std::vector<int>& ks);
/// m x m uniform lattice of starting points, offset by half a cell.
std::vector<Point> start_lattice(int m, double length = 2.0 * std::numbers::pi);

}  // namespace lpflow
