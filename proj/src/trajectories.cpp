#include "lpflow/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "json.hpp"
#include "lpflow/error.hpp"
#include "lpflow/parallel.hpp"

namespace lpflow {

Point wrap(Point x, double length) {
  for (double& c : x) {
    c = std::fmod(c, length);
    if (c < 0.0) c += length;
    if (c >= length) c = 0.0;
  }
  return x;
}

ModeSampler::ModeSampler(std::vector<Field> fields) : nfields_(fields.size()) {
  if (fields.empty()) fail(ErrorKind::InvalidArgument, "sampler needs at least one field");
  const TorusGrid& g = fields.front().grid();
  const int h = g.half();
  for (int i2 = 0; i2 < g.n; ++i2) {
    const int xi2 = g.row_wavenumber(i2);
    for (int i1 = 0; i1 < h; ++i1) {
      const std::size_t idx = static_cast<std::size_t>(i2) * h + i1;
      bool active = false;
      for (const Field& f : fields) active = active || f.spectral()[idx] != cplx(0.0);
      if (!active) continue;
      // Interior columns stand for the conjugate pair +-xi.
      const double w = (i1 == 0 || i1 == g.n / 2) ? 1.0 : 2.0;
      xi1_.push_back(i1);
      xi2_.push_back(xi2);
      for (const Field& f : fields) coef_.push_back(w * f.spectral()[idx]);
      top1_ = std::max(top1_, i1);
      top2_ = std::max(top2_, std::abs(xi2));
    }
  }
}

std::vector<double> ModeSampler::operator()(Point x) const {
  std::vector<cplx> e1(top1_ + 1), e2(top2_ + 1);
  for (int m = 0; m <= top1_; ++m) e1[m] = std::polar(1.0, m * x[0]);
  for (int m = 0; m <= top2_; ++m) e2[m] = std::polar(1.0, m * x[1]);
  std::vector<double> out(nfields_, 0.0);
  for (std::size_t m = 0; m < xi1_.size(); ++m) {
    const cplx b = xi2_[m] >= 0 ? e2[xi2_[m]] : std::conj(e2[-xi2_[m]]);
    const cplx e = e1[xi1_[m]] * b;
    const cplx* c = &coef_[m * nfields_];
    for (std::size_t f = 0; f < nfields_; ++f) out[f] += (c[f] * e).real();
  }
  return out;
}

FlowSource FlowSource::steady(const LPBank& bank, const VecField& v, int k) {
  FlowSource s;
  s.bank_ = &bank;
  s.k_ = k;
  s.times_ = {0.0};
  s.velocities_ = {v};
  const VecField u = bank.leq(v, k);
  s.nodes_.emplace_back(std::vector<Field>{u[0], u[1]});
  return s;
}

FlowSource FlowSource::from_series(const LPBank& bank, const SnapshotSeries& series, int k) {
  if (series.size() < 2) fail(ErrorKind::InvalidArgument, "flow source needs at least two snapshots");
  FlowSource s;
  s.bank_ = &bank;
  s.k_ = k;
  s.times_ = series.times;
  s.velocities_ = series.velocities;
  s.nodes_.resize(series.size());
  parallel_for(series.size(), [&](std::size_t i) {
    const VecJet j = velocity_time_jet(series.velocities[i], 1);
    const VecField u = bank.leq(j[0], k);
    const VecField ut = bank.leq(j[1], k);
    s.nodes_[i] = ModeSampler({u[0], u[1], ut[0], ut[1]});
  });
  return s;
}

double FlowSource::t_begin() const { return is_steady() ? -INFINITY : times_.front(); }
double FlowSource::t_end() const { return is_steady() ? INFINITY : times_.back(); }

Point FlowSource::velocity(double t, Point x) const {
  if (is_steady()) {
    const auto u = nodes_[0](x);
    return {u[0], u[1]};
  }
  const double h = (times_.back() - times_.front()) / (times_.size() - 1);
  const double slack = 1e-9 * h;
  if (t < times_.front() - slack || t > times_.back() + slack) fail(ErrorKind::OutOfRange, "time outside the series");
  std::size_t i = static_cast<std::size_t>(std::floor((t - times_.front()) / h));
  i = std::min(i, times_.size() - 2);
  const double s = std::clamp((t - times_[i]) / h, 0.0, 1.0);
  const auto a = nodes_[i](x);
  const auto b = nodes_[i + 1](x);
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s, h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  Point u;
  for (int c = 0; c < 2; ++c) u[c] = h00 * a[c] + h10 * h * a[c + 2] + h01 * b[c] + h11 * h * b[c + 2];
  return u;
}

VecJet FlowSource::jet_at(double t, int order) const {
  if (order < 0) fail(ErrorKind::InvalidArgument, "negative jet order");
  if (is_steady()) {
    std::vector<VecField> levels{bank_->leq(velocities_[0], k_)};
    for (int r = 1; r <= order; ++r) levels.push_back(VecField::zeros(bank_->grid()));
    return VecJet(std::move(levels));
  }
  std::size_t idx = times_.size();
  const double h = (times_.back() - times_.front()) / (times_.size() - 1);
  for (std::size_t i = 0; i < times_.size(); ++i)
    if (std::abs(times_[i] - t) <= 1e-9 * h) idx = i;
  if (idx == times_.size()) fail(ErrorKind::OutOfRange, "jets exist only at snapshot times");
  const VecJet j = velocity_time_jet(velocities_[idx], order);
  return map(j, [&](const VecField& x) { return bank_->leq(x, k_); });
}

namespace {

Point axpy(Point x, double a, Point y) { return {x[0] + a * y[0], x[1] + a * y[1]}; }

// Fixed-step RK4 recording every `record`-th state.
void rk4(const FlowSource& src, Point x, double t0, double t1, int steps, int record, std::vector<double>* ts,
         std::vector<Point>* xs) {
  const double dt = (t1 - t0) / steps;
  ts->push_back(t0);
  xs->push_back(x);
  for (int i = 0; i < steps; ++i) {
    const double t = t0 + i * dt;
    const Point k1 = src.velocity(t, x);
    const Point k2 = src.velocity(t + dt / 2, axpy(x, dt / 2, k1));
    const Point k3 = src.velocity(t + dt / 2, axpy(x, dt / 2, k2));
    const Point k4 = src.velocity(i + 1 == steps ? t1 : t + dt, axpy(x, dt, k3));
    for (int c = 0; c < 2; ++c) x[c] += dt / 6 * (k1[c] + 2 * k2[c] + 2 * k3[c] + k4[c]);
    if ((i + 1) % record == 0) {
      ts->push_back(i + 1 == steps ? t1 : t0 + (i + 1) * dt);
      xs->push_back(x);
    }
  }
}

}  // namespace

Path integrate_flow(const FlowSource& src, Point x0, double t0, double t1, const FlowOptions& opt) {
  if (!(opt.max_step > 0.0)) fail(ErrorKind::InvalidArgument, "max_step must be positive");
  const double lo = std::min(t0, t1), hi = std::max(t0, t1);
  const double slack = 1e-12 * std::max(1.0, std::abs(hi));
  if (lo < src.t_begin() - slack || hi > src.t_end() + slack) fail(ErrorKind::OutOfRange, "interval outside the flow source");
  Path p;
  p.k = src.level();
  const int steps = std::max(1, static_cast<int>(std::ceil((hi - lo) / opt.max_step - 1e-9)));
  rk4(src, x0, t0, t1, steps, 1, &p.t, &p.x);
  if (opt.estimate_error && t1 != t0) {
    std::vector<double> ft;
    std::vector<Point> fx;
    rk4(src, x0, t0, t1, 2 * steps, 2, &ft, &fx);
    for (std::size_t i = 0; i < fx.size(); ++i)
      p.halving_error = std::max(p.halving_error, std::hypot(fx[i][0] - p.x[i][0], fx[i][1] - p.x[i][1]));
  }
  return p;
}

void Path::write_csv(std::ostream& out) const {
  out << "t,x1,x2,k\n";
  out.precision(17);
  for (std::size_t i = 0; i < t.size(); ++i) out << t[i] << ',' << x[i][0] << ',' << x[i][1] << ',' << k << '\n';
}

TaylorReport taylor_check(const FlowSource& src, Point x0, double t0, int N, double tau0, int ladder) {
  if (N < 0 || N > 3) fail(ErrorKind::InvalidArgument, "Taylor order must lie in [0, 3]");
  if (!(tau0 > 0.0) || ladder < 4) fail(ErrorKind::InvalidArgument, "need tau0 > 0 and at least 4 rungs");
  TaylorReport r;
  r.k = src.level();
  r.order = N;
  // d^r X / dt^r = (D^{r-1} u)(t0, x0), r = 1..N
  std::vector<Point> coeff;
  if (N >= 1) {
    const VecJet u = src.jet_at(t0, N - 1);
    for (int m = 0; m < N; ++m) {
      const VecField d = m == 0 ? u.value() : material_derivative_value(u, u, m);
      const auto val = ModeSampler({d[0], d[1]})(x0);
      coeff.push_back({val[0], val[1]});
    }
  }
  r.taus.resize(ladder);
  r.remainders.resize(ladder);
  parallel_for(static_cast<std::size_t>(ladder), [&](std::size_t i) {
    const double tau = tau0 * std::exp2(-static_cast<double>(i));
    FlowOptions opt;
    opt.max_step = tau / 64;
    opt.estimate_error = false;
    const Point x = integrate_flow(src, x0, t0, t0 + tau, opt).x.back();
    Point taylor = x0;
    double fact = 1.0, pw = 1.0;
    for (int m = 0; m < N; ++m) {
      pw *= tau;
      fact *= m + 1;
      taylor = axpy(taylor, pw / fact, coeff[m]);
    }
    r.taus[i] = tau;
    r.remainders[i] = std::hypot(x[0] - taylor[0], x[1] - taylor[1]);
  });
  std::vector<double> lx, ly;
  for (int i = 0; i < ladder; ++i)
    if (r.remainders[i] > 0.0) {
      lx.push_back(std::log(r.taus[i]));
      ly.push_back(std::log(r.remainders[i]));
    }
  if (lx.size() >= 2) {
    r.fit = fit_line(lx, ly);
    r.fitted_order = r.fit.slope;
  }
  return r;
}

void TaylorReport::write_json(std::ostream& out) const {
  nlohmann::ordered_json j;
  j["schema"] = schema;
  j["k"] = k;
  j["N"] = order;
  j["fitted_order"] = fitted_order;
  j["expected_order"] = order + 1;
  j["r2"] = fit.r2;
  auto& rows = j["rungs"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < taus.size(); ++i) rows.push_back({{"tau", taus[i]}, {"remainder", remainders[i]}});
  out << j.dump(2) << '\n';
}

ConvergenceReport trajectory_convergence(const std::vector<FlowSource>& ladder, Point x0, double t0, double t1,
                                         const FlowOptions& opt) {
  return trajectory_convergence(ladder, std::vector<Point>{x0}, t0, t1, opt);
}

ConvergenceReport trajectory_convergence(const std::vector<FlowSource>& ladder, const std::vector<Point>& starts,
                                         double t0, double t1, const FlowOptions& opt) {
  if (ladder.size() < 3) fail(ErrorKind::InvalidArgument, "convergence ladder needs at least 3 levels");
  if (starts.empty()) fail(ErrorKind::InvalidArgument, "need at least one starting point");
  const std::size_t L = ladder.size();
  std::vector<Path> paths(L * starts.size());
  parallel_for(paths.size(), [&](std::size_t i) { paths[i] = integrate_flow(ladder[i % L], starts[i / L], t0, t1, opt); });
  ConvergenceReport r;
  for (const auto& s : ladder) r.ks.push_back(s.level());
  r.differences.assign(L - 1, 0.0);
  for (std::size_t p = 0; p < starts.size(); ++p)
    for (std::size_t i = 0; i + 1 < L; ++i) {
      const Path& a = paths[p * L + i];
      const Path& b = paths[p * L + i + 1];
      for (std::size_t j = 0; j < a.x.size(); ++j)
        r.differences[i] = std::max(r.differences[i], std::hypot(b.x[j][0] - a.x[j][0], b.x[j][1] - a.x[j][1]));
    }
  r.monotone = true;
  for (std::size_t i = 1; i < r.differences.size(); ++i) r.monotone = r.monotone && r.differences[i] < r.differences[i - 1];
  std::vector<double> x, y;
  for (std::size_t i = 0; i < r.differences.size(); ++i)
    if (r.differences[i] > 0.0) {
      x.push_back(r.ks[i]);
      y.push_back(std::log2(r.differences[i]));
    }
  if (x.size() >= 2) {
    r.fit = fit_line(x, y);
    r.rate = -r.fit.slope;
  }
  return r;
}

std::vector<Point> peak_starts(const LPBank& bank, const VecField& v, const std::vector<int>& ks) {
  const TorusGrid& g = bank.grid();
  std::vector<Point> out;
  for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
    const VecField d = bank.leq(v, ks[i + 1]) - bank.leq(v, ks[i]);
    std::size_t best = 0;
    double top = -1.0;
    for (std::size_t p = 0; p < g.points(); ++p) {
      const double m = std::hypot(d[0].physical()[p], d[1].physical()[p]);
      if (m > top) {
        top = m;
        best = p;
      }
    }
    out.push_back({static_cast<double>(best % g.n) * g.spacing(), static_cast<double>(best / g.n) * g.spacing()});
  }
  return out;
}

std::vector<Point> start_lattice(int m, double length) {
  std::vector<Point> out;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out.push_back({(j + 0.5) * length / m, (i + 0.5) * length / m});
  return out;
}

}  // namespace lpflow
