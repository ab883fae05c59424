#include "lpflow/scale_scan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "json.hpp"
#include "lpflow/error.hpp"
#include "lpflow/holder.hpp"
#include "lpflow/parallel.hpp"

namespace lpflow {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) fail(ErrorKind::InvalidArgument, "line fit needs at least two points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

const std::vector<QuantitySpec>& quantity_table() {
  static const std::vector<QuantitySpec> table = {
      {"Pk_v", 1, 0.0, -1.0, 0, 0},        {"grad_Pleqk_v", 1, 1.0, -1.0, 0, 0}, {"R_leqk", 2, 0.0, -2.0, 0, 0},
      {"grad_R_leqk", 2, 1.0, -2.0, 0, 0}, {"Pk_p", 2, 0.0, -2.0, 0, 0},         {"grad_Pk_p", 2, 1.0, -2.0, 0, 0},
      {"delta_p", 2, 0.0, -2.0, 1, 0},     {"delta_e", 2, 0.0, -2.0, 0, 0},      {"DPk1_v", 2, 1.0, -2.0, 0, 1},
      {"D2Pk1_v", 3, 2.0, -3.0, 0, 2},     {"ddt_delta_e", 3, 1.0, -3.0, 0, 0},  {"flux", 3, 1.0, -3.0, 0, 0},
  };
  return table;
}

const QuantitySpec& quantity_spec(const std::string& id) {
  for (const auto& q : quantity_table())
    if (q.id == id) return q;
  fail(ErrorKind::InvalidArgument, "unknown quantity '" + id + "'");
}

double quantity_value(const LPBank& bank, const EulerSnapshot& s, const std::string& id, int k) {
  const VecField& v = s.velocity();
  if (id == "Pk_v") return sup_norm(bank.shell(v, k));
  if (id == "grad_Pleqk_v") return gradient_sup_norm(bank.leq(v, k));
  if (id == "R_leqk") return reynolds_stress(bank, v, k).sup_norm();
  if (id == "grad_R_leqk") {
    const SymTensor r = reynolds_stress(bank, v, k);
    std::vector<Field> f;
    std::vector<double> w;
    for (const Field* c : {&r.c11, &r.c12, &r.c22})
      for (MultiIndex e : {MultiIndex{1, 0}, MultiIndex{0, 1}}) {
        f.push_back(derivative(*c, e));
        w.push_back(c == &r.c12 ? 2.0 : 1.0);
      }
    return sup_norm(f, w);
  }
  if (id == "Pk_p") return sup_norm(bank.shell(s.pressure(), k));
  if (id == "grad_Pk_p") return sup_norm(gradient(bank.shell(s.pressure(), k)));
  if (id == "delta_p") return sup_norm(pressure_increment(bank, v, k));
  if (id == "delta_e") return std::abs(energy_increment(bank, v, k));
  if (id == "DPk1_v") return sup_norm(shell_advective_derivative(bank, s, k, 1));
  if (id == "D2Pk1_v") return sup_norm(shell_advective_derivative(bank, s, k, 2));
  if (id == "ddt_delta_e") return std::abs(energy_increment_rate(bank, v, k));
  if (id == "flux") return std::abs(energy_flux(bank, v, k));
  fail(ErrorKind::InvalidArgument, "unknown quantity '" + id + "'");
}

ScanReport make_report(const std::string& quantity, const std::vector<int>& ks, const std::vector<double>& values,
                       double predicted_slope, int degree, int log_power, int k0, const ScanOptions& opt) {
  ScanReport r;
  r.quantity = quantity;
  r.field_kind = opt.field_kind;
  r.alpha = opt.alpha;
  r.seminorm = opt.seminorm;
  r.degree = degree;
  r.log_power = log_power;
  r.predicted_slope = predicted_slope;
  const double scale = r.seminorm > 0.0 ? std::pow(r.seminorm, degree) : 1.0;
  double vmax = 0.0;
  for (double v : values) vmax = std::max(vmax, std::abs(v));
  r.empty = !(vmax > 1e-13 * scale) || r.seminorm == 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    ScanRow row;
    row.k = ks[i];
    row.value = values[i];
    row.ratio = values[i] / (std::pow(2.0, predicted_slope * ks[i]) * scale * std::pow(1.0 + std::abs(ks[i] - k0), log_power));
    r.rows.push_back(row);
  }
  r.fit_lo = opt.fit_lo;
  r.fit_hi = opt.fit_hi;
  if (r.empty) {
    r.verdict = true;
    return r;
  }
  const std::size_t ncal = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, opt.calibration_levels)), r.rows.size());
  double cal = 0.0;
  for (std::size_t i = 0; i < ncal; ++i) cal = std::max(cal, r.rows[i].ratio);
  r.c_fit = 1.2 * cal;
  r.verdict = true;
  std::vector<double> ratios;
  for (auto& row : r.rows) {
    row.pass = row.ratio <= r.c_fit;
    r.verdict = r.verdict && row.pass;
    ratios.push_back(row.ratio);
  }
  std::sort(ratios.begin(), ratios.end());
  const std::size_t m = ratios.size();
  const double median = m % 2 ? ratios[m / 2] : 0.5 * (ratios[m / 2 - 1] + ratios[m / 2]);
  r.dispersion = median > 0.0 ? ratios.back() / median : std::numeric_limits<double>::infinity();
  std::vector<double> x, y;
  for (const auto& row : r.rows)
    if (row.k >= r.fit_lo && row.k <= r.fit_hi && row.value > 0.0) {
      x.push_back(row.k);
      y.push_back(std::log2(row.value / std::pow(1.0 + std::abs(row.k - k0), log_power)));
    }
  if (x.size() >= 4) {
    r.fit = fit_line(x, y);
    r.fitted = true;
  }
  return r;
}

ScanReport scan(const LPBank& bank, const EulerSnapshot& s, const std::string& quantity, const ScanOptions& opt_in) {
  const QuantitySpec& q = quantity_spec(quantity);
  const TorusGrid& g = bank.grid();
  ScanOptions opt = opt_in;
  if (opt.k_lo > opt.k_hi) fail(ErrorKind::InvalidArgument, "empty k-range");
  if (!(opt.alpha > 0.0 && opt.alpha <= 1.0)) fail(ErrorKind::InvalidArgument, "alpha must lie in (0, 1]");
  if (q.jet_order > 0 && opt.field_kind != "euler")
    fail(ErrorKind::InvalidArgument, "quantity " + quantity + " needs an Euler flow, not a synthetic field");
  if (q.jet_order > s.jet_order()) fail(ErrorKind::InvalidArgument, "quantity " + quantity + " needs a deeper time jet");
  if (opt.k_lo < bank.min_level() + 5 || opt.k_hi + 2 > bank.max_level()) fail(ErrorKind::OutOfRange, "k-range outside the bank");
  if (opt.fit_lo == std::numeric_limits<int>::min()) opt.fit_lo = std::max(opt.k_lo, g.k0 + 2);
  if (opt.fit_hi == std::numeric_limits<int>::min()) opt.fit_hi = std::min(opt.k_hi, g.kmax - 2);
  if (opt.seminorm < 0.0) opt.seminorm = lp_seminorm(bank, s.velocity(), opt.alpha);
  std::vector<int> ks;
  for (int k = opt.k_lo; k <= opt.k_hi; ++k) ks.push_back(k);
  std::vector<double> values(ks.size());
  parallel_for(ks.size(), [&](std::size_t i) { values[i] = quantity_value(bank, s, quantity, ks[i]); });
  return make_report(quantity, ks, values, q.slope_offset + q.slope_alpha * opt.alpha, q.degree, q.log_power, g.k0, opt);
}

void ScanReport::write_csv(std::ostream& out) const {
  out << "k,quantity,field_kind,value,ratio,bound,pass\n";
  out.precision(17);
  for (const auto& row : rows) {
    const double bound = c_fit * row.value / (row.ratio == 0.0 ? 1.0 : row.ratio);
    out << row.k << ',' << quantity << ',' << field_kind << ',' << row.value << ',' << row.ratio << ','
        << (row.ratio == 0.0 ? 0.0 : bound) << ',' << (row.pass ? 1 : 0) << '\n';
  }
}

void ScanReport::write_json(std::ostream& out) const {
  nlohmann::ordered_json j;
  j["schema"] = schema;
  j["quantity"] = quantity;
  j["field_kind"] = field_kind;
  j["alpha"] = alpha;
  j["seminorm"] = seminorm;
  j["degree"] = degree;
  j["log_power"] = log_power;
  j["predicted_slope"] = predicted_slope;
  j["empty"] = empty;
  j["fit"] = {{"fitted", fitted}, {"slope", fit.slope}, {"intercept", fit.intercept}, {"r2", fit.r2},
              {"k_lo", fit_lo},   {"k_hi", fit_hi}};
  j["c_fit"] = c_fit;
  j["dispersion"] = std::isfinite(dispersion) ? nlohmann::ordered_json(dispersion) : nlohmann::ordered_json("inf");
  j["verdict"] = verdict ? "pass" : "fail";
  auto& rs = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) rs.push_back({{"k", row.k}, {"value", row.value}, {"ratio", row.ratio}, {"pass", row.pass}});
  out << j.dump(2) << '\n';
}

TimeExponent holder_time_exponent(const std::vector<double>& values, double spacing, double rel_tol) {
  if (values.size() < 64) fail(ErrorKind::InvalidArgument, "need at least 64 samples");
  TimeExponent t;
  double lo = values.front(), hi = values.front(), mag = 0.0;
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    mag = std::max(mag, std::abs(v));
  }
  if (hi - lo <= rel_tol * mag) {
    t.conserved = true;
    t.exponent = std::numeric_limits<double>::infinity();
    return t;
  }
  for (std::size_t m = 1; 2 * m <= values.size() - 1; m *= 2) {
    double best = 0.0;
    for (std::size_t i = 0; i + m < values.size(); ++i) best = std::max(best, std::abs(values[i + m] - values[i]));
    t.lags.push_back(m * spacing);
    t.increments.push_back(best);
  }
  const std::size_t L = t.lags.size();
  const std::size_t take = std::min<std::size_t>(4, L);
  const std::size_t start = (L - take) / 2;
  std::vector<double> x, y;
  for (std::size_t i = start; i < start + take; ++i) {
    x.push_back(std::log(t.lags[i]));
    y.push_back(std::log(std::max(t.increments[i], 1e-300)));
  }
  t.fit = fit_line(x, y);
  t.exponent = t.fit.slope;
  return t;
}

TimeHolderReport time_holder_field(const LPBank& bank, const SnapshotSeries& s, double alpha) {
  if (s.size() < 16) fail(ErrorKind::InvalidArgument, "need at least 16 snapshots");
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorKind::InvalidArgument, "alpha must lie in (0, 1]");
  TimeHolderReport r;
  r.alpha = alpha;
  std::vector<double> c0(s.size()), semi(s.size());
  parallel_for(s.size(), [&](std::size_t i) {
    c0[i] = sup_norm(s.velocities[i]);
    semi[i] = lp_seminorm(bank, s.velocities[i], alpha);
  });
  r.norm_combination = std::pow(*std::max_element(c0.begin(), c0.end()), alpha) * *std::max_element(semi.begin(), semi.end());
  std::vector<std::size_t> lags;
  for (std::size_t m = 1; 4 * m <= s.size(); m *= 2) lags.push_back(m);
  r.max_differences.assign(lags.size(), 0.0);
  for (std::size_t li = 0; li < lags.size(); ++li) {
    const std::size_t m = lags[li];
    std::vector<double> d(s.size() - m);
    parallel_for(d.size(), [&](std::size_t i) { d[i] = sup_norm(s.velocities[i + m] - s.velocities[i]); });
    r.max_differences[li] = *std::max_element(d.begin(), d.end());
    r.lags.push_back(m * s.spacing());
  }
  const double vmax = *std::max_element(c0.begin(), c0.end());
  r.zero = *std::max_element(r.max_differences.begin(), r.max_differences.end()) <= 1e-12 * vmax;
  for (std::size_t li = 0; li < lags.size(); ++li) {
    const double denom = std::pow(r.lags[li], alpha) * (r.norm_combination > 0 ? r.norm_combination : 1.0);
    r.constants.push_back(r.max_differences[li] / denom);
  }
  r.raw_constant = r.max_differences.front() / std::pow(r.lags.front(), alpha);
  r.c_all = *std::max_element(r.constants.begin(), r.constants.end());
  r.c_coarse = r.constants.size() > 1 ? *std::max_element(r.constants.begin() + 1, r.constants.end()) : r.c_all;
  r.stable = r.zero || (r.c_coarse > 0 && std::abs(r.c_all / r.c_coarse - 1.0) <= 0.3);
  return r;
}

std::vector<double> default_lags(const TorusGrid& g) {
  std::vector<double> out;
  for (double l = 4 * g.spacing(); l <= std::numbers::pi / 2 + 1e-12; l *= 2) out.push_back(l);
  return out;
}

std::vector<StructureRow> structure_function(const VecField& v, const std::vector<int>& orders,
                                             const std::vector<double>& lags) {
  for (int p : orders)
    if (p < 2 || p > 4) fail(ErrorKind::InvalidArgument, "structure function order must be 2, 3 or 4");
  const TorusGrid& g = v.grid();
  std::vector<StructureRow> out;
  for (double lag : lags) {
    // sums[p][direction] of |dv|^p averaged over the grid
    std::vector<std::vector<double>> per_dir(orders.size(), std::vector<double>(8));
    parallel_for(8, [&](std::size_t d) {
      const double theta = d * std::numbers::pi / 4;
      const double a1 = lag * std::cos(theta), a2 = lag * std::sin(theta);
      auto shift = [&](int xi1, int xi2) { return std::polar(1.0, xi1 * a1 + xi2 * a2); };
      const Field s1 = apply_multiplier(v[0], shift) - v[0];
      const Field s2 = apply_multiplier(v[1], shift) - v[1];
      std::vector<double> mag(g.points());
      for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::hypot(s1.physical()[i], s2.physical()[i]);
      for (std::size_t pi = 0; pi < orders.size(); ++pi) {
        std::vector<double> pw(mag.size());
        for (std::size_t i = 0; i < mag.size(); ++i) pw[i] = std::pow(mag[i], orders[pi]);
        per_dir[pi][d] = pairwise_sum(pw) / static_cast<double>(pw.size());
      }
    });
    for (std::size_t pi = 0; pi < orders.size(); ++pi)
      out.push_back({orders[pi], lag, std::pow(pairwise_sum(per_dir[pi]) / 8.0, 1.0 / orders[pi])});
  }
  return out;
}

}  // namespace lpflow
