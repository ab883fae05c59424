#include "lpflow/commutator.hpp"

#include <cmath>
#include <ostream>

#include "lpflow/error.hpp"
#include "lpflow/holder.hpp"
#include "lpflow/parallel.hpp"
#include "lpflow/rough_synth.hpp"

namespace lpflow {

namespace {

constexpr MultiIndex kAxis[2] = {{1, 0}, {0, 1}};

MultiIndex sum_index(MultiIndex a, MultiIndex b) { return {a.a1 + b.a1, a.a2 + b.a2}; }

// S_i g = -d_i T g
Field s1(const LPBank& bank, const ConvOp& op, const Field& g, int i) {
  return -1.0 * derivative(op.apply(bank, g), kAxis[i]);
}

// S_ij g = d_i d_j T g
Field s2(const LPBank& bank, const ConvOp& op, const Field& g, int i, int j) {
  return derivative(op.apply(bank, g), sum_index(kAxis[i], kAxis[j]));
}

// sum_i S_i(a^i f) - a^i S_i f
Field difference_form(const LPBank& bank, const ConvOp& op, const VecField& a, const Field& f) {
  Field out = Field::zeros(f.grid());
  for (int i = 0; i < 2; ++i) {
    out = out + s1(bank, op, multiply(a[i], f), i);
    out = out - multiply(a[i], s1(bank, op, f, i));
  }
  return out;
}

}  // namespace

Field ConvOp::apply(const LPBank& bank, const Field& f) const {
  Field out = bank.kernel_op(f, k, symbol, component);
  return scale == 1.0 ? out : scale * out;
}

ConvOp normalized_op(Symbol s, int k) {
  ConvOp op;
  op.k = k;
  op.symbol = s;
  const int d = symbol_derivative_order(s);
  op.component = d == 0 ? MultiIndex{} : d == 1 ? MultiIndex{1, 0} : MultiIndex{1, 1};
  op.scale = std::exp2(-symbol_homogeneity(s) * k);
  return op;
}

std::vector<MomentEntry> moment_table(const LPBank& bank, const ConvOp& op, int max_total) {
  std::vector<MomentEntry> out;
  for (int m = 0; m <= max_total; ++m)
    for (int A = 0; m + A <= max_total; ++A)
      out.push_back({m, A, std::abs(op.scale) * bank.kernel_moment(op.k, op.symbol, m, A)});
  return out;
}

Field commutator_direct(const LPBank& bank, const VecJet& u, const ConvOp& op, const FieldJet& f) {
  u.require_order(1, "commutator_direct");
  f.require_order(1, "commutator_direct");
  const FieldJet tf = map(f, [&](const Field& x) { return op.apply(bank, x); });
  return material_derivative_value(u, tf, 1) - op.apply(bank, material_derivative_value(u, f, 1));
}

Field commutator_kernel(const LPBank& bank, const VecField& u, const ConvOp& op, const Field& f) {
  require_divergence_free(u, "commutator_kernel");
  return difference_form(bank, op, u, f);
}

Field SecondCommutator::total() const { return t_i - t_ii + t_iii1 + t_iii2; }

SecondCommutator commutator_second(const LPBank& bank, const EulerSnapshot& s, int I, const ConvOp& op,
                                   const Field& f) {
  const VecField& v = s.velocity();
  const VecField u = bank.leq(v, I);
  const VecField a = divergence(reynolds_stress(bank, v, I)) - gradient(bank.leq(s.pressure(), I));
  SecondCommutator out;
  out.t_i = difference_form(bank, op, a, f);

  // int d_h u^j g^i(x+h) d_i K with g^i = d_j u^i f, summed over i and j.
  auto transport_term = [&] {
    Field acc = Field::zeros(f.grid());
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const Field g = multiply(derivative(u[i], kAxis[j]), f);
        acc = acc + s1(bank, op, multiply(u[j], g), i) - multiply(u[j], s1(bank, op, g, i));
      }
    return acc;
  };
  out.t_ii = transport_term();
  out.t_iii1 = transport_term();

  Field q = Field::zeros(f.grid());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Field uif = multiply(u[i], f);
      const Field ujf = multiply(u[j], f);
      q = q + s2(bank, op, multiply(u[i], ujf), i, j);
      q = q - multiply(u[i], s2(bank, op, ujf, i, j));
      q = q - multiply(u[j], s2(bank, op, uif, i, j));
      q = q + multiply(multiply(u[i], u[j]), s2(bank, op, f, i, j));
    }
  out.t_iii2 = q;
  return out;
}

Field second_commutator_oracle(const LPBank& bank, const VecJet& u, const ConvOp& op, const FieldJet& f) {
  u.require_order(2, "second_commutator_oracle");
  f.require_order(2, "second_commutator_oracle");
  auto T = [&](const Field& x) { return op.apply(bank, x); };
  const Field ddt = material_derivative_value(u, map(f, T), 2);
  const Field dtd = material_derivative_value(u, map(material_derivative(u, f), T), 1);
  const Field tdd = T(material_derivative_value(u, f, 2));
  return ddt - 2.0 * dtd + tdd;
}

Field probe_field(const TorusGrid& g, int top, std::uint64_t seed) {
  NormalStream noise(seed);
  std::vector<cplx> c(g.modes());
  for (int i2 = 0; i2 < g.n; ++i2) {
    const int xi2 = g.row_wavenumber(i2);
    for (int i1 = 0; i1 < g.half(); ++i1) {
      const double a = noise.next(), b = noise.next();
      if (i1 * i1 + xi2 * xi2 <= top * top && (i1 || xi2)) c[static_cast<std::size_t>(i2) * g.half() + i1] = cplx(a, b);
    }
  }
  const Field f = Field::from_spectral(g, std::move(c));
  return (1.0 / sup_norm(f)) * f;
}

CommutatorScan commutator_norm_scan(const LPBank& bank, const EulerSnapshot& s, Symbol symbol,
                                    const CommutatorScanOptions& opt_in) {
  if (opt_in.r != 1 && opt_in.r != 2) fail(ErrorKind::InvalidArgument, "commutator order r must be 1 or 2");
  if (opt_in.A != 0 && opt_in.A != 1) fail(ErrorKind::InvalidArgument, "derivative count A must be 0 or 1");
  if (opt_in.k_lo > opt_in.k_hi) fail(ErrorKind::InvalidArgument, "empty k-range");
  if (opt_in.probes < 1) fail(ErrorKind::InvalidArgument, "need at least one probe");
  if (!(opt_in.alpha > 0.0 && opt_in.alpha <= 1.0)) fail(ErrorKind::InvalidArgument, "alpha must lie in (0, 1]");
  const TorusGrid& g = bank.grid();
  if (opt_in.k_lo < bank.min_level() + 5 || opt_in.k_hi > g.kmax)
    fail(ErrorKind::OutOfRange, "commutator scan levels must lie below kmax");

  ScanOptions opt;
  opt.k_lo = opt_in.k_lo;
  opt.k_hi = opt_in.k_hi;
  opt.alpha = opt_in.alpha;
  opt.field_kind = opt_in.field_kind;
  opt.calibration_levels = opt_in.calibration_levels;
  opt.fit_lo = opt_in.fit_lo == std::numeric_limits<int>::min() ? std::max(opt.k_lo, g.k0 + 2) : opt_in.fit_lo;
  opt.fit_hi = opt_in.fit_hi == std::numeric_limits<int>::min() ? std::min(opt.k_hi, g.kmax - 2) : opt_in.fit_hi;
  opt.seminorm = opt_in.seminorm < 0.0 ? lp_seminorm(bank, s.velocity(), opt.alpha) : opt_in.seminorm;

  std::vector<int> ks;
  for (int k = opt.k_lo; k <= opt.k_hi; ++k) ks.push_back(k);
  std::vector<double> values(ks.size()), bounds(ks.size());
  parallel_for(ks.size(), [&](std::size_t idx) {
    const int k = ks[idx];
    const ConvOp op = normalized_op(symbol, k);
    const VecField u = bank.leq(s.velocity(), k);
    // Probes reach |xi| <= 2^{k+1}, every mode a level-k commutator can see.
    const int top = std::min(1 << (k + 1), g.n / 4);
    double best = 0.0;
    for (int p = 0; p < opt_in.probes; ++p) {
      const Field f = probe_field(g, top, mix_seed(opt_in.seed, static_cast<std::uint64_t>(k) * 1024 + p));
      const Field c = opt_in.r == 1 ? commutator_kernel(bank, u, op, f) : commutator_second(bank, s, k, op, f).total();
      best = std::max(best, opt_in.A == 0 ? sup_norm(c) : sup_norm(gradient(c)));
    }
    values[idx] = best;
    if (opt_in.A != 0) {
      bounds[idx] = std::nan("");
      return;
    }
    const double m1 = std::abs(op.scale) * bank.kernel_moment(k, symbol, 1, 0);
    const double gu = gradient_sup_norm(u);
    if (opt_in.r == 1) {
      bounds[idx] = gu * m1;
    } else {
      const VecField a = divergence(reynolds_stress(bank, s.velocity(), k)) - gradient(bank.leq(s.pressure(), k));
      const double m2 = std::abs(op.scale) * bank.kernel_moment(k, symbol, 2, 0);
      bounds[idx] = gradient_sup_norm(a) * m1 + gu * gu * m2;
    }
  });

  CommutatorScan out;
  out.r = opt_in.r;
  out.A = opt_in.A;
  const std::string name = std::string("comm_r") + std::to_string(opt_in.r) + "_A" + std::to_string(opt_in.A) + "_" +
                           symbol_name(symbol);
  out.report = make_report(name, ks, values, opt_in.A + opt_in.r * (1.0 - opt.alpha), opt_in.r, 0, g.k0, opt);
  out.l1_bounds = std::move(bounds);
  return out;
}

void CommutatorScan::write_csv(std::ostream& out) const {
  out << "k,r,A,surrogate_norm,l1_bound\n";
  out.precision(17);
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    out << report.rows[i].k << ',' << r << ',' << A << ',' << report.rows[i].value << ',';
    if (!std::isnan(l1_bounds[i])) out << l1_bounds[i];
    out << '\n';
  }
}

}  // namespace lpflow
