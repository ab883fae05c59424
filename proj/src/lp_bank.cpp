#include "lpflow/lp_bank.hpp"

#include <cmath>
#include <ostream>

#include "lpflow/error.hpp"
#include "lpflow/fft.hpp"

namespace lpflow {
namespace {

double g(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

double radial_leq(int k, double r) { return lp_profile(r / std::ldexp(1.0, k)); }

cplx i_power(int a) {
  static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((a % 4) + 4) % 4];
}

struct SymbolParts {
  bool shell;       // P_k rather than P_{<=k}
  bool inv_lap;     // times -1/|xi|^2
  int derivatives;  // extra spatial derivatives
};

SymbolParts parts_of(Symbol s) {
  switch (s) {
    case Symbol::InvLapShell: return {true, true, 0};
    case Symbol::GradInvLapShell: return {true, true, 1};
    case Symbol::HessInvLapShell: return {true, true, 2};
    case Symbol::InvLapHessLow: return {false, true, 2};
    case Symbol::Mollifier: return {false, false, 0};
    case Symbol::GradMollifier: return {false, false, 1};
  }
  fail(ErrorKind::InvalidArgument, "unsupported symbol");
}

// Physical samples of all order-`order` partials of the kernel with radial
// part m0, on an m x m grid, together with their multiplicities.
std::vector<std::pair<std::vector<double>, double>> kernel_partials(int m, int order,
                                                                     const std::function<double(double)>& m0) {
  const int hm = m / 2 + 1;
  const double norm = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);
  std::vector<std::pair<std::vector<double>, double>> out;
  double weight = 1.0;
  for (int a2 = 0; a2 <= order; ++a2) {
    const int a1 = order - a2;
    std::vector<cplx> spec(static_cast<std::size_t>(m) * hm);
    for (int i2 = 0; i2 < m; ++i2) {
      const int xi2 = i2 < m / 2 ? i2 : i2 - m;
      if (xi2 == -m / 2) continue;
      for (int i1 = 0; i1 < m / 2; ++i1) {
        const double r = std::hypot(static_cast<double>(i1), static_cast<double>(xi2));
        const double base = m0(r);
        if (base == 0.0) continue;
        spec[static_cast<std::size_t>(i2) * hm + i1] =
            norm * base * i_power(order) * std::pow(static_cast<double>(i1), a1) * std::pow(static_cast<double>(xi2), a2);
      }
    }
    std::vector<double> phys(static_cast<std::size_t>(m) * m);
    fft::inverse(m, spec, phys);
    out.emplace_back(std::move(phys), weight);
    weight = weight * (order - a2) / (a2 + 1);
  }
  return out;
}

}  // namespace

double lp_profile(double r) {
  if (r <= 0.5) return 1.0;
  if (r >= 1.0) return 0.0;
  const double a = g(2.0 - 2.0 * r);
  const double b = g(2.0 * r - 1.0);
  return a / (a + b);
}

const char* symbol_name(Symbol s) {
  switch (s) {
    case Symbol::InvLapShell: return "inv_lap_shell";
    case Symbol::GradInvLapShell: return "grad_inv_lap_shell";
    case Symbol::HessInvLapShell: return "hess_inv_lap_shell";
    case Symbol::InvLapHessLow: return "inv_lap_hess_low";
    case Symbol::Mollifier: return "mollifier";
    case Symbol::GradMollifier: return "grad_mollifier";
  }
  return "?";
}

Symbol parse_symbol(const std::string& name) {
  for (Symbol s : {Symbol::InvLapShell, Symbol::GradInvLapShell, Symbol::HessInvLapShell, Symbol::InvLapHessLow,
                   Symbol::Mollifier, Symbol::GradMollifier})
    if (name == symbol_name(s)) return s;
  fail(ErrorKind::InvalidArgument, "unsupported symbol '" + name + "'");
}

int symbol_derivative_order(Symbol s) { return parts_of(s).derivatives; }

int symbol_homogeneity(Symbol s) {
  const SymbolParts p = parts_of(s);
  return p.derivatives - (p.inv_lap ? 2 : 0);
}

LPBank::LPBank(const TorusGrid& grid) : grid_(grid), kmin_(grid.k0 - 6), kmax_(grid.kspatial + 2) {
  if (grid.kmax > grid.kspatial || std::ldexp(1.0, grid.kmax + 1) > grid.n / 3.0)
    fail(ErrorKind::InvalidArgument, "kmax exceeds the dealiased band");
  const int h = grid.half();
  for (int k = kmin_; k <= kmax_; ++k) {
    std::vector<double> m(grid.modes());
    for (int i2 = 0; i2 < grid.n; ++i2) {
      const int xi2 = grid.row_wavenumber(i2);
      for (int i1 = 0; i1 < h; ++i1)
        m[static_cast<std::size_t>(i2) * h + i1] = radial_leq(k, std::hypot(static_cast<double>(i1), static_cast<double>(xi2)));
    }
    low_pass_.push_back(std::move(m));
  }
}

void LPBank::check_level(int k) const {
  if (k < kmin_ || k > kmax_)
    fail(ErrorKind::OutOfRange, "level " + std::to_string(k) + " outside bank range [" + std::to_string(kmin_) + ", " +
                                    std::to_string(kmax_) + "]");
}

const std::vector<double>& LPBank::low_pass(int k) const {
  check_level(k);
  return low_pass_[static_cast<std::size_t>(k - kmin_)];
}

namespace {
Field apply_table(const Field& f, const std::vector<double>& a, const std::vector<double>* b) {
  std::vector<cplx> out(f.spectral().begin(), f.spectral().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= b ? a[i] - (*b)[i] : a[i];
  return Field::from_spectral(f.grid(), std::move(out));
}
}  // namespace

Field LPBank::leq(const Field& f, int k) const { return apply_table(f, low_pass(k), nullptr); }

Field LPBank::shell(const Field& f, int k) const {
  check_level(k - 1);
  return apply_table(f, low_pass(k), &low_pass(k - 1));
}

Field LPBank::band(const Field& f, int k1, int k2) const {
  if (k1 > k2) return Field::zeros(f.grid());
  check_level(k1 - 1);
  return apply_table(f, low_pass(k2), &low_pass(k1 - 1));
}

Field LPBank::mean(const Field& f) const { return Field::constant(f.grid(), f.mean()); }

VecField LPBank::leq(const VecField& v, int k) const { return {{leq(v[0], k), leq(v[1], k)}}; }
VecField LPBank::shell(const VecField& v, int k) const { return {{shell(v[0], k), shell(v[1], k)}}; }
VecField LPBank::band(const VecField& v, int k1, int k2) const { return {{band(v[0], k1, k2), band(v[1], k1, k2)}}; }

Field LPBank::kernel_op(const Field& f, int k, Symbol s, MultiIndex comp) const {
  const SymbolParts p = parts_of(s);
  if (comp.a1 < 0 || comp.a2 < 0 || comp.order() != p.derivatives)
    fail(ErrorKind::InvalidArgument, std::string("component order does not match symbol ") + symbol_name(s));
  const std::vector<double>& hi = low_pass(k);
  const std::vector<double>* lo = p.shell ? &low_pass(k - 1) : nullptr;
  const int h = grid_.half();
  const int nyq = grid_.n / 2;
  const cplx phase = i_power(comp.order());
  std::vector<cplx> out(f.spectral().begin(), f.spectral().end());
  for (int i2 = 0; i2 < grid_.n; ++i2) {
    const int xi2 = grid_.row_wavenumber(i2);
    for (int i1 = 0; i1 < h; ++i1) {
      const std::size_t idx = static_cast<std::size_t>(i2) * h + i1;
      double m = lo ? hi[idx] - (*lo)[idx] : hi[idx];
      if (p.inv_lap) {
        const double k2 = static_cast<double>(i1) * i1 + static_cast<double>(xi2) * xi2;
        m = k2 == 0.0 ? 0.0 : -m / k2;
      }
      if ((comp.a1 % 2 == 1 && i1 == nyq) || (comp.a2 % 2 == 1 && xi2 == -nyq)) m = 0.0;
      out[idx] *= m * phase * std::pow(static_cast<double>(i1), comp.a1) * std::pow(static_cast<double>(xi2), comp.a2);
    }
  }
  return Field::from_spectral(grid_, std::move(out));
}

double LPBank::kernel_l1_norm(int k, Symbol s, int D) const { return kernel_moment(k, s, 0, D); }

double LPBank::kernel_moment(int k, Symbol s, int m, int A) const {
  if (m < 0 || A < 0) fail(ErrorKind::InvalidArgument, "negative moment order");
  check_level(k);
  const SymbolParts p = parts_of(s);
  auto radial = [k, p](double r) {
    double v = radial_leq(k, r) - (p.shell ? radial_leq(k - 1, r) : 0.0);
    if (p.inv_lap) v = r == 0.0 ? 0.0 : -v / (r * r);
    return v;
  };
  const int M = 2 * grid_.n;
  const auto partials = kernel_partials(M, p.derivatives + m + A, radial);
  const double dx = grid_.length / M;
  std::vector<double> pointwise(static_cast<std::size_t>(M) * M);
  for (int i2 = 0; i2 < M; ++i2) {
    const double y = std::min(i2, M - i2) * dx;
    for (int i1 = 0; i1 < M; ++i1) {
      const double x = std::min(i1, M - i1) * dx;
      const std::size_t idx = static_cast<std::size_t>(i2) * M + i1;
      double acc = 0.0;
      for (const auto& [vals, w] : partials) acc += w * vals[idx] * vals[idx];
      pointwise[idx] = std::pow(std::hypot(x, y), m) * std::sqrt(acc);
    }
  }
  return pairwise_sum(pointwise) * dx * dx;
}

void LPBank::write_kernel_table(std::ostream& out, int k_lo, int k_hi, const std::vector<Symbol>& symbols,
                                int max_d) const {
  out << "k,symbol,D,l1_norm\n";
  out.precision(17);
  for (int k = k_lo; k <= k_hi; ++k)
    for (Symbol s : symbols)
      for (int d = 0; d <= max_d; ++d) out << k << ',' << symbol_name(s) << ',' << d << ',' << kernel_l1_norm(k, s, d) << '\n';
}

}  // namespace lpflow
