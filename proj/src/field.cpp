#include "lpflow/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lpflow/error.hpp"
#include "lpflow/fft.hpp"

namespace lpflow {
namespace {

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) fail(ErrorKind::InvalidArgument, "fields live on different grids");
}

// Makes the xi1 = 0 and xi1 = n/2 columns conjugate-symmetric in xi2.
void symmetrize_real_columns(const TorusGrid& g, std::vector<cplx>& c) {
  const int h = g.half();
  for (int col : {0, g.n / 2}) {
    for (int i2 = 0; i2 < g.n; ++i2) {
      const int j2 = (g.n - i2) % g.n;
      if (j2 < i2) continue;
      cplx& a = c[static_cast<std::size_t>(i2) * h + col];
      cplx& b = c[static_cast<std::size_t>(j2) * h + col];
      if (i2 == j2) {
        a = cplx(a.real(), 0.0);
      } else {
        const cplx avg = 0.5 * (a + std::conj(b));
        a = avg;
        b = std::conj(avg);
      }
    }
  }
}

cplx i_power(int a) {
  switch (((a % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

Field Field::from_physical(const TorusGrid& grid, std::vector<double> samples) {
  if (samples.size() != grid.points())
    fail(ErrorKind::InvalidArgument, "sample count does not match grid");
  Field f;
  f.grid_ = grid;
  f.spectral_.resize(grid.modes());
  fft::forward(grid.n, samples, f.spectral_);
  const double scale = 1.0 / static_cast<double>(grid.points());
  for (auto& c : f.spectral_) c *= scale;
  f.physical_ = std::move(samples);
  return f;
}

Field Field::from_spectral(const TorusGrid& grid, std::vector<cplx> coeffs) {
  if (coeffs.size() != grid.modes())
    fail(ErrorKind::InvalidArgument, "coefficient count does not match grid");
  symmetrize_real_columns(grid, coeffs);
  Field f;
  f.grid_ = grid;
  f.physical_.resize(grid.points());
  fft::inverse(grid.n, coeffs, f.physical_);
  f.spectral_ = std::move(coeffs);
  return f;
}

Field Field::zeros(const TorusGrid& grid) { return constant(grid, 0.0); }

Field Field::constant(const TorusGrid& grid, double value) {
  Field f;
  f.grid_ = grid;
  f.physical_.assign(grid.points(), value);
  f.spectral_.assign(grid.modes(), cplx{});
  f.spectral_[0] = value;
  return f;
}

cplx Field::coefficient(int xi1, int xi2) const {
  const int n = grid_.n;
  if (xi1 < 0) return std::conj(coefficient(-xi1, -xi2));
  if (xi1 > n / 2 || xi2 < -n / 2 || xi2 >= n / 2) return {};
  const int row = (xi2 + n) % n;
  return spectral_[static_cast<std::size_t>(row) * grid_.half() + xi1];
}

Field Field::operator-() const {
  Field r = *this;
  r *= -1.0;
  return r;
}

Field& Field::operator+=(const Field& o) {
  require_same_grid(*this, o);
  for (std::size_t i = 0; i < physical_.size(); ++i) physical_[i] += o.physical_[i];
  for (std::size_t i = 0; i < spectral_.size(); ++i) spectral_[i] += o.spectral_[i];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  require_same_grid(*this, o);
  for (std::size_t i = 0; i < physical_.size(); ++i) physical_[i] -= o.physical_[i];
  for (std::size_t i = 0; i < spectral_.size(); ++i) spectral_[i] -= o.spectral_[i];
  return *this;
}

Field& Field::operator*=(double s) {
  for (auto& x : physical_) x *= s;
  for (auto& c : spectral_) c *= s;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }
Field operator*(Field a, double s) { return a *= s; }

Field derivative(const Field& f, MultiIndex alpha) {
  if (alpha.a1 < 0 || alpha.a2 < 0) fail(ErrorKind::InvalidArgument, "negative derivative order");
  if (alpha.order() == 0) return f;
  const int nyq = f.grid().n / 2;
  const cplx phase = i_power(alpha.order());
  return apply_multiplier(f, [&](int xi1, int xi2) -> cplx {
    if ((alpha.a1 % 2 == 1 && xi1 == nyq) || (alpha.a2 % 2 == 1 && xi2 == -nyq)) return {};
    return phase * std::pow(static_cast<double>(xi1), alpha.a1) * std::pow(static_cast<double>(xi2), alpha.a2);
  });
}

Field inverse_laplacian(const Field& f) {
  return apply_multiplier(f, [](int xi1, int xi2) {
    const double k2 = static_cast<double>(xi1) * xi1 + static_cast<double>(xi2) * xi2;
    return k2 == 0.0 ? 0.0 : -1.0 / k2;
  });
}

std::vector<double> oversample(const Field& f) {
  const TorusGrid& g = f.grid();
  const int n = g.n;
  const int m = 2 * n;
  const int hm = m / 2 + 1;
  std::vector<cplx> padded(static_cast<std::size_t>(m) * hm);
  auto in = f.spectral();
  for (int i2 = 0; i2 < n; ++i2) {
    const int xi2 = g.row_wavenumber(i2);
    if (xi2 == -n / 2) continue;
    const int row = (xi2 + m) % m;
    for (int i1 = 0; i1 < n / 2; ++i1)
      padded[static_cast<std::size_t>(row) * hm + i1] = in[static_cast<std::size_t>(i2) * g.half() + i1];
  }
  std::vector<double> out(static_cast<std::size_t>(m) * m);
  fft::inverse(m, padded, out);
  return out;
}

Field from_oversampled(const TorusGrid& g, std::span<const double> samples) {
  const int n = g.n;
  const int m = 2 * n;
  const int hm = m / 2 + 1;
  if (samples.size() != static_cast<std::size_t>(m) * m)
    fail(ErrorKind::InvalidArgument, "oversampled size mismatch");
  std::vector<cplx> big(static_cast<std::size_t>(m) * hm);
  fft::forward(m, samples, big);
  const double scale = 1.0 / (static_cast<double>(m) * m);
  std::vector<cplx> out(g.modes());
  for (int i2 = 0; i2 < n; ++i2) {
    const int xi2 = g.row_wavenumber(i2);
    if (xi2 == -n / 2) continue;
    const int row = (xi2 + m) % m;
    for (int i1 = 0; i1 < n / 2; ++i1)
      out[static_cast<std::size_t>(i2) * g.half() + i1] = big[static_cast<std::size_t>(row) * hm + i1] * scale;
  }
  return Field::from_spectral(g, std::move(out));
}

Field multiply(const Field& a, const Field& b) {
  const ProductTerm t{&a, &b, 1.0};
  return sum_of_products(std::span<const ProductTerm>(&t, 1));
}

Field sum_of_products(std::span<const ProductTerm> terms) {
  if (terms.empty()) fail(ErrorKind::InvalidArgument, "empty product sum");
  const TorusGrid& g = terms.front().a->grid();
  std::vector<double> acc(static_cast<std::size_t>(4) * g.points(), 0.0);
  for (const auto& t : terms) {
    require_same_grid(*t.a, *t.b);
    require_same_grid(*t.a, *terms.front().a);
    if (t.coeff == 0.0) continue;
    const std::vector<double> pa = oversample(*t.a);
    if (t.a == t.b) {
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += t.coeff * pa[i] * pa[i];
    } else {
      const std::vector<double> pb = oversample(*t.b);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += t.coeff * pa[i] * pb[i];
    }
  }
  return from_oversampled(g, acc);
}

Field dealias(const Field& f) {
  const int cut = f.grid().dealias_cutoff();
  return apply_multiplier(f, [cut](int xi1, int xi2) { return (xi1 <= cut && std::abs(xi2) <= cut) ? 1.0 : 0.0; });
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t mid = v.size() / 2;
  return pairwise_sum(v.subspan(0, mid)) + pairwise_sum(v.subspan(mid));
}

double integral(const Field& f) { return f.grid().area() * f.mean(); }

double inner(const Field& f, const Field& g) {
  require_same_grid(f, g);
  const TorusGrid& grid = f.grid();
  const int h = grid.half();
  std::vector<double> terms(grid.modes());
  auto a = f.spectral();
  auto b = g.spectral();
  for (int i2 = 0; i2 < grid.n; ++i2)
    for (int i1 = 0; i1 < h; ++i1) {
      const std::size_t idx = static_cast<std::size_t>(i2) * h + i1;
      const double w = (i1 == 0 || i1 == grid.n / 2) ? 1.0 : 2.0;
      terms[idx] = w * (a[idx] * std::conj(b[idx])).real();
    }
  return grid.area() * pairwise_sum(terms);
}

double sup_norm(const Field& f) {
  const std::vector<double> s = oversample(f);
  double m = 0.0;
  for (double x : s) m = std::max(m, std::abs(x));
  return m;
}

double sup_norm(std::span<const Field> components, std::span<const double> weights) {
  if (components.empty()) return 0.0;
  std::vector<double> acc;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const double w = weights.empty() ? 1.0 : weights[c];
    const std::vector<double> s = oversample(components[c]);
    if (acc.empty()) acc.assign(s.size(), 0.0);
    for (std::size_t i = 0; i < s.size(); ++i) acc[i] += w * s[i] * s[i];
  }
  double m = 0.0;
  for (double x : acc) m = std::max(m, x);
  return std::sqrt(m);
}

VecField& VecField::operator+=(const VecField& o) {
  c[0] += o.c[0];
  c[1] += o.c[1];
  return *this;
}
VecField& VecField::operator-=(const VecField& o) {
  c[0] -= o.c[0];
  c[1] -= o.c[1];
  return *this;
}
VecField& VecField::operator*=(double s) {
  c[0] *= s;
  c[1] *= s;
  return *this;
}
VecField operator+(VecField a, const VecField& b) { return a += b; }
VecField operator-(VecField a, const VecField& b) { return a -= b; }
VecField operator*(double s, VecField a) { return a *= s; }

Field divergence(const VecField& v) { return derivative(v[0], {1, 0}) + derivative(v[1], {0, 1}); }

VecField gradient(const Field& f) { return {{derivative(f, {1, 0}), derivative(f, {0, 1})}}; }

Field curl(const VecField& v) { return derivative(v[1], {1, 0}) - derivative(v[0], {0, 1}); }

VecField perp_gradient(const Field& psi) { return {{-derivative(psi, {0, 1}), derivative(psi, {1, 0})}}; }

VecField leray_project(const VecField& v) {
  const TorusGrid& g = v.grid();
  const int h = g.half();
  const int nyq = g.n / 2;
  std::vector<cplx> o1(g.modes()), o2(g.modes());
  auto a = v[0].spectral();
  auto b = v[1].spectral();
  for (int i2 = 0; i2 < g.n; ++i2) {
    const int xi2 = g.row_wavenumber(i2);
    for (int i1 = 0; i1 < h; ++i1) {
      const std::size_t idx = static_cast<std::size_t>(i2) * h + i1;
      if (i1 == nyq || xi2 == -nyq) continue;
      const double k2 = static_cast<double>(i1) * i1 + static_cast<double>(xi2) * xi2;
      if (k2 == 0.0) {
        o1[idx] = a[idx];
        o2[idx] = b[idx];
        continue;
      }
      const cplx dot = (static_cast<double>(i1) * a[idx] + static_cast<double>(xi2) * b[idx]) / k2;
      o1[idx] = a[idx] - static_cast<double>(i1) * dot;
      o2[idx] = b[idx] - static_cast<double>(xi2) * dot;
    }
  }
  return {{Field::from_spectral(g, std::move(o1)), Field::from_spectral(g, std::move(o2))}};
}

Field advect(const VecField& a, const Field& b) {
  const Field b1 = derivative(b, {1, 0});
  const Field b2 = derivative(b, {0, 1});
  const ProductTerm terms[] = {{&a[0], &b1, 1.0}, {&a[1], &b2, 1.0}};
  return sum_of_products(terms);
}

VecField advect(const VecField& a, const VecField& b) { return {{advect(a, b[0]), advect(a, b[1])}}; }

double sup_norm(const VecField& v) { return sup_norm(std::span<const Field>(v.c)); }

double gradient_sup_norm(const VecField& v) {
  const Field parts[] = {derivative(v[0], {1, 0}), derivative(v[0], {0, 1}), derivative(v[1], {1, 0}),
                         derivative(v[1], {0, 1})};
  return sup_norm(parts);
}

bool is_divergence_free(const VecField& v, double tol) {
  const Field d = divergence(v);
  double m = 0.0;
  for (double x : d.physical()) m = std::max(m, std::abs(x));
  return m <= tol * (gradient_sup_norm(v) + 1.0);
}

void require_divergence_free(const VecField& v, const char* where) {
  if (!is_divergence_free(v))
    fail(ErrorKind::NotDivergenceFree, std::string(where) + ": velocity is not divergence free");
}

DerivativeSet derivatives_of_order(const Field& f, int order) {
  DerivativeSet set;
  double binom = 1.0;
  for (int a2 = 0; a2 <= order; ++a2) {
    set.fields.push_back(derivative(f, {order - a2, a2}));
    set.weights.push_back(binom);
    binom = binom * (order - a2) / (a2 + 1);
  }
  return set;
}

}  // namespace lpflow
