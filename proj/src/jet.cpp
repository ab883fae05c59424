#include "lpflow/jet.hpp"

#include <algorithm>

namespace lpflow {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

VecJet velocity_time_jet(const VecField& v, int order) {
  if (order < 0) fail(ErrorKind::InvalidArgument, "negative jet order");
  require_divergence_free(v, "velocity_time_jet");
  std::vector<VecField> levels{v};
  for (int r = 0; r < order; ++r) {
    VecField acc = advect(levels[0], levels[r]);
    for (int s = 1; s <= r; ++s) acc += binomial(r, s) * advect(levels[s], levels[r - s]);
    VecField next = leray_project(acc);
    next = {{dealias(next[0]), dealias(next[1])}};
    levels.push_back(-next);
  }
  return VecJet(std::move(levels));
}

namespace {

template <class T>
TimeJet<T> material_derivative_impl(const VecJet& u, const TimeJet<T>& f) {
  f.require_order(1, "material derivative");
  const int m = std::min(f.order() - 1, u.order());
  std::vector<T> out;
  for (int r = 0; r <= m; ++r) {
    T acc = f[r + 1];
    for (int s = 0; s <= r; ++s) {
      T term = advect(u[s], f[r - s]);
      term *= binomial(r, s);
      acc += term;
    }
    out.push_back(std::move(acc));
  }
  return TimeJet<T>(std::move(out));
}

template <class T>
T material_derivative_value_impl(const VecJet& u, TimeJet<T> f, int r) {
  for (int i = 0; i < r; ++i) f = material_derivative_impl(u, f);
  return f.value();
}

}  // namespace

FieldJet material_derivative(const VecJet& u, const FieldJet& f) { return material_derivative_impl(u, f); }
VecJet material_derivative(const VecJet& u, const VecJet& f) { return material_derivative_impl(u, f); }

Field material_derivative_value(const VecJet& u, const FieldJet& f, int r) {
  return material_derivative_value_impl(u, f, r);
}
VecField material_derivative_value(const VecJet& u, const VecJet& f, int r) {
  return material_derivative_value_impl(u, f, r);
}

}  // namespace lpflow
