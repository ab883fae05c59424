#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "lpflow/error.hpp"
#include "lpflow/field.hpp"

namespace lpflow {

double binomial(int n, int k);

/// f, d_t f, ..., d_t^m f at one instant.
template <class T>
class TimeJet {
 public:
  TimeJet() = default;
  explicit TimeJet(std::vector<T> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) fail(ErrorKind::InvalidArgument, "a time jet needs at least level 0");
  }

  int order() const { return static_cast<int>(levels_.size()) - 1; }
  const T& operator[](int r) const { return levels_.at(static_cast<std::size_t>(r)); }
  const T& value() const { return levels_.front(); }
  const std::vector<T>& levels() const { return levels_; }

  /// Drops levels above m.
  TimeJet truncated(int m) const {
    require_order(m, "truncation");
    return TimeJet(std::vector<T>(levels_.begin(), levels_.begin() + m + 1));
  }

  void require_order(int m, const char* what) const {
    if (order() < m) fail(ErrorKind::InvalidArgument, std::string(what) + ": time jet order too low");
  }

  TimeJet& operator+=(const TimeJet& o) {
    const int m = std::min(order(), o.order());
    levels_.resize(static_cast<std::size_t>(m) + 1);
    for (int r = 0; r <= m; ++r) levels_[r] += o.levels_[r];
    return *this;
  }
  TimeJet& operator-=(const TimeJet& o) {
    const int m = std::min(order(), o.order());
    levels_.resize(static_cast<std::size_t>(m) + 1);
    for (int r = 0; r <= m; ++r) levels_[r] -= o.levels_[r];
    return *this;
  }
  TimeJet& operator*=(double s) {
    for (auto& l : levels_) l *= s;
    return *this;
  }

 private:
  std::vector<T> levels_;
};

template <class T>
TimeJet<T> operator+(TimeJet<T> a, const TimeJet<T>& b) { return a += b; }
template <class T>
TimeJet<T> operator-(TimeJet<T> a, const TimeJet<T>& b) { return a -= b; }
template <class T>
TimeJet<T> operator*(double s, TimeJet<T> a) { return a *= s; }

using FieldJet = TimeJet<Field>;
using VecJet = TimeJet<VecField>;

/// Applies a time-independent linear operator level by level.
template <class T, class F>
auto map(const TimeJet<T>& j, F&& op) {
  using R = std::decay_t<decltype(op(j.value()))>;
  std::vector<R> out;
  out.reserve(j.levels().size());
  for (const auto& l : j.levels()) out.push_back(op(l));
  return TimeJet<R>(std::move(out));
}

/// Jet of B(a, b) for a bilinear B: level r = sum_s binom(r,s) B(a_s, b_{r-s}).
template <class A, class B, class F>
auto leibniz(const TimeJet<A>& a, const TimeJet<B>& b, F&& bilinear, int order) {
  a.require_order(order, "leibniz");
  b.require_order(order, "leibniz");
  using R = std::decay_t<decltype(bilinear(a.value(), b.value()))>;
  std::vector<R> out;
  for (int r = 0; r <= order; ++r) {
    R acc = bilinear(a[0], b[r]);
    for (int s = 1; s <= r; ++s) {
      R term = bilinear(a[s], b[r - s]);
      term *= binomial(r, s);
      acc += term;
    }
    out.push_back(std::move(acc));
  }
  return TimeJet<R>(std::move(out));
}

/// Jet of (multilinear) B(v, v), order defaulting to the input's.
template <class T, class F>
auto leibniz(const TimeJet<T>& v, F&& bilinear) {
  return leibniz(v, v, std::forward<F>(bilinear), v.order());
}

/// Time jet of an Euler velocity: level r+1 is
/// -dealias(Leray(sum_s binom(r,s) v_s . grad v_{r-s})), the same right-hand
/// side the simulator integrates. Throws unless v is divergence free.
VecJet velocity_time_jet(const VecField& v, int order);

/// D = d_t + u.grad applied to a jet: (D f)_r = f_{r+1} + sum_s binom(r,s) u_s.grad f_{r-s}.
/// The result has order min(f.order() - 1, u.order()).
FieldJet material_derivative(const VecJet& u, const FieldJet& f);
VecJet material_derivative(const VecJet& u, const VecJet& f);

/// Applies D r times and returns the value.
Field material_derivative_value(const VecJet& u, const FieldJet& f, int r);
VecField material_derivative_value(const VecJet& u, const VecJet& f, int r);

}  // namespace lpflow
