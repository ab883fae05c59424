#pragma once

#include <string>
#include <vector>

#include "lpflow/field.hpp"
#include "lpflow/jet.hpp"
#include "lpflow/lp_bank.hpp"

namespace lpflow {

/// Symmetric 2-tensor field (c11, c12 = c21, c22).
struct SymTensor {
  Field c11, c12, c22;

  const Field& operator()(int j, int l) const { return j == 0 ? (l == 0 ? c11 : c12) : (l == 0 ? c12 : c22); }
  const TorusGrid& grid() const { return c11.grid(); }

  SymTensor& operator+=(const SymTensor& o);
  SymTensor& operator-=(const SymTensor& o);
  SymTensor& operator*=(double s);
  SymTensor operator-() const;

  /// Frobenius norm (off-diagonal counted twice) on the oversampled grid.
  double sup_norm() const;
};

SymTensor operator+(SymTensor a, const SymTensor& b);
SymTensor operator-(SymTensor a, const SymTensor& b);
SymTensor operator*(double s, SymTensor a);

/// (a (x) b + b (x) a) / 2 with exact products.
SymTensor sym_outer(const VecField& a, const VecField& b);
/// d_j T^{jl}.
VecField divergence(const SymTensor& t);
/// d_j d_l T^{jl}.
Field div_div(const SymTensor& t);
/// Applies a linear scalar operator to every component.
template <class Op>
SymTensor map_components(const SymTensor& t, Op&& op) {
  return {op(t.c11), op(t.c12), op(t.c22)};
}

struct StressTriple {
  SymTensor hh, hl, ll;
};

/// Low-Low, High-Low and High-High pieces of a pressure quantity.
struct PressureParts {
  Field ll, hl, hh;
  Field sum() const { return ll + hl + hh; }
};

/// Velocity at one instant with its time jet and pressure.
class EulerSnapshot {
 public:
  /// Throws Error(NotDivergenceFree) for compressible input.
  EulerSnapshot(double time, VecField v, int jet_order = 0);

  double time() const { return time_; }
  const VecField& velocity() const { return jet_.value(); }
  const VecJet& jet() const { return jet_; }
  int jet_order() const { return jet_.order(); }
  const TorusGrid& grid() const { return velocity().grid(); }
  /// Mean-zero pressure, computed once.
  const Field& pressure() const { return pressure_; }

 private:
  double time_;
  VecJet jet_;
  Field pressure_;
};

// Bilinear building blocks. Each is symmetric in (a, b) and reduces to the
// named quantity at a = b = v; time jets of the quantities are their Leibniz
// expansions.

/// -Delta^-1 d_j d_l (a^j b^l): the pressure when a = b = v.
Field pressure_form(const VecField& a, const VecField& b);
/// P_{<=k} a (x) P_{<=k} b - P_{<=k}(a (x) b), symmetrized.
SymTensor reynolds_form(const LPBank& bank, int k, const VecField& a, const VecField& b);
/// -Delta^-1 d_j d_l P_{<=k}(P_{<=k} a^j P_{<=k} b^l).
Field truncated_pressure_form(const LPBank& bank, int k, const VecField& a, const VecField& b);

/// Solves Delta p = -d_j d_l (v^j v^l) with mean zero. Requires div v = 0.
Field pressure(const VecField& v);

/// R_{<=k} = P_{<=k} v (x) P_{<=k} v - P_{<=k}(v (x) v).
SymTensor reynolds_stress(const LPBank& bank, const VecField& v, int k);

/// Variance-form split of R_{<=k} (signs chosen so the parts add up to
/// R_{<=k}); the High-Low part uses the band-limited factor
/// P_{<=k+2} v - P_{<=k} v.
StressTriple reynolds_trichotomy(const LPBank& bank, const VecField& v, int k);

/// p_(k) = -Delta^-1 d_j d_l P_{<=k}(P_{<=k} v^j P_{<=k} v^l).
Field truncated_pressure(const LPBank& bank, const VecField& v, int k);
/// delta p_(k) = p_(k+1) - p_(k).
Field pressure_increment(const LPBank& bank, const VecField& v, int k);
/// delta p_(k) split by the frequency classes of the interacting factors:
///   LL = -Delta^-1 P_{k+1}(d_l b^j d_j b^l),                 b = P_{<=k+1} v
///   HL = -2 Delta^-1 d_j P_{[k-3,k]}(d_l P_{<=k-4} v^j w^l),  w = P_{k+1} v
///   HH = -Delta^-1 d_j d_l P_{<=k}(w w + m w + w m),         m = P_{[k-3,k]} v
PressureParts pressure_increment_parts(const LPBank& bank, const VecField& v, int k);

/// P_k p split with G = P_{<=k} v and H = v - G:
///   LL = -Delta^-1 P_k(d_l G^j d_j G^l)
///   HL = -Delta^-1 P_k(d_l(H^j d_j G^l) + d_j(d_l G^j H^l))
///   HH = -Delta^-1 d_j d_l P_k(H^j H^l)
PressureParts lp_pressure_parts(const LPBank& bank, const VecField& v, int k);
/// All order-D partials of P_k p assembled from the three parts.
DerivativeSet lp_pressure_piece(const LPBank& bank, const VecField& v, int k, int D);

/// Fields on which the coarse-scale advective derivative D_{<=k} = d_t + P_{<=k} v . grad acts.
enum class AdvTarget {
  ShellNext,          // P_{k+1} v
  LowVelocity,        // P_{<=k} v
  LowGradient,        // grad P_{<=k} v
  ShellPressure,      // P_k p
  PressureIncrement,  // delta p_(k)
  TruncatedPressureGradient,  // grad p_(k)
};

const char* target_name(AdvTarget t);
AdvTarget parse_target(const std::string& name);

/// Components of the target (scalar, vector or matrix entries) with the
/// weights that make sup_norm(fields, weights) the pointwise Euclidean norm.
struct Components {
  std::vector<Field> fields;
  std::vector<double> weights;
  double sup_norm() const;
};

/// Time jet (order m) of every component of the target.
std::vector<FieldJet> target_jets(const LPBank& bank, const VecJet& vjet, int k, AdvTarget target, int m);

/// D^r_{<=k} of the target for r in {1, 2}, computed from the time jet by
/// applying D = d_t + u.grad with u = P_{<=k} v level by level.
Components advective_derivative(const LPBank& bank, const EulerSnapshot& s, int k, AdvTarget target, int r);

/// D^r_{<=k} P_{k+1} v through the equation it satisfies,
///   D_{<=k} P_{k+1} v = -P_{k+1} v . grad P_{<=k+1} v - grad P_{k+1} p + d_j(R_{<=k+1} - R_{<=k}),
/// with the r = 2 case obtained by applying the jet-propagated D_{<=k} to the right side.
VecField shell_advective_derivative(const LPBank& bank, const EulerSnapshot& s, int k, int r);

/// sup |d_t v + dealias(v . grad v + grad p)| with d_t v from the jet. The
/// simulator integrates the dealiased equation, so this is the residual of
/// the system actually solved.
double euler_identity_residual(const EulerSnapshot& s);

/// e_{<=k} = 1/2 int |P_{<=k} v|^2.
double truncated_energy(const LPBank& bank, const VecField& v, int k);
/// delta e_(k) = e_{<=k+1} - e_{<=k}.
double energy_increment(const LPBank& bank, const VecField& v, int k);
/// -int d_j (P_{<=k} v)^l R^{jl}_{<=k} = d/dt e_{<=k}.
double energy_flux(const LPBank& bank, const VecField& v, int k);
/// d/dt delta e_(k) = flux(k+1) - flux(k).
double energy_increment_rate(const LPBank& bank, const VecField& v, int k);

double kinetic_energy(const VecField& v);
double enstrophy(const VecField& v);

}  // namespace lpflow
