#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "lpflow/euler_ops.hpp"
#include "lpflow/jet.hpp"
#include "lpflow/lp_bank.hpp"
#include "lpflow/scale_scan.hpp"

namespace lpflow {

/// Translation-invariant operator T f = scale * (K * f), K the kernel of one
/// component of a bank symbol at level k.
struct ConvOp {
  int k = 0;
  Symbol symbol = Symbol::Mollifier;
  /// Derivative slot for gradient-type symbols; its order must equal
  /// symbol_derivative_order(symbol).
  MultiIndex component{};
  double scale = 1.0;

  Field apply(const LPBank& bank, const Field& f) const;
};

/// Operator with the default component of the symbol and the scale
/// 2^{-h k} (h its homogeneity) that normalizes the kernel bounds.
ConvOp normalized_op(Symbol s, int k);

struct MomentEntry {
  int m;
  int A;
  double value;  // scale * || |h|^m grad^{m+A} K ||_{L1}
};
/// Moment table of the full kernel for m + A <= max_total.
std::vector<MomentEntry> moment_table(const LPBank& bank, const ConvOp& op, int max_total = 5);

/// D(Tf) - T(Df) with D = d_t + u.grad evaluated level by level on the jets.
/// Needs jets of order >= 1.
Field commutator_direct(const LPBank& bank, const VecJet& u, const ConvOp& op, const FieldJet& f);

/// int (u^i(x+h) - u^i(x)) f(x+h) d_i K(h) dh, evaluated as
/// sum_i S_i(u^i f) - u^i S_i f with S_i g = int g(x+h) d_i K(h) dh = -d_i T g.
/// Throws Error(NotDivergenceFree) unless div u = 0.
Field commutator_kernel(const LPBank& bank, const VecField& u, const ConvOp& op, const Field& f);

/// Terms of the second commutator [D_{<=I}, [D_{<=I}, T]] f with u = P_{<=I} v:
///   t_i    int d_h a^i f(x+h) d_i K,                     a = D_{<=I} u
///   t_ii   int d_h u^j (d_j u^i f)(x+h) d_i K
///   t_iii1 int (d_j u^i)(x+h) d_h u^j f(x+h) d_i K       (same integrand as t_ii)
///   t_iii2 int d_h u^i d_h u^j f(x+h) d_i d_j K
/// where d_h F = F(x+h) - F(x). Each term is expanded into products with
/// S_i = -d_i T and S_ij = d_i d_j T.
struct SecondCommutator {
  Field t_i;
  Field t_ii;
  Field t_iii1;
  Field t_iii2;
  /// t_i - t_ii + t_iii1 + t_iii2
  Field total() const;
};
/// a = -grad P_{<=I} p + div R_{<=I} from the snapshot alone.
SecondCommutator commutator_second(const LPBank& bank, const EulerSnapshot& s, int I, const ConvOp& op,
                                   const Field& f);

/// D(D(Tf)) - 2 D(T(Df)) + T(D^2 f) from jets of order >= 2.
Field second_commutator_oracle(const LPBank& bank, const VecJet& u, const ConvOp& op, const FieldJet& f);

/// Operator-norm surrogate of grad^A [D_{<=k},]^r T_k over seeded probes.
struct CommutatorScanOptions {
  int r = 1;  // 1 or 2
  int A = 0;  // 0 or 1
  int k_lo = 0;
  int k_hi = 0;
  int fit_lo = std::numeric_limits<int>::min();
  int fit_hi = std::numeric_limits<int>::min();
  double alpha = 1.0 / 3.0;
  double seminorm = -1.0;
  std::string field_kind = "synthetic";
  int probes = 8;
  std::uint64_t seed = 1;
  int calibration_levels = 3;
};

struct CommutatorScan {
  int r = 1;
  int A = 0;
  ScanReport report;
  /// Kernel-moment upper bound per level (A = 0 only; NaN otherwise):
  /// r = 1: |grad u| m_1,  r = 2: |grad a| m_1 + |grad u|^2 m_2.
  std::vector<double> l1_bounds;

  /// Columns k, r, A, surrogate_norm, l1_bound.
  void write_csv(std::ostream& out) const;
};

/// Probes at level k are random fields with modes |xi| <= min(2^{k+1}, n/4)
/// and unit sup norm.
/// Predicted slope A + r(1 - alpha). Error(InvalidArgument) for an empty
/// k-range or r, A outside the supported values.
CommutatorScan commutator_norm_scan(const LPBank& bank, const EulerSnapshot& s, Symbol symbol,
                                    const CommutatorScanOptions& opt);

/// Seeded probe with unit sup norm and modes |xi| <= top.
Field probe_field(const TorusGrid& g, int top, std::uint64_t seed);

}  // namespace lpflow
