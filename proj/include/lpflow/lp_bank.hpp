#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "lpflow/field.hpp"

namespace lpflow {

/// Smooth radial cut: 1 on [0, 1/2], 0 on [1, inf), C-infinity in between.
double lp_profile(double r);

/// Kernel families whose physical kernels the bank can synthesize.
enum class Symbol {
  InvLapShell,        // Delta^-1 P_k
  GradInvLapShell,    // grad Delta^-1 P_k
  HessInvLapShell,    // grad^2 Delta^-1 P_k
  InvLapHessLow,      // Delta^-1 grad^2 P_{<=k}
  Mollifier,          // eta_{<=k}
  GradMollifier,      // grad eta_{<=k}
};

const char* symbol_name(Symbol s);
/// Throws Error(InvalidArgument) for unknown names.
Symbol parse_symbol(const std::string& name);
/// Number of spatial derivatives built into the symbol (0, 1 or 2).
int symbol_derivative_order(Symbol s);
/// Scaling exponent h: the kernel L1 norm of grad^D of the symbol behaves like 2^{(h + D) k}.
int symbol_homogeneity(Symbol s);

/// Littlewood-Paley multipliers on one grid.
///
/// eta_{<=k}(xi) = psi(|xi| / 2^k); P_k = P_{<=k} - P_{<=k-1}; P_{[a,b]} =
/// P_{<=b} - P_{<=a-1}. Levels from k0 - 6 up to kspatial + 2 are cached; at the
/// bottom of that range P_{<=k} is already the mean and at the top the identity.
class LPBank {
 public:
  explicit LPBank(const TorusGrid& grid);

  const TorusGrid& grid() const { return grid_; }
  int min_level() const { return kmin_; }
  int max_level() const { return kmax_; }

  /// eta_{<=k} on the half spectrum. Throws Error(OutOfRange) outside the cache.
  const std::vector<double>& low_pass(int k) const;

  Field leq(const Field& f, int k) const;
  Field shell(const Field& f, int k) const;
  Field band(const Field& f, int k1, int k2) const;
  Field mean(const Field& f) const;
  VecField leq(const VecField& v, int k) const;
  VecField shell(const VecField& v, int k) const;
  VecField band(const VecField& v, int k1, int k2) const;

  /// Symbol applied as a Fourier multiplier. `component` selects the
  /// derivative slot for gradient-type symbols and must have order equal to
  /// symbol_derivative_order(s).
  Field kernel_op(const Field& f, int k, Symbol s, MultiIndex component = {}) const;

  /// L1 norm on the 2x oversampled grid of the pointwise Frobenius norm of
  /// grad^D K, K the physical kernel of the symbol (all components).
  double kernel_l1_norm(int k, Symbol s, int D) const;

  /// || |h|^m grad^{m+A} K ||_{L1}, |h| the periodic distance to the origin.
  double kernel_moment(int k, Symbol s, int m, int A) const;

  /// Table rows (k, symbol, D, l1_norm) written as CSV with a header.
  void write_kernel_table(std::ostream& out, int k_lo, int k_hi, const std::vector<Symbol>& symbols,
                          int max_d) const;

 private:
  void check_level(int k) const;

  TorusGrid grid_;
  int kmin_;
  int kmax_;
  std::vector<std::vector<double>> low_pass_;
};

}  // namespace lpflow
