#pragma once

#include "lpflow/field.hpp"
#include "lpflow/lp_bank.hpp"

namespace lpflow {

/// Two estimators of the homogeneous C^alpha seminorm.
struct HolderEstimate {
  /// sup_k 2^{alpha k} ||P_k f||_C0 over all levels the grid resolves.
  double lp = 0.0;
  /// sup over grid points x and lattice offsets h (dyadic lengths, 4
  /// directions) of |f(x+h) - f(x)| / |h|^alpha.
  double sampled = 0.0;
};

/// Throws Error(InvalidArgument) unless 0 < alpha <= 1.
HolderEstimate seminorm_holder(const LPBank& bank, const Field& f, double alpha);
HolderEstimate seminorm_holder(const LPBank& bank, const VecField& v, double alpha);

/// LP estimator only (cheaper; used for normalizing scans).
double lp_seminorm(const LPBank& bank, const VecField& v, double alpha);

}  // namespace lpflow
