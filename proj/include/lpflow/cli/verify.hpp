#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpflow/cli/report.hpp"

namespace lpflow::cli {

struct VerifyOptions {
  int grid = 128;             // identities
  int commutator_grid = 64;   // commutators
  int trajectory_grid = 64;   // trajectories
  std::uint64_t seed = 1;
};

/// LP reconstruction, trichotomy and pressure sums, telescoping, Galilean
/// invariance, equation vs jet routes and the Euler residual on simulator snapshots.
SuiteResult identities_suite(const VerifyOptions& opt);
/// Kernel vs direct form on 20 seeded cases, the second-order expansion vs
/// the jet oracle, and the convergence order of finite-difference oracles.
SuiteResult commutators_suite(const VerifyOptions& opt);
/// Taylor remainder orders, time reversal, periodic wrap and k-ladder decay.
SuiteResult trajectories_suite(const VerifyOptions& opt);

/// Suite names: identities, commutators, trajectories, all. Throws
/// Error(InvalidArgument) for anything else.
std::vector<SuiteResult> run_verify(const std::string& suite, const VerifyOptions& opt);

}  // namespace lpflow::cli
