#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "lpflow/euler_ops.hpp"
#include "lpflow/euler_sim.hpp"
#include "lpflow/lp_bank.hpp"

namespace lpflow {

/// Least-squares line through (x_i, y_i).
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct ScanRow {
  int k = 0;
  double value = 0.0;
  /// value / (2^{predicted k} seminorm^degree (1 + |k - k0|)^log_power).
  double ratio = 0.0;
  bool pass = true;
};

/// Per-level norms of one quantity with the fitted exponent and the
/// inequality verdict value <= C_fit 2^{predicted k} (...) at every level.
struct ScanReport {
  static constexpr const char* schema = "scanv1";
  std::string quantity;
  std::string field_kind;  // "euler" or "synthetic"
  double alpha = 0.0;
  double seminorm = 0.0;
  int degree = 1;
  int log_power = 0;
  double predicted_slope = 0.0;
  std::vector<ScanRow> rows;
  int fit_lo = 0;
  int fit_hi = 0;
  LineFit fit;
  bool fitted = false;
  double c_fit = 0.0;
  double dispersion = 0.0;
  bool empty = false;
  bool verdict = false;

  void write_csv(std::ostream& out) const;
  void write_json(std::ostream& out) const;
};

/// Quantity ids accepted by scan():
///   Pk_v, grad_Pleqk_v, R_leqk, grad_R_leqk, Pk_p, grad_Pk_p, delta_p,
///   delta_e                     (any velocity field)
///   DPk1_v, D2Pk1_v, ddt_delta_e, flux   (Euler snapshots with a time jet)
struct QuantitySpec {
  std::string id;
  int degree;
  double slope_offset;  // predicted slope = slope_offset + slope_alpha * alpha
  double slope_alpha;
  int log_power;
  int jet_order;
};
const std::vector<QuantitySpec>& quantity_table();
/// Throws Error(InvalidArgument) for unknown ids.
const QuantitySpec& quantity_spec(const std::string& id);

struct ScanOptions {
  int k_lo = 0;
  int k_hi = 0;
  /// Fit range; defaults to [k0 + 2, kmax - 2] clipped to [k_lo, k_hi] when left at INT_MIN.
  int fit_lo = std::numeric_limits<int>::min();
  int fit_hi = std::numeric_limits<int>::min();
  double alpha = 1.0 / 3.0;
  /// LP seminorm used for normalization; measured from the field when negative.
  double seminorm = -1.0;
  std::string field_kind = "synthetic";
  /// Number of leading levels used to calibrate C_fit.
  int calibration_levels = 3;
};

/// Value of the quantity at level k.
double quantity_value(const LPBank& bank, const EulerSnapshot& s, const std::string& id, int k);

/// Evaluates every level (in parallel), fits and judges. Error(InvalidArgument)
/// for an empty k-range or a jet quantity on a synthetic field.
ScanReport scan(const LPBank& bank, const EulerSnapshot& s, const std::string& quantity, const ScanOptions& opt);

/// Builds the report from precomputed values (used by scans over other inputs).
ScanReport make_report(const std::string& quantity, const std::vector<int>& ks, const std::vector<double>& values,
                       double predicted_slope, int degree, int log_power, int k0, const ScanOptions& opt);

/// Dyadic-lag Hoelder exponent of a scalar time series.
struct TimeExponent {
  bool conserved = false;  // exponent is +infinity
  double exponent = 0.0;
  LineFit fit;
  std::vector<double> lags;
  std::vector<double> increments;
};
/// M(tau) = max_i |s(t_i + tau) - s(t_i)| for tau = spacing * 2^m; slope of
/// log M against log tau over the middle of the lag ladder. Needs >= 64
/// samples. A series whose spread is below rel_tol * max|s| is "conserved".
TimeExponent holder_time_exponent(const std::vector<double>& values, double spacing, double rel_tol = 1e-10);

/// max_t ||v(t + dt) - v(t)||_C0 against |dt|^alpha over dyadic lags.
struct TimeHolderReport {
  double alpha = 0.0;
  double norm_combination = 0.0;  // sup_t ||v||_C0^alpha * sup_t ||v||_{C^alpha}
  std::vector<double> lags;
  std::vector<double> max_differences;
  std::vector<double> constants;  // max_difference / (lag^alpha * norm_combination)
  double c_all = 0.0;             // max over all lags
  double c_coarse = 0.0;          // max with the finest lag dropped
  double raw_constant = 0.0;      // max_difference / lag^alpha at the finest lag
  bool stable = false;            // |c_all / c_coarse - 1| <= 0.3
  bool zero = false;              // differences at roundoff: <= 1e-12 sup_t ||v||_C0
};
TimeHolderReport time_holder_field(const LPBank& bank, const SnapshotSeries& s, double alpha);

/// (p, lag, S_p) with S_p = <|v(x + l e) - v(x)|^p>^{1/p} averaged over grid
/// points and 8 directions e; off-grid shifts are exact spectral translations.
struct StructureRow {
  int p;
  double lag;
  double value;
};
std::vector<StructureRow> structure_function(const VecField& v, const std::vector<int>& orders,
                                             const std::vector<double>& lags);
/// Dyadic lags from 4 grid spacings up to pi/2.
std::vector<double> default_lags(const TorusGrid& g);

}  // namespace lpflow
