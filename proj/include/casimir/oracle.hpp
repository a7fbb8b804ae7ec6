#pragma once

// Independent check of the Casimir spectral density: Fourier transform the
// closed-form two-point function numerically with the time argument shifted
// to s - i*eps, then extrapolate eps -> 0.
//
//   raw(eps) = (1/2pi) int_{-S}^{S} ds e^{i w s} G(s - i eps)
//            = (1/pi) Re int_0^S ds e^{i w s} G(s - i eps)
//
// With the poles at s = +-A_n, +-B_n moved into the upper half plane each
// image contributes exp(-w eps) times its eps = 0 value, so the raw sequence
// is smooth in eps and Richardson extrapolation applies.

#include <vector>

#include "casimir/imagesum.hpp"
#include "casimir/units.hpp"

namespace casimir {

/// Trapezoid steps per regulator width; resolving the displaced poles needs
/// h well below eps.
inline constexpr double kStepsPerRegulator = 6.0;

struct OracleConfig {
  std::vector<double> eps_schedule{0.05, 0.025, 0.0125};
  double s_max = 200.0;
  int samples = 16;  // trapezoid points per oscillation of e^{i w s}, at least
};

/// Throws std::invalid_argument unless eps values are positive and strictly
/// decreasing, s_max > 0 and samples >= 8.
void validate(const OracleConfig& config);

enum class ImageSelection {
  all,          // every image in the truncation policy
  vacuum_only,  // the n = 0 A-term: free space
};

struct OracleRun {
  double value = 0.0;             // extrapolated to eps = 0
  std::vector<double> raw;        // one entry per eps in the schedule
  double tail = 0.0;              // running-integral change over the last image period
  double s_cut = 0.0;             // actual integration end, placed between poles
};

/// Full run with diagnostics. Throws ExtrapolationDivergence when the last
/// two raw refinements grow or change sign, TailTooLarge when the tail
/// estimate exceeds 1% of max(|value|, w^3/6pi^2).
OracleRun numeric_ft_run(double omega, const FieldPoint& point, const CavityGeometry& geometry,
                         const TruncationPolicy& policy = {}, const OracleConfig& config = {},
                         ImageSelection selection = ImageSelection::all);

double sigma_via_numeric_ft(double omega, const FieldPoint& point,
                            const CavityGeometry& geometry, const TruncationPolicy& policy = {},
                            const OracleConfig& config = {},
                            ImageSelection selection = ImageSelection::all);

/// Polynomial extrapolation of (eps_i, values_i) to eps = 0 (Neville).
double extrapolate_to_zero(const std::vector<double>& eps, const std::vector<double>& values);

struct ConvergenceRow {
  int N = 0;
  double value = 0.0;
  double err = 0.0;
  double delta = 0.0;  // |value - previous value|; 0 for the first row
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  bool shrinking = true;  // successive deltas strictly decrease (or vanish)
};

/// sigma_yy at each cutoff in N_list (non-empty, strictly increasing).
ConvergenceReport convergence_report(double omega, const FieldPoint& point,
                                     const CavityGeometry& geometry,
                                     const std::vector<int>& N_list, bool accelerate = false);

}  // namespace casimir
