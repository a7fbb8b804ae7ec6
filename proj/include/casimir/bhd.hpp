#pragma once

// Balanced homodyne detector between the plates: a TE_1 local oscillator,
// the LO-smeared correlation R, and the first two moments of the output
// current. All outputs are in detector units fixed by the calibration A.

#include <array>
#include <vector>

#include "casimir/imagesum.hpp"
#include "casimir/units.hpp"

namespace casimir {

/// Gaussian LO profile k(w) = amplitude * exp(-(w - omega_lo)^2 / (2 width^2)).
struct LOKernel {
  double omega_lo = 2.0 * kPi;
  double width = 2.0 * kPi / 100.0;
  double amplitude = 1.0;
  std::array<double, 3> polarization{0.0, 1.0, 0.0};
  double t0 = 0.0;

  double operator()(double omega) const;
  /// Integral of k(w)^2 over the real line: amplitude^2 * width * sqrt(pi).
  double kappa() const;
};

/// Throws std::invalid_argument unless width > 0, amplitude >= 0,
/// width <= omega_lo/10, and the polarization is the unit y vector.
void validate(const LOKernel& kernel);

struct DetectorConfig {
  FieldPoint diode1;
  FieldPoint diode2;
  double calibration = 1.0;  // A(omega_lo)
};

void validate(const DetectorConfig& config, const CavityGeometry& geometry);

struct LOMode {
  int n = 1;
  double p = 0.0;  // wave number along y
  double k = 0.0;  // wave number along z
  double omega = kPi;
};

/// omega = sqrt((n pi/a)^2 + p^2 + k^2). Throws for n < 1 or negative p, k.
double dispersion_omega(int n, double p, double k, const CavityGeometry& geometry);

/// Mode with its frequency filled in from the dispersion relation.
LOMode make_lo_mode(int n, double p, double k, const CavityGeometry& geometry);

/// Throws std::invalid_argument if the mode violates the dispersion
/// relation by more than 1e-12 (relative) or has negative wave numbers.
void validate(const LOMode& mode, const CavityGeometry& geometry);

struct ModeField {
  double fx = 0.0;
  double fy = 0.0;
};

/// Electric field of the TE_n mode derived from the Hertz potential
/// sin(kz - wt) cos(n pi x/a) cos(py).
ModeField lo_mode_fields(const LOMode& mode, double t, double x, double y, double z,
                         const CavityGeometry& geometry);

struct BalanceReport {
  double residual = 0.0;
  bool balanced = false;
};

/// max over one period of |F_y(d1) + F_y(d2)|, divided by the larger of the
/// two peak amplitudes. 0 for a perfectly balanced pair, 2 for identical
/// diodes.
BalanceReport check_balance(const DetectorConfig& config, const LOMode& mode,
                            const CavityGeometry& geometry, double tolerance = 1e-12);

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_floor = 1e-14;
  int max_depth = 8;
  /// Failure threshold: error estimate above this fraction of |result| and
  /// above the target max(rel_tol * scale, abs_floor) raises
  /// QuadratureFailure. scale is the larger of the integrand's L1 norm and
  /// kappa times the free-space diagonal density at omega_lo.
  double fail_fraction = 0.01;
};

/// R(p1, p2) = int dw k(w)^2 sigma_yy(w, p1, p2) over omega_lo +- 6 width, with
/// panels split at every multiple of pi. Both points must share x; only
/// y2 - y1 enters. Throws QuadratureFailure when the error estimate exceeds
/// fail_fraction of the result and the absolute floor.
double smeared_R(const FieldPoint& p1, const FieldPoint& p2, const LOKernel& kernel,
                 const CavityGeometry& geometry, const TruncationPolicy& policy = {},
                 const QuadratureSpec& quadrature = {});

/// One monochromatic component of a classical (coherent-state) field: its
/// y amplitude at each diode and its phase, E(t) = amp cos(omega t + phase).
struct FieldComponent {
  double omega = 0.0;
  double amp_diode1 = 0.0;
  double amp_diode2 = 0.0;
  double phase = 0.0;
};

/// Empty list: ground state. Otherwise
/// A * sum_c k(w_c) [amp1 + amp2] cos(w_c t0 + phase).
double mean_current(const DetectorConfig& config, const LOKernel& kernel,
                    const std::vector<FieldComponent>& classical_field = {});

/// The LO mode itself as a classical field seen by the two diodes (z = 0).
std::vector<FieldComponent> mode_as_field(const LOMode& mode, const DetectorConfig& config,
                                          const CavityGeometry& geometry);

/// A^2 [R(1,1) + 2 R(1,2) + R(2,2)].
double variance_current(const DetectorConfig& config, const LOKernel& kernel,
                        const CavityGeometry& geometry, const TruncationPolicy& policy = {},
                        const QuadratureSpec& quadrature = {});

/// 2 A^2 R(d, d): the far-separation approximation.
double variance_approx(const FieldPoint& diode, const LOKernel& kernel,
                       const DetectorConfig& config, const CavityGeometry& geometry,
                       const TruncationPolicy& policy = {}, const QuadratureSpec& quadrature = {});

}  // namespace casimir
