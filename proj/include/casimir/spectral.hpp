#pragma once

// Spectral densities of <E_y E_y> between the plates (units c = a = 1 when
// the geometry has a = 1; all arguments enter as omega * length products
// apart from the omega^3 prefactor).

#include <optional>

#include "casimir/imagesum.hpp"
#include "casimir/units.hpp"

namespace casimir {

/// Below this argument Q and W come from their Taylor series.
inline constexpr double kSeriesThreshold = 0.5;
/// Partial sums averaged when TruncationPolicy::accelerate is set.
inline constexpr int kCesaroWindow = 8;

/// Q(u) = sin u/u + cos u/u^2 - sin u/u^3, with Q(0) = 2/3.
double q_kernel(double u);

/// W(u) = sin u/u + 3 cos u/u^2 - 3 sin u/u^3, with W(0) = 0.
double w_kernel(double u);

struct SpectralSample {
  double omega = 0.0;
  double value = 0.0;
  double err = 0.0;  // omega^3/4pi^2 (|t(+N)| + |t(-N)|), last-pair magnitude
  int terms = 0;     // N
};

/// Casimir density sigma_yy(omega; (x,0,0), (x,y,0)) summed over n in [-N, N].
/// Throws std::invalid_argument for omega <= 0 or an invalid point/policy.
SpectralSample sigma_yy(double omega, const FieldPoint& point, const CavityGeometry& geometry,
                        const TruncationPolicy& policy = {});

/// Coincident-point density sigma_yy(omega; (x,0,0), (x,0,0)).
SpectralSample sigma_yy_diag(double omega, double x, const CavityGeometry& geometry,
                             const TruncationPolicy& policy = {});

/// n = 0 A-term of sigma_yy on its own, through the same summand code as the
/// full sum: omega^3/4pi^2 [Q(omega|y|) - W(omega|y|)].
double sigma_yy_vacuum_term(double omega, double y);

/// Free-space density (omega^3/2pi^2)[sin u/u^3 - cos u/u^2], u = omega|y|;
/// omega^3/6pi^2 at y = 0.
double sigma_vacuum(double omega, double y);

/// [sigma_diag - sigma_vac]/sigma_vac at coincident points.
double normalized_difference(double omega, double x, const CavityGeometry& geometry,
                             const TruncationPolicy& policy = {});

struct SuppressionValue {
  std::optional<double> db;  // 10 log10(ratio), only when ratio > 0
  double ratio = 0.0;        // sigma_diag / sigma_vac

  bool defined() const noexcept { return db.has_value(); }
};

SuppressionValue suppression_from_ratio(double ratio);

SuppressionValue suppression_db(double omega, double x, const CavityGeometry& geometry,
                                const TruncationPolicy& policy = {});

}  // namespace casimir
