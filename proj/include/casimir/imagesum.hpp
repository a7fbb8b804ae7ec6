#pragma once

// Image sums for the field between two conducting plates and the equal-x
// yy two-point function built from them. Sums run over n in [-N, N]; with
// pair_symmetric set, the pairs (+n, -n) are added in ascending |n| and the
// n = 0 term goes last, so the result is independent of evaluation context.

#include "casimir/units.hpp"

namespace casimir {

inline constexpr double kLightConeGuard = 1e-6;
inline constexpr double kDefaultStep = 1e-3;
inline constexpr int kDefaultTerms = 1000;

struct SpacetimePoint {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct ImageDistances {
  int n = 0;
  double A = 0.0;  // sqrt((nL)^2 + y^2)
  double B = 0.0;  // sqrt((2x - nL)^2 + y^2)
};

struct TruncationPolicy {
  int N = kDefaultTerms;
  bool accelerate = false;
  bool pair_symmetric = true;
};

/// Throws std::invalid_argument for N < 0.
void validate(const TruncationPolicy& policy);

enum class ImageSign { minus, plus };

ImageDistances image_distances(int n, const FieldPoint& point, const CavityGeometry& geometry);

/// -(1/4pi^2) sum_n 1/[(x -+ x~ - nL)^2 + (y - y~)^2 + (z - z~)^2 - (t - t~)^2].
/// Throws LightConeProximity when any denominator is smaller than
/// kLightConeGuard in magnitude.
double image_sum_F(ImageSign sign, const SpacetimePoint& p, const SpacetimePoint& q,
                   const CavityGeometry& geometry, const TruncationPolicy& policy);

/// A and B halves of one image summand of <E_y(s, x,0,0) E_y(0, x,y,0)>,
/// without the 1/pi^2:
///   a = (A^2 + s^2 - 2y^2)/(s^2 - A^2)^3,  b = (B^2 + s^2 - 2y^2)/(s^2 - B^2)^3.
/// Templated on the time type so the regulated transform can evaluate it at
/// complex s. The caller handles A = 0 (only possible for n = 0, y = 0).
template <class T>
struct TwoPointSummand {
  T a;
  T b;
};

template <class T>
TwoPointSummand<T> two_point_summand(const T& s2, double A2, double B2, double y2) {
  const T da = s2 - A2;
  const T db = s2 - B2;
  return {(A2 + s2 - 2.0 * y2) / (da * da * da), (B2 + s2 - 2.0 * y2) / (db * db * db)};
}

/// Truncated closed form of the equal-x two-point function at time separation
/// s, between (x, 0, 0) and (x, y, 0). The n = 0, y = 0 A-term uses its limit
/// 1/s^4. Throws LightConeProximity if |s^2 - A^2| or |s^2 - B^2| falls below
/// kLightConeGuard for some image.
double two_point_yy_closed(double s, const FieldPoint& point, const CavityGeometry& geometry,
                           const TruncationPolicy& policy = {});

/// Only the n = 0 A-term of the closed form: the free-space two-point function.
double two_point_yy_vacuum(double s, double y);

/// (d_x^2 + d_z^2)[F^- - F^+] by the 5-point (x, z) Laplacian stencil with
/// step h, differentiating the first point only. Within 2h of the plate at
/// x = 0 the x-part switches to a one-sided second-order stencil.
/// Refuses (LightConeProximity) when s is within 2h + kLightConeGuard of any
/// image distance.
double two_point_yy_by_derivative(double s, const FieldPoint& point,
                                  const CavityGeometry& geometry,
                                  const TruncationPolicy& policy = {},
                                  double h = kDefaultStep);

}  // namespace casimir
