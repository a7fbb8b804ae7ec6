#include "casimir/imagesum.hpp"

#include <cmath>
#include <stdexcept>

#include "casimir/errors.hpp"
#include "summation.hpp"

namespace casimir {

namespace {

constexpr double kInvPi2 = 1.0 / (kPi * kPi);

void guard_denominator(int n, char which, double denominator) {
  if (std::abs(denominator) < kLightConeGuard)
    throw LightConeProximity(n, which, std::abs(denominator));
}

}  // namespace

void validate(const TruncationPolicy& policy) {
  if (policy.N < 0) throw std::invalid_argument("truncation N must be non-negative");
}

ImageDistances image_distances(int n, const FieldPoint& point, const CavityGeometry& geometry) {
  const double nl = n * geometry.period();
  const double bx = 2.0 * point.x - nl;
  const double y2 = point.y * point.y;
  return {n, std::sqrt(nl * nl + y2), std::sqrt(bx * bx + y2)};
}

double image_sum_F(ImageSign sign, const SpacetimePoint& p, const SpacetimePoint& q,
                   const CavityGeometry& geometry, const TruncationPolicy& policy) {
  validate(policy);
  const double period = geometry.period();
  const double xs = (sign == ImageSign::minus) ? p.x - q.x : p.x + q.x;
  const double dy = p.y - q.y;
  const double dz = p.z - q.z;
  const double dt = p.t - q.t;
  const double rest = dy * dy + dz * dz - dt * dt;

  const double sum = detail::image_sum(policy, [&](int n) {
    const double dx = xs - n * period;
    const double den = dx * dx + rest;
    guard_denominator(n, 'F', den);
    return 1.0 / den;
  });
  return -sum / (4.0 * kPi * kPi);
}

double two_point_yy_closed(double s, const FieldPoint& point, const CavityGeometry& geometry,
                           const TruncationPolicy& policy) {
  validate(point, geometry);
  validate(policy);
  const double period = geometry.period();
  const double y2 = point.y * point.y;
  const double s2 = s * s;

  const double sum = detail::image_sum(policy, [&](int n) {
    const double nl = n * period;
    const double bx = 2.0 * point.x - nl;
    const double A2 = nl * nl + y2;
    const double B2 = bx * bx + y2;
    guard_denominator(n, 'A', s2 - A2);
    guard_denominator(n, 'B', s2 - B2);
    const auto t = two_point_summand(s2, A2, B2, y2);
    // A = 0: the A-term is s^2/(s^2)^3 and the y^2 part is absent.
    const double a = (A2 == 0.0) ? 1.0 / (s2 * s2) : t.a;
    return a - t.b;
  });
  return sum * kInvPi2;
}

double two_point_yy_vacuum(double s, double y) {
  const double y2 = y * y;
  const double s2 = s * s;
  guard_denominator(0, 'A', s2 - y2);
  if (y2 == 0.0) return kInvPi2 / (s2 * s2);
  return two_point_summand(s2, y2, y2, y2).a * kInvPi2;
}

double two_point_yy_by_derivative(double s, const FieldPoint& point,
                                  const CavityGeometry& geometry, const TruncationPolicy& policy,
                                  double h) {
  validate(point, geometry);
  validate(policy);
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("step h must be positive");

  // The stencil moves the first point by up to 3h; keep every image light
  // cone at least 2h away from the centre.
  const double band = 2.0 * h + kLightConeGuard;
  const double abs_s = std::abs(s);
  for (int n = -policy.N; n <= policy.N; ++n) {
    const auto d = image_distances(n, point, geometry);
    if (std::abs(abs_s - d.A) < band) throw LightConeProximity(n, 'A', std::abs(abs_s - d.A));
    if (std::abs(abs_s - d.B) < band) throw LightConeProximity(n, 'B', std::abs(abs_s - d.B));
  }

  const SpacetimePoint fixed{0.0, point.x, point.y, 0.0};
  auto difference = [&](double x1, double z1) {
    const SpacetimePoint moving{s, x1, 0.0, z1};
    return image_sum_F(ImageSign::minus, moving, fixed, geometry, policy) -
           image_sum_F(ImageSign::plus, moving, fixed, geometry, policy);
  };

  const double x = point.x;
  const double h2 = h * h;
  const double centre = difference(x, 0.0);
  const double d2z = (difference(x, h) + difference(x, -h) - 2.0 * centre) / h2;
  double d2x;
  if (x >= 2.0 * h) {
    d2x = (difference(x + h, 0.0) + difference(x - h, 0.0) - 2.0 * centre) / h2;
  } else {
    d2x = (2.0 * centre - 5.0 * difference(x + h, 0.0) + 4.0 * difference(x + 2.0 * h, 0.0) -
           difference(x + 3.0 * h, 0.0)) /
          h2;
  }
  return d2x + d2z;
}

}  // namespace casimir
