#include "casimir/spectral.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace casimir {

namespace {

constexpr int kSeriesTerms = 10;

constexpr double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Coefficients of u^{2m}. The u^{-2} parts of the closed forms cancel exactly.
//   Q: (-1)^m [1/(2m+1)! - 1/(2m+2)! + 1/(2m+3)!]
//   W: (-1)^m [1/(2m+1)! - 3/(2m+2)! + 3/(2m+3)!]
//   sin u/u^3 - cos u/u^2: (-1)^m [1/(2m+2)! - 1/(2m+3)!]
template <int Mid, int Last>
constexpr std::array<double, kSeriesTerms> series_coefficients() {
  std::array<double, kSeriesTerms> c{};
  for (int m = 0; m < kSeriesTerms; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    c[m] = sign * (1.0 / factorial(2 * m + 1) - Mid / factorial(2 * m + 2) +
                   Last / factorial(2 * m + 3));
  }
  return c;
}

constexpr auto kQSeries = series_coefficients<1, 1>();
constexpr auto kWSeries = series_coefficients<3, 3>();

constexpr std::array<double, kSeriesTerms> vacuum_coefficients() {
  std::array<double, kSeriesTerms> c{};
  for (int m = 0; m < kSeriesTerms; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    c[m] = sign * (1.0 / factorial(2 * m + 2) - 1.0 / factorial(2 * m + 3));
  }
  return c;
}

constexpr auto kVacuumSeries = vacuum_coefficients();

double horner(const std::array<double, kSeriesTerms>& c, double v) {
  double acc = 0.0;
  for (int m = kSeriesTerms - 1; m >= 0; --m) acc = acc * v + c[m];
  return acc;
}

struct Kernels {
  double q;
  double w;
};

Kernels kernels(double u) {
  if (u < kSeriesThreshold) {
    const double u2 = u * u;
    return {horner(kQSeries, u2), horner(kWSeries, u2)};
  }
  const double s = std::sin(u);
  const double c = std::cos(u);
  const double u2 = u * u;
  const double u3 = u2 * u;
  return {s / u + c / u2 - s / u3, s / u + 3.0 * c / u2 - 3.0 * s / u3};
}

void require_frequency(double omega) {
  if (!std::isfinite(omega) || !(omega > 0.0))
    throw std::invalid_argument("frequency must be finite and positive, got " +
                                std::to_string(omega));
}

double prefactor(double omega) { return omega * omega * omega / (4.0 * kPi * kPi); }

// Shared driver for both densities: pairwise partial sums, optional Cesaro
// average over the last kCesaroWindow of them, and the last-pair magnitude.
template <class Term>
SpectralSample summarize(double omega, const TruncationPolicy& policy, Term&& term) {
  validate(policy);
  const int N = policy.N;
  const double centre = term(0);

  std::array<double, kCesaroWindow> window{};
  int filled = 0;
  auto remember = [&](double partial) {
    window[static_cast<std::size_t>(filled % kCesaroWindow)] = partial;
    ++filled;
  };
  remember(centre);

  double pairs = 0.0;
  double last_magnitude = std::abs(centre);
  for (int n = 1; n <= N; ++n) {
    const double up = term(n);
    const double down = term(-n);
    pairs += up + down;
    if (policy.accelerate) remember(pairs + centre);
    if (n == N) last_magnitude = std::abs(up) + std::abs(down);
  }

  double total;
  if (policy.accelerate) {
    const int count = filled < kCesaroWindow ? filled : kCesaroWindow;
    // Oldest first, so the result does not depend on where the ring wrapped.
    double acc = 0.0;
    for (int i = filled - count; i < filled; ++i)
      acc += window[static_cast<std::size_t>(i % kCesaroWindow)];
    total = acc / count;
  } else if (policy.pair_symmetric) {
    total = pairs + centre;
  } else {
    total = 0.0;
    for (int n = -N; n <= N; ++n) total += term(n);
  }

  const double scale = prefactor(omega);
  return {omega, scale * total, scale * last_magnitude, N};
}

}  // namespace

double q_kernel(double u) {
  if (u < kSeriesThreshold) return horner(kQSeries, u * u);
  return kernels(u).q;
}

double w_kernel(double u) {
  if (u < kSeriesThreshold) return horner(kWSeries, u * u);
  return kernels(u).w;
}

SpectralSample sigma_yy(double omega, const FieldPoint& point, const CavityGeometry& geometry,
                        const TruncationPolicy& policy) {
  require_frequency(omega);
  validate(point, geometry);
  const double y2 = point.y * point.y;

  // Q(w d) - y^2 W(w d)/d^2 for one image distance; y^2/d^2 <= 1 and the
  // d = 0 case (n = 0, y = 0) has y = 0, so the W part is dropped there.
  auto half = [&](double distance) {
    if (distance == 0.0) return q_kernel(0.0);
    const Kernels k = kernels(omega * distance);
    return k.q - (y2 / (distance * distance)) * k.w;
  };

  return summarize(omega, policy, [&](int n) {
    const auto d = image_distances(n, point, geometry);
    return half(d.A) - half(d.B);
  });
}

SpectralSample sigma_yy_diag(double omega, double x, const CavityGeometry& geometry,
                             const TruncationPolicy& policy) {
  require_frequency(omega);
  validate(FieldPoint{x, 0.0}, geometry);
  const double period = geometry.period();
  return summarize(omega, policy, [&](int n) {
    const double nl = n * period;
    return q_kernel(omega * std::abs(nl)) - q_kernel(omega * std::abs(2.0 * x - nl));
  });
}

double sigma_yy_vacuum_term(double omega, double y) {
  require_frequency(omega);
  const double distance = std::abs(y);
  if (distance == 0.0) return prefactor(omega) * q_kernel(0.0);
  const Kernels k = kernels(omega * distance);
  return prefactor(omega) * (k.q - ((y * y) / (distance * distance)) * k.w);
}

double sigma_vacuum(double omega, double y) {
  require_frequency(omega);
  const double u = omega * std::abs(y);
  const double scale = omega * omega * omega / (2.0 * kPi * kPi);
  if (u < kSeriesThreshold) return scale * horner(kVacuumSeries, u * u);
  const double u2 = u * u;
  return scale * (std::sin(u) / (u2 * u) - std::cos(u) / u2);
}

double normalized_difference(double omega, double x, const CavityGeometry& geometry,
                             const TruncationPolicy& policy) {
  const double vacuum = sigma_vacuum(omega, 0.0);
  return (sigma_yy_diag(omega, x, geometry, policy).value - vacuum) / vacuum;
}

SuppressionValue suppression_from_ratio(double ratio) {
  SuppressionValue out;
  out.ratio = ratio;
  if (ratio > 0.0) out.db = 10.0 * std::log10(ratio);
  return out;
}

SuppressionValue suppression_db(double omega, double x, const CavityGeometry& geometry,
                                const TruncationPolicy& policy) {
  const double ratio =
      sigma_yy_diag(omega, x, geometry, policy).value / sigma_vacuum(omega, 0.0);
  return suppression_from_ratio(ratio);
}

}  // namespace casimir
