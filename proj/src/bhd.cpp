#include "casimir/bhd.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/spectral.hpp"

namespace casimir {

namespace {

constexpr double kWindowWidths = 6.0;

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  double l1;
};

using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;

template <class F>
Panel gk15(const F& f, double lo, double hi) {
  double error = 0.0;
  double l1 = 0.0;
  const double value = Rule::integrate(f, lo, hi, 0, 0.0, &error, &l1);
  return {lo, hi, value, error, l1};
}

// Bisect until the Kronrod error estimate drops below `target` per unit width.
template <class F>
void refine(const F& f, const Panel& panel, double target_density, int depth, double& value,
            double& error) {
  const double allowed = target_density * (panel.hi - panel.lo);
  if (panel.error <= allowed || depth == 0) {
    value += panel.value;
    error += panel.error;
    return;
  }
  const double mid = 0.5 * (panel.lo + panel.hi);
  refine(f, gk15(f, panel.lo, mid), target_density, depth - 1, value, error);
  refine(f, gk15(f, mid, panel.hi), target_density, depth - 1, value, error);
}

}  // namespace

double LOKernel::operator()(double omega) const {
  const double d = (omega - omega_lo) / width;
  return amplitude * std::exp(-0.5 * d * d);
}

double LOKernel::kappa() const { return amplitude * amplitude * width * std::sqrt(kPi); }

void validate(const LOKernel& kernel) {
  if (!std::isfinite(kernel.omega_lo) || !(kernel.omega_lo > 0.0))
    throw std::invalid_argument("LO frequency must be positive");
  if (!(kernel.width > 0.0)) throw std::invalid_argument("LO width must be positive");
  if (!(kernel.amplitude >= 0.0)) throw std::invalid_argument("LO amplitude must be >= 0");
  if (kernel.width > kernel.omega_lo / 10.0)
    throw std::invalid_argument("LO kernel must be sharply concentrated: width <= omega_lo/10");
  const auto& e = kernel.polarization;
  if (e[0] != 0.0 || e[2] != 0.0 || e[1] != 1.0)
    throw std::invalid_argument("only y polarization couples to the yy density");
}

void validate(const DetectorConfig& config, const CavityGeometry& geometry) {
  validate(config.diode1, geometry);
  validate(config.diode2, geometry);
  if (!std::isfinite(config.calibration) || !(config.calibration > 0.0))
    throw std::invalid_argument("detector calibration A must be positive");
}

double dispersion_omega(int n, double p, double k, const CavityGeometry& geometry) {
  if (n < 1) throw std::invalid_argument("TE mode index must be >= 1");
  if (!(p >= 0.0) || !(k >= 0.0)) throw std::invalid_argument("wave numbers must be >= 0");
  const double kx = n * kPi / geometry.a();
  return std::sqrt(kx * kx + p * p + k * k);
}

LOMode make_lo_mode(int n, double p, double k, const CavityGeometry& geometry) {
  return {n, p, k, dispersion_omega(n, p, k, geometry)};
}

void validate(const LOMode& mode, const CavityGeometry& geometry) {
  const double expected = dispersion_omega(mode.n, mode.p, mode.k, geometry);
  const double w2 = mode.omega * mode.omega;
  const double e2 = expected * expected;
  if (std::abs(w2 - e2) > 1e-12 * e2)
    throw std::invalid_argument("LO mode frequency violates the dispersion relation");
}

ModeField lo_mode_fields(const LOMode& mode, double t, double x, double y, double z,
                         const CavityGeometry& geometry) {
  validate(mode, geometry);
  validate(FieldPoint{x, y}, geometry);
  const double kx = mode.n * kPi / geometry.a();
  const double carrier = std::cos(mode.k * z - mode.omega * t);
  return {-mode.omega * mode.p * carrier * std::cos(kx * x) * std::sin(mode.p * y),
          mode.omega * kx * carrier * std::sin(kx * x) * std::cos(mode.p * y)};
}

BalanceReport check_balance(const DetectorConfig& config, const LOMode& mode,
                            const CavityGeometry& geometry, double tolerance) {
  validate(config, geometry);
  // Both diodes sit at z = 0 and share the carrier cos(kz - wt), so the
  // maximum over a period is reached where |carrier| = 1.
  const double peak1 = lo_mode_fields(mode, 0.0, config.diode1.x, config.diode1.y, 0.0, geometry).fy;
  const double peak2 = lo_mode_fields(mode, 0.0, config.diode2.x, config.diode2.y, 0.0, geometry).fy;
  const double scale = std::max(std::abs(peak1), std::abs(peak2));
  BalanceReport report;
  report.residual = scale > 0.0 ? std::abs(peak1 + peak2) / scale : 0.0;
  report.balanced = report.residual <= tolerance;
  return report;
}

double smeared_R(const FieldPoint& p1, const FieldPoint& p2, const LOKernel& kernel,
                 const CavityGeometry& geometry, const TruncationPolicy& policy,
                 const QuadratureSpec& quadrature) {
  validate(kernel);
  validate(p1, geometry);
  validate(p2, geometry);
  validate(policy);
  if (p1.x != p2.x)
    throw std::invalid_argument("smeared R needs both points at the same distance x from the plate");

  const double lo = kernel.omega_lo - kWindowWidths * kernel.width;
  const double hi = kernel.omega_lo + kWindowWidths * kernel.width;
  if (!(lo > 0.0)) throw std::invalid_argument("LO kernel window reaches omega <= 0");
  if (kernel.amplitude == 0.0) return 0.0;

  const FieldPoint relative{p1.x, p2.y - p1.y};
  const bool diagonal = relative.y == 0.0;
  auto integrand = [&](double omega) {
    const double k = kernel(omega);
    const double sigma = diagonal ? sigma_yy_diag(omega, relative.x, geometry, policy).value
                                  : sigma_yy(omega, relative, geometry, policy).value;
    return k * k * sigma;
  };

  // The truncated density is smooth between multiples of pi but oscillates
  // in omega with period ~ 2pi / (largest image distance).
  const double reach = policy.N * geometry.period() + 2.0 * relative.x + std::abs(relative.y);
  const double panel_width = 2.0 * kPi / std::max(reach, 1.0);

  std::vector<double> cuts{lo};
  for (double m = std::ceil(lo / kPi); m * kPi < hi; m += 1.0)
    if (m * kPi > lo) cuts.push_back(m * kPi);
  cuts.push_back(hi);

  std::vector<Panel> panels;
  double l1_total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double len = cuts[i + 1] - cuts[i];
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / panel_width)));
    for (int j = 0; j < pieces; ++j) {
      const double a = cuts[i] + len * j / pieces;
      const double b = (j + 1 == pieces) ? cuts[i + 1] : cuts[i] + len * (j + 1) / pieces;
      panels.push_back(gk15(integrand, a, b));
      l1_total += panels.back().l1;
    }
  }

  // Below cutoff the integrand is pure truncation ripple, so accuracy is
  // measured against the free-space density as well as the integrand itself.
  const double free_space = kernel.kappa() * sigma_vacuum(kernel.omega_lo, 0.0);
  const double scale = std::max(l1_total, free_space);
  const double target = std::max(quadrature.rel_tol * scale, quadrature.abs_floor);
  const double density = target / (hi - lo);
  double value = 0.0;
  double error = 0.0;
  for (const auto& panel : panels) refine(integrand, panel, density, quadrature.max_depth, value, error);

  // A near-zero result has no meaningful relative error; the absolute
  // target decides.
  if (error > quadrature.fail_fraction * std::abs(value) && error > target)
    throw QuadratureFailure("smeared R: error estimate " + detail::show(error) +
                            " exceeds tolerance for result " + detail::show(value));
  return value;
}

double mean_current(const DetectorConfig& config, const LOKernel& kernel,
                    const std::vector<FieldComponent>& classical_field) {
  validate(kernel);
  double total = 0.0;
  for (const auto& c : classical_field)
    total += kernel(c.omega) * (c.amp_diode1 + c.amp_diode2) * std::cos(c.omega * kernel.t0 + c.phase);
  return config.calibration * total;
}

std::vector<FieldComponent> mode_as_field(const LOMode& mode, const DetectorConfig& config,
                                          const CavityGeometry& geometry) {
  const double a1 = lo_mode_fields(mode, 0.0, config.diode1.x, config.diode1.y, 0.0, geometry).fy;
  const double a2 = lo_mode_fields(mode, 0.0, config.diode2.x, config.diode2.y, 0.0, geometry).fy;
  // cos(kz - wt) at z = 0 is cos(wt): zero phase.
  return {FieldComponent{mode.omega, a1, a2, 0.0}};
}

double variance_current(const DetectorConfig& config, const LOKernel& kernel,
                        const CavityGeometry& geometry, const TruncationPolicy& policy,
                        const QuadratureSpec& quadrature) {
  validate(config, geometry);
  const double r11 = smeared_R(config.diode1, config.diode1, kernel, geometry, policy, quadrature);
  const double r12 = smeared_R(config.diode1, config.diode2, kernel, geometry, policy, quadrature);
  const double r22 = smeared_R(config.diode2, config.diode2, kernel, geometry, policy, quadrature);
  const double a2 = config.calibration * config.calibration;
  return a2 * (r11 + r12 + r12 + r22);
}

double variance_approx(const FieldPoint& diode, const LOKernel& kernel,
                       const DetectorConfig& config, const CavityGeometry& geometry,
                       const TruncationPolicy& policy, const QuadratureSpec& quadrature) {
  validate(config, geometry);
  const double a2 = config.calibration * config.calibration;
  return 2.0 * a2 * smeared_R(diode, diode, kernel, geometry, policy, quadrature);
}

}  // namespace casimir
