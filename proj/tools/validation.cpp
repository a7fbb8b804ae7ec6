#include <algorithm>
#include <cmath>
#include <random>

#include "casimir/errors.hpp"
#include "casimir/imagesum.hpp"
#include "casimir/oracle.hpp"
#include "casimir/spectral.hpp"
#include "cli.hpp"
#include "parallel.hpp"

namespace casimir::cli {

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

CheckResult check(std::string name, double measured, double threshold, bool strict = false) {
  const bool ok = strict ? measured < threshold : measured <= threshold;
  return {std::move(name), measured, threshold, ok};
}

}  // namespace

std::vector<CheckResult> run_validation(const Common& common) {
  const CavityGeometry geometry;
  std::vector<CheckResult> out;

  {
    double worst = 0.0;
    for (int i = 1; i <= 50; ++i) {
      const double w = 4.0 * kPi * i / 50.0;
      worst = std::max(worst, rel(sigma_vacuum(w, 0.0), w * w * w / (6.0 * kPi * kPi)));
    }
    out.push_back(check("vacuum diagonal closed form", worst, 1e-12));
  }
  {
    double worst = 0.0;
    for (int i = 1; i <= 20; ++i)
      for (int j = 0; j < 20; ++j) {
        const double w = 4.0 * kPi * i / 20.0;
        const double y = 0.05 + 2.5 * j;
        worst = std::max(worst, rel(sigma_yy_vacuum_term(w, y), sigma_vacuum(w, y)));
      }
    out.push_back(check("free-space term of the image sum", worst, 1e-12));
  }
  {
    double worst = 0.0;
    for (int n : {0, 1, 10, 1000})
      for (double w : {1.0, 5.0, 11.0}) {
        TruncationPolicy policy;
        policy.N = n;
        worst = std::max(worst, std::abs(sigma_yy_diag(w, 0.0, geometry, policy).value));
      }
    out.push_back(check("density vanishes on the plate at x = 0", worst, 0.0));

    TruncationPolicy policy;
    policy.N = 10000;
    double far = 0.0;
    for (double w : {5.0, 8.0, 11.0})
      far = std::max(far, std::abs(sigma_yy_diag(w, 1.0, geometry, policy).value) /
                              sigma_vacuum(w, 0.0));
    out.push_back(check("density vanishes on the plate at x = a", far, 1e-3));
  }
  {
    TruncationPolicy policy;
    policy.accelerate = true;
    double worst = 0.0;
    for (double w : {1.0, 2.0, 3.0})
      for (double x : {0.25, 0.5, 0.75})
        worst = std::max(worst, std::abs(sigma_yy_diag(w, x, geometry, policy).value) /
                                    sigma_vacuum(w, 0.0));
    out.push_back(check("sub-cutoff density below 5% of vacuum", worst, 0.05, true));
  }
  {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> ux(0.1, 0.9);
    std::uniform_real_distribution<double> uy(-2.0, 2.0);
    std::uniform_real_distribution<double> us(0.2, 6.0);
    TruncationPolicy policy;
    policy.N = 50;
    double worst = 0.0;
    int taken = 0;
    while (taken < 5) {
      const FieldPoint p{ux(rng), uy(rng)};
      const double s = us(rng);
      try {
        const double fd = two_point_yy_by_derivative(s, p, geometry, policy);
        const double closed = two_point_yy_closed(s, p, geometry, policy);
        worst = std::max(worst, rel(fd, closed));
        ++taken;
      } catch (const LightConeProximity&) {
      }
    }
    out.push_back(check("finite-difference vs closed-form correlator", worst, 1e-4));
  }
  {
    const std::vector<std::pair<double, double>> points{{5.0, 0.25}, {8.0, 0.5}, {11.0, 0.75}};
    const auto diffs = parallel_map<double>(points.size(), common.workers, [&](std::size_t i) {
      const auto [w, x] = points[i];
      const double oracle = sigma_via_numeric_ft(w, {x, 0.0}, geometry);
      const double closed = sigma_yy_diag(w, x, geometry).value;
      return std::abs(oracle - closed) / std::max(sigma_vacuum(w, 0.0), std::abs(closed));
    });
    out.push_back(check("numerical transform vs closed-form density",
                        *std::max_element(diffs.begin(), diffs.end()), 0.02));
  }
  {
    double worst = 0.0;
    for (double w : {2.0, 5.0, 9.0})
      for (double x : {0.1, 0.3, 0.45}) {
        const auto lo = sigma_yy_diag(w, x, geometry, common.policy);
        const auto hi = sigma_yy_diag(w, 1.0 - x, geometry, common.policy);
        const double bound = 2.0 * std::max(lo.err, hi.err);
        worst = std::max(worst, std::abs(lo.value - hi.value) / bound);
      }
    out.push_back(check("mirror symmetry x <-> a - x (in units of 2 err)", worst, 1.0));
  }
  {
    double worst = 0.0;
    for (double y : {0.5, 3.0, 17.0})
      worst = std::max(worst, std::abs(sigma_yy(5.0, {0.3, y}, geometry, common.policy).value -
                                       sigma_yy(5.0, {0.3, -y}, geometry, common.policy).value));
    out.push_back(check("parity in y", worst, 0.0));
  }
  return out;
}

}  // namespace casimir::cli
