#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/oracle.hpp"
#include "casimir/spectral.hpp"

using namespace casimir;

namespace {

const CavityGeometry kUnit;

double vac(double w) { return w * w * w / (6.0 * kPi * kPi); }

}  // namespace

TEST(OracleConfig, Validation) {
  EXPECT_NO_THROW(validate(OracleConfig{}));
  OracleConfig c;
  c.eps_schedule = {0.05, 0.05};
  EXPECT_THROW(validate(c), std::invalid_argument);
  c.eps_schedule = {0.05, -0.01};
  EXPECT_THROW(validate(c), std::invalid_argument);
  c.eps_schedule = {};
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = {};
  c.s_max = 0.0;
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = {};
  c.samples = 4;
  EXPECT_THROW(validate(c), std::invalid_argument);
}

TEST(Extrapolation, ExactOnPolynomials) {
  const std::vector<double> eps{0.05, 0.025, 0.0125};
  auto poly = [](double e) { return 3.0 - 2.0 * e + 7.0 * e * e; };
  std::vector<double> v;
  for (double e : eps) v.push_back(poly(e));
  EXPECT_NEAR(extrapolate_to_zero(eps, v), 3.0, 1e-13);
  EXPECT_EQ(extrapolate_to_zero({0.1}, {4.0}), 4.0);
  EXPECT_NEAR(extrapolate_to_zero({0.2, 0.1}, {1.2, 1.1}), 1.0, 1e-14);
  EXPECT_THROW(extrapolate_to_zero({0.1, 0.2}, {1.0}), std::invalid_argument);
}

TEST(Oracle, FreeSpaceTerm) {
  const double w = 2.0 * kPi;
  const double y = 0.3;
  const double got = sigma_via_numeric_ft(w, {0.5, y}, kUnit, {}, {}, ImageSelection::vacuum_only);
  EXPECT_LT(std::abs(got - sigma_vacuum(w, y)), 0.01 * vac(w));
}

TEST(Oracle, AgreesWithClosedFormAboveCutoff) {
  const double w = 2.0 * kPi - 0.7;
  const auto run = numeric_ft_run(w, {0.25, 0.0}, kUnit);
  const double closed = sigma_yy_diag(w, 0.25, kUnit).value;
  RecordProperty("oracle", std::to_string(run.value));
  RecordProperty("closed", std::to_string(closed));
  EXPECT_LT(std::abs(run.value - closed), 0.02 * std::abs(closed));
  EXPECT_EQ(run.raw.size(), 3u);
  EXPECT_GT(run.s_cut, 198.0);
  EXPECT_LE(run.s_cut, 200.0);
}

TEST(Oracle, SubCutoffNearlyZero) {
  const double v = sigma_via_numeric_ft(2.0, {0.5, 0.0}, kUnit);
  EXPECT_LT(std::abs(v), 0.05 * vac(2.0));
}

TEST(Oracle, RaiseTailTooLarge) {
  OracleConfig short_window;
  short_window.s_max = 6.0;
  EXPECT_THROW(sigma_via_numeric_ft(2.0 * kPi - 0.7, {0.25, 0.0}, kUnit, {}, short_window),
               TailTooLarge);
}

TEST(Oracle, RaiseExtrapolationDivergence) {
  // Nearly equal first two regulators then a large jump: the refinements grow.
  OracleConfig odd;
  odd.eps_schedule = {0.05, 0.0499, 0.005};
  EXPECT_THROW(sigma_via_numeric_ft(2.0 * kPi - 0.7, {0.25, 0.0}, kUnit, {}, odd),
               ExtrapolationDivergence);
}

TEST(Oracle, RejectsBadInput) {
  EXPECT_THROW(sigma_via_numeric_ft(0.0, {0.5, 0.0}, kUnit), std::invalid_argument);
  EXPECT_THROW(sigma_via_numeric_ft(3.0, {1.5, 0.0}, kUnit), std::invalid_argument);
}

TEST(Convergence, DeltasShrink) {
  const auto report = convergence_report(5.0, {0.3, 0.0}, kUnit, {100, 1000, 10000});
  ASSERT_EQ(report.rows.size(), 3u);
  EXPECT_TRUE(report.shrinking);
  EXPECT_EQ(report.rows[0].delta, 0.0);
  EXPECT_LT(report.rows[2].delta, report.rows[1].delta);
  for (const auto& row : report.rows) EXPECT_EQ(row.value, sigma_yy_diag(5.0, 0.3, kUnit, [&] {
                                                  TruncationPolicy p;
                                                  p.N = row.N;
                                                  return p;
                                                }()).value);
}

TEST(Convergence, PlateGivesZeros) {
  const auto report = convergence_report(5.0, {0.0, 0.0}, kUnit, {10, 100});
  for (const auto& row : report.rows) {
    EXPECT_EQ(row.value, 0.0);
    EXPECT_EQ(row.delta, 0.0);
  }
  EXPECT_TRUE(report.shrinking);
}

TEST(Convergence, SingleTermAndValidation) {
  const auto report = convergence_report(5.0, {0.3, 0.0}, kUnit, {0});
  ASSERT_EQ(report.rows.size(), 1u);
  EXPECT_NEAR(report.rows[0].value, 125.0 / (4 * kPi * kPi) * (2.0 / 3.0 - q_kernel(3.0)), 1e-13);
  EXPECT_THROW(convergence_report(5.0, {0.3, 0.0}, kUnit, {}), std::invalid_argument);
  EXPECT_THROW(convergence_report(5.0, {0.3, 0.0}, kUnit, {10, 10}), std::invalid_argument);
}
