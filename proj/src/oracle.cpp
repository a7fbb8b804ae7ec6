#include "casimir/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <stdexcept>
#include <string>

#include "casimir/errors.hpp"
#include "casimir/spectral.hpp"

namespace casimir {

namespace {

// One image summand of the two-point function, written through
// u = 1/(z^2 - r^2):  (r^2 + z^2 - 2y^2) u^3 = u^2 + 2 c u^3  with
// c = r^2 - y^2 ((nL)^2 for A-terms, (2x - nL)^2 for B-terms).
struct ImageTerm {
  double r2;
  double c;
  double weight;  // +2 for a merged A pair, +1 for the lone n = 0 A-term, -1 for B
};

std::vector<ImageTerm> collect_terms(const FieldPoint& point, const CavityGeometry& geometry,
                                     const TruncationPolicy& policy, ImageSelection selection) {
  const double y2 = point.y * point.y;
  std::vector<ImageTerm> terms;
  terms.push_back({y2, 0.0, 1.0});
  if (selection == ImageSelection::vacuum_only) return terms;
  const double period = geometry.period();
  for (int n = 1; n <= policy.N; ++n) {
    const double nl = n * period;
    terms.push_back({nl * nl + y2, nl * nl, 2.0});
  }
  for (int n = -policy.N; n <= policy.N; ++n) {
    const double bx = 2.0 * point.x - n * period;
    terms.push_back({bx * bx + y2, bx * bx, -1.0});
  }
  return terms;
}

// Point of [lo, hi] farthest from every pole (poles sorted ascending).
double widest_gap(const std::vector<double>& poles, double lo, double hi) {
  auto distance = [&](double s) {
    auto it = std::lower_bound(poles.begin(), poles.end(), s);
    double d = std::numeric_limits<double>::infinity();
    if (it != poles.end()) d = std::min(d, *it - s);
    if (it != poles.begin()) d = std::min(d, s - *(it - 1));
    return d;
  };
  std::vector<double> candidates{lo, hi};
  auto first = std::lower_bound(poles.begin(), poles.end(), lo);
  if (first != poles.begin()) --first;
  for (auto it = first; it != poles.end() && std::next(it) != poles.end() && *it <= hi; ++it) {
    const double mid = 0.5 * (*it + *std::next(it));
    if (mid >= lo && mid <= hi) candidates.push_back(mid);
  }
  double best = hi;
  double best_distance = -1.0;
  for (double c : candidates) {
    const double d = distance(c);
    if (d > best_distance || (d == best_distance && c > best)) {
      best = c;
      best_distance = d;
    }
  }
  return best;
}

struct Trapezoid {
  double full;     // Re of the integral over [0, s_cut]
  double partial;  // Re of the integral over [0, s_prev]
};

Trapezoid regulated_transform(double omega, double eps, double s_cut, double s_prev,
                              int samples, const std::vector<ImageTerm>& terms) {
  const double h_target = std::min(2.0 * kPi / (samples * omega), eps / kStepsPerRegulator);
  const long steps = std::max(2L, static_cast<long>(std::ceil(s_cut / h_target)));
  const double h = s_cut / static_cast<double>(steps);
  const long prev_index = std::clamp(std::lround(s_prev / h), 0L, steps);

  auto integrand_re = [&](double s) {
    // z = s - i eps, z^2 = (s^2 - eps^2) - 2 i s eps
    const double zr = s * s - eps * eps;
    const double zi = -2.0 * s * eps;
    double gr = 0.0;
    double gi = 0.0;
    for (const auto& t : terms) {
      const double dr = zr - t.r2;
      const double m = 1.0 / (dr * dr + zi * zi);
      const double ur = dr * m;
      const double ui = -zi * m;
      const double u2r = ur * ur - ui * ui;
      const double u2i = 2.0 * ur * ui;
      const double u3r = u2r * ur - u2i * ui;
      const double u3i = u2r * ui + u2i * ur;
      gr += t.weight * (u2r + 2.0 * t.c * u3r);
      gi += t.weight * (u2i + 2.0 * t.c * u3i);
    }
    // Re[e^{i w s} G]
    return std::cos(omega * s) * gr - std::sin(omega * s) * gi;
  };

  double sum = 0.0;
  double partial = 0.0;
  double first = 0.0;
  for (long j = 0; j <= steps; ++j) {
    const double f = integrand_re(j * h);
    if (j == 0) first = f;
    sum += f;
    if (j == prev_index) partial = h * (sum - 0.5 * (first + f));
    if (j == steps) sum -= 0.5 * (first + f);
  }
  constexpr double kInvPi2 = 1.0 / (kPi * kPi);
  return {h * sum * kInvPi2, partial * kInvPi2};
}

}  // namespace

void validate(const OracleConfig& config) {
  if (config.eps_schedule.empty()) throw std::invalid_argument("empty regulator schedule");
  for (std::size_t i = 0; i < config.eps_schedule.size(); ++i) {
    if (!(config.eps_schedule[i] > 0.0))
      throw std::invalid_argument("regulator values must be positive");
    if (i > 0 && !(config.eps_schedule[i] < config.eps_schedule[i - 1]))
      throw std::invalid_argument("regulator schedule must be strictly decreasing");
  }
  if (!(config.s_max > 0.0)) throw std::invalid_argument("s_max must be positive");
  if (config.samples < 8) throw std::invalid_argument("need at least 8 samples per oscillation");
}

double extrapolate_to_zero(const std::vector<double>& eps, const std::vector<double>& values) {
  if (eps.size() != values.size() || eps.empty())
    throw std::invalid_argument("extrapolation needs matching, non-empty inputs");
  std::vector<double> p = values;
  const std::size_t n = p.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = 0; i + level < n; ++i)
      p[i] = (eps[i] * p[i + 1] - eps[i + level] * p[i]) / (eps[i] - eps[i + level]);
  return p[0];
}

OracleRun numeric_ft_run(double omega, const FieldPoint& point, const CavityGeometry& geometry,
                         const TruncationPolicy& policy, const OracleConfig& config,
                         ImageSelection selection) {
  if (!std::isfinite(omega) || !(omega > 0.0))
    throw std::invalid_argument("frequency must be finite and positive");
  validate(point, geometry);
  validate(policy);
  validate(config);

  const auto terms = collect_terms(point, geometry, policy, selection);
  std::vector<double> poles;
  poles.reserve(terms.size());
  for (const auto& t : terms) poles.push_back(std::sqrt(t.r2));
  std::sort(poles.begin(), poles.end());

  const double period = geometry.period();
  OracleRun run;
  run.s_cut = widest_gap(poles, std::max(config.s_max - period, 0.5 * config.s_max), config.s_max);
  const double s_prev = widest_gap(poles, std::max(run.s_cut - 1.5 * period, 0.0),
                                   std::max(run.s_cut - 0.5 * period, 0.0));

  double tail = 0.0;
  for (double eps : config.eps_schedule) {
    const auto t = regulated_transform(omega, eps, run.s_cut, s_prev, config.samples, terms);
    // (1/2pi) * 2 Re(...) over the symmetric window.
    run.raw.push_back(t.full / kPi);
    tail = std::abs(t.full - t.partial) / kPi;
  }
  run.tail = tail;
  run.value = extrapolate_to_zero(config.eps_schedule, run.raw);

  // Free-space diagonal density w^3/6pi^2 sets the floor for near-zero results.
  const double scale = std::max(std::abs(run.value), omega * omega * omega / (6.0 * kPi * kPi));
  const std::size_t k = run.raw.size();
  if (k >= 3) {
    const double d1 = run.raw[k - 2] - run.raw[k - 3];
    const double d2 = run.raw[k - 1] - run.raw[k - 2];
    const double noise = 1e-9 * scale;
    if (std::abs(d2) > noise && (d1 * d2 < 0.0 || std::abs(d2) > std::abs(d1)))
      throw ExtrapolationDivergence("regulated estimates are not contracting: deltas " +
                                    detail::show(d1) + ", " + detail::show(d2));
  }
  if (run.tail > 0.01 * scale)
    throw TailTooLarge("tail estimate " + detail::show(run.tail) + " exceeds 1% of scale " +
                       detail::show(scale));
  return run;
}

double sigma_via_numeric_ft(double omega, const FieldPoint& point,
                            const CavityGeometry& geometry, const TruncationPolicy& policy,
                            const OracleConfig& config, ImageSelection selection) {
  return numeric_ft_run(omega, point, geometry, policy, config, selection).value;
}

ConvergenceReport convergence_report(double omega, const FieldPoint& point,
                                     const CavityGeometry& geometry,
                                     const std::vector<int>& N_list, bool accelerate) {
  if (N_list.empty()) throw std::invalid_argument("N_list must not be empty");
  for (std::size_t i = 1; i < N_list.size(); ++i)
    if (N_list[i] <= N_list[i - 1]) throw std::invalid_argument("N_list must be increasing");

  ConvergenceReport report;
  double previous_delta = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < N_list.size(); ++i) {
    TruncationPolicy policy;
    policy.N = N_list[i];
    policy.accelerate = accelerate;
    const auto sample = sigma_yy(omega, point, geometry, policy);
    ConvergenceRow row{policy.N, sample.value, sample.err, 0.0};
    if (i > 0) {
      row.delta = std::abs(sample.value - report.rows.back().value);
      if (!(row.delta < previous_delta || row.delta == 0.0)) report.shrinking = false;
      previous_delta = row.delta;
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace casimir
