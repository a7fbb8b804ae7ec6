// Acceptance suite: one PASS/FAIL line per criterion, detail lines indented.
// Exit status is the number of failed criteria (0 when all pass).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/bhd.hpp"
#include "casimir/imagesum.hpp"
#include "casimir/oracle.hpp"
#include "casimir/spectral.hpp"
#include "cli.hpp"
#include "parallel.hpp"

using namespace casimir;

namespace {

const CavityGeometry kUnit;

double vac(double w) { return w * w * w / (6.0 * kPi * kPi); }
double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

TruncationPolicy terms(int n, bool accelerate = false) {
  TruncationPolicy p;
  p.N = n;
  p.accelerate = accelerate;
  return p;
}

std::vector<std::string> details;

void detail(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  details.emplace_back(buf);
}

struct Outcome {
  bool passed;
  std::string summary;
};

std::string show(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

// 1
Outcome vacuum_diagonal() {
  double worst = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double w = 4.0 * kPi * i / 50.0;
    worst = std::max(worst, rel(sigma_vacuum(w, 0.0), vac(w)));
  }
  return {worst <= 1e-12, show("max relative error %.3g over 50 frequencies (tol 1e-12)", worst)};
}

// 2
Outcome vacuum_embedding() {
  double worst = 0.0;
  for (int i = 1; i <= 20; ++i)
    for (int j = 0; j < 20; ++j) {
      const double w = 4.0 * kPi * i / 20.0;
      const double y = 50.0 * j / 19.0;
      worst = std::max(worst, rel(sigma_yy_vacuum_term(w, y), sigma_vacuum(w, y)));
    }
  return {worst <= 1e-12, show("max relative error %.3g on 20x20 (omega, y) grid (tol 1e-12)", worst)};
}

// 3
Outcome boundary_zeros() {
  bool exact = true;
  for (int N : {0, 1, 10, 100, 1000, 10000})
    for (int i = 1; i <= 20; ++i) exact = exact && sigma_yy_diag(4.0 * kPi * i / 20.0, 0.0, kUnit, terms(N)).value == 0.0;
  const auto grid = build_grid(0.0, 4.0 * kPi, 20, kDefaultGuard);
  double worst = 0.0;
  for (double w : grid.points)
    worst = std::max(worst, std::abs(sigma_yy_diag(w, 1.0, kUnit, terms(10000)).value) / vac(w));
  detail("x=0 exactly zero for N in {0..10^4}: %s", exact ? "yes" : "no");
  return {exact && worst <= 1e-3, show("max |sigma(a)|/sigma_vac %.3g at N=10^4 (tol 1e-3)", worst)};
}

// 4
Outcome sub_cutoff() {
  double worst = 0.0;
  for (double w : {1.0, 2.0, 3.0})
    for (double x : {0.25, 0.5, 0.75})
      worst = std::max(worst, std::abs(sigma_yy_diag(w, x, kUnit, terms(1000, true)).value) / vac(w));
  return {worst < 0.05, show("max |sigma|/sigma_vac %.3g, N=1000 accelerated (tol 0.05)", worst)};
}

double max_offdiag_ratio(int N) {
  const double w = 2.0 * kPi;
  const double x = 0.75;
  const double diag = sigma_yy_diag(w, x, kUnit, terms(N)).value;
  double worst = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double y = 40.0 + 10.0 * i / 200.0;
    worst = std::max(worst, std::abs(sigma_yy(w, {x, y}, kUnit, terms(N)).value / diag));
  }
  return worst;
}

// 5
Outcome offdiagonal_decay() {
  const double at1000 = max_offdiag_ratio(1000);
  detail("informational: N=500 (1000 terms in total) gives max |ratio| %.4f", max_offdiag_ratio(500));
  return {at1000 < 0.1, show("max |ratio| %.4f for |y| in [40a, 50a], N=1000 (tol 0.1)", at1000)};
}

// 6
Outcome suppression() {
  const auto table = cli::figure_table("fig4-right", cli::Common{});
  double best = INFINITY;
  double at = 0.0;
  for (const auto& row : table.rows) {
    if (!(row[0] > kPi && row[0] < 4.0 * kPi)) continue;
    for (int c : {1, 2})
      if (row[c] < best) {
        best = row[c];
        at = row[0];
      }
  }
  return {best <= -3.0, show("minimum suppression %.3f dB at omega=%.4f (need <= -3)", best, at)};
}

struct Sample {
  double s;
  FieldPoint p;
};

std::vector<Sample> guarded_samples(int count, int N, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.05, 0.95);
  std::uniform_real_distribution<double> uy(-3.0, 3.0);
  std::uniform_real_distribution<double> us(0.1, 8.0);
  std::vector<Sample> out;
  while (static_cast<int>(out.size()) < count) {
    Sample smp{us(rng), {ux(rng), uy(rng)}};
    double gap = INFINITY;
    for (int n = -N; n <= N; ++n) {
      const auto d = image_distances(n, smp.p, kUnit);
      gap = std::min({gap, std::abs(smp.s - d.A), std::abs(smp.s - d.B)});
    }
    if (gap > 0.05) out.push_back(smp);
  }
  return out;
}

// 7
Outcome derivative_equivalence() {
  double worst = 0.0;
  for (const auto& smp : guarded_samples(20, kDefaultTerms, 2024))
    worst = std::max(worst, rel(two_point_yy_by_derivative(smp.s, smp.p, kUnit),
                                two_point_yy_closed(smp.s, smp.p, kUnit)));
  std::vector<double> ratios;
  for (const auto& smp : guarded_samples(8, 100, 99)) {
    const double closed = two_point_yy_closed(smp.s, smp.p, kUnit, terms(100));
    const double e1 = std::abs(two_point_yy_by_derivative(smp.s, smp.p, kUnit, terms(100), 8e-3) - closed);
    const double e2 = std::abs(two_point_yy_by_derivative(smp.s, smp.p, kUnit, terms(100), 4e-3) - closed);
    ratios.push_back(e1 / e2);
  }
  std::sort(ratios.begin(), ratios.end());
  const double order = std::log2(0.5 * (ratios[3] + ratios[4]));
  detail("measured convergence order in h: %.3f", order);
  return {worst <= 1e-4 && std::abs(order - 2.0) < 0.2,
          show("max relative difference %.3g at 20 samples (tol 1e-4), order %.2f", worst, order)};
}

// 8
Outcome oracle_agreement() {
  // Points keep ~0.6 from multiples of pi: the regulator smears the jumps.
  const std::vector<std::pair<double, double>> points{
      {3.8, 0.25}, {4.5, 0.5}, {5.0, 0.75}, {5.6, 0.25}, {7.0, 0.5},
      {7.9, 0.75}, {8.7, 0.25}, {10.1, 0.5}, {11.0, 0.75}, {11.8, 0.5}};
  const auto errors = cli::parallel_map<double>(points.size(), cli::worker_count(), [&](std::size_t i) {
    const auto [w, x] = points[i];
    return rel(sigma_via_numeric_ft(w, {x, 0.0}, kUnit), sigma_yy_diag(w, x, kUnit).value);
  });
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    detail("omega=%.2f x=%.2f relative difference %.3g", points[i].first, points[i].second, errors[i]);
    worst = std::max(worst, errors[i]);
  }
  return {worst <= 0.02, show("max relative difference %.3g at 10 points (tol 0.02)", worst)};
}

// 9
Outcome bhd_consistency() {
  const double w = 2.0 * kPi;
  const double dy = 50.0;
  DetectorConfig cfg{{0.5, 0.0}, {0.5, dy}, 1.0};
  LOKernel k;
  k.omega_lo = w;
  k.width = w / 100.0;
  k.amplitude = 1.0;
  const double full = variance_current(cfg, k, kUnit, {});
  const double approx = variance_approx(cfg.diode1, k, cfg, kUnit, {});
  const double gap = std::abs(full - approx) / std::abs(approx);

  LOKernel doubled = k;
  doubled.amplitude = 2.0;
  const double scaling = rel(variance_current(cfg, doubled, kUnit, {}), 4.0 * full);

  const double p = kPi / dy;
  const auto mode = make_lo_mode(1, p, std::sqrt(w * w - kPi * kPi - p * p), kUnit);
  const auto field = mode_as_field(mode, cfg, kUnit);
  const double scale = cfg.calibration * k(mode.omega) * std::abs(field[0].amp_diode1);
  const double mean = std::abs(mean_current(cfg, k, field)) / scale;

  detail("variance %.6g, approximation %.6g, relative gap %.3g (tol 0.1)", full, approx, gap);
  detail("amplitude x2 -> variance x4 to %.3g (tol 1e-12)", scaling);
  detail("balanced LO mean current / single-diode scale %.3g (tol 1e-12)", mean);
  return {gap <= 0.1 && scaling <= 1e-12 && mean <= 1e-12,
          show("gap %.3g, scaling %.3g, mean %.3g", gap, scaling, mean)};
}

// 10
Outcome property_suites() {
  bool mirror = true;
  for (int N : {10, 100, 1000})
    for (double w : {0.7, 2.0, 5.0, 9.5})
      for (double x : {0.05, 0.2, 0.35, 0.49}) {
        const auto lo = sigma_yy_diag(w, x, kUnit, terms(N));
        const auto hi = sigma_yy_diag(w, 1.0 - x, kUnit, terms(N));
        mirror = mirror && std::abs(lo.value - hi.value) <= 2.0 * std::max(lo.err, hi.err);
      }
  bool parity = true;
  for (int N : {0, 10, 1000})
    for (double y : {0.01, 0.4, 3.0, 49.0}) {
      parity = parity && sigma_yy(5.0, {0.3, y}, kUnit, terms(N)).value ==
                             sigma_yy(5.0, {0.3, -y}, kUnit, terms(N)).value;
      parity = parity && two_point_yy_closed(0.37, {0.3, y}, kUnit, terms(N)) ==
                             two_point_yy_closed(0.37, {0.3, -y}, kUnit, terms(N));
    }
  bool scaling = true;
  for (int N : {0, 1, 5, 100, 1000})
    for (double lambda : {2.0, 4.0, 0.5})
      for (double w : {1.3, 5.0, 10.1})
        for (double x : {0.25, 0.6}) {
          const CavityGeometry scaled(1.0 / lambda);
          const double base = sigma_yy_diag(w, x, kUnit, terms(N)).value;
          const double other = sigma_yy_diag(lambda * w, x / lambda, scaled, terms(N)).value;
          scaling = scaling && base == other / (lambda * lambda * lambda);
        }
  cli::Common one;
  one.workers = 1;
  cli::Common many = one;
  many.workers = 4;
  const bool deterministic = cli::to_csv(cli::figure_table("fig2-left", one)) ==
                                 cli::to_csv(cli::figure_table("fig2-left", many)) &&
                             cli::to_csv(cli::figure_table("fig4-left", one)) ==
                                 cli::to_csv(cli::figure_table("fig4-left", many));
  auto yn = [](bool b) { return b ? "ok" : "FAILED"; };
  return {mirror && parity && scaling && deterministic,
          show("mirror %s, y-parity %s, scaling law %s, worker determinism %s", yn(mirror),
               yn(parity), yn(scaling), yn(deterministic))};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream cs(line);
    std::string cell;
    while (std::getline(cs, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

// Largest cell difference relative to the column's magnitude; infinity on a
// shape or text mismatch.
double baseline_difference(const std::string& got, const std::string& want) {
  const auto a = parse_csv(got);
  const auto b = parse_csv(want);
  if (a.size() != b.size() || a.empty() || a[0] != b[0]) return INFINITY;
  const std::size_t cols = b[0].size();
  std::vector<double> scale(cols, 0.0);
  for (std::size_t r = 1; r < b.size(); ++r) {
    if (b[r].size() != cols || a[r].size() != cols) return INFINITY;
    for (std::size_t c = 0; c < cols; ++c) {
      char* end = nullptr;
      const double v = std::strtod(b[r][c].c_str(), &end);
      if (*end == '\0') scale[c] = std::max(scale[c], std::abs(v));
    }
  }
  double worst = 0.0;
  for (std::size_t r = 1; r < b.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      char* ea = nullptr;
      char* eb = nullptr;
      const double va = std::strtod(a[r][c].c_str(), &ea);
      const double vb = std::strtod(b[r][c].c_str(), &eb);
      if (*ea != '\0' || *eb != '\0') {
        if (a[r][c] != b[r][c]) return INFINITY;
        continue;
      }
      if (scale[c] > 0.0) worst = std::max(worst, std::abs(va - vb) / scale[c]);
    }
  return worst;
}

// 11
Outcome figure_regression() {
  bool baselines = true;
  const cli::Common common;
  for (const char* name : {"fig2-left", "fig2-right", "fig4-left", "fig4-right"}) {
    std::ifstream in(std::string(CASIMIR_BASELINE_DIR) + "/" + name + ".csv");
    if (!in) {
      detail("%s: baseline missing", name);
      baselines = false;
      continue;
    }
    const std::string want((std::istreambuf_iterator<char>(in)), {});
    const double d = baseline_difference(cli::to_csv(cli::figure_table(name, common)), want);
    detail("%s: max difference %.3g of column scale (tol 1e-10)", name, d);
    baselines = baselines && d <= 1e-10;
  }

  const auto slice = cli::figure_table("fig2-right", common);
  const auto ratio_col = slice.columns.size() - 1;
  double tail = 0.0;
  for (const auto& row : slice.rows)
    if (std::abs(row[2]) >= 40.0) tail = std::max(tail, std::abs(row[ratio_col]));
  detail("fig2-right: max |ratio| beyond |y| = 40a is %.4f (need < 0.1)", tail);

  const auto left = cli::figure_table("fig4-left", common);
  const auto nd = left.columns.size() - 1;
  double below = 0.0;
  double plate = 0.0;
  for (const auto& row : left.rows) {
    if (row[0] < kPi) below = std::max(below, std::abs(row[nd] + 1.0));
    if (row[1] == 0.0 || row[1] == 1.0) plate = std::max(plate, std::abs(row[nd] + 1.0));
  }
  detail("fig4-left: max |d + 1| below pi %.3g, at the plates %.3g (need < 0.05)", below, plate);
  const bool shape = tail < 0.1 && below < 0.05 && plate < 0.05;
  return {baselines && shape, show("baselines %s, shape checks %s", baselines ? "match" : "DIFFER",
                                   shape ? "ok" : "FAILED")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"vacuum diagonal", vacuum_diagonal},
      {"vacuum embedding", vacuum_embedding},
      {"boundary zeros", boundary_zeros},
      {"sub-cutoff vanishing", sub_cutoff},
      {"off-diagonal decay", offdiagonal_decay},
      {"3 dB suppression", suppression},
      {"derivative vs closed form", derivative_equivalence},
      {"oracle agreement", oracle_agreement},
      {"homodyne consistency", bhd_consistency},
      {"property suites", property_suites},
      {"figure regression", figure_regression},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome{false, ""};
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %-26s %s [%.1fs]\n", outcome.passed ? "PASS" : "FAIL", i + 1,
                criteria[i].first, outcome.summary.c_str(), secs);
    for (const auto& line : details) std::printf("    %s\n", line.c_str());
    details.clear();
    std::fflush(stdout);
    failed += outcome.passed ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
