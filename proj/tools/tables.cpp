#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <system_error>

#include "casimir/spectral.hpp"
#include "cli.hpp"
#include "json.hpp"
#include "parallel.hpp"

namespace casimir::cli {

namespace {

bool is_flag(const Table& table, std::size_t column) {
  return std::find(table.flag_columns.begin(), table.flag_columns.end(),
                   table.columns[column]) != table.flag_columns.end();
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw std::invalid_argument("grid needs at least one point");
  if (count == 1) return {lo};
  if (!(hi > lo)) throw std::invalid_argument("degenerate grid range");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[i] = lo + (hi - lo) * i / (count - 1);
  out.back() = hi;
  return out;
}

double internal_length(double microns, const Common& common) {
  return to_internal({microns, Unit::length}, CavityGeometry(common.a_microns));
}

double microns(double internal, const Common& common) {
  return from_internal(internal, Unit::length, CavityGeometry(common.a_microns));
}

std::vector<double> density_row(const SpectralSample& s, double x_um, double y_um) {
  return {s.omega, x_um, y_um, s.value, s.err, static_cast<double>(s.terms)};
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("float formatting failed");
  return std::string(buf, end);
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += is_flag(table, i) ? (row[i] != 0.0 ? "true" : "false") : format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& table) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (is_flag(table, i))
        obj[table.columns[i]] = row[i] != 0.0;
      else if (std::isfinite(row[i]))
        obj[table.columns[i]] = row[i];
      else
        obj[table.columns[i]] = nullptr;
    }
    rows.push_back(std::move(obj));
  }
  nlohmann::ordered_json doc;
  doc["columns"] = table.columns;
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

Table spectral_diag_table(const Common& common, const std::vector<double>& omegas,
                          const std::vector<double>& xs_um) {
  const CavityGeometry geometry;
  struct Job {
    double omega;
    double x;
  };
  std::vector<Job> jobs;
  for (double w : omegas)
    for (double x : xs_um) jobs.push_back({w, internal_length(x, common)});

  const auto samples = parallel_map<SpectralSample>(jobs.size(), common.workers, [&](std::size_t i) {
    return sigma_yy_diag(jobs[i].omega, jobs[i].x, geometry, common.policy);
  });

  Table table;
  table.columns = kDensityColumns;
  for (const char* c : {"vacuum", "ratio", "sub_cutoff", "near_discontinuity"})
    table.columns.emplace_back(c);
  table.flag_columns = {"sub_cutoff", "near_discontinuity"};
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& s = samples[i];
    auto row = density_row(s, microns(jobs[i].x, common), 0.0);
    const double vac = sigma_vacuum(s.omega, 0.0);
    row.push_back(vac);
    row.push_back(s.value / vac);
    row.push_back(s.omega < kPi ? 1.0 : 0.0);
    row.push_back(near_discontinuity(s.omega, common.guard) ? 1.0 : 0.0);
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table spectral_map_table(const Common& common, double omega, int x_steps, double y_min_um,
                         double y_max_um, int y_steps) {
  const CavityGeometry geometry;
  const auto xs = linspace(0.0, 1.0, x_steps);
  const auto ys = linspace(internal_length(y_min_um, common), internal_length(y_max_um, common),
                           y_steps);
  const std::size_t count = xs.size() * ys.size();
  const auto samples = parallel_map<SpectralSample>(count, common.workers, [&](std::size_t i) {
    return sigma_yy(omega, {xs[i / ys.size()], ys[i % ys.size()]}, geometry, common.policy);
  });
  Table table;
  table.columns = kDensityColumns;
  for (std::size_t i = 0; i < count; ++i)
    table.rows.push_back(density_row(samples[i], microns(xs[i / ys.size()], common),
                                     microns(ys[i % ys.size()], common)));
  return table;
}

Table spectral_slice_table(const Common& common, double omega, double x_um, double y_min_um,
                           double y_max_um, int y_steps) {
  const CavityGeometry geometry;
  const double x = internal_length(x_um, common);
  const auto ys = linspace(internal_length(y_min_um, common), internal_length(y_max_um, common),
                           y_steps);
  const double diag = sigma_yy_diag(omega, x, geometry, common.policy).value;
  const auto samples = parallel_map<SpectralSample>(ys.size(), common.workers, [&](std::size_t i) {
    return sigma_yy(omega, {x, ys[i]}, geometry, common.policy);
  });
  Table table;
  table.columns = kDensityColumns;
  table.columns.emplace_back("ratio");
  for (std::size_t i = 0; i < ys.size(); ++i) {
    auto row = density_row(samples[i], x_um, microns(ys[i], common));
    row.push_back(samples[i].value / diag);
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table fig4_left_table(const Common& common, int omega_steps, int x_steps) {
  const CavityGeometry geometry;
  const double top = 4.0 * kPi;
  const auto grid = build_grid(top / omega_steps, top, omega_steps, common.guard);
  const auto xs = linspace(0.0, 1.0, x_steps);
  const std::size_t count = grid.points.size() * xs.size();
  const auto samples = parallel_map<SpectralSample>(count, common.workers, [&](std::size_t i) {
    return sigma_yy_diag(grid.points[i / xs.size()], xs[i % xs.size()], geometry, common.policy);
  });
  Table table;
  table.columns = kDensityColumns;
  table.columns.emplace_back("normalized_difference");
  for (std::size_t i = 0; i < count; ++i) {
    const auto& s = samples[i];
    auto row = density_row(s, microns(xs[i % xs.size()], common), 0.0);
    const double vac = sigma_vacuum(s.omega, 0.0);
    row.push_back((s.value - vac) / vac);
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table fig4_right_table(const Common& common, int omega_steps) {
  const CavityGeometry geometry;
  const double top = 4.0 * kPi;
  const auto grid = build_grid(top / omega_steps, top, omega_steps, common.guard);
  const double x_quarter = 0.25;
  const double x_half = 0.5;
  struct Pair {
    SuppressionValue quarter;
    SuppressionValue half;
  };
  const auto values = parallel_map<Pair>(grid.points.size(), common.workers, [&](std::size_t i) {
    const double w = grid.points[i];
    return Pair{suppression_db(w, x_quarter, geometry, common.policy),
                suppression_db(w, x_half, geometry, common.policy)};
  });
  Table table;
  table.columns = {"omega_over_c_per_a", "db_x025", "db_x05"};
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    if (!values[i].quarter.defined() || !values[i].half.defined()) continue;
    table.rows.push_back({grid.points[i], *values[i].quarter.db, *values[i].half.db});
  }
  return table;
}

Table figure_table(std::string_view name, const Common& common) {
  const double half_span = 50.0 * common.a_microns;
  if (name == "fig2-left")
    return spectral_map_table(common, 2.0 * kPi, 21, -half_span, half_span, 201);
  if (name == "fig2-right")
    return spectral_slice_table(common, 2.0 * kPi, 0.75 * common.a_microns, -half_span, half_span,
                                201);
  if (name == "fig4-left") return fig4_left_table(common, 200, 21);
  if (name == "fig4-right") return fig4_right_table(common, 400);
  throw std::invalid_argument("unknown figure " + std::string(name));
}

}  // namespace casimir::cli
