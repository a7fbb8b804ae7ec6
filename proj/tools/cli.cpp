#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "casimir/bhd.hpp"
#include "casimir/errors.hpp"
#include "casimir/imagesum.hpp"
#include "json.hpp"
#include "parallel.hpp"
#include "svg.hpp"

namespace casimir::cli {

unsigned worker_count() {
  if (const char* env = std::getenv("CASIMIR_BHD_WORKERS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// JSON config: top-level keys are global flags, objects are subcommand
// sections, arrays are multi-value options.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override {
    return "{}\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(input);
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    collect(doc, {}, items);
    return items;
  }

 private:
  static std::string scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    throw CLI::ConversionError("unsupported config value " + v.dump());
  }

  static void collect(const nlohmann::json& obj, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : obj.items()) {
      if (value.is_object()) {
        auto sub = parents;
        sub.push_back(key);
        collect(value, sub, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array())
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      else
        item.inputs.push_back(scalar(value));
      items.push_back(std::move(item));
    }
  }
};

struct Output {
  std::string path;
  std::string format = "csv";
  std::string svg;
};

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file << text;
  file.close();
  if (!file) throw IoError("failed writing " + path);
}

void emit(const Table& table, const Output& output, std::ostream& out) {
  write_text(output.path, output.format == "json" ? to_json(table) : to_csv(table), out);
}

void emit_svg(const Output& output, const std::string& svg, std::ostream& out) {
  if (!output.svg.empty()) write_text(output.svg, svg, out);
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 2 || !(hi > lo)) throw std::invalid_argument("degenerate grid");
  std::vector<double> v;
  for (int i = 0; i < count; ++i) v.push_back(lo + (hi - lo) * i / (count - 1));
  v.back() = hi;
  return v;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Casimir cavity spectral densities and balanced homodyne detection"};
  app.name("casimir-bhd");
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file mirroring the command-line flags");

  Common common;
  common.workers = worker_count();
  Output output;
  app.add_option("--a-microns", common.a_microns, "Plate separation a in micrometres")
      ->check(CLI::PositiveNumber);
  app.add_option("-N,--terms", common.policy.N, "Images summed on each side")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--accelerate", common.policy.accelerate, "Average the last partial sums");
  app.add_option("--guard", common.guard, "Distance kept from multiples of pi on omega grids")
      ->check(CLI::Range(1e-12, kPi / 4));
  app.add_option("-o,--output", output.path, "Output file (default stdout)");
  app.add_option("--format", output.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--svg", output.svg, "Also write an SVG rendering here");

  // spectral-diag
  auto* diag = app.add_subcommand("spectral-diag", "Coincident-point density sigma(omega, x)");
  std::vector<double> diag_omega{2.0 * kPi};
  std::vector<double> diag_x;
  int diag_x_steps = 21;
  diag->add_option("--omega", diag_omega, "Frequencies in c/a")->check(CLI::PositiveNumber);
  diag->add_option("--x", diag_x, "Distances from the plate in micrometres");
  diag->add_option("--x-steps", diag_x_steps, "Uniform x grid over [0, a] when --x is absent")
      ->check(CLI::Range(2, 1000000));

  // spectral-map
  auto* map = app.add_subcommand("spectral-map", "Density over (x, y) at fixed omega");
  double map_omega = 2.0 * kPi;
  std::vector<double> map_y;
  int map_x_steps = 21;
  int map_y_steps = 201;
  map->add_option("--omega", map_omega, "Frequency in c/a")->check(CLI::PositiveNumber);
  map->add_option("--x-steps", map_x_steps, "Points over [0, a]")->check(CLI::Range(2, 100000));
  map->add_option("--y-range", map_y, "y limits in micrometres (default +-50a)")->expected(2);
  map->add_option("--y-steps", map_y_steps, "Points over the y range")
      ->check(CLI::Range(2, 1000000));

  // spectral-slice
  auto* slice = app.add_subcommand("spectral-slice", "sigma(x, y)/sigma(x, x) along y");
  double slice_omega = 2.0 * kPi;
  std::optional<double> slice_x;
  std::vector<double> slice_y;
  int slice_y_steps = 201;
  slice->add_option("--omega", slice_omega, "Frequency in c/a")->check(CLI::PositiveNumber);
  slice->add_option("--x", slice_x, "Distance from the plate in micrometres (default 0.75a)");
  slice->add_option("--y-range", slice_y, "y limits in micrometres (default +-50a)")->expected(2);
  slice->add_option("--y-steps", slice_y_steps, "Points over the y range")
      ->check(CLI::Range(2, 1000000));

  // figure
  auto* figure = app.add_subcommand("figure", "Figure data with default grids");
  std::string figure_name;
  figure->add_option("name", figure_name, "fig2-left, fig2-right, fig4-left or fig4-right")
      ->required()
      ->check(CLI::IsMember({"fig2-left", "fig2-right", "fig4-left", "fig4-right"}));

  // twopoint
  auto* twopoint = app.add_subcommand("twopoint", "Closed-form two-point function");
  std::vector<double> tp_s;
  double tp_x = 0.5;
  double tp_y = 0.0;
  std::string tp_method = "closed";
  double tp_h = kDefaultStep;
  twopoint->add_option("--s", tp_s, "c times the time separation, micrometres")->required();
  twopoint->add_option("--x", tp_x, "Distance from the plate in micrometres");
  twopoint->add_option("--y", tp_y, "Transverse offset in micrometres");
  twopoint->add_option("--method", tp_method, "closed or derivative")
      ->check(CLI::IsMember({"closed", "derivative"}));
  twopoint->add_option("--step", tp_h, "Finite-difference step in units of a")
      ->check(CLI::PositiveNumber);

  // bhd
  auto* bhd = app.add_subcommand("bhd", "Balanced homodyne detector predictions");
  LOKernel kernel;
  double bhd_x1 = 0.5;
  double bhd_y1 = 0.0;
  double bhd_x2 = 0.5;
  std::optional<double> bhd_y2;
  std::optional<double> bhd_p;
  double calibration = 1.0;
  QuadratureSpec quad;
  bhd->add_option("--omega-lo", kernel.omega_lo, "LO frequency in c/a")->check(CLI::PositiveNumber);
  bhd->add_option("--width", kernel.width, "LO kernel width in c/a")->check(CLI::PositiveNumber);
  bhd->add_option("--amplitude", kernel.amplitude, "LO kernel amplitude")
      ->check(CLI::NonNegativeNumber);
  bhd->add_option("--t0", kernel.t0, "Detection time in a/c");
  bhd->add_option("--x1", bhd_x1, "Diode 1 distance from the plate, micrometres");
  bhd->add_option("--y1", bhd_y1, "Diode 1 transverse position, micrometres");
  bhd->add_option("--x2", bhd_x2, "Diode 2 distance from the plate, micrometres");
  bhd->add_option("--y2", bhd_y2, "Diode 2 transverse position, micrometres (default y1 + 50a)");
  bhd->add_option("--p", bhd_p, "LO transverse wave number in 1/a (default pi/|y2 - y1|)")
      ->check(CLI::NonNegativeNumber);
  bhd->add_option("--calibration", calibration, "Detector calibration A")
      ->check(CLI::PositiveNumber);
  bhd->add_option("--rel-tol", quad.rel_tol, "Relative quadrature tolerance")
      ->check(CLI::PositiveNumber);

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Oracle cross-checks and invariants");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::FileError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    const CavityGeometry physical(common.a_microns);
    const auto internal = [&](double microns) {
      return to_internal({microns, Unit::length}, physical);
    };
    validate(common.policy);

    if (*diag) {
      if (diag_x.empty())
        for (double x : linspace(0.0, 1.0, diag_x_steps)) diag_x.push_back(x * common.a_microns);
      const auto table = spectral_diag_table(common, diag_omega, diag_x);
      const auto col = [&](const char* name) {
        return static_cast<std::size_t>(
            std::find(table.columns.begin(), table.columns.end(), name) - table.columns.begin());
      };
      for (const auto& row : table.rows) {
        if (row[col("sub_cutoff")] != 0.0)
          err << "note: omega=" << format_double(row[0])
              << " is below the cutoff pi c/a (sub_cutoff=true)\n";
        if (row[col("near_discontinuity")] != 0.0)
          err << "note: omega=" << format_double(row[0])
              << " is within the guard of a multiple of pi (near_discontinuity=true)\n";
      }
      emit(table, output, out);
      emit_svg(output, svg_lines(table, "x", {"ratio"}, "sigma_diag / sigma_vacuum"), out);
    } else if (*map) {
      if (map_y.empty()) map_y = {-50.0 * common.a_microns, 50.0 * common.a_microns};
      const auto table =
          spectral_map_table(common, map_omega, map_x_steps, map_y[0], map_y[1], map_y_steps);
      emit(table, output, out);
      emit_svg(output, svg_heatmap(table, "y", "x", "sigma", "sigma_yy(omega; x, y)"), out);
    } else if (*slice) {
      if (slice_y.empty()) slice_y = {-50.0 * common.a_microns, 50.0 * common.a_microns};
      const double x = slice_x.value_or(0.75 * common.a_microns);
      const auto table =
          spectral_slice_table(common, slice_omega, x, slice_y[0], slice_y[1], slice_y_steps);
      emit(table, output, out);
      emit_svg(output, svg_lines(table, "y", {"ratio"}, "sigma(x, y) / sigma(x, x)"), out);
    } else if (*figure) {
      const auto table = figure_table(figure_name, common);
      emit(table, output, out);
      if (figure_name == "fig2-left")
        emit_svg(output, svg_heatmap(table, "y", "x", "sigma", figure_name), out);
      else if (figure_name == "fig2-right")
        emit_svg(output, svg_lines(table, "y", {"ratio"}, figure_name), out);
      else if (figure_name == "fig4-left")
        emit_svg(output,
                 svg_heatmap(table, "omega", "x", "normalized_difference", figure_name), out);
      else
        emit_svg(output,
                 svg_lines(table, "omega_over_c_per_a", {"db_x025", "db_x05"}, figure_name), out);
    } else if (*twopoint) {
      const CavityGeometry geometry;
      const FieldPoint point{internal(tp_x), internal(tp_y)};
      validate(point, geometry);
      Table table;
      table.columns = {"s", "x", "y", "value", "vacuum"};
      for (double s_um : tp_s) {
        const double s = internal(s_um);
        const double value = tp_method == "closed"
                                 ? two_point_yy_closed(s, point, geometry, common.policy)
                                 : two_point_yy_by_derivative(s, point, geometry, common.policy,
                                                              tp_h);
        table.rows.push_back({s_um, tp_x, tp_y, value, two_point_yy_vacuum(s, point.y)});
      }
      emit(table, output, out);
    } else if (*bhd) {
      const CavityGeometry geometry;
      DetectorConfig config;
      config.diode1 = {internal(bhd_x1), internal(bhd_y1)};
      config.diode2 = {internal(bhd_x2), internal(bhd_y2.value_or(bhd_y1 + 50.0 * common.a_microns))};
      config.calibration = calibration;
      validate(kernel);
      validate(config, geometry);

      const double separation = std::abs(config.diode2.y - config.diode1.y);
      const double p = bhd_p.value_or(separation > 0.0 ? kPi / separation : 0.0);
      const double kx = kPi / geometry.a();
      const double k2 = kernel.omega_lo * kernel.omega_lo - kx * kx - p * p;

      double mean_lo = std::nan("");
      double balance = std::nan("");
      double k = std::nan("");
      if (k2 >= 0.0) {
        k = std::sqrt(k2);
        LOMode mode = make_lo_mode(1, p, k, geometry);
        mode.omega = kernel.omega_lo;
        balance = check_balance(config, mode, geometry).residual;
        mean_lo = mean_current(config, kernel, mode_as_field(mode, config, geometry));
      } else {
        err << "note: omega_lo is below the TE1 cutoff for p=" << format_double(p)
            << "; no LO mode, balance not evaluated\n";
      }

      const double r11 =
          smeared_R(config.diode1, config.diode1, kernel, geometry, common.policy, quad);
      const double r12 =
          smeared_R(config.diode1, config.diode2, kernel, geometry, common.policy, quad);
      const double r22 =
          smeared_R(config.diode2, config.diode2, kernel, geometry, common.policy, quad);
      const double a2 = calibration * calibration;

      Table table;
      table.columns = {"omega_lo", "width",     "kappa",        "r11",
                       "r12",      "r22",       "mean_current", "mean_current_lo",
                       "variance", "variance_approx", "balance_residual", "lo_p",
                       "lo_k"};
      table.rows.push_back({kernel.omega_lo, kernel.width, kernel.kappa(), r11, r12, r22,
                            mean_current(config, kernel), mean_lo, a2 * (r11 + r12 + r12 + r22),
                            2.0 * a2 * r11, balance, p, k});
      emit(table, output, out);
    } else if (*validate_cmd) {
      const auto checks = run_validation(common);
      bool all = true;
      for (const auto& c : checks) {
        err << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << format_double(c.measured)
            << " (limit " << format_double(c.threshold) << ")\n";
        all = all && c.passed;
      }
      std::ostringstream report;
      report << "check,measured,threshold,passed\n";
      for (const auto& c : checks)
        report << '"' << c.name << "\"," << format_double(c.measured) << ','
               << format_double(c.threshold) << ',' << (c.passed ? "true" : "false") << '\n';
      write_text(output.path, report.str(), out);
      return all ? kOk : kValidationFailed;
    }
  } catch (const LightConeProximity& e) {
    err << "error: " << e.what() << "\nimage index: " << e.image_index() << '\n';
    return kNumericalGuard;
  } catch (const NumericalGuardError& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalGuard;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

}  // namespace casimir::cli
