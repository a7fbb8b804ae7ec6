#pragma once

// casimir-bhd command line: grids of densities, figure data, BHD
// predictions and the validation suite. Lengths on the command line and in
// output files (x, y, and s = c times the time separation) are micrometres;
// frequencies are in units of c/a; densities and correlators are reported in
// units of the plate separation (a = 1).

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "casimir/imagesum.hpp"
#include "casimir/units.hpp"

namespace casimir::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kUsage = 2,
  kNumericalGuard = 3,
  kIoFailure = 4,
};

struct Common {
  double a_microns = 1.0;
  TruncationPolicy policy{};
  unsigned workers = 1;
  double guard = kDefaultGuard;
};

/// Numeric table written as CSV (shortest round-trip decimals) or JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Columns holding 0/1 values, written as false/true.
  std::vector<std::string> flag_columns;
};

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

std::string to_csv(const Table& table);
std::string to_json(const Table& table);

/// The density schema shared by every density output.
inline const std::vector<std::string> kDensityColumns{"omega", "x", "y", "sigma", "err",
                                                      "n_terms"};

/// Coincident-point densities on the product of both lists: density columns
/// plus vacuum, ratio and the sub_cutoff / near_discontinuity flags.
Table spectral_diag_table(const Common& common, const std::vector<double>& omegas,
                          const std::vector<double>& xs_um);
Table spectral_map_table(const Common& common, double omega, int x_steps, double y_min_um,
                         double y_max_um, int y_steps);
/// Density columns plus `ratio` = sigma(x, y)/sigma(x, x).
Table spectral_slice_table(const Common& common, double omega, double x_um, double y_min_um,
                           double y_max_um, int y_steps);
/// Density columns (y = 0) plus `normalized_difference`, on a guarded
/// omega grid over (0, 4pi] and x in [0, a].
Table fig4_left_table(const Common& common, int omega_steps, int x_steps);
/// omega_over_c_per_a, db_x025, db_x05; only rows where both are defined.
Table fig4_right_table(const Common& common, int omega_steps);

/// Named figure with its default grid: fig2-left, fig2-right, fig4-left,
/// fig4-right.
Table figure_table(std::string_view name, const Common& common);

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

/// Oracle cross-checks and invariant suites run by `validate`.
std::vector<CheckResult> run_validation(const Common& common);

/// Entry point. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace casimir::cli
