#pragma once

// Internal unit system: c = 1 and lengths measured in the same unit as the
// plate separation. Physical values (micrometres, rad/s, seconds) only appear
// at the I/O boundary and pass through to_internal / from_internal.

#include <numbers>
#include <string_view>
#include <vector>

namespace casimir {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kDefaultGuard = 1e-3;         // in units of c/a

/// Two perfectly conducting plates at x = 0 and x = a. Images repeat with
/// period L = 2a.
class CavityGeometry {
 public:
  /// Throws std::invalid_argument unless a is finite and positive.
  explicit CavityGeometry(double a = 1.0);

  double a() const noexcept { return a_; }
  double period() const noexcept { return 2.0 * a_; }

 private:
  double a_;
};

/// Position in the z = 0 plane between the plates.
struct FieldPoint {
  double x = 0.0;  // distance from the plate at x = 0
  double y = 0.0;  // transverse offset
};

/// Throws std::invalid_argument unless 0 <= x <= a and y is finite.
void validate(const FieldPoint& point, const CavityGeometry& geometry);

enum class Unit { length, frequency, time };

/// "length", "frequency" or "time"; anything else throws std::invalid_argument.
Unit parse_unit(std::string_view tag);

struct Quantity {
  double value = 0.0;
  Unit unit = Unit::length;
};

/// Physical -> dimensionless. `geometry.a()` is read in micrometres; lengths
/// are in micrometres, frequencies in rad/s, times in seconds.
///   length    -> value / a
///   frequency -> value * a / c
///   time      -> value * c / a
double to_internal(const Quantity& q, const CavityGeometry& geometry,
                   double c = kSpeedOfLight);

/// Inverse of to_internal for the same unit tag.
double from_internal(double value, Unit unit, const CavityGeometry& geometry,
                     double c = kSpeedOfLight);

/// Strictly increasing angular frequencies (units of c/a) that keep at least
/// `guard` away from every multiple of pi, where the Casimir density jumps.
struct FrequencyGrid {
  std::vector<double> points;
  double guard = kDefaultGuard;
};

/// Uniform grid of `count` points on [omega_min, omega_max]. Points closer
/// than `guard` to n*pi are pushed to n*pi +- guard on their own side (an
/// exact hit goes up, except the last point which goes down); a point that
/// would leave the range is pushed to the other side or dropped. Throws
/// std::invalid_argument for an empty range, count < 2, guard outside
/// (0, pi/4), or when the guard band swallows the range.
FrequencyGrid build_grid(double omega_min, double omega_max, int count,
                         double guard = kDefaultGuard);

/// True when omega (units of c/a) lies within `guard` of a multiple of pi.
bool near_discontinuity(double omega, double guard = kDefaultGuard);

/// Nearest multiple of pi.
double nearest_pi_multiple(double omega);

}  // namespace casimir
