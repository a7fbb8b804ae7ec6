#include "casimir/units.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace casimir {

namespace {

constexpr double kMicron = 1e-6;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

CavityGeometry::CavityGeometry(double a) : a_(a) {
  if (!std::isfinite(a) || a <= 0.0)
    throw std::invalid_argument("plate separation must be finite and positive");
}

void validate(const FieldPoint& point, const CavityGeometry& geometry) {
  require_finite(point.x, "x");
  require_finite(point.y, "y");
  if (point.x < 0.0 || point.x > geometry.a())
    throw std::invalid_argument("x = " + std::to_string(point.x) + " lies outside [0, a]");
}

Unit parse_unit(std::string_view tag) {
  if (tag == "length") return Unit::length;
  if (tag == "frequency") return Unit::frequency;
  if (tag == "time") return Unit::time;
  throw std::invalid_argument("unknown unit tag '" + std::string(tag) + "'");
}

double to_internal(const Quantity& q, const CavityGeometry& geometry, double c) {
  require_finite(q.value, "value");
  require_finite(c, "c");
  const double a_metres = geometry.a() * kMicron;
  switch (q.unit) {
    case Unit::length:
      return q.value / geometry.a();
    case Unit::frequency:
      return q.value * (a_metres / c);
    case Unit::time:
      return q.value * (c / a_metres);
  }
  throw std::invalid_argument("unknown unit tag");
}

double from_internal(double value, Unit unit, const CavityGeometry& geometry, double c) {
  require_finite(value, "value");
  require_finite(c, "c");
  const double a_metres = geometry.a() * kMicron;
  switch (unit) {
    case Unit::length:
      return value * geometry.a();
    case Unit::frequency:
      return value / (a_metres / c);
    case Unit::time:
      return value / (c / a_metres);
  }
  throw std::invalid_argument("unknown unit tag");
}

double nearest_pi_multiple(double omega) { return std::round(omega / kPi) * kPi; }

bool near_discontinuity(double omega, double guard) {
  return std::abs(omega - nearest_pi_multiple(omega)) < guard;
}

FrequencyGrid build_grid(double omega_min, double omega_max, int count, double guard) {
  require_finite(omega_min, "omega_min");
  require_finite(omega_max, "omega_max");
  if (omega_min < 0.0 || !(omega_min < omega_max))
    throw std::invalid_argument("frequency range must satisfy 0 <= omega_min < omega_max");
  if (count < 2) throw std::invalid_argument("frequency grid needs at least 2 points");
  if (!(guard > 0.0 && guard < kPi / 4.0))
    throw std::invalid_argument("guard offset must lie in (0, pi/4)");

  // Whole range inside one guard band: nothing left to sample.
  const double centre = nearest_pi_multiple(0.5 * (omega_min + omega_max));
  if (omega_min > centre - guard && omega_max < centre + guard)
    throw std::invalid_argument("degenerate guarded range: guard band around " +
                                std::to_string(centre) + " covers the whole range");

  FrequencyGrid grid;
  grid.guard = guard;
  grid.points.reserve(static_cast<std::size_t>(count));
  const double step = (omega_max - omega_min) / (count - 1);
  for (int i = 0; i < count; ++i) {
    double w = (i == count - 1) ? omega_max : omega_min + step * i;
    const double m = nearest_pi_multiple(w);
    if (std::abs(w - m) < guard) {
      const bool last = (i == count - 1);
      double below = m - guard;
      double above = m + guard;
      bool go_up = w > m || (w == m && !last);
      double moved = go_up ? above : below;
      if (moved < omega_min || moved > omega_max) moved = go_up ? below : above;
      if (moved < omega_min || moved > omega_max) continue;
      // m +- guard can round back inside the band.
      const double outward = moved > m ? omega_max : omega_min;
      while (std::abs(moved - m) < guard && moved != outward)
        moved = std::nextafter(moved, outward);
      if (std::abs(moved - m) < guard) continue;
      w = moved;
    }
    if (!grid.points.empty() && w <= grid.points.back()) continue;
    grid.points.push_back(w);
  }
  if (grid.points.size() < 2)
    throw std::invalid_argument("degenerate guarded range: fewer than 2 points survive the guard");
  return grid;
}

}  // namespace casimir
