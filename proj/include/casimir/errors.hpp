#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace casimir {

namespace detail {

/// Compact %g rendering for diagnostics.
inline std::string show(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace detail

/// Base for every refusal to return a number because the evaluation point or
/// the numerical procedure is outside its trustworthy regime.
class NumericalGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An image-sum denominator came within the light-cone guard band.
class LightConeProximity : public NumericalGuardError {
 public:
  LightConeProximity(int image_index, char distance, double gap)
      : NumericalGuardError("evaluation within light-cone guard band of image n=" +
                            std::to_string(image_index) + " (distance " + distance +
                            ", |denominator|=" + detail::show(gap) + ")"),
        image_index_(image_index),
        distance_(distance) {}

  int image_index() const noexcept { return image_index_; }
  /// 'A', 'B', or 'F' for a raw image_sum_F denominator.
  char distance() const noexcept { return distance_; }

 private:
  int image_index_;
  char distance_;
};

class QuadratureFailure : public NumericalGuardError {
 public:
  using NumericalGuardError::NumericalGuardError;
};

class ExtrapolationDivergence : public NumericalGuardError {
 public:
  using NumericalGuardError::NumericalGuardError;
};

class TailTooLarge : public NumericalGuardError {
 public:
  using NumericalGuardError::NumericalGuardError;
};

}  // namespace casimir
