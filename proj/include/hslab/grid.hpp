#pragma once

#include <cmath>
#include <vector>

#include "hslab/common.hpp"

namespace hslab {

enum class AxisRole { Normal, Tangential, Time };
enum class Spacing { Uniform, GradedAtZero };

// One sampled coordinate direction. Tangential and time axes are periodic
// torus truncations of R (endpoint excluded); a normal axis samples the
// interval [0, extent] including both endpoints, optionally graded toward 0
// so power weights x^gamma are resolved.
struct Axis {
  int count = 0;
  double extent = 0.0;
  AxisRole role = AxisRole::Tangential;
  Spacing spacing = Spacing::Uniform;
  double grading = 2.0;   // kappa in x_j = extent (j/J)^kappa
  double origin = 0.0;    // periodic axes may start left of zero (extended fields)

  // A normal axis is an interval, except for the [-X, X) torus produced by
  // seeley_extend, recognizable by its negative origin.
  bool periodic() const { return role != AxisRole::Normal || origin < 0.0; }

  double coord(int i) const {
    if (periodic()) return origin + extent * static_cast<double>(i) / count;
    double t = static_cast<double>(i) / (count - 1);
    if (spacing == Spacing::GradedAtZero) return extent * std::pow(t, grading);
    return extent * t;
  }

  // Frequency of DFT mode i on a periodic axis, signed convention.
  double freq(int i) const {
    if (!periodic()) throw InputError("freq: axis is not periodic");
    int k = (i <= count / 2) ? i : i - count;
    return 2.0 * kPi * k / extent;
  }

  void validate() const {
    if (count < 2) throw InputError("axis: count must be at least 2");
    if (!(extent > 0.0)) throw InputError("axis: extent must be positive");
    if (!periodic() && spacing == Spacing::GradedAtZero && !(grading >= 1.0))
      throw InputError("axis: grading exponent must be >= 1");
  }
};

using Grid = std::vector<Axis>;

inline Axis normal_axis(int count, double extent) {
  Axis a;
  a.count = count;
  a.extent = extent;
  a.role = AxisRole::Normal;
  a.validate();
  return a;
}

// Graded toward 0 with kappa = max(2, 4/(1+gamma)), enough resolution for
// the weight x^gamma near the boundary.
inline Axis graded_normal_axis(int count, double extent, double gamma) {
  Axis a = normal_axis(count, extent);
  a.spacing = Spacing::GradedAtZero;
  a.grading = std::max(2.0, 4.0 / (1.0 + gamma));
  return a;
}

inline Axis tangential_axis(int count, double extent) {
  Axis a;
  a.count = count;
  a.extent = extent;
  a.role = AxisRole::Tangential;
  a.validate();
  return a;
}

inline Axis time_axis(int count, double extent) {
  Axis a = tangential_axis(count, extent);
  a.role = AxisRole::Time;
  return a;
}

}  // namespace hslab
