#pragma once

// Forward maps from the internal variable to the model parameter, one per
// level family. Wells use the angle phi (sigma = e^{i phi} on the covering
// surface), the barrier model uses the inside momentum k:
//
//   EvenWell:     lambda(phi) = phi / cos(phi)
//   OddWell:      lambda(phi) = phi / sin(phi)       (even in phi)
//   DeltaBarrier: g(k)        = -k cot(k)            (even in k)
//
// The symmetric maps are additionally exposed in the variable w = internal^2,
// which stays regular through the internal-variable origin where the direct
// derivative vanishes (g = -1 for the barrier, lambda = 1 for the odd well).

#include "specwell/types.hpp"

namespace specwell {

enum class Family { EvenWell, OddWell, DeltaBarrier };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::EvenWell: return "even-well";
    case Family::OddWell: return "odd-well";
    default: return "delta-barrier";
  }
}

namespace charts {

inline Complex even_value(Complex p) { return p / std::cos(p); }
inline Complex even_derivative(Complex p) {
  Complex c = std::cos(p);
  return (c + p * std::sin(p)) / (c * c);
}

// phi/sin phi and its w-form; series guards keep the origin regular.
inline Complex odd_wvalue(Complex w) {
  if (std::abs(w) < 1e-3)
    return 1.0 + w / 6.0 + 7.0 * w * w / 360.0 + 31.0 * w * w * w / 15120.0;
  Complex p = std::sqrt(w);
  return p / std::sin(p);
}
inline Complex odd_value(Complex p) { return odd_wvalue(p * p); }
inline Complex odd_derivative(Complex p) {
  if (std::abs(p) < 1e-4) {
    Complex w = p * p;
    return p * (1.0 / 3.0 + 7.0 * w / 90.0 + 31.0 * w * w / 2520.0);
  }
  Complex s = std::sin(p);
  return (s - p * std::cos(p)) / (s * s);
}
inline Complex odd_wderivative(Complex w) {
  if (std::abs(w) < 1e-3)
    return 1.0 / 6.0 + 7.0 * w / 180.0 + 31.0 * w * w / 5040.0;
  Complex p = std::sqrt(w);
  return odd_derivative(p) / (2.0 * p);
}

inline Complex delta_wvalue(Complex w) {
  if (std::abs(w) < 1e-3)
    return -1.0 + w / 3.0 + w * w / 45.0 + 2.0 * w * w * w / 945.0;
  Complex k = std::sqrt(w);
  return -k * std::cos(k) / std::sin(k);
}
inline Complex delta_value(Complex k) { return delta_wvalue(k * k); }
inline Complex delta_derivative(Complex k) {
  if (std::abs(k) < 1e-4) {
    Complex w = k * k;
    return k * (2.0 / 3.0 + 8.0 * w / 90.0 + 12.0 * w * w / 945.0);
  }
  Complex s = std::sin(k);
  return (k - s * std::cos(k)) / (s * s);
}
inline Complex delta_wderivative(Complex w) {
  if (std::abs(w) < 1e-3)
    return 1.0 / 3.0 + 2.0 * w / 45.0 + 6.0 * w * w / 945.0;
  Complex k = std::sqrt(w);
  return delta_derivative(k) / (2.0 * k);
}

}  // namespace charts

inline Complex map_value(Family f, Complex internal) {
  switch (f) {
    case Family::EvenWell: return charts::even_value(internal);
    case Family::OddWell: return charts::odd_value(internal);
    default: return charts::delta_value(internal);
  }
}

inline Complex map_derivative(Family f, Complex internal) {
  switch (f) {
    case Family::EvenWell: return charts::even_derivative(internal);
    case Family::OddWell: return charts::odd_derivative(internal);
    default: return charts::delta_derivative(internal);
  }
}

// true when the parameter is an even function of the internal variable, so
// continuation may pass through internal = 0 in the w = internal^2 chart
inline bool map_symmetric_origin(Family f) { return f != Family::EvenWell; }

inline Complex map_wvalue(Family f, Complex w) {
  switch (f) {
    case Family::OddWell: return charts::odd_wvalue(w);
    case Family::DeltaBarrier: return charts::delta_wvalue(w);
    default: throw std::logic_error("map_wvalue: chart is not symmetric at the origin");
  }
}

inline Complex map_wderivative(Family f, Complex w) {
  switch (f) {
    case Family::OddWell: return charts::odd_wderivative(w);
    case Family::DeltaBarrier: return charts::delta_wderivative(w);
    default: throw std::logic_error("map_wderivative: chart is not symmetric at the origin");
  }
}

// On-shell energy: E = phi^2 for both well parities, E = k^2 for the barrier.
inline Complex level_energy(Family, Complex internal) { return internal * internal; }

}  // namespace specwell
