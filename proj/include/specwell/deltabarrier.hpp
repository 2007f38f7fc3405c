#pragma once

// Infinite rectangular well of half-width 1 with a delta spike 2 g delta(x)
// at the center. Even-parity levels obey k cot(k) = -g with E = k^2; odd
// levels decouple from g and stay at k = l pi. The coupling map g(k) is even
// in k with simple poles at k = r pi and g(0) = -1 (removable); continuation
// and series expansions reuse the shared engines with Family::DeltaBarrier.

#include <vector>

#include "specwell/continuation.hpp"
#include "specwell/perturbation.hpp"

namespace specwell {

// -k cot(k), the coupling that places an even level at momentum k.
// Removable at k = 0 (value -1); simple poles at nonzero multiples of pi.
inline Complex g_of_k(Complex k) {
  using std::numbers::pi;
  if (std::abs(k) > 0.5) {
    double r = std::round(k.real() / pi);
    if (r != 0.0 && std::abs(k - Complex{r * pi, 0.0}) < 1e-12)
      throw AtPole("g_of_k: k within 1e-12 of a pole r*pi");
  }
  return charts::delta_value(k);
}

struct DeltaLevel {
  int index;        // even-sector index l >= 1; odd context rows carry their own l
  Parity parity;    // Even rows depend on g, Odd rows are the decoupled levels
  Complex k;
  Complex g;
  Complex energy;   // k^2
};

// Even levels at real coupling g (the l-th root of k cot k = -g in its pi
// window; for g <= -1 the ground momentum moves onto the imaginary axis and
// E dives below zero), interleaved with the g-independent odd levels.
inline std::vector<DeltaLevel> delta_spectrum(double g, int n_levels = 6) {
  using std::numbers::pi;
  if (n_levels < 1) throw std::invalid_argument("delta_spectrum: n_levels >= 1");
  std::vector<DeltaLevel> out;
  for (int l = 1; l <= n_levels; ++l) {
    Complex k = level_anchor(Family::DeltaBarrier, l, g);
    out.push_back({l, Parity::Even, k, Complex{g, 0.0}, k * k});
    Complex ko{l * pi, 0.0};
    out.push_back({l, Parity::Odd, ko, Complex{g, 0.0}, ko * ko});
  }
  std::sort(out.begin(), out.end(), [](const DeltaLevel& a, const DeltaLevel& b) {
    return a.energy.real() < b.energy.real();
  });
  return out;
}

inline LevelTrack delta_continue(const DeltaLevel& start, const ParamPath& path,
                                 const ContinuationOptions& opt = {}) {
  return continue_level(Family::DeltaBarrier, start.g, start.k, path, opt);
}

// Taylor series about g = 0 (Origin) on a circle of radius 0.9 |g_l| for the
// nearest sheet branch pair, or the large-coupling series (Infinity) on a
// circle of radius 1.1 |g_{l+1}| enclosing the joint sheet's cut pairs.
inline SeriesExpansion delta_series(int level_index, SeriesCenter center, int K) {
  double radius;
  if (center == SeriesCenter::Origin) {
    radius = 0.9 * required_contour_radius(Family::DeltaBarrier, level_index, center);
  } else {
    auto bps = delta_branchpoints(level_index + 1);
    radius = 1.1 * std::abs(bps.back().location);
  }
  SeriesExpansion exp =
      series_coefficients(Family::DeltaBarrier, level_index, K, radius, center);
  exp.estimated_radius = radius_estimate(exp);
  return exp;
}

}  // namespace specwell
