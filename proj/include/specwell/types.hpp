#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace specwell {

using Complex = std::complex<double>;

inline constexpr double kResidualTol = 1e-12;  // default |f(root)| tolerance
inline constexpr double kDedupRadius = 1e-6;   // roots closer than this are one root

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Axis-aligned rectangle in the complex plane, lo = lower-left, hi = upper-right.
struct Rectangle {
  Complex lo;
  Complex hi;

  Rectangle(Complex lo_, Complex hi_) : lo(lo_), hi(hi_) {
    if (!(lo.real() < hi.real() && lo.imag() < hi.imag()))
      throw std::invalid_argument("Rectangle: need lo.re < hi.re and lo.im < hi.im");
  }
  bool contains(Complex z) const {
    return z.real() >= lo.real() && z.real() <= hi.real() &&
           z.imag() >= lo.imag() && z.imag() <= hi.imag();
  }
  double width() const { return hi.real() - lo.real(); }
  double height() const { return hi.imag() - lo.imag(); }
};

struct RootList {
  std::vector<Complex> roots;
  std::vector<double> residuals;
  std::size_t size() const { return roots.size(); }
};

struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoConvergence : numeric_error { using numeric_error::numeric_error; };
struct DerivativeVanished : numeric_error { using numeric_error::numeric_error; };
struct BoundaryZero : numeric_error { using numeric_error::numeric_error; };
struct PoleHit : numeric_error { using numeric_error::numeric_error; };
struct OriginHit : numeric_error { using numeric_error::numeric_error; };
struct TangencyDegenerate : numeric_error { using numeric_error::numeric_error; };
struct AtPole : numeric_error { using numeric_error::numeric_error; };
struct OriginK : numeric_error { using numeric_error::numeric_error; };
struct ConditionViolated : numeric_error { using numeric_error::numeric_error; };
struct StepUnderflow : numeric_error { using numeric_error::numeric_error; };
struct ContourHitsBranchPoint : numeric_error { using numeric_error::numeric_error; };
struct DegenerateCoefficients : numeric_error { using numeric_error::numeric_error; };

struct CountMismatch : numeric_error {
  long winding;
  long found;
  CountMismatch(long w, long f)
      : numeric_error("grid_seed: winding count " + std::to_string(w) +
                      " != polished root count " + std::to_string(f)),
        winding(w), found(f) {}
};

struct BranchPointCollision : numeric_error {
  Complex where;
  explicit BranchPointCollision(Complex at)
      : numeric_error("continuation: forward-map derivative vanished near parameter (" +
                      std::to_string(at.real()) + "," + std::to_string(at.imag()) + ")"),
        where(at) {}
};

}  // namespace specwell
