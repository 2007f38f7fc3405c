#pragma once

// Singular points of the inverse maps sigma(lambda) and k(g): real
// pseudothresholds from the tangency conditions cot(phi) = -phi (even) and
// tan(phi) = phi (odd), the ground-state imaginary pair from the real
// stationary points of the even map, and the complex stationary points
// sin(2k) = 2k of the barrier map.
//
// The even stationary condition used here is ln(sigma) = (sigma^2+1)/(sigma^2-1),
// obtained by direct differentiation of the even sigma-map; restricted to the
// unit circle it reduces exactly to cot(phi) = -phi.

#include <numbers>
#include <vector>

#include "specwell/numerics.hpp"
#include "specwell/quantization.hpp"

namespace specwell {

enum class BranchKind { SquareRoot, Logarithmic, PoleImage };

struct BranchPoint {
  Complex location;   // lambda or g value
  BranchKind kind;
  Complex generator;  // sigma or k where the forward derivative vanishes
  Family family;
  int index;
};

namespace detail {

// cos(phi) + phi sin(phi): well-conditioned form of cot(phi) = -phi
inline double even_tangency_fn(double p) { return std::cos(p) + p * std::sin(p); }
// sin(phi) - phi cos(phi): well-conditioned form of tan(phi) = phi
inline double odd_tangency_fn(double p) { return std::sin(p) - p * std::cos(p); }

inline double polish_even_tangency(double p0) {
  auto f = [](Complex p) -> Complex { return std::cos(p) + p * std::sin(p); };
  auto df = [](Complex p) -> Complex { return p * std::cos(p); };
  return polish_root(f, df, Complex{p0, 0.0}, 1e-13 * (1.0 + std::abs(p0))).real();
}

inline double polish_odd_tangency(double p0) {
  auto f = [](Complex p) -> Complex { return std::sin(p) - p * std::cos(p); };
  auto df = [](Complex p) -> Complex { return p * std::sin(p); };
  return polish_root(f, df, Complex{p0, 0.0}, 1e-13 * (1.0 + std::abs(p0))).real();
}

}  // namespace detail

// The n-th even tangency angle, n >= 2: the root of cot(phi) = -phi in
// ((2n-3)pi/2, (n-1)pi).
inline double even_tangency_phi(int n) {
  using std::numbers::pi;
  if (n < 2) throw std::invalid_argument("even_tangency_phi: n >= 2");
  double a = (2 * n - 3) * pi / 2.0 + 1e-12, b = (n - 1) * pi - 1e-12;
  double p = detail::bisect_real(detail::even_tangency_fn, a, b);
  return detail::polish_even_tangency(p);
}

// The k-th odd tangency angle, k >= 1: the root of tan(phi) = phi in
// (k pi, k pi + pi/2).
inline double odd_tangency_phi(int k) {
  using std::numbers::pi;
  if (k < 1) throw std::invalid_argument("odd_tangency_phi: k >= 1");
  double a = k * pi + 1e-9, b = k * pi + pi / 2.0 - 1e-9;
  double p = detail::bisect_real(detail::odd_tangency_fn, a, b);
  return detail::polish_odd_tangency(p);
}

// Two positive real roots (s1, 1/s1) of the even stationary condition
// ln(sigma) = (sigma^2+1)/(sigma^2-1) off the unit circle.
inline std::pair<double, double> even_stationary_sigma() {
  auto f = [](Complex s) -> Complex {
    return std::log(s) - (s * s + 1.0) / (s * s - 1.0);
  };
  auto df = [](Complex s) -> Complex {
    Complex d = s * s - 1.0;
    return 1.0 / s + 4.0 * s / (d * d);
  };
  auto freal = [&](double x) { return f(Complex{x, 0.0}).real(); };
  double s0 = detail::bisect_real(freal, 1.5, 10.0);
  double s1 = polish_root(f, df, Complex{s0, 0.0}, 1e-14).real();
  return {s1, 1.0 / s1};
}

// +-lambda_1: the purely imaginary pair lambda+(s1), lambda+(1/s1) bounding the
// window where the ground level stays real at imaginary lambda.
inline std::pair<Complex, Complex> ground_branch_lambda() {
  auto [s1, s1inv] = even_stationary_sigma();
  return {lambda_of_sigma(Parity::Even, Complex{s1, 0.0}),
          lambda_of_sigma(Parity::Even, Complex{s1inv, 0.0})};
}

// Real even pseudothresholds lambda_n = -phi_n / cos(phi_n), n = 2..n_max;
// signs alternate (lambda_2 > 0, lambda_3 < 0, ...).
inline std::vector<BranchPoint> even_pseudothresholds(int n_max) {
  if (n_max < 2) throw std::invalid_argument("even_pseudothresholds: n_max >= 2");
  std::vector<BranchPoint> out;
  for (int n = 2; n <= n_max; ++n) {
    double phi = even_tangency_phi(n);
    double lam = -phi / std::cos(phi);
    out.push_back({Complex{lam, 0.0}, BranchKind::SquareRoot,
                   std::polar(1.0, -phi), Family::EvenWell, n});
  }
  return out;
}

// Odd pseudothresholds lambda_k = phi_k / sin(phi_k) plus the stationary
// point at sigma = 1 (lambda = 1) on the principal sheet.
inline std::vector<BranchPoint> odd_pseudothresholds(int n_max) {
  if (n_max < 1) throw std::invalid_argument("odd_pseudothresholds: n_max >= 1");
  std::vector<BranchPoint> out;
  out.push_back({Complex{1.0, 0.0}, BranchKind::SquareRoot, Complex{1.0, 0.0},
                 Family::OddWell, 0});
  for (int k = 1; k <= n_max; ++k) {
    double phi = odd_tangency_phi(k);
    double lam = phi / std::sin(phi);
    out.push_back({Complex{lam, 0.0}, BranchKind::SquareRoot,
                   std::polar(1.0, phi), Family::OddWell, k});
  }
  return out;
}

// First-quadrant stationary momenta of the barrier map: sin(2k) = 2k,
// ascending real part, each verified against g^2 + g + k^2 = 0. The triple
// root k = 0 (g = -1) is returned first with index 0; it is a branch point of
// k(g) but not of the energy.
inline std::vector<BranchPoint> delta_branchpoints(int l_max) {
  using std::numbers::pi;
  if (l_max < 1) throw std::invalid_argument("delta_branchpoints: l_max >= 1");
  std::vector<BranchPoint> out;
  out.push_back({Complex{-1.0, 0.0}, BranchKind::SquareRoot, Complex{0.0, 0.0},
                 Family::DeltaBarrier, 0});
  auto f = [](Complex k) { return std::sin(2.0 * k) - 2.0 * k; };
  auto df = [](Complex k) { return 2.0 * std::cos(2.0 * k) - 2.0; };
  for (int l = 1; l <= l_max; ++l) {
    // asymptotic seed 2k ~ (2l + 1/2)pi + i ln(2(2l + 1/2)pi)
    double a = (2 * l + 0.5) * pi;
    Complex k = 0.5 * Complex{a, std::log(2.0 * a)};
    // |sin 2k| ~ cosh(2 Im k) at the root sets the attainable residual scale
    k = polish_root(f, df, k, 1e-13 * std::cosh(2.0 * k.imag()));
    Complex g = charts::delta_value(k);
    if (std::abs(g * g + g + k * k) > 1e-9)
      throw numeric_error("delta_branchpoints: stationary pair fails g^2 + g + k^2 = 0");
    out.push_back({g, BranchKind::SquareRoot, k, Family::DeltaBarrier, l});
  }
  return out;
}

struct DeltaAsymptoticsRow {
  int l;
  double re_over_lpi;   // Re k_l / (l pi)
  double im_over_lnl;   // Im k_l / ln l
};

inline std::vector<DeltaAsymptoticsRow> delta_asymptotics(int l_lo, int l_hi) {
  using std::numbers::pi;
  if (l_lo < 2 || l_hi < l_lo) throw std::invalid_argument("delta_asymptotics: need 2 <= l_lo <= l_hi");
  auto bps = delta_branchpoints(l_hi);
  std::vector<DeltaAsymptoticsRow> rows;
  for (int l = l_lo; l <= l_hi; ++l) {
    Complex k = bps[static_cast<std::size_t>(l)].generator;
    rows.push_back({l, k.real() / (l * pi), k.imag() / std::log(static_cast<double>(l))});
  }
  return rows;
}

// Full symmetric list used for path validation and monodromy probing:
// even-well points come in +- pairs (the lambda -> -lambda twin structure),
// barrier points in conjugate pairs. The logarithmic point at the parameter
// origin of the wells is included with index -1.
inline std::vector<BranchPoint> known_branch_points(Family fam, int n_max) {
  std::vector<BranchPoint> out;
  if (fam == Family::EvenWell) {
    out.push_back({Complex{0.0, 0.0}, BranchKind::Logarithmic, Complex{0.0, 0.0}, fam, -1});
    auto [l1, l1m] = ground_branch_lambda();
    auto [s1, s1inv] = even_stationary_sigma();
    out.push_back({l1, BranchKind::SquareRoot, Complex{s1, 0.0}, fam, 1});
    out.push_back({l1m, BranchKind::SquareRoot, Complex{s1inv, 0.0}, fam, 1});
    for (const auto& bp : even_pseudothresholds(n_max)) {
      out.push_back(bp);
      out.push_back({-bp.location, bp.kind, 1.0 / bp.generator, fam, bp.index});
    }
  } else if (fam == Family::OddWell) {
    out.push_back({Complex{0.0, 0.0}, BranchKind::Logarithmic, Complex{0.0, 0.0}, fam, -1});
    for (const auto& bp : odd_pseudothresholds(n_max)) out.push_back(bp);
  } else {
    for (const auto& bp : delta_branchpoints(n_max)) {
      out.push_back(bp);
      if (bp.index > 0)
        out.push_back({std::conj(bp.location), bp.kind, std::conj(bp.generator), fam, bp.index});
    }
  }
  return out;
}

}  // namespace specwell
