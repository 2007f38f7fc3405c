#pragma once

// Shared complex-analysis engine: damped Newton polishing, argument-principle
// root counting on rectangles, grid scanning with winding verification, and
// trapezoid contour quadrature on circles (geometric convergence for periodic
// analytic integrands, node doubling as the error estimate).

#include <algorithm>
#include <functional>
#include <numbers>
#include <vector>

#include "specwell/types.hpp"

namespace specwell {

// Newton iteration with step damping: the step is halved while |f| does not
// decrease. At most 100 outer iterations.
template <class F, class DF>
Complex polish_root(F&& f, DF&& df, Complex seed, double tol = kResidualTol) {
  if (!is_finite(seed)) throw std::invalid_argument("polish_root: non-finite seed");
  if (!(tol > 0)) throw std::invalid_argument("polish_root: tol must be > 0");
  Complex x = seed;
  Complex fx = f(x);
  for (int it = 0; it < 100; ++it) {
    if (std::abs(fx) <= tol) return x;
    Complex d = df(x);
    if (std::abs(d) < 1e-300)
      throw DerivativeVanished("polish_root: |f'| below 1e-300");
    Complex step = fx / d;
    Complex xn = x - step;
    Complex fn = f(xn);
    int halvings = 0;
    while (!(std::abs(fn) < std::abs(fx)) && halvings < 60) {
      step *= 0.5;
      xn = x - step;
      fn = f(xn);
      ++halvings;
    }
    if (halvings == 60 && !(std::abs(fn) < std::abs(fx)))
      throw NoConvergence("polish_root: damping stalled");
    x = xn;
    fx = fn;
  }
  if (std::abs(fx) <= tol) return x;
  throw NoConvergence("polish_root: iteration budget exhausted");
}

namespace detail {

// Winding number of f along the rectangle boundary with n nodes per side,
// accumulated from principal-branch phase increments. Valid when every
// increment stays well below pi.
template <class F>
bool winding_pass(F&& f, const Rectangle& rect, int per_side, long& turns) {
  const Complex c[4] = {rect.lo, {rect.hi.real(), rect.lo.imag()}, rect.hi,
                        {rect.lo.real(), rect.hi.imag()}};
  double acc = 0.0;
  double floor_abs = HUGE_VAL;
  Complex fprev;
  bool ok = true;
  std::vector<double> mags;
  mags.reserve(static_cast<std::size_t>(4 * per_side));
  for (int side = 0; side < 4 && ok; ++side) {
    Complex a = c[side], b = c[(side + 1) % 4];
    for (int i = 0; i < per_side; ++i) {
      Complex z = a + (b - a) * (static_cast<double>(i) / per_side);
      Complex fz = f(z);
      if (!is_finite(fz)) { ok = false; break; }
      double m = std::abs(fz);
      mags.push_back(m);
      floor_abs = std::min(floor_abs, m);
      if (side != 0 || i != 0) {
        double dphase = std::arg(fz / fprev);
        if (std::abs(dphase) > 1.5) { ok = false; break; }  // aliasing guard
        acc += dphase;
      }
      fprev = fz;
    }
  }
  if (ok) {
    Complex f0 = f(rect.lo);
    acc += std::arg(f0 / fprev);
    std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
    double med = mags[mags.size() / 2];
    if (floor_abs < 1e-12 * std::max(med, 1e-300))
      throw BoundaryZero("count_roots: |f| vanishes on a boundary node; perturb the rectangle");
    turns = std::lround(acc / (2.0 * std::numbers::pi));
  }
  return ok;
}

}  // namespace detail

// Argument-principle count of zeros (minus poles) of f inside the rectangle:
// the winding of f along the boundary, rounded to the nearest integer. Nodes
// are doubled until two successive estimates agree.
template <class F>
long count_roots(F&& f, const Rectangle& rect, int nodes = 64) {
  if (nodes < 64) nodes = 64;
  long prev = 0;
  bool have_prev = false;
  for (int per_side = nodes; per_side <= (1 << 22); per_side *= 2) {
    long turns = 0;
    if (!detail::winding_pass(f, rect, per_side, turns)) continue;
    if (have_prev && turns == prev) return turns;
    prev = turns;
    have_prev = true;
  }
  throw NoConvergence("count_roots: node budget exhausted");
}

enum class VerifyCount { Strict, None };

// Scan an n-by-n grid of |f|, polish every local minimum below the seeding
// threshold, deduplicate, keep roots inside the rectangle, and (by default)
// cross-check the count against the argument principle. Verification must be
// disabled for functions with poles inside the rectangle, where the winding
// counts zeros minus poles.
template <class F, class DF>
RootList grid_seed(F&& f, DF&& df, const Rectangle& rect, int n,
                   double tol = kResidualTol, VerifyCount verify = VerifyCount::Strict) {
  if (n < 8) throw std::invalid_argument("grid_seed: n must be >= 8");
  std::vector<double> mag(static_cast<std::size_t>(n) * n);
  std::vector<Complex> pts(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      Complex z{rect.lo.real() + rect.width() * (i + 0.5) / n,
                rect.lo.imag() + rect.height() * (j + 0.5) / n};
      pts[static_cast<std::size_t>(j) * n + i] = z;
      Complex fz = f(z);
      mag[static_cast<std::size_t>(j) * n + i] = is_finite(fz) ? std::abs(fz) : HUGE_VAL;
  }
  RootList out;
  auto at = [&](int i, int j) { return mag[static_cast<std::size_t>(j) * n + i]; };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double m = at(i, j);
      if (m == HUGE_VAL) continue;
      bool ismin = true;
      for (int dj = -1; dj <= 1 && ismin; ++dj)
        for (int di = -1; di <= 1; ++di) {
          if (di == 0 && dj == 0) continue;
          int ii = i + di, jj = j + dj;
          if (ii < 0 || jj < 0 || ii >= n || jj >= n) continue;
          if (at(ii, jj) < m) { ismin = false; break; }
        }
      if (!ismin) continue;
      Complex root;
      try {
        root = polish_root(f, df, pts[static_cast<std::size_t>(j) * n + i], tol);
      } catch (const numeric_error&) {
        continue;
      }
      if (!rect.contains(root)) continue;
      bool dup = false;
      for (Complex r : out.roots)
        if (std::abs(r - root) < kDedupRadius) { dup = true; break; }
      if (!dup) {
        out.roots.push_back(root);
        out.residuals.push_back(std::abs(f(root)));
      }
    }
  // deterministic ordering: by real part, then imaginary
  std::vector<std::size_t> idx(out.roots.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (out.roots[a].real() != out.roots[b].real())
      return out.roots[a].real() < out.roots[b].real();
    return out.roots[a].imag() < out.roots[b].imag();
  });
  RootList sorted;
  for (std::size_t i : idx) {
    sorted.roots.push_back(out.roots[i]);
    sorted.residuals.push_back(out.residuals[i]);
  }
  if (verify == VerifyCount::Strict) {
    long w = count_roots(f, rect);
    if (w != static_cast<long>(sorted.roots.size()))
      throw CountMismatch(w, static_cast<long>(sorted.roots.size()));
  }
  return sorted;
}

// (1/2 pi i) \oint f(z) (z - center)^moment dz on the circle |z - center| = radius,
// equispaced trapezoid nodes, doubled until successive results differ by less
// than 1e-12 relative (node budget 2^20).
template <class F>
Complex contour_quadrature(F&& f, Complex center, double radius, int moment, int nodes = 64) {
  if (!(radius > 0)) throw std::invalid_argument("contour_quadrature: radius must be > 0");
  if (nodes < 16) nodes = 16;
  Complex prev{0, 0};
  double prev_mag = 0.0;
  bool have_prev = false;
  for (int n = nodes; n <= (1 << 20); n *= 2) {
    Complex acc{0, 0};
    double mag = 0.0;  // mean |integrand|, the roundoff floor of the cancellation
    for (int j = 0; j < n; ++j) {
      double th = 2.0 * std::numbers::pi * j / n;
      Complex w = std::polar(1.0, th);
      Complex z = center + radius * w;
      // dz = i r e^{it} dt ; (z-c)^m = (r e^{it})^m
      Complex term = f(z) * std::pow(radius * w, moment) * w;
      acc += term;
      mag += std::abs(term);
    }
    Complex val = acc * (radius / static_cast<double>(n));
    mag *= radius / static_cast<double>(n);
    if (have_prev) {
      double scale = std::max({std::abs(val), std::abs(prev),
                               1e-2 * std::max(mag, prev_mag), 1e-300});
      if (std::abs(val - prev) < 1e-12 * scale) return val;
    }
    prev = val;
    prev_mag = mag;
    have_prev = true;
  }
  throw NoConvergence("contour_quadrature: node budget 2^20 exhausted");
}

}  // namespace specwell
