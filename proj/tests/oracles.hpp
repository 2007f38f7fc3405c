#pragma once

// Test-only oracles, independent of the library's solution paths: plain
// bisection for real roots and sign-scan root counting on intervals.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

inline double bisect(const std::function<double(double)>& f, double a, double b, int iters = 200) {
  double fa = f(a), fb = f(b);
  if (!(fa * fb <= 0)) throw std::runtime_error("oracle::bisect: no bracket");
  for (int i = 0; i < iters; ++i) {
    double m = 0.5 * (a + b), fm = f(m);
    if (fa * fm <= 0) { b = m; fb = fm; } else { a = m; fa = fm; }
  }
  return 0.5 * (a + b);
}

// roots of f on (a, b) located by sign changes over a dense scan
inline std::vector<double> sign_scan_roots(const std::function<double(double)>& f, double a,
                                           double b, int n = 20000) {
  std::vector<double> out;
  double prev = f(a);
  double xprev = a;
  for (int i = 1; i <= n; ++i) {
    double x = a + (b - a) * i / n;
    double cur = f(x);
    if (std::isfinite(prev) && std::isfinite(cur) && prev * cur < 0)
      out.push_back(bisect(f, xprev, x));
    prev = cur;
    xprev = x;
  }
  return out;
}

}  // namespace oracle
