#pragma once

// Finite rectangular well (half-width 1, depth lambda^2, energies measured
// from the well bottom, 0 <= E <= lambda^2 for bound levels).
//
// Parity-resolved quantization conditions in analytic form:
//   even:  lambda cos(phi) = +-phi,  z = +-cos(phi)
//   odd:   lambda sin(phi) = +-phi,  z = +-sin(phi)
// with E = lambda^2 z^2 = phi^2 on shell. The sigma parameterization
// sigma = e^{i phi} turns these into
//   lambda+ = -2 i sigma ln(sigma) / (sigma^2 + 1),   z+ = (sigma + 1/sigma)/2
//   lambda- =  2 sigma ln(sigma) / (sigma^2 - 1),     z- = (sigma - 1/sigma)/(2i)
// making the logarithm branch and the sigma-plane poles explicit.

#include <numbers>
#include <vector>

#include "specwell/charts.hpp"
#include "specwell/numerics.hpp"

namespace specwell {

enum class Parity { Even, Odd };

inline const char* parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

// lambda+-(sigma) with an explicit log branch: ln sigma = Log sigma + 2 pi i branch.
inline Complex lambda_of_sigma(Parity parity, Complex sigma, int log_branch = 0) {
  if (!is_finite(sigma)) throw std::invalid_argument("lambda_of_sigma: non-finite sigma");
  if (std::abs(sigma) < 1e-12) throw OriginHit("lambda_of_sigma: sigma at the origin");
  const Complex i{0.0, 1.0};
  Complex ln = std::log(sigma) + 2.0 * std::numbers::pi * i * static_cast<double>(log_branch);
  if (parity == Parity::Even) {
    if (std::abs(sigma - i) < 1e-12 || std::abs(sigma + i) < 1e-12)
      throw PoleHit("lambda_of_sigma: even map has simple poles at sigma = +-i");
    return -2.0 * i * sigma * ln / (sigma * sigma + 1.0);
  }
  if (std::abs(sigma - 1.0) < 1e-12 || std::abs(sigma + 1.0) < 1e-12)
    throw PoleHit("lambda_of_sigma: odd map has poles at sigma = +-1 (removable at 1 on the principal sheet)");
  return 2.0 * sigma * ln / (sigma * sigma - 1.0);
}

inline Complex z_of_sigma(Parity parity, Complex sigma) {
  if (std::abs(sigma) < 1e-12) throw OriginHit("z_of_sigma: sigma at the origin");
  if (parity == Parity::Even) return 0.5 * (sigma + 1.0 / sigma);
  return (sigma - 1.0 / sigma) / Complex{0.0, 2.0};
}

inline Complex energy_of(Complex lambda, Complex z) { return lambda * lambda * z * z; }

// lambda * trig(phi) - branch_sign * phi; zero exactly on the quantization condition.
inline Complex residual(Parity parity, int branch_sign, Complex phi, Complex lambda) {
  Complex trig = parity == Parity::Even ? std::cos(phi) : std::sin(phi);
  return lambda * trig - static_cast<double>(branch_sign) * phi;
}

struct WellLevel {
  Parity parity;
  int index;       // position in the full spectrum; even levels carry odd indices
  Complex phi;
  Complex energy;  // phi^2
};

struct SpectrumTable {
  double lambda = 0.0;
  std::vector<WellLevel> levels;  // ascending energy, alternating parity
};

namespace detail {

inline double bisect_real(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a), fb = f(b);
  if (!(fa * fb <= 0.0)) throw numeric_error("bisect_real: endpoints do not bracket");
  for (int it = 0; it < 200; ++it) {
    double m = 0.5 * (a + b);
    double fm = f(m);
    if (fa * fm <= 0.0) { b = m; fb = fm; } else { a = m; fa = fm; }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

// All real bound levels at real lambda > 0. Each arc of |cos| (resp. |sin|)
// between consecutive zeros holds at most one valid intersection with the
// line phi/lambda, so arc-by-arc bisection gives guaranteed brackets; each
// root is then Newton-polished on the analytic condition of its arc.
inline SpectrumTable real_spectrum(double lambda, double tol = kResidualTol) {
  using std::numbers::pi;
  if (!(lambda > 0)) throw std::invalid_argument("real_spectrum: lambda must be > 0");
  const double k = lambda / (pi / 2.0);
  if (std::abs(k - std::round(k)) * (pi / 2.0) < 1e-9)
    throw TangencyDegenerate("real_spectrum: lambda within 1e-9 of a multiple of pi/2");
  SpectrumTable table;
  table.lambda = lambda;
  auto polish_arc = [&](Parity par, int sign, double a, double b) {
    auto fabsf = [&](double p) {
      double t = par == Parity::Even ? std::abs(std::cos(p)) : std::abs(std::sin(p));
      return lambda * t - p;
    };
    double p0 = detail::bisect_real(fabsf, a, b);
    auto f = [&](Complex p) { return residual(par, sign, p, lambda); };
    auto df = [&](Complex p) {
      Complex dt = par == Parity::Even ? -std::sin(p) : std::cos(p);
      return lambda * dt - static_cast<double>(sign);
    };
    return polish_root(f, df, Complex{p0, 0.0}, tol).real();
  };
  // even levels: phi in ((j-1)pi, (j-1)pi + pi/2), condition sign (-1)^(j-1)
  for (int j = 1; (j - 1) * pi < lambda; ++j) {
    double a = (j - 1) * pi + 1e-13;
    double b = std::min((j - 1) * pi + pi / 2.0, lambda) - 1e-13;
    if (b <= a) break;
    double phi = polish_arc(Parity::Even, j % 2 == 1 ? +1 : -1, a, b);
    table.levels.push_back({Parity::Even, 2 * j - 1, phi, Complex{phi * phi, 0.0}});
  }
  // odd levels: phi in ((2j-1)pi/2, j pi), condition sign (-1)^(j-1)
  for (int j = 1; (2 * j - 1) * pi / 2.0 < lambda; ++j) {
    double a = (2 * j - 1) * pi / 2.0 + 1e-13;
    double b = std::min(j * pi, lambda) - 1e-13;
    if (b <= a) break;
    double phi = polish_arc(Parity::Odd, j % 2 == 1 ? +1 : -1, a, b);
    table.levels.push_back({Parity::Odd, 2 * j, phi, Complex{phi * phi, 0.0}});
  }
  std::sort(table.levels.begin(), table.levels.end(),
            [](const WellLevel& x, const WellLevel& y) { return x.energy.real() < y.energy.real(); });
  return table;
}

}  // namespace specwell
