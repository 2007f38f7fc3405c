#pragma once

// Transmission/reflection coefficients of the finite well in the shifted
// convention (levels shifted by -lambda^2, infinite motion at E > 0 with
// outside momentum k, inside momentum k' = sqrt(k^2 + lambda^2)):
//
//   T(k) = k k' e^{-2ik} / (D_even(k) D_odd(k)),   R(k) = i lambda^2 sin(2k') / (2 k k') T(k)
//   D_even(k) = k  cos k' - i k' sin k'            (zeros: kappa = k' tan k', even levels)
//   D_odd(k)  = k' cos k' - i k  sin k'            (zeros: kappa = -k' cot k', odd levels)
//
// The parity assignment follows the bound-state matching conditions and the
// even pole map k = i lambda sin(phi) on lambda cos(phi) = phi: that pole
// zeroes D_even. D_even is even in k', so the principal square root in k'
// cannot move its zeros; D_odd is odd in k' (sign flip only).
//
// Pole maps used throughout (condition-sign safe, reducing to
// +- i lambda sin/cos phi on shell):
//   even:  k = i phi tan(phi)
//   odd:   k = -i phi cot(phi)
// The odd map is obtained from the D_odd zero k = -i k' cot(k') with
// k' = +-phi on the odd condition.

#include <vector>

#include "specwell/continuation.hpp"
#include "specwell/quantization.hpp"

namespace specwell {

struct ScatteringPoint {
  Complex k;
  Complex kprime;
  Complex T;
  Complex R;
};

inline Complex denominator_even(Complex k, Complex lambda) {
  Complex kp = std::sqrt(k * k + lambda * lambda);
  return k * std::cos(kp) - Complex{0, 1} * kp * std::sin(kp);
}

inline Complex denominator_odd(Complex k, Complex lambda) {
  Complex kp = std::sqrt(k * k + lambda * lambda);
  return kp * std::cos(kp) - Complex{0, 1} * k * std::sin(kp);
}

inline ScatteringPoint coefficients(Complex k, Complex lambda) {
  const Complex i{0, 1};
  if (std::abs(k) < 1e-12) throw OriginK("coefficients: k at the origin");
  Complex kp = std::sqrt(k * k + lambda * lambda);
  Complex de = k * std::cos(kp) - i * kp * std::sin(kp);
  Complex dm = kp * std::cos(kp) - i * k * std::sin(kp);
  double scale = std::max(1.0, std::abs(k) + std::abs(kp));
  if (std::abs(de) < 1e-12 * scale || std::abs(dm) < 1e-12 * scale)
    throw AtPole("coefficients: k within 1e-12 of a transmission pole");
  Complex T = k * kp * std::exp(-2.0 * i * k) / (de * dm);
  Complex R = i * lambda * lambda * std::sin(2.0 * kp) / (2.0 * k * kp) * T;
  return {k, kp, T, R};
}

struct ParityCoefficients {
  Complex T;
  Complex R;
};

inline ParityCoefficients parity_coefficients(Parity parity, Complex k, Complex lambda) {
  const Complex i{0, 1};
  if (std::abs(k) < 1e-12) throw OriginK("parity_coefficients: k at the origin");
  Complex kp = std::sqrt(k * k + lambda * lambda);
  Complex den = parity == Parity::Even ? denominator_even(k, lambda) : denominator_odd(k, lambda);
  double scale = std::max(1.0, std::abs(k) + std::abs(kp));
  if (std::abs(den) < 1e-12 * scale)
    throw AtPole("parity_coefficients: k within 1e-12 of a pole");
  Complex T = k / den;
  Complex R = parity == Parity::Even ? i * lambda * std::sin(kp) / k * T
                                     : i * lambda * std::cos(kp) / k * T;
  return {T, R};
}

enum class PoleClass { BoundState, Pseudoenergy };

inline const char* pole_class_name(PoleClass c) {
  return c == PoleClass::BoundState ? "bound" : "pseudo";
}

struct PoleRecord {
  Complex k;
  Parity parity;
  int level_index;
  PoleClass classification;
};

inline PoleClass classify_pole(Complex k) {
  return (std::abs(k.real()) <= 1e-9 && k.imag() > 0) ? PoleClass::BoundState
                                                      : PoleClass::Pseudoenergy;
}

inline Complex pole_momentum(Parity parity, Complex phi) {
  const Complex i{0, 1};
  if (parity == Parity::Even) return i * phi * std::tan(phi);
  return -i * phi / std::tan(phi);
}

// Map an on-shell angle to its transmission pole in the k-plane.
// (phi, lambda) must satisfy the parity condition for one of the two signs.
inline PoleRecord pole_from_phi(Parity parity, Complex phi, Complex lambda, int level_index = 0) {
  double scale = std::max(1.0, std::abs(lambda));
  double r = std::min(std::abs(residual(parity, +1, phi, lambda)),
                      std::abs(residual(parity, -1, phi, lambda)));
  if (r > 1e-9 * scale)
    throw ConditionViolated("pole_from_phi: (phi, lambda) violates the quantization condition");
  Complex k = pole_momentum(parity, phi);
  // purely imaginary pole for real on-shell data, exactly
  if (std::abs(phi.imag()) < 1e-14 && std::abs(lambda.imag()) < 1e-14)
    k = Complex{0.0, k.imag()};
  return {k, parity, level_index, classify_pole(k)};
}

struct PoleSweepSample {
  double lambda;
  Complex k;
  PoleClass classification;
};

struct PoleSweepTrack {
  int level_index;
  std::vector<PoleSweepSample> samples;
};

namespace detail {

// Newton polish of the condition lambda cos(psi) = psi (even) or
// lambda sin(psi) = psi (odd) from a nearby seed, in the analytic form.
inline Complex polish_sweep_root(Parity par, Complex seed, double lambda) {
  auto f = [&](Complex p) {
    return par == Parity::Even ? lambda * std::cos(p) - p : lambda * std::sin(p) - p;
  };
  auto df = [&](Complex p) {
    return par == Parity::Even ? -lambda * std::sin(p) - 1.0 : lambda * std::cos(p) - 1.0;
  };
  return polish_root(f, df, seed, 1e-12);
}

}  // namespace detail

// k-plane trajectories of the level poles over an ascending real sweep of
// lambda. Levels whose pair has not merged yet appear as an off-axis
// conjugate pair and are tracked by Newton continuation; once a pair meets
// the imaginary axis its two members are re-seeded by bracketed bisection on
// their separating windows.
inline std::vector<PoleSweepTrack> pole_sweep(Parity parity, double lambda_lo, double lambda_hi,
                                              int samples, int n_levels) {
  using std::numbers::pi;
  if (samples < 100) throw std::invalid_argument("pole_sweep: need at least 100 samples");
  if (!(lambda_lo > 0 && lambda_hi > lambda_lo))
    throw std::invalid_argument("pole_sweep: need 0 < lambda_lo < lambda_hi");
  Family fam = parity == Parity::Even ? Family::EvenWell : Family::OddWell;
  std::vector<PoleSweepTrack> tracks;
  std::vector<Complex> psi(static_cast<std::size_t>(n_levels));
  std::vector<bool> have(static_cast<std::size_t>(n_levels), false);
  for (int m = 1; m <= n_levels; ++m) {
    tracks.push_back({m, {}});
    try {
      psi[static_cast<std::size_t>(m - 1)] = level_anchor(fam, m, lambda_lo);
      have[static_cast<std::size_t>(m - 1)] = true;
    } catch (const std::exception&) {
      // merged-away pair member: seed the conjugate pair from the tangency angle
    }
  }
  if (fam == Family::EvenWell) {
    for (int m = 1; m <= n_levels; ++m) {
      std::size_t i = static_cast<std::size_t>(m - 1);
      if (have[i] || m < 2) continue;
      int pair = m / 2 + 1;  // members (2p-2, 2p-1) merge at the pair-p tangency
      double phit = even_tangency_phi(pair);
      double sgn = pair % 2 == 1 ? +1.0 : -1.0;
      Complex seed{sgn * phit, m % 2 == 0 ? 0.3 : -0.3};
      try {
        psi[i] = detail::polish_sweep_root(parity, seed, lambda_lo);
        have[i] = true;
      } catch (const numeric_error&) {}
    }
  }
  for (int s = 0; s < samples; ++s) {
    double lam = lambda_lo + (lambda_hi - lambda_lo) * s / (samples - 1);
    for (int m = 1; m <= n_levels; ++m) {
      std::size_t i = static_cast<std::size_t>(m - 1);
      if (!have[i]) continue;
      try {
        psi[i] = detail::polish_sweep_root(parity, psi[i], lam);
      } catch (const numeric_error&) {
        // right at a pair merge the root is double; the re-split below recovers
      }
    }
    // re-split freshly merged even pairs onto their real windows
    if (fam == Family::EvenWell) {
      for (int m = 2; m + 1 <= n_levels; m += 2) {
        std::size_t a = static_cast<std::size_t>(m - 1), b = a + 1;
        if (!have[a] || !have[b]) continue;
        if (std::abs(psi[a] - psi[b]) > 1e-5) continue;
        int pair = m / 2 + 1;
        double phit = even_tangency_phi(pair);
        double sgn = pair % 2 == 1 ? +1.0 : -1.0;
        auto g = [&](double t) { return lam * std::cos(t) - sgn * t; };
        double lo1 = (m - 1) * pi / 2.0 + 1e-12;
        double t_a = detail::bisect_real(g, lo1, phit);
        double t_b = detail::bisect_real(g, phit, (m + 1) * pi / 2.0 - 1e-12);
        psi[a] = detail::polish_sweep_root(parity, Complex{sgn * t_a, 0.0}, lam);
        psi[b] = detail::polish_sweep_root(parity, Complex{sgn * t_b, 0.0}, lam);
      }
    }
    for (int m = 1; m <= n_levels; ++m) {
      std::size_t i = static_cast<std::size_t>(m - 1);
      if (!have[i]) continue;
      Complex k = pole_momentum(parity, psi[i]);
      if (std::abs(psi[i].imag()) < 1e-12) k = Complex{0.0, k.imag()};
      tracks[i].samples.push_back({lam, k, classify_pole(k)});
    }
  }
  return tracks;
}

}  // namespace specwell
