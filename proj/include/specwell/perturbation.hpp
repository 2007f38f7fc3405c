#pragma once

// Perturbation-series coefficients by Cauchy contour quadrature. The level is
// continued once around a closed circular contour enclosing every finite
// branch point of its sheet; the stored node values are then reduced to all
// requested moments.
//
// Series about Infinity (wells, and the barrier at large coupling):
//   E(x) = E_inf + sum_{j>=0} a_j / x^{j+1},  a_j = (1/2 pi i) \oint E(x) x^j dx
// Series about the Origin (barrier, small coupling):
//   E(g) = sum_{j>=0} b_j g^j,                b_j = (1/2 pi i) \oint E(g) / g^{j+1} dg

#include <numbers>
#include <vector>

#include "specwell/continuation.hpp"

namespace specwell {

enum class SeriesCenter { Infinity, Origin };

struct SeriesExpansion {
  Family family = Family::EvenWell;
  int level_index = 0;
  SeriesCenter center = SeriesCenter::Infinity;
  double leading_term = 0.0;          // unperturbed limit (0 for Origin center)
  std::vector<Complex> coefficients;  // a_j or b_j
  double contour_radius = 0.0;
  double estimated_radius = 0.0;      // filled by radius_estimate
};

// Unperturbed limit of level m on its sheet. Well families: (m pi / 2)^2 for
// levels physical at positive parameter, ((m-1) pi / 2)^2 for their branch
// partners (both members of a pair share one limit, as the Cauchy argument
// requires). Barrier: (m pi)^2 at large coupling, ((m - 1/2) pi)^2 at g = 0.
inline double leading_term(Family fam, int m, SeriesCenter center = SeriesCenter::Infinity) {
  using std::numbers::pi;
  if (m < 1) throw std::invalid_argument("leading_term: level index >= 1");
  if (fam == Family::DeltaBarrier)
    return center == SeriesCenter::Infinity ? std::pow(m * pi, 2)
                                            : std::pow((m - 0.5) * pi, 2);
  if (center != SeriesCenter::Infinity)
    throw std::invalid_argument("leading_term: wells expand about Infinity only");
  bool physical = fam == Family::EvenWell ? (m % 2 == 1) : (m % 2 == 0);
  int eff = physical ? m : m - 1;
  return std::pow(eff * pi / 2.0, 2);
}

// Outermost (Infinity) or innermost-forbidden (Origin) branch-point radius of
// the level's sheet. Even level m shares its sheet with pair-merge points up
// to tangency index ceil((m+2)/2); odd level m up to index floor(m/2); the
// barrier level m sits on the joint large-coupling sheet bounded by |g_m|,
// and its small-coupling disk is bounded by |g_{m-1}| (|g_1| for the ground).
inline double required_contour_radius(Family fam, int m, SeriesCenter center) {
  if (fam == Family::EvenWell) {
    int l = (m + 3) / 2;  // ceil((m+2)/2)
    double phi = even_tangency_phi(std::max(2, l));
    return std::sqrt(1.0 + phi * phi);
  }
  if (fam == Family::OddWell) {
    int l = std::max(1, m / 2);
    double phi = odd_tangency_phi(l);
    return std::abs(phi / std::sin(phi));
  }
  auto bps = delta_branchpoints(std::max(1, center == SeriesCenter::Origin ? std::max(m - 1, 1) : m));
  return std::abs(bps.back().location);
}

namespace detail {

struct ContourPass {
  std::vector<Complex> energies;  // node values, ascending angle, node 0 at angle 0
  double radius = 0.0;
  int nodes = 0;
};

// One continuous continuation pass around |param| = radius, starting from the
// level's real-axis anchor walked out to the contour along the real axis.
// Closed-loop consistency is enforced up to the chart deck symmetry.
inline ContourPass contour_pass(Family fam, int m, double radius, int nodes,
                                double anchor_param) {
  ContinuationOptions opt;
  opt.record_samples = false;
  Complex start = level_anchor(fam, m, anchor_param);
  ContinuationState st(fam, start);
  advance_to(st, Complex{anchor_param, 0.0}, Complex{radius, 0.0}, opt, nullptr);
  ContourPass pass;
  pass.radius = radius;
  pass.nodes = nodes;
  pass.energies.reserve(static_cast<std::size_t>(nodes));
  Complex first_internal = st.internal;
  Complex prev{radius, 0.0};
  for (int j = 0; j < nodes; ++j) {
    pass.energies.push_back(level_energy(fam, st.internal));
    double th = 2.0 * std::numbers::pi * (j + 1) / nodes;
    Complex target = std::polar(radius, th);
    advance_to(st, prev, target, opt, nullptr);
    prev = target;
  }
  double mismatch = std::abs(st.internal - first_internal);
  if (map_symmetric_origin(fam))
    mismatch = std::min(mismatch, std::abs(st.internal + first_internal));
  if (mismatch > 1e-9 * (1.0 + std::abs(first_internal)))
    throw ContourHitsBranchPoint(
        "series contour does not close onto its starting germ; a branch point is enclosed improperly");
  return pass;
}

inline std::vector<Complex> reduce_moments(const ContourPass& pass, SeriesCenter center,
                                           double constant, int K) {
  const int N = pass.nodes;
  const double R = pass.radius;
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    Complex acc{0, 0};
    for (int j = 0; j < N; ++j) {
      double th = 2.0 * std::numbers::pi * j / N;
      Complex e = pass.energies[static_cast<std::size_t>(j)] - constant;
      // a_k: moment x^k ; b_k: moment x^{-k-1}; both include dx = i R e^{i th} d th
      double m = center == SeriesCenter::Infinity ? (k + 1.0) : (-static_cast<double>(k));
      acc += e * std::polar(1.0, m * th);
    }
    double powR = center == SeriesCenter::Infinity ? std::pow(R, k + 1) : std::pow(R, -k);
    out.push_back(acc * (powR / static_cast<double>(N)));
  }
  return out;
}

}  // namespace detail

// Contour coefficients for level m. The contour must enclose every finite
// branch point of the level's sheet (checked against the known branch points
// for Infinity centers; Origin contours must stay inside all of them).
inline SeriesExpansion series_coefficients(Family fam, int m, int K, double contour_radius,
                                           SeriesCenter center = SeriesCenter::Infinity,
                                           double anchor_param = 0.0) {
  if (K < 1) throw std::invalid_argument("series_coefficients: K >= 1");
  if (!(contour_radius > 0)) throw std::invalid_argument("series_coefficients: radius > 0");
  if (center == SeriesCenter::Origin && fam != Family::DeltaBarrier)
    throw std::invalid_argument("series_coefficients: Origin center is the barrier's expansion");
  for (const auto& bp : cached_branch_points(fam))
    if (std::abs(std::abs(bp.location) - contour_radius) <
        1e-3 * branch_local_scale(fam, bp.location))
      throw ContourHitsBranchPoint("series_coefficients: contour passes through a branch point");
  if (anchor_param == 0.0)
    anchor_param = center == SeriesCenter::Origin || fam == Family::DeltaBarrier
                       ? std::max(3.0, contour_radius)
                       : std::max(20.0, contour_radius);
  double bound = required_contour_radius(fam, m, center);
  if (center == SeriesCenter::Infinity && contour_radius < bound)
    throw ContourHitsBranchPoint(
        "series_coefficients: contour does not enclose the level's sheet branch points");
  if (center == SeriesCenter::Origin && contour_radius > bound)
    throw ContourHitsBranchPoint(
        "series_coefficients: Origin contour reaches beyond the nearest branch point");
  SeriesExpansion exp;
  exp.family = fam;
  exp.level_index = m;
  exp.center = center;
  exp.leading_term = center == SeriesCenter::Origin ? 0.0 : leading_term(fam, m, center);
  exp.contour_radius = contour_radius;
  const double constant = exp.leading_term;
  std::vector<Complex> prev;
  for (int nodes = 512; nodes <= (1 << 14); nodes *= 2) {
    auto pass = detail::contour_pass(fam, m, contour_radius, nodes, anchor_param);
    auto coeff = detail::reduce_moments(pass, center, constant, K);
    if (!prev.empty()) {
      bool stable = true;
      for (int k = 0; k < std::min(K, 10); ++k) {
        double scale = std::max({std::abs(coeff[static_cast<std::size_t>(k)]),
                                 std::abs(prev[static_cast<std::size_t>(k)]), 1e-30});
        if (std::abs(coeff[static_cast<std::size_t>(k)] - prev[static_cast<std::size_t>(k)]) >
            1e-12 * scale) {
          stable = false;
          break;
        }
      }
      if (stable) {
        exp.coefficients = coeff;
        return exp;
      }
    }
    prev = std::move(coeff);
  }
  exp.coefficients = prev;  // best available; node cap reached
  return exp;
}

inline Complex evaluate_series(const SeriesExpansion& exp, Complex point, int truncation = -1) {
  int K = truncation < 0 ? static_cast<int>(exp.coefficients.size())
                         : std::min<int>(truncation, static_cast<int>(exp.coefficients.size()));
  Complex s{exp.leading_term, 0.0};
  if (exp.center == SeriesCenter::Infinity) {
    Complex invx = 1.0 / point;
    Complex p = invx;
    for (int k = 0; k < K; ++k) {
      s += exp.coefficients[static_cast<std::size_t>(k)] * p;
      p *= invx;
    }
  } else {
    Complex p{1.0, 0.0};
    for (int k = 0; k < K; ++k) {
      s += exp.coefficients[static_cast<std::size_t>(k)] * p;
      p *= point;
    }
  }
  return s;
}

// Root-test estimate of the convergence boundary: least-squares slope of
// log|a_k| against k over the top half of the coefficient list.
inline double radius_estimate(const SeriesExpansion& exp) {
  std::vector<double> ks, ys;
  for (std::size_t k = exp.coefficients.size() / 2; k < exp.coefficients.size(); ++k)
    if (std::abs(exp.coefficients[k]) > 1e-300) {
      ks.push_back(static_cast<double>(k));
      ys.push_back(std::log(std::abs(exp.coefficients[k])));
    }
  if (ks.size() < 10)
    throw DegenerateCoefficients("radius_estimate: fewer than 10 usable coefficients");
  double n = static_cast<double>(ks.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    sx += ks[i];
    sy += ys[i];
    sxx += ks[i] * ks[i];
    sxy += ks[i] * ys[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return exp.center == SeriesCenter::Infinity ? std::exp(slope) : std::exp(-slope);
}

struct ConvergenceRow {
  Complex point;
  int order;
  double rel_error;
};

struct ConvergenceReport {
  SeriesExpansion expansion;
  std::vector<ConvergenceRow> rows;
  std::vector<Complex> points;
  std::vector<bool> diverging;  // per point: error fails to decay
};

// Partial-sum error against the directly computed level, per truncation order.
inline ConvergenceReport convergence_report(Family fam, int m, int K,
                                            const std::vector<Complex>& eval_points,
                                            double contour_radius,
                                            SeriesCenter center = SeriesCenter::Infinity) {
  ConvergenceReport rep;
  rep.expansion = series_coefficients(fam, m, K, contour_radius, center);
  rep.expansion.estimated_radius = radius_estimate(rep.expansion);
  rep.points = eval_points;
  for (Complex pt : eval_points) {
    if (std::abs(pt.imag()) > 1e-12)
      throw std::invalid_argument("convergence_report: direct-root oracle needs real eval points");
    Complex direct = level_energy(fam, level_anchor(fam, m, pt.real()));
    double first = -1.0, last = 0.0;
    for (int k = 1; k <= K; ++k) {
      Complex s = evaluate_series(rep.expansion, pt, k);
      double err = std::abs(s - direct) / std::max(1e-300, std::abs(direct));
      rep.rows.push_back({pt, k, err});
      if (first < 0) first = err;
      last = err;
    }
    rep.diverging.push_back(last > first);
  }
  return rep;
}

}  // namespace specwell
