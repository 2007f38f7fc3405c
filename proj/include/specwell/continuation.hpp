#pragma once

// Adaptive analytic continuation of a quantization-condition root along a
// path in the complex parameter plane, plus monodromy probing (which level a
// closed loop carries a starting level into).
//
// The continued object is the internal variable (phi for the wells, k for
// the barrier); the energy is recomputed from it at every sample. Steps are
// predictor-corrector: first-order extrapolation through the forward-map
// derivative, then Newton at the new parameter. The step halves when the
// correction is out of proportion to the prediction and doubles after four
// easy successes. For the origin-symmetric charts (odd well, barrier) the
// engine switches to the w = internal^2 variable near internal = 0, which
// carries a track smoothly through the parameter points (lambda = 1, g = -1)
// that are branch points of the chart but not of the energy.

#include <map>
#include <numbers>
#include <optional>
#include <tuple>
#include <vector>

#include "specwell/branchpoints.hpp"
#include "specwell/charts.hpp"
#include "specwell/numerics.hpp"
#include "specwell/quantization.hpp"

namespace specwell {

struct ParamPath {
  std::vector<Complex> waypoints;
  bool closed = false;
};

inline ParamPath circle_path(Complex center, double radius, int nodes = 64, double theta0 = 0.0) {
  ParamPath p;
  p.closed = true;
  for (int j = 0; j <= nodes; ++j) {
    double th = theta0 + 2.0 * std::numbers::pi * j / nodes;
    p.waypoints.push_back(center + std::polar(radius, th));
  }
  return p;
}

struct TrackSample {
  Complex param;
  Complex internal;
  Complex energy;
};

struct LevelTrack {
  Family family = Family::EvenWell;
  std::vector<TrackSample> samples;
  int log_branch = 0;  // accumulated 2*pi multiples of the sigma-chart logarithm
};

struct ContinuationOptions {
  double residual_tol = 1e-12;   // relative corrector tolerance on the parameter
  double collision_tol = 1e-8;   // |d param / d internal| below this aborts
  double trust_factor = 0.1;     // corrector must stay within this fraction of the prediction
  double max_internal_step = 0.7;
  bool record_samples = true;
};

namespace detail {

struct ContinuationState {
  Family family;
  Complex internal;      // phi or k, branch-continuous
  bool wmode = false;
  Complex w{0, 0};       // internal^2 while in wmode
  double warg = 0.0;     // unwrapped arg(w) while in wmode

  static constexpr double kEnterW = 0.12;
  static constexpr double kExitW = 0.18;

  explicit ContinuationState(Family f, Complex start) : family(f), internal(start) {
    maybe_enter_wmode();
  }

  void maybe_enter_wmode() {
    if (!map_symmetric_origin(family)) return;
    if (!wmode && std::abs(internal) < kEnterW) {
      wmode = true;
      w = internal * internal;
      warg = 2.0 * std::arg(internal);  // keeps |w|^{1/2} e^{i warg/2} == internal
    } else if (wmode && std::abs(internal) > kExitW) {
      wmode = false;
    }
  }

  Complex value() const { return wmode ? map_wvalue(family, w) : map_value(family, internal); }
  Complex derivative() const {
    return wmode ? map_wderivative(family, w) : map_derivative(family, internal);
  }

  // Newton-correct the internal variable onto the condition at `target`.
  // Returns false if the iteration fails to converge.
  bool correct(Complex target, const ContinuationOptions& opt, Complex predicted, double* corr_size) {
    const double scale = std::max(1.0, std::abs(target));
    if (!wmode) {
      Complex p = predicted;
      for (int it = 0; it < 40; ++it) {
        Complex r = map_value(family, p) - target;
        if (std::abs(r) <= opt.residual_tol * scale) {
          *corr_size = std::abs(p - predicted);
          internal = p;
          return true;
        }
        Complex d = map_derivative(family, p);
        if (std::abs(d) < 1e-300) return false;
        p -= r / d;
        if (!is_finite(p)) return false;
      }
      return false;
    }
    Complex wp = predicted;  // prediction expressed in w
    for (int it = 0; it < 40; ++it) {
      Complex r = map_wvalue(family, wp) - target;
      if (std::abs(r) <= opt.residual_tol * scale) {
        *corr_size = std::abs(wp - predicted);
        // branch-continuous square root via the unwrapped argument
        double da;
        if (std::abs(w) < 1e-300 || std::abs(wp) < 1e-300) {
          da = 0.0;
        } else {
          da = std::arg(wp / w);
          if (std::abs(da) > 0.5 * std::numbers::pi) {
            // only a genuine pass through the origin may jump the argument;
            // the jump takes the upper branch by convention
            Complex dseg = wp - w;
            double t = std::clamp(-(std::conj(dseg) * w).real() / std::norm(dseg), 0.0, 1.0);
            double dist = std::abs(w + t * dseg);
            if (dist > 0.2 * std::max(std::abs(w), std::abs(wp))) return false;
            da = std::numbers::pi;
          }
        }
        warg += da;
        w = wp;
        internal = std::polar(std::sqrt(std::abs(w)), 0.5 * warg);
        return true;
      }
      Complex d = map_wderivative(family, wp);
      if (std::abs(d) < 1e-300) return false;
      wp -= r / d;
      if (!is_finite(wp)) return false;
    }
    return false;
  }
};

inline void advance_to(ContinuationState& st, Complex from, Complex to,
                       const ContinuationOptions& opt, LevelTrack* track) {
  const double seglen = std::abs(to - from);
  if (seglen == 0.0) return;
  double t0 = 0.0, h = 1.0;
  Complex prev_param = from;
  int easy = 0;
  while (t0 < 1.0 - 1e-15) {
    double t = std::min(1.0, t0 + h);
    Complex target = from + (to - from) * t;
    bool ok = false;
    double corr = 0.0;
    Complex pred_step{0, 0};
    Complex d = st.derivative();
    if (std::abs(d) >= 1e-300) {
      Complex base = st.wmode ? st.w : st.internal;
      pred_step = (target - prev_param) / d;
      ContinuationState trial = st;
      ok = trial.correct(target, opt, base + pred_step, &corr);
      if (ok) {
        double trust = opt.trust_factor * std::max(std::abs(pred_step), 1e-9 * (1.0 + std::abs(base)));
        if (corr > trust) ok = false;
        if (ok && !st.wmode && std::abs(trial.internal - st.internal) > opt.max_internal_step) ok = false;
        if (ok && !st.wmode &&
            std::abs(trial.internal.real() - st.internal.real()) > std::numbers::pi / 2.0)
          ok = false;  // log-branch cap: |delta arg sigma| < pi/2 per step
        if (ok) {
          double dd = std::abs(trial.derivative());
          if (dd < opt.collision_tol) throw BranchPointCollision(target);
          st = trial;
        }
      }
    }
    if (ok) {
      st.maybe_enter_wmode();
      prev_param = target;
      t0 = t;
      if (++easy >= 4) { h = std::min(1.0, 2.0 * h); easy = 0; }
      if (track) track->samples.push_back({target, st.internal, level_energy(st.family, st.internal)});
    } else {
      h *= 0.5;
      easy = 0;
      if (h < 1e-9) throw StepUnderflow("continuation: step underflow near parameter");
    }
  }
}

inline int sigma_log_branch(Complex phi) {
  // integer m with phi = -i Log(e^{i phi}) + 2 pi m
  double principal = std::remainder(phi.real(), 2.0 * std::numbers::pi);
  return static_cast<int>(std::lround((phi.real() - principal) / (2.0 * std::numbers::pi)));
}

}  // namespace detail

// Branch-point list used for path validation and probing (cached per family).
inline const std::vector<BranchPoint>& cached_branch_points(Family fam) {
  static const std::vector<BranchPoint> even = known_branch_points(Family::EvenWell, 8);
  static const std::vector<BranchPoint> odd = known_branch_points(Family::OddWell, 6);
  static const std::vector<BranchPoint> delta = known_branch_points(Family::DeltaBarrier, 8);
  switch (fam) {
    case Family::EvenWell: return even;
    case Family::OddWell: return odd;
    default: return delta;
  }
}

inline double branch_local_scale(Family fam, Complex at) {
  double best = HUGE_VAL;
  for (const auto& bp : cached_branch_points(fam)) {
    double d = std::abs(bp.location - at);
    if (d > 1e-9 && d < best) best = d;
  }
  return std::isfinite(best) ? best : 1.0;
}

inline void validate_path(Family fam, const ParamPath& path) {
  if (path.waypoints.size() < 2)
    throw std::invalid_argument("ParamPath: need at least two waypoints");
  if (path.closed && std::abs(path.waypoints.front() - path.waypoints.back()) > 1e-12)
    throw std::invalid_argument("ParamPath: closed path must end where it starts");
  for (Complex wpt : path.waypoints) {
    if (!is_finite(wpt)) throw std::invalid_argument("ParamPath: non-finite waypoint");
    for (const auto& bp : cached_branch_points(fam)) {
      double excl = 1e-3 * branch_local_scale(fam, bp.location);
      if (std::abs(wpt - bp.location) < excl)
        throw BranchPointCollision(bp.location);
    }
  }
}

// Continue the level germ (start_param, start_internal) along the path.
inline LevelTrack continue_level(Family fam, Complex start_param, Complex start_internal,
                                 const ParamPath& path, const ContinuationOptions& opt = {}) {
  validate_path(fam, path);
  const double scale = std::max(1.0, std::abs(start_param));
  if (std::abs(map_value(fam, start_internal) - start_param) > 1e-10 * scale)
    throw ConditionViolated("continue_level: start does not satisfy the family condition");
  detail::ContinuationState st(fam, start_internal);
  LevelTrack track;
  track.family = fam;
  track.samples.push_back({start_param, start_internal, level_energy(fam, start_internal)});
  detail::advance_to(st, start_param, path.waypoints.front(), opt,
                     opt.record_samples ? &track : nullptr);
  for (std::size_t i = 1; i < path.waypoints.size(); ++i)
    detail::advance_to(st, path.waypoints[i - 1], path.waypoints[i], opt,
                       opt.record_samples ? &track : nullptr);
  if (!opt.record_samples || track.samples.back().param != path.waypoints.back())
    track.samples.push_back({path.waypoints.back(), st.internal,
                             level_energy(fam, st.internal)});
  track.log_branch = fam == Family::DeltaBarrier ? 0 : detail::sigma_log_branch(st.internal);
  return track;
}

// ---------------------------------------------------------------------------
// Level anchors: the canonical germ of level m at a real parameter, used to
// give every level a reproducible identity across runs.

namespace detail {

inline Complex polish_condition(Family fam, Complex seed, Complex param) {
  auto f = [&](Complex p) { return map_value(fam, p) - param; };
  auto df = [&](Complex p) { return map_derivative(fam, p); };
  return polish_root(f, df, seed, 1e-13);
}

inline double anchor_settle_parameter(Family fam, int m) {
  using std::numbers::pi;
  if (fam == Family::DeltaBarrier) return -HUGE_VAL;  // real anchor exists for every g
  // real in-window anchor exists once the level is past its physical threshold
  // or (pseudo levels) past the pair merge
  if (fam == Family::EvenWell) {
    if (m % 2 == 1) return (m - 1) * pi / 2.0;                    // physical birth
    return std::sqrt(1.0 + std::pow(even_tangency_phi(m / 2 + 1), 2));  // |lambda_{m/2+1}|
  }
  switch (m % 4) {
    case 2: return (m - 1) * pi / 2.0;  // physical at positive parameter
    case 1: return std::abs(odd_tangency_phi((m - 1) / 2) /
                            std::sin(odd_tangency_phi((m - 1) / 2)));  // pair merge
    default: return 0.0;  // complex-pair germs exist for every positive parameter
  }
}

}  // namespace detail

// Canonical germ of level index m at real parameter `param`. Well families
// use the quantization-condition root whose |phi| lies in the half-pi window
// ((m-1)pi/2, m pi/2); odd-family levels merged away from the real axis at
// positive parameters (pair indices 4t+3, 4t+4) anchor on the complex
// conjugate pair, upper member first.
inline Complex level_anchor(Family fam, int m, double param) {
  using std::numbers::pi;
  if (m < 1) throw std::invalid_argument("level_anchor: level index >= 1");
  static std::map<std::tuple<Family, int, double>, Complex> cache;
  if (auto it = cache.find({fam, m, param}); it != cache.end()) return it->second;
  Complex anchor;
  if (fam == Family::DeltaBarrier) {
    auto f = [&](double k) { return k / std::tan(k) + param; };
    if (m == 1 && param <= -1.0) {
      if (param == -1.0) return cache[{fam, m, param}] = Complex{0.0, 0.0};
      auto fk = [&](double K) { return K / std::tanh(K) + param; };
      double K = detail::bisect_real(fk, 1e-12, std::max(1.0, -param + 1.0));
      return cache[{fam, m, param}] =
                 detail::polish_condition(fam, Complex{0.0, K}, Complex{param, 0.0});
    }
    double lo, hi;
    if (param >= 0.0) { lo = (m - 0.5) * pi - 1e-9; hi = m * pi - 1e-9; }
    else { lo = (m > 1 ? (m - 1) * pi + 1e-9 : 1e-9); hi = (m - 0.5) * pi + 1e-9; }
    double k0 = detail::bisect_real(f, lo, hi);
    anchor = detail::polish_condition(fam, Complex{k0, 0.0}, Complex{param, 0.0});
    return cache[{fam, m, param}] = anchor;
  }
  if (!(param > 0)) throw std::invalid_argument("level_anchor: well anchors need param > 0");
  bool complex_pair = fam == Family::OddWell && (m % 4 == 3 || m % 4 == 0);
  if (!complex_pair) {
    if (param < 1.02 * detail::anchor_settle_parameter(fam, m))
      throw std::invalid_argument("level_anchor: parameter too close to the level's threshold window");
    // |phi| lies in the half-pi window ((m-1)pi/2, m pi/2); even germs carry
    // the sign pattern +,-,-,+ with period 4, odd real germs are positive
    int s = +1;
    if (fam == Family::EvenWell) s = (m % 4 == 0 || m % 4 == 1) ? +1 : -1;
    auto g = [&](double t) {
      double trig = fam == Family::EvenWell ? std::cos(t) : std::sin(t);
      return param * trig - s * t;
    };
    double t0 = detail::bisect_real(g, (m - 1) * pi / 2.0 + 1e-12, m * pi / 2.0 - 1e-12);
    Complex psi{fam == Family::EvenWell ? s * t0 : t0, 0.0};
    anchor = detail::polish_condition(fam, psi, Complex{param, 0.0});
    return cache[{fam, m, param}] = anchor;
  }
  // odd complex pair (E_{4t+3}, E_{4t+4}): one upper-half root per pair
  int pair = (m % 4 == 3) ? (m - 3) / 4 : (m - 4) / 4;
  double relo = (2 * pair + 1) * pi + 0.02, rehi = (2 * pair + 2) * pi - 0.02;
  auto f = [&](Complex p) { return map_value(fam, p) - param; };
  auto df = [&](Complex p) { return map_derivative(fam, p); };
  RootList rl = grid_seed(f, df, Rectangle{Complex{relo, 0.05}, Complex{rehi, 6.0}}, 48, 1e-12);
  if (rl.size() != 1)
    throw numeric_error("level_anchor: expected a single upper-half root for the odd complex pair");
  Complex upper = rl.roots[0];
  anchor = (m % 4 == 3) ? upper : std::conj(upper);
  return cache[{fam, m, param}] = anchor;
}

// Match an internal value against the level anchors at a real parameter.
// Chart deck symmetries (phi <-> -phi for the odd well, k <-> -k for the
// barrier) identify internal values that describe the same level.
inline int identify_level(Family fam, double param, Complex internal, int max_index,
                          bool* flipped = nullptr) {
  double best = HUGE_VAL;
  int best_m = -1;
  bool best_flip = false;
  for (int m = 1; m <= max_index; ++m) {
    Complex a;
    try {
      a = level_anchor(fam, m, param);
    } catch (const std::exception&) {
      continue;
    }
    double d = std::abs(internal - a);
    bool flip = false;
    if (map_symmetric_origin(fam)) {
      double dflip = std::abs(internal + a);
      if (dflip < d) { d = dflip; flip = true; }
    }
    if (d < best) { best = d; best_m = m; best_flip = flip; }
  }
  if (best_m < 0 || best > 1e-4 * (1.0 + std::abs(internal)))
    throw numeric_error("identify_level: endpoint matches no known level anchor");
  if (flipped) *flipped = best_flip;
  return best_m;
}

// ---------------------------------------------------------------------------
// Monodromy probing.

struct MonodromyResult {
  int start_index = 0;
  int end_index = 0;
  ParamPath loop;
  bool permuted = false;
  bool chart_flipped = false;  // deck flip (sigma -> 1/sigma or k -> -k) with the level unchanged
};

namespace detail {

// Canonical walk from the real-axis anchor to the probe circle. Real branch
// points are approached from above through a fixed elevation; the even-well
// imaginary pair is approached from the right through the gap between the
// origin and the pair.
inline std::vector<Complex> probe_walk(Family fam, double anchor_param, Complex bp, double r) {
  std::vector<Complex> w;
  w.push_back(Complex{anchor_param, 0.0});
  if (fam == Family::DeltaBarrier) {
    if (std::abs(bp.imag()) < 1e-9) {  // the g = -1 point
      w.push_back(bp + r);
    } else {
      w.push_back(Complex{bp.real() + r, 0.0});
      w.push_back(Complex{bp.real() + r, bp.imag()});
    }
    return w;
  }
  double H = fam == Family::EvenWell ? 0.33 : 0.45;
  if (std::abs(bp.real()) < 1e-9 && std::abs(bp.imag()) > 1e-9) {
    double s = bp.imag() > 0 ? 1.0 : -1.0;
    w.push_back(Complex{anchor_param, s * H});
    w.push_back(Complex{r, s * H});
    w.push_back(Complex{r, bp.imag()});  // right point of the circle
  } else {
    w.push_back(Complex{anchor_param, H});
    w.push_back(Complex{bp.real(), H});
    w.push_back(Complex{bp.real(), r});  // top point of the circle
  }
  return w;
}

}  // namespace detail

inline double probe_radius(Family fam, Complex at) {
  double scale = branch_local_scale(fam, at);
  if (fam != Family::DeltaBarrier) scale = std::min(scale, std::abs(at));  // keep clear of the log point
  return std::clamp(0.25 * scale, 1e-3, 0.4);
}

// Walk level `m` from its real-axis anchor to a circle around `bp`, once
// around, and back; report which level the germ lands on.
inline MonodromyResult monodromy(Family fam, int m, const BranchPoint& bp, double radius = 0.0,
                                 double anchor_param = 0.0, int loops = 1) {
  if (anchor_param == 0.0) anchor_param = fam == Family::DeltaBarrier ? 3.0 : 20.0;
  double r = radius > 0 ? radius : probe_radius(fam, bp.location);
  for (const auto& other : cached_branch_points(fam))
    if (std::abs(other.location - bp.location) > 1e-9 &&
        std::abs(other.location - bp.location) <= r)
      throw std::invalid_argument("monodromy: probe circle encloses more than one branch point");
  auto walk = detail::probe_walk(fam, anchor_param, bp.location, r);
  Complex entry = walk.back();
  double th0 = std::arg(entry - bp.location);
  ParamPath loop = circle_path(bp.location, r, 96, th0);

  ContinuationOptions opt;
  opt.record_samples = false;
  Complex start = level_anchor(fam, m, anchor_param);
  detail::ContinuationState st(fam, start);
  Complex prev = Complex{anchor_param, 0.0};
  for (Complex wpt : walk) { detail::advance_to(st, prev, wpt, opt, nullptr); prev = wpt; }
  for (int l = 0; l < loops; ++l)
    for (std::size_t i = 1; i < loop.waypoints.size(); ++i)
      detail::advance_to(st, loop.waypoints[i - 1], loop.waypoints[i], opt, nullptr);
  for (auto it = walk.rbegin(); it != walk.rend(); ++it) {
    detail::advance_to(st, prev, *it, opt, nullptr);
    prev = *it;
  }
  MonodromyResult res;
  res.start_index = m;
  res.loop = loop;
  bool flip = false;
  res.end_index = identify_level(fam, anchor_param, st.internal, m + 8, &flip);
  res.permuted = res.end_index != m;
  res.chart_flipped = !res.permuted && flip;
  return res;
}

// For each level, the finite branch points whose monodromy moves it (level
// permutation or chart deck flip): the cuts reachable from the level's sheet.
inline std::map<int, std::vector<BranchPoint>> sheet_census(Family fam, int n_levels,
                                                            double probe_param = 0.0) {
  if (probe_param == 0.0) probe_param = fam == Family::DeltaBarrier ? 3.0 : 20.0;
  std::map<int, std::vector<BranchPoint>> census;
  for (int m = 1; m <= n_levels; ++m) census[m] = {};
  for (const auto& bp : cached_branch_points(fam)) {
    if (bp.kind != BranchKind::SquareRoot) continue;
    if (std::abs(bp.location) > 0.85 * probe_param) continue;  // keep the walk anchored outside
    for (int m = 1; m <= n_levels; ++m) {
      MonodromyResult res;
      try {
        res = monodromy(fam, m, bp, 0.0, probe_param);
      } catch (const std::exception&) {
        continue;
      }
      if (res.permuted || res.chart_flipped) census[m].push_back(bp);
    }
  }
  return census;
}

}  // namespace specwell
