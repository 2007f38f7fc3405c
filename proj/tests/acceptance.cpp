// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "specwell/specwell.hpp"

using namespace specwell;
using std::numbers::pi;

namespace {

int g_failures = 0;

struct Criterion {
  int id;
  std::string label;
  bool ok = true;
  std::vector<std::string> notes;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  Criterion(int i, std::string l) : id(i), label(std::move(l)) {}

  void check(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
  void finish() {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %2d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", id, label.c_str(), secs);
    for (const auto& n : notes) std::printf("      - %s\n", n.c_str());
    if (!ok) ++g_failures;
  }
};

std::string num(double v) { return fmt17(v); }

void criterion_1() {
  Criterion c(1, "even stationary points sigma_1 = 3.32 +- 0.01, 1/sigma_1 = 0.301 +- 0.001");
  auto [s1, s1inv] = even_stationary_sigma();
  c.check(std::abs(s1 - 3.32) <= 0.01, "sigma_1 = " + num(s1));
  c.check(std::abs(s1inv - 0.301) <= 0.001, "1/sigma_1 = " + num(s1inv));
  c.finish();
}

void criterion_2() {
  Criterion c(2, "unit-circle reduction identities at 100 roots per parity, residual <= 1e-10");
  double worst = 0.0;
  for (int n = 2; n <= 101; ++n) {
    double phi = even_tangency_phi(n);
    Complex s = std::polar(1.0, -phi);
    Complex d = Complex{0.0, -phi} * (1.0 - s * s) + s * s + 1.0;  // stationary form, branch ln = -i phi
    worst = std::max(worst, std::abs(d) / 2.0);
  }
  c.check(worst <= 1e-10, "even worst residual " + num(worst));
  worst = 0.0;
  for (int k = 1; k <= 100; ++k) {
    double phi = odd_tangency_phi(k);
    Complex s = std::polar(1.0, phi);
    Complex d = -Complex{0.0, phi} * (s * s + 1.0) + s * s - 1.0;
    worst = std::max(worst, std::abs(d) / 2.0);
  }
  c.check(worst <= 1e-10, "odd worst residual " + num(worst));
  c.finish();
}

void criterion_3() {
  Criterion c(3, "spectrum count floor(2 lambda/pi)+1 with alternating parity, residual <= 1e-12");
  for (double lam : {1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
    auto t = real_spectrum(lam);
    auto want = static_cast<std::size_t>(2 * lam / pi) + 1;
    c.check(t.levels.size() == want,
            "lambda " + num(lam) + ": " + std::to_string(t.levels.size()) + " levels, want " +
                std::to_string(want));
    for (std::size_t i = 0; i < t.levels.size(); ++i) {
      c.check(t.levels[i].parity == (i % 2 == 0 ? Parity::Even : Parity::Odd),
              "parity alternation broken at lambda " + num(lam));
      int j = static_cast<int>(i) / 2 + 1;
      double res = std::abs(residual(t.levels[i].parity, j % 2 == 1 ? +1 : -1, t.levels[i].phi,
                                     Complex{lam, 0.0}));
      c.check(res <= 1e-12, "residual " + num(res) + " at lambda " + num(lam));
    }
  }
  c.finish();
}

void criterion_4() {
  Criterion c(4, "unitarity |T|^2 + |R|^2 = 1 to 1e-12 on 1000 random real samples");
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> uk(1e-3, 20.0), ul(1e-3, 10.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    auto sp = coefficients({uk(rng), 0.0}, {ul(rng), 0.0});
    worst = std::max(worst, std::abs(std::norm(sp.T) + std::norm(sp.R) - 1.0));
  }
  c.check(worst <= 1e-12, "worst deviation " + num(worst));
  c.finish();
}

void criterion_5() {
  Criterion c(5, "bound levels at lambda = 10 zero their parity denominator, poles on +i axis");
  auto t = real_spectrum(10.0);
  for (const auto& lv : t.levels) {
    auto rec = pole_from_phi(lv.parity, lv.phi, {10.0, 0.0}, lv.index);
    Complex den = lv.parity == Parity::Even ? denominator_even(rec.k, {10.0, 0.0})
                                            : denominator_odd(rec.k, {10.0, 0.0});
    c.check(std::abs(den) <= 1e-10, "denominator " + num(std::abs(den)) + " at level " +
                                        std::to_string(lv.index));
    c.check(rec.classification == PoleClass::BoundState && std::abs(rec.k.real()) <= 1e-9 &&
                rec.k.imag() > 0,
            "pole off the positive imaginary axis at level " + std::to_string(lv.index));
  }
  c.finish();
}

void criterion_6() {
  Criterion c(6, "monodromy: loop at lambda_2 swaps levels 2<->3 (involution); delta g_1 links 1<->2");
  double lam2 = even_pseudothresholds(2)[0].location.real();
  double lam0 = lam2 + 0.35;
  Complex e2 = level_anchor(Family::EvenWell, 2, lam0);
  Complex e3 = level_anchor(Family::EvenWell, 3, lam0);
  auto loop = circle_path({lam2, 0.0}, 0.35, 96);
  auto once = continue_level(Family::EvenWell, {lam0, 0.0}, e2, loop);
  double mis1 = std::abs(once.samples.back().internal - e3);
  c.check(mis1 <= 1e-8, "single loop mismatch to level 3: " + num(mis1));
  auto twice = continue_level(Family::EvenWell, {lam0, 0.0}, once.samples.back().internal, loop);
  double mis2 = std::abs(twice.samples.back().internal - e2);
  c.check(mis2 <= 1e-8, "double loop mismatch back to level 2: " + num(mis2));

  auto dbp = delta_branchpoints(1)[1];
  Complex g1 = dbp.location;
  double r = 0.5;
  ParamPath path;
  path.waypoints = {{3.0, 0.0}, {g1.real() + r, 0.0}, g1 + r};
  auto circ = circle_path(g1, r, 96);
  path.waypoints.insert(path.waypoints.end(), circ.waypoints.begin(), circ.waypoints.end());
  path.waypoints.push_back({g1.real() + r, 0.0});
  path.waypoints.push_back({3.0, 0.0});
  Complex k1 = level_anchor(Family::DeltaBarrier, 1, 3.0);
  Complex k2 = level_anchor(Family::DeltaBarrier, 2, 3.0);
  auto dtrack = continue_level(Family::DeltaBarrier, {3.0, 0.0}, k1, path);
  Complex kend = dtrack.samples.back().internal;
  double mis3 = std::min(std::abs(kend - k2), std::abs(kend + k2));
  c.check(mis3 <= 1e-8, "delta loop mismatch to level 2: " + num(mis3));
  auto back = monodromy(Family::DeltaBarrier, 1, dbp, r, 3.0, 2);
  c.check(!back.permuted && back.end_index == 1, "delta double loop does not return to level 1");
  c.finish();
}

void criterion_7() {
  Criterion c(7, "pole pair (k2,k3) merges below the axis at lambda_2, one member crosses at pi");
  double lam2 = even_pseudothresholds(2)[0].location.real();
  auto tracks = pole_sweep(Parity::Even, 2.5, 3.5, 500, 3);
  const auto& t2 = tracks[1].samples;
  const auto& t3 = tracks[2].samples;
  std::size_t merge_idx = 0;
  bool sym_ok = true;
  for (std::size_t i = 0; i < t2.size(); ++i) {
    if (std::abs(t2[i].k.real()) > 1e-9) {
      if (std::abs(t2[i].k - (-std::conj(t3[i].k))) > 1e-9) sym_ok = false;
      merge_idx = i + 1;
    } else {
      break;
    }
  }
  c.check(sym_ok, "off-axis pair not symmetric about the imaginary axis");
  c.check(merge_idx > 0 && merge_idx < t2.size(), "no merge found in the sweep window");
  if (merge_idx < t2.size()) {
    c.check(std::abs(t2[merge_idx].lambda - lam2) <= 0.01,
            "merge at lambda " + num(t2[merge_idx].lambda) + " vs pseudothreshold " + num(lam2));
    c.check(t2[merge_idx].k.imag() < 0, "merge point not below the real axis");
  }
  int crossings2 = 0, crossings3 = 0;
  double cross_lam = 0.0;
  for (std::size_t i = merge_idx; i + 1 < t3.size(); ++i) {
    if (t3[i].k.imag() < 0 && t3[i + 1].k.imag() >= 0) {
      ++crossings3;
      cross_lam = t3[i + 1].lambda;
    }
    if (t2[i].k.imag() < 0 && t2[i + 1].k.imag() >= 0) ++crossings2;
  }
  c.check(crossings3 == 1 && crossings2 == 0, "exactly one member must cross the real axis");
  c.check(std::abs(cross_lam - pi) <= 0.01, "crossing at lambda " + num(cross_lam) + " vs pi");
  c.finish();
}

void criterion_8() {
  Criterion c(8, "well series: ground K=30 to 1e-6 at lambda in {5,10,20}, radius within 10%; level 5");
  auto exp1 = series_coefficients(Family::EvenWell, 1, 30, 6.0);
  for (double lam : {5.0, 10.0, 20.0}) {
    double direct = level_energy(Family::EvenWell, level_anchor(Family::EvenWell, 1, lam)).real();
    double err = std::abs(evaluate_series(exp1, {lam, 0.0}).real() - direct) / direct;
    c.check(err <= 1e-6, "ground relative error " + num(err) + " at lambda " + num(lam));
  }
  exp1.estimated_radius = radius_estimate(exp1);
  auto [l1, l1m] = ground_branch_lambda();
  double lam2 = even_pseudothresholds(2)[0].location.real();
  double target = std::max(std::abs(l1), lam2);
  c.check(std::abs(exp1.estimated_radius - target) <= 0.10 * target,
          "ground radius estimate " + num(exp1.estimated_radius) + " vs max(|l1|,|l2|) = " + num(target));

  // level 5 = the paper's 4n+1 family at n = 1; the sheet limit is
  // ((4n+1) pi / 2)^2 (the printed (8n+1) form is inconsistent with the
  // level's own large-lambda limit, which the convergence check pins)
  double lam4 = std::abs(even_pseudothresholds(4)[2].location);
  auto exp5 = series_coefficients(Family::EvenWell, 5, 30, 1.2 * lam4);
  c.check(std::abs(exp5.leading_term - std::pow(2.5 * pi, 2)) < 1e-12,
          "level-5 leading term " + num(exp5.leading_term));
  double direct_inf = level_energy(Family::EvenWell, level_anchor(Family::EvenWell, 5, 4000.0)).real();
  c.check(std::abs(direct_inf - exp5.leading_term) / exp5.leading_term < 1e-3,
          "level-5 large-lambda limit " + num(direct_inf) + " vs leading term " +
              num(exp5.leading_term));
  for (double lam : {1.5 * lam4, 20.0, 30.0}) {
    double direct = level_energy(Family::EvenWell, level_anchor(Family::EvenWell, 5, lam)).real();
    double err = std::abs(evaluate_series(exp5, {lam, 0.0}).real() - direct) / direct;
    c.check(err <= 1e-6, "level-5 relative error " + num(err) + " at lambda " + num(lam));
  }
  c.finish();
}

void criterion_9() {
  Criterion c(9, "delta series: origin level 1 to 1e-8 at g=0.5, radius within 10% of |g_1|; large-g 1..3");
  auto bps = delta_branchpoints(4);
  auto t1 = delta_series(1, SeriesCenter::Origin, 30);
  Complex direct = level_anchor(Family::DeltaBarrier, 1, 0.5);
  double err = std::abs(evaluate_series(t1, {0.5, 0.0}) - direct * direct);
  c.check(err <= 1e-8, "origin series error " + num(err) + " at g = 0.5");
  double g1abs = std::abs(bps[1].location);
  c.check(std::abs(t1.estimated_radius - g1abs) <= 0.10 * g1abs,
          "radius estimate " + num(t1.estimated_radius) + " vs |g_1| = " + num(g1abs));
  for (int l = 1; l <= 3; ++l) {
    auto e = delta_series(l, SeriesCenter::Infinity, 48);
    for (double mult : {1.0, 1.5}) {
      double g = 1.1 * std::abs(bps[static_cast<std::size_t>(l) + 1].location) * mult;
      Complex d = level_anchor(Family::DeltaBarrier, l, g);
      double relerr = std::abs(evaluate_series(e, {g, 0.0}) - d * d) / std::abs(d * d);
      c.check(relerr <= 1e-6,
              "level " + std::to_string(l) + " relative error " + num(relerr) + " at g " + num(g));
    }
  }
  c.finish();
}

void criterion_10() {
  Criterion c(10, "delta asymptotics l = 20..50: Re k/(l pi) in [0.95,1.05], Im k/ln l within 10% of mean");
  auto rows = delta_asymptotics(20, 50);
  double mean = 0.0;
  for (const auto& r : rows) mean += r.im_over_lnl;
  mean /= static_cast<double>(rows.size());
  for (const auto& r : rows) {
    c.check(r.re_over_lpi >= 0.95 && r.re_over_lpi <= 1.05,
            "Re k/(l pi) = " + num(r.re_over_lpi) + " at l = " + std::to_string(r.l));
    c.check(std::abs(r.im_over_lnl - mean) / mean < 0.10,
            "Im k/ln l = " + num(r.im_over_lnl) + " at l = " + std::to_string(r.l) +
                " (mean " + num(mean) + ")");
  }
  auto bps = delta_branchpoints(50);
  for (std::size_t i = 1; i < bps.size(); ++i) {
    Complex g = bps[i].location, k = bps[i].generator;
    double res = std::abs(g * g + g + k * k);
    c.check(res <= 1e-9, "pair residual " + num(res) + " at l = " + std::to_string(bps[i].index));
  }
  c.finish();
}

void criterion_11() {
  Criterion c(11, "delta limits: g=1e6 gives k_l = l pi to 1e-5 (l <= 10); g=0 gives (l-1/2) pi");
  for (int l = 1; l <= 10; ++l) {
    Complex k = level_anchor(Family::DeltaBarrier, l, 1e6);
    double rel = std::abs(k.real() - l * pi) / (l * pi);
    c.check(rel <= 1e-5, "relative gap " + num(rel) + " at l = " + std::to_string(l));
  }
  for (int l = 1; l <= 10; ++l) {
    Complex k = level_anchor(Family::DeltaBarrier, l, 0.0);
    c.check(std::abs(k.real() - (l - 0.5) * pi) <= 1e-12 * (l * pi),
            "g = 0 momentum off at l = " + std::to_string(l));
  }
  c.finish();
}

void criterion_12() {
  Criterion c(12, "argument-principle counts equal grid-scan counts on every search rectangle");
  auto agree = [&](auto&& f, auto&& df, Rectangle rect, int n, const std::string& what) {
    auto rl = grid_seed(f, df, rect, n, kResidualTol, VerifyCount::None);
    long w = count_roots(f, rect);
    c.check(w == static_cast<long>(rl.size()),
            what + ": winding " + std::to_string(w) + " vs grid " + std::to_string(rl.size()));
  };
  auto fdelta = [](Complex k) { return std::sin(2.0 * k) - 2.0 * k; };
  auto dfdelta = [](Complex k) { return 2.0 * std::cos(2.0 * k) - 2.0; };
  agree(fdelta, dfdelta, Rectangle{{0.1, 0.1}, {15.0, 5.0}}, 64, "delta stationary, small");
  agree(fdelta, dfdelta, Rectangle{{0.1, 0.1}, {30.0, 6.0}}, 96, "delta stationary, wide");
  auto fcube = [](Complex x) { return x * x * x - 1.0; };
  auto dfcube = [](Complex x) { return 3.0 * x * x; };
  agree(fcube, dfcube, Rectangle{{-2, -2}, {2, 2}}, 32, "cube roots");
  double lam = 10.0;
  auto feven = [&](Complex k) {
    Complex kp = std::sqrt(k * k + lam * lam);
    return k * std::cos(kp) - Complex{0, 1} * kp * std::sin(kp);
  };
  auto dfeven = [&](Complex k) { return (feven(k + 1e-7) - feven(k - 1e-7)) / 2e-7; };
  agree(feven, dfeven, Rectangle{{-0.4, 0.05}, {0.4, 9.95}}, 64, "even denominator");
  auto fodd = [&](Complex p) { return 20.0 * std::sin(p) - p; };
  auto dfodd = [&](Complex p) { return 20.0 * std::cos(p) - 1.0; };
  agree(fodd, dfodd, Rectangle{{pi + 0.02, 0.05}, {2 * pi - 0.02, 6.0}}, 48, "odd anchor pair");
  c.finish();
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  if (g_failures == 0)
    std::printf("all 12 criteria passed\n");
  else
    std::printf("%d criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
