#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "oracles.hpp"
#include "specwell/deltabarrier.hpp"

using namespace specwell;
using std::numbers::pi;

TEST_CASE("coupling map basics") {
  REQUIRE(g_of_k({0.0, 0.0}) == Complex{-1.0, 0.0});  // removable limit
  REQUIRE(std::abs(g_of_k({pi / 2, 0.0})) < 1e-15);
  Complex k{1.3, 0.4};
  REQUIRE(std::abs(g_of_k(-k) - g_of_k(k)) < 1e-14);  // even in k
  REQUIRE_THROWS_AS(g_of_k({pi, 0.0}), AtPole);
  REQUIRE_THROWS_AS(g_of_k({2 * pi + 1e-13, 0.0}), AtPole);
}

TEST_CASE("unperturbed spectrum at g = 0") {
  auto levels = delta_spectrum(0.0, 4);
  for (const auto& lv : levels) {
    if (lv.parity == Parity::Even) {
      REQUIRE(lv.k.real() == Catch::Approx((lv.index - 0.5) * pi).epsilon(1e-14));
      REQUIRE(std::abs(lv.k.imag()) < 1e-14);
    } else {
      REQUIRE(lv.k.real() == Catch::Approx(lv.index * pi).epsilon(1e-15));
    }
  }
  // ascending energies alternate even/odd at g = 0
  for (std::size_t i = 1; i < levels.size(); ++i)
    REQUIRE(levels[i].energy.real() > levels[i - 1].energy.real());
}

TEST_CASE("strong coupling degenerates onto the half-well spectrum") {
  auto levels = delta_spectrum(1e6, 10);
  for (const auto& lv : levels)
    if (lv.parity == Parity::Even)
      REQUIRE(std::abs(lv.k.real() - lv.index * pi) / (lv.index * pi) <= 1e-5);
}

TEST_CASE("ground level at g = 1 against the bisection oracle") {
  double k = oracle::bisect([](double x) { return x / std::tan(x) + 1.0; },
                            pi / 2 + 1e-12, pi - 1e-9);
  REQUIRE(k == Catch::Approx(2.028757838110434).epsilon(1e-12));
  auto levels = delta_spectrum(1.0, 1);
  REQUIRE(levels[0].k.real() == Catch::Approx(k).epsilon(1e-12));
  REQUIRE(std::abs(levels[0].k.real() / std::tan(levels[0].k.real()) + 1.0) <= 1e-12);
}

TEST_CASE("interlacing and monotonicity on real coupling") {
  for (int l = 1; l <= 4; ++l) {
    double prev = 0.0;
    for (double g = 0.0; g <= 40.0; g += 0.8) {
      Complex k = level_anchor(Family::DeltaBarrier, l, g);
      REQUIRE(k.real() > (l - 0.5) * pi - 1e-12);
      REQUIRE(k.real() < l * pi);
      if (g > 0) REQUIRE(k.real() > prev);
      prev = k.real();
    }
  }
}

TEST_CASE("negative coupling below the ground window turns k imaginary") {
  auto levels = delta_spectrum(-3.0, 2);
  const auto& ground = levels.front();
  REQUIRE(ground.parity == Parity::Even);
  REQUIRE(std::abs(ground.k.real()) < 1e-12);
  REQUIRE(ground.k.imag() > 0);
  REQUIRE(ground.energy.real() < 0);
  // at g = -1 exactly: k = 0
  Complex k0 = level_anchor(Family::DeltaBarrier, 1, -1.0);
  REQUIRE(std::abs(k0) < 1e-12);
}

TEST_CASE("continuation through g = -1 keeps the energy single-valued") {
  auto levels = delta_spectrum(1.0, 1);
  ParamPath path;
  path.waypoints = {{1.0, 0.0}, {-3.0, 0.0}};
  auto track = delta_continue(levels[0], path);
  Complex direct = level_anchor(Family::DeltaBarrier, 1, -3.0);
  REQUIRE(std::abs(track.samples.back().energy - direct * direct) < 1e-9);
  // the track passes through k = 0 onto the imaginary axis
  REQUIRE(std::abs(track.samples.back().energy.real() + 8.908461461856) < 1e-6);
  for (const auto& s : track.samples) REQUIRE(std::abs(s.energy.imag()) < 1e-9);
}

TEST_CASE("asymptote switches across the branch-cut line at large coupling") {
  // level 2 continued along the real axis to -30 stays level 2 and heads to
  // the (l pi)^2 asymptote of its left half-plane, with l = 1
  auto levels = delta_spectrum(30.0, 2);
  const auto& lv2 = levels[2];  // entries sorted by energy: even-1, odd-1, even-2
  REQUIRE(lv2.parity == Parity::Even);
  REQUIRE(lv2.index == 2);
  ParamPath real_axis;
  real_axis.waypoints = {{30.0, 0.0}, {-30.0, 0.0}};
  auto track = delta_continue(lv2, real_axis);
  Complex direct = level_anchor(Family::DeltaBarrier, 2, -30.0);
  REQUIRE(std::abs(track.samples.back().internal) ==
          Catch::Approx(std::abs(direct)).epsilon(1e-9));
  REQUIRE(track.samples.back().energy.real() == Catch::Approx(pi * pi * 1.0693).margin(0.02));
  // the same endpoint reached over the first branch pair lands on another sheet
  ParamPath arc;
  for (int j = 0; j <= 64; ++j)
    arc.waypoints.push_back(std::polar(30.0, pi * j / 64.0));
  auto track_arc = delta_continue(lv2, arc);
  REQUIRE(std::abs(track_arc.samples.back().energy - track.samples.back().energy) > 1.0);
}

TEST_CASE("monodromy around the first complex pair connects ground and level 2") {
  auto bps = delta_branchpoints(1);
  auto res = monodromy(Family::DeltaBarrier, 1, bps[1]);
  REQUIRE(res.permuted);
  REQUIRE(res.end_index == 2);
  auto res2 = monodromy(Family::DeltaBarrier, 1, bps[1], 0.0, 0.0, 2);
  REQUIRE_FALSE(res2.permuted);
}

TEST_CASE("level sheets carry exactly their own pair") {
  // probing level 2 around g_2 and g_3 finds no permutation; around g_1 it does
  auto bps = delta_branchpoints(3);
  REQUIRE(monodromy(Family::DeltaBarrier, 2, bps[1]).permuted);
  REQUIRE_FALSE(monodromy(Family::DeltaBarrier, 2, bps[2]).permuted);
  REQUIRE_FALSE(monodromy(Family::DeltaBarrier, 2, bps[3]).permuted);
  // and all permutations land on the ground sheet
  REQUIRE(monodromy(Family::DeltaBarrier, 2, bps[1]).end_index == 1);
  REQUIRE(monodromy(Family::DeltaBarrier, 3, bps[2]).end_index == 1);
}

TEST_CASE("taylor series about the origin for the ground level") {
  auto exp = delta_series(1, SeriesCenter::Origin, 30);
  // closed-form orders: E = pi^2/4 + 2 g - (4/pi^2) g^2 + ...
  REQUIRE(exp.coefficients[0].real() == Catch::Approx(pi * pi / 4).epsilon(1e-12));
  REQUIRE(exp.coefficients[1].real() == Catch::Approx(2.0).epsilon(1e-10));
  REQUIRE(exp.coefficients[2].real() == Catch::Approx(-4.0 / (pi * pi)).epsilon(1e-9));
  Complex s = evaluate_series(exp, {0.5, 0.0});
  Complex direct = level_anchor(Family::DeltaBarrier, 1, 0.5);
  REQUIRE(std::abs(s - direct * direct) < 1e-8);
  auto bps = delta_branchpoints(1);
  REQUIRE(exp.estimated_radius == Catch::Approx(std::abs(bps[1].location)).epsilon(0.10));
}

TEST_CASE("large-coupling series for the first three levels") {
  auto bps = delta_branchpoints(4);
  for (int l = 1; l <= 3; ++l) {
    auto exp = delta_series(l, SeriesCenter::Infinity, 48);
    REQUIRE(exp.leading_term == Catch::Approx(std::pow(l * pi, 2)).epsilon(1e-15));
    REQUIRE(exp.coefficients[0].real() ==
            Catch::Approx(-2.0 * std::pow(l * pi, 2)).epsilon(1e-9));
    for (double mult : {1.0, 1.4}) {
      double g = 1.1 * std::abs(bps[static_cast<std::size_t>(l) + 1].location) * mult;
      Complex direct = level_anchor(Family::DeltaBarrier, l, g);
      Complex s = evaluate_series(exp, {g, 0.0});
      REQUIRE(std::abs(s - direct * direct) / std::abs(direct * direct) < 1e-6);
    }
  }
}
