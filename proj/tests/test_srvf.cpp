#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "efda/numerics.hpp"
#include "efda/srvf.hpp"
#include "efda/warp_geometry.hpp"
#include "support.hpp"

using namespace efda;
using efda::test::sampled;

TEST(QMap, Examples) {
  EXPECT_EQ(q_map(0.0), 0.0);
  EXPECT_DOUBLE_EQ(q_map(4.0), 2.0);
  EXPECT_DOUBLE_EQ(q_map(-9.0), -3.0);
}

TEST(QMap, ContinuousAcrossZero) {
  for (double eps : {1e-2, 1e-4, 1e-8, 1e-12}) {
    EXPECT_LE(std::abs(q_map(eps) - q_map(-eps)), 2.0 * std::sqrt(eps) + 1e-15);
    EXPECT_LE(std::abs(q_map(eps)), std::sqrt(eps) * (1 + 1e-12));
  }
}

TEST(SampledFunction, RejectsInvalidInput) {
  EXPECT_THROW(SampledFunction(1.0, 1.0, {0, 1, 2}), std::invalid_argument);
  EXPECT_THROW(SampledFunction(2.0, 1.0, {0, 1, 2}), std::invalid_argument);
  EXPECT_THROW(SampledFunction(0.0, 1.0, {0, 1}), std::invalid_argument);
  EXPECT_THROW(SampledFunction(0.0, 1.0, {0, std::numeric_limits<double>::quiet_NaN(), 2}), std::invalid_argument);
  EXPECT_THROW(SampledFunction(0.0, 1.0, {0, std::numeric_limits<double>::infinity(), 2}), std::invalid_argument);
}

TEST(SampledFunction, GridTimes) {
  const SampledFunction f(-3.0, 3.0, std::vector<double>(101, 0.0));
  EXPECT_DOUBLE_EQ(f.time(0), -3.0);
  EXPECT_DOUBLE_EQ(f.time(50), 0.0);
  EXPECT_DOUBLE_EQ(f.time(100), 3.0);
  EXPECT_EQ(f.times().size(), 101u);
}

TEST(Warping, Invariants) {
  EXPECT_THROW(Warping({0.0, 0.6, 0.5, 1.0}), std::invalid_argument);
  EXPECT_THROW(Warping({0.0, 0.5, 0.5, 1.0}), std::invalid_argument);
  EXPECT_THROW(Warping({0.1, 0.5, 1.0}), std::invalid_argument);
  EXPECT_THROW(Warping({0.0, 0.5, 0.9}), std::invalid_argument);
  const Warping g({1e-12, 0.5, 1.0 - 1e-12});
  EXPECT_EQ(g[0], 0.0);
  EXPECT_EQ(g[2], 1.0);
}

TEST(ToSrvf, Examples) {
  const auto id = to_srvf(sampled(101, [](double t) { return t; }));
  for (double v : id.values()) EXPECT_NEAR(v, 1.0, 1e-12);

  const auto flat = to_srvf(sampled(101, [](double) { return 3.0; }));
  for (double v : flat.values()) EXPECT_EQ(v, 0.0);

  // The second-order stencils differentiate quadratics exactly.
  const auto sq = to_srvf(sampled(101, [](double t) { return t * t; }));
  for (std::size_t k = 0; k < sq.size(); ++k) EXPECT_NEAR(sq[k], std::sqrt(2.0 * k / 100.0), 1e-7);
}

TEST(ToSrvf, UsesRescaledDomain) {
  // f(t) = t on [0, 4] is the identity map of [0,1] scaled by 4.
  const auto q = to_srvf(sampled(51, [](double t) { return t; }, 0.0, 4.0));
  for (double v : q.values()) EXPECT_NEAR(v, 2.0, 1e-12);
}

TEST(FromSrvf, Examples) {
  const auto f = from_srvf(Srvf(std::vector<double>(101, 1.0)), 0.0);
  for (std::size_t k = 0; k < f.size(); ++k) EXPECT_NEAR(f[k], k / 100.0, 1e-12);

  const auto c = from_srvf(Srvf(std::vector<double>(101, 0.0)), 5.0);
  for (double v : c.values()) EXPECT_EQ(v, 5.0);

  const auto g = sampled(101, [](double t) { return std::sin(2 * std::numbers::pi * t); });
  const auto back = from_srvf(to_srvf(g), 0.0);
  EXPECT_LE(efda::test::sup_abs_diff(back.values(), g.values()), grid_tolerance(101));
}

TEST(FromSrvf, KeepsInterval) {
  const auto f = from_srvf(Srvf(std::vector<double>(11, 1.0)), 2.0, -3.0, 3.0);
  EXPECT_EQ(f.t0(), -3.0);
  EXPECT_EQ(f.t1(), 3.0);
  EXPECT_NEAR(f[10], 3.0, 1e-12);
}

TEST(FromSrvf, RoundTripRandomFunctions) {
  std::mt19937_64 rng(11);
  for (std::size_t n : {101u, 401u}) {
    for (int r = 0; r < 20; ++r) {
      const SampledFunction f(efda::test::smooth_values(rng, n, 4, 1.0));
      const auto back = from_srvf(to_srvf(f), f[0]);
      EXPECT_LE(efda::test::sup_abs_diff(back.values(), f.values()), grid_tolerance(n));
    }
  }
}

TEST(WarpFunction, Examples) {
  std::mt19937_64 rng(3);
  const auto f = sampled(101, [](double t) { return std::cos(3 * t); });
  const auto same = warp_function(f, Warping::identity(101));
  EXPECT_LE(efda::test::sup_abs_diff(same.values(), f.values()), 1e-14);

  const auto ident = sampled(101, [](double t) { return t; });
  const Warping g = efda::test::random_warp(rng, 101);
  const auto fg = warp_function(ident, g);
  EXPECT_LE(efda::test::sup_abs_diff(fg.values(), g.values()), 1e-12);

  const auto back = warp_function(warp_function(f, g), invert_warp(g));
  EXPECT_LE(efda::test::sup_abs_diff(back.values(), f.values()), grid_tolerance(101));
}

TEST(WarpFunction, MapsIntoOriginalInterval) {
  const auto f = sampled(61, [](double t) { return t * t; }, -3.0, 3.0);
  const auto w = warp_function(f, Warping::identity(61));
  EXPECT_EQ(w.t0(), -3.0);
  EXPECT_EQ(w.t1(), 3.0);
}

TEST(WarpSrvf, IdentityLeavesSrvfUnchanged) {
  std::mt19937_64 rng(5);
  const auto q = efda::test::random_srvf(rng, 101);
  const auto w = warp_srvf(q, Warping::identity(101));
  EXPECT_LE(efda::test::sup_abs_diff(w.values(), q.values()), 1e-12);
}

TEST(WarpSrvf, PreservesNorm) {
  std::mt19937_64 rng(6);
  for (int r = 0; r < 25; ++r) {
    const auto q = efda::test::random_srvf(rng, 101);
    const auto g = efda::test::random_warp(rng, 101);
    EXPECT_NEAR(l2_norm(warp_srvf(q, g)), l2_norm(q), grid_tolerance(101));
  }
}

TEST(WarpSrvf, CommutesWithSrvfOfWarpedFunction) {
  std::mt19937_64 rng(8);
  const std::size_t n = 201;
  for (int r = 0; r < 10; ++r) {
    // Strictly increasing f keeps the SRVF away from the square-root cusp.
    auto v = efda::test::smooth_values(rng, n, 2);
    std::vector<double> f(n, 0.0);
    for (std::size_t k = 1; k < n; ++k) f[k] = f[k - 1] + (2.0 + 0.1 * (v[k] + v[k - 1])) / (n - 1);
    const SampledFunction fn(std::move(f));
    const auto g = efda::test::random_warp(rng, n);
    const auto a = warp_srvf(to_srvf(fn), g);
    const auto b = to_srvf(warp_function(fn, g));
    EXPECT_LE(l2_distance(a, b), grid_tolerance(n));
  }
}

TEST(Compose, IdentityAndInverse) {
  std::mt19937_64 rng(9);
  const auto g = efda::test::random_warp(rng, 101);
  const auto id = Warping::identity(101);
  EXPECT_LE(sup_distance(compose(g, id), g), 1e-12);
  EXPECT_LE(sup_distance(compose(id, g), g), 1e-12);
  EXPECT_LE(sup_distance(compose(g, invert_warp(g)), id), grid_tolerance(101));
}

TEST(L2Distance, Examples) {
  const Srvf one(std::vector<double>(101, 1.0));
  const Srvf zero(std::vector<double>(101, 0.0));
  const Srvf minus(std::vector<double>(101, -1.0));
  EXPECT_EQ(l2_distance(one, one), 0.0);
  EXPECT_NEAR(l2_distance(one, zero), 1.0, 1e-14);
  EXPECT_NEAR(l2_distance(one, minus), 2.0, 1e-14);
  EXPECT_THROW(l2_distance(one, Srvf(std::vector<double>(50, 1.0))), std::invalid_argument);
}

TEST(Mean, PointwiseAverage) {
  const Srvf a({1.0, 2.0, 3.0});
  const Srvf b({3.0, 2.0, 1.0});
  const std::vector<Srvf> both{a, b};
  const auto m = mean(both);
  for (double v : m.values()) EXPECT_DOUBLE_EQ(v, 2.0);
  EXPECT_THROW(mean(std::vector<Srvf>{}), std::invalid_argument);
}

namespace {

// Largest isometry defect over a fixed family of random (q1, q2, gamma).
double isometry_defect(std::size_t n) {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int r = 0; r < 20; ++r) {
    const auto q1 = efda::test::random_srvf(rng, n);
    const auto q2 = efda::test::random_srvf(rng, n);
    const auto g = efda::test::random_warp(rng, n);
    const double before = l2_distance(q1, q2);
    const double after = l2_distance(warp_srvf(q1, g), warp_srvf(q2, g));
    worst = std::max(worst, std::abs(after - before));
  }
  return worst;
}

}  // namespace

TEST(Isometry, DefectWithinToleranceAndShrinksWithGrid) {
  const double coarse = isometry_defect(200);
  const double fine = isometry_defect(2000);
  EXPECT_LE(coarse, grid_tolerance(200));
  EXPECT_LE(fine, grid_tolerance(2000));
  EXPECT_GE(coarse / fine, 5.0) << "coarse " << coarse << " fine " << fine;
}

TEST(Numerics, TrapzAndGradient) {
  const auto t = linspace(0.0, 1.0, 1001);
  std::vector<double> y(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) y[k] = t[k] * t[k];
  EXPECT_NEAR(trapz(y, grid_step(y.size())), 1.0 / 3.0, 1e-6);
  const auto c = cumtrapz(y, grid_step(y.size()));
  EXPECT_EQ(c[0], 0.0);
  EXPECT_NEAR(c.back(), trapz(y, grid_step(y.size())), 1e-14);
  const auto d = gradient(y, grid_step(y.size()));
  for (std::size_t k = 0; k < t.size(); ++k) EXPECT_NEAR(d[k], 2 * t[k], 1e-9);
  EXPECT_THROW(gradient(std::vector<double>{1.0, 2.0}, 0.5), std::invalid_argument);
}

TEST(Numerics, InterpolationClampsAndResamples) {
  const std::vector<double> y{0.0, 1.0, 4.0};
  EXPECT_EQ(interp_unit(y, -1.0), 0.0);
  EXPECT_EQ(interp_unit(y, 2.0), 4.0);
  EXPECT_DOUBLE_EQ(interp_unit(y, 0.75), 2.5);
  const auto r = resample(y, 5);
  EXPECT_DOUBLE_EQ(r[1], 0.5);
  EXPECT_DOUBLE_EQ(r[3], 2.5);
}
