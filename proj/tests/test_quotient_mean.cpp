#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "efda/datasets.hpp"
#include "efda/numerics.hpp"
#include "efda/quotient_mean.hpp"
#include "support.hpp"

using namespace efda;

namespace {

const DpConfig kCfg = DpConfig::standard(101);

Srvf bump_srvf(std::size_t n) {
  return to_srvf(efda::test::sampled(n, [](double t) { return std::sin(2 * std::numbers::pi * t) * (1 + t); }));
}

std::vector<Srvf> phase_only(const Srvf& q, const std::vector<Warping>& gs) {
  std::vector<Srvf> qs;
  for (const auto& g : gs) qs.push_back(warp_srvf(q, g));
  return qs;
}

void expect_non_increasing(const std::vector<double>& trace) {
  ASSERT_FALSE(trace.empty());
  for (std::size_t k = 1; k < trace.size(); ++k) EXPECT_LE(trace[k], trace[k - 1]) << "k=" << k;
}

}  // namespace

TEST(OrbitMean, SingleInput) {
  std::mt19937_64 rng(1);
  const std::vector<Srvf> one{efda::test::random_srvf(rng, 101)};
  const auto m = karcher_mean_orbits(one, kCfg);
  EXPECT_EQ(l2_distance(m.mean, one[0]), 0.0);
  EXPECT_EQ(m.cost_trace.back(), 0.0);
}

TEST(OrbitMean, IdenticalInputsTakeOneIteration) {
  std::mt19937_64 rng(2);
  const std::vector<Srvf> same(6, efda::test::random_srvf(rng, 101));
  const auto m = karcher_mean_orbits(same, kCfg);
  EXPECT_EQ(l2_distance(m.mean, same[0]), 0.0);
  EXPECT_EQ(m.iterations, 1);
  EXPECT_TRUE(m.converged());
}

TEST(OrbitMean, RejectsBadInput) {
  EXPECT_THROW(karcher_mean_orbits(std::vector<Srvf>{}, kCfg), std::invalid_argument);
  const std::vector<Srvf> mixed{Srvf(std::vector<double>(101, 1.0)), Srvf(std::vector<double>(50, 1.0))};
  EXPECT_THROW(karcher_mean_orbits(mixed, kCfg), std::invalid_argument);
}

TEST(OrbitMean, PhaseOnlyVariabilityCollapses) {
  const auto q = bump_srvf(101);
  const auto qs = phase_only(q, random_warps_identity_mean(20, 5));
  const auto m = karcher_mean_orbits(qs, kCfg);
  expect_non_increasing(m.cost_trace);
  // The seed q_j already lies in [q], so trace[0] sits at the lattice floor.
  // Compare with the cost before any alignment instead.
  double unaligned = 0.0;
  const Srvf cross = mean(qs);
  for (const auto& qi : qs) unaligned += std::pow(l2_distance(cross, qi), 2);
  EXPECT_LE(m.cost_trace.back(), 0.01 * unaligned);
}

TEST(OrbitMean, CostMonotoneOnNoisyData) {
  std::mt19937_64 rng(3);
  for (int r = 0; r < 3; ++r) {
    std::vector<Srvf> qs;
    for (int k = 0; k < 10; ++k) qs.push_back(efda::test::random_srvf(rng, 101));
    expect_non_increasing(karcher_mean_orbits(qs, kCfg).cost_trace);
  }
}

TEST(CenterOfOrbit, AlreadyCentered) {
  const auto q = bump_srvf(101);
  const std::vector<Srvf> qs(4, q);
  const auto c = center_of_orbit(q, qs, kCfg);
  EXPECT_LE(l2_distance(c.center, q), 1e-12);
  EXPECT_LE(sup_distance(c.warp_mean, Warping::identity(101)), 1e-12);
}

TEST(CenterOfOrbit, RecoversTemplateFromCenteredWarps) {
  const auto qg = bump_srvf(101);
  const auto gs = random_warps_identity_mean(30, 8);
  const auto qs = phase_only(qg, gs);
  // Start from a member of the orbit that is visibly off-center.
  std::mt19937_64 rng(4);
  const auto mu = warp_srvf(qg, efda::test::random_warp(rng, 101, 0.8, 0.3));
  const auto c = center_of_orbit(mu, qs, kCfg);
  EXPECT_LE(l2_distance(c.center, qg), 0.1 * l2_distance(mu, qg));
  EXPECT_LE(l2_distance(c.center, qg), std::sqrt(10 * grid_tolerance(101)));
}

TEST(CenterOfOrbit, Idempotent) {
  const auto qg = bump_srvf(101);
  const auto qs = phase_only(qg, random_warps_identity_mean(20, 9));
  const auto once = center_of_orbit(karcher_mean_orbits(qs, kCfg).mean, qs, kCfg);
  const auto twice = center_of_orbit(once.center, qs, kCfg);
  EXPECT_LE(l2_distance(twice.center, once.center), grid_tolerance(101) * l2_norm(qg));
  EXPECT_LE(fr_warp_distance(twice.warp_mean, Warping::identity(101)), 10 * grid_tolerance(101));
}

TEST(AlignAll, SingleFunction) {
  const auto f = efda::test::sampled(101, [](double t) { return std::cos(4 * t); }, 2.0, 5.0);
  const auto r = align_all(std::vector<SampledFunction>{f}, kCfg);
  ASSERT_EQ(r.aligned.size(), 1u);
  EXPECT_EQ(efda::test::sup_abs_diff(r.aligned[0].values(), f.values()), 0.0);
  EXPECT_EQ(sup_distance(r.warps[0], Warping::identity(101)), 0.0);
  EXPECT_EQ(r.template_function.t0(), 2.0);
}

TEST(AlignAll, RejectsInconsistentInput) {
  EXPECT_THROW(align_all(std::vector<SampledFunction>{}, kCfg), std::invalid_argument);
  const std::vector<SampledFunction> mixed{SampledFunction(std::vector<double>(101, 0.0)),
                                           SampledFunction(0.0, 2.0, std::vector<double>(101, 0.0))};
  EXPECT_THROW(align_all(mixed, kCfg), std::invalid_argument);
}

TEST(AlignAll, InvariantsOnSimulatedData) {
  for (const auto& c : {sim3_gaussian_shifts(1), sim4_wave(1)}) {
    const auto r = align_all(c.functions, kCfg);
    const std::size_t n = c.size();
    ASSERT_EQ(r.warps.size(), n);
    ASSERT_EQ(r.aligned.size(), n);
    ASSERT_EQ(r.aligned_srvfs.size(), n);
    expect_non_increasing(r.cost_trace);
    EXPECT_LE(r.centering_error, 1e-3);
    EXPECT_LE(fr_warp_distance(karcher_mean_warps(r.warps).mean, Warping::identity(101)), 1e-3);
    for (const auto& f : r.aligned) {
      EXPECT_EQ(f.t0(), c.t0);
      EXPECT_EQ(f.t1(), c.t1);
    }
    // The centered template lies in the orbit of the Karcher mean, up to the
    // resolution of the lattice: the distance the DP reports between the mean
    // and smoothly warped copies of itself.
    std::vector<Srvf> qs;
    for (const auto& f : c.functions) qs.push_back(to_srvf(f));
    const auto om = karcher_mean_orbits(qs, kCfg);
    std::mt19937_64 rng(99);
    double resolution = 0.0;
    for (int k = 0; k < 8; ++k)
      resolution = std::max(resolution, elastic_distance(om.mean, warp_srvf(om.mean, efda::test::random_warp(rng, 101)), kCfg));
    EXPECT_LE(elastic_distance(r.template_srvf, om.mean, kCfg), resolution);
  }
}

TEST(AlignAll, PreservesAmplitude) {
  // Steep lattice segments skip samples of q, a defect that is second order
  // in h: 1.2 tol at N = 101, 0.7 tol at N = 201.
  for (std::size_t n : {201u}) {
    for (const auto& c : {sim3_gaussian_shifts(1, n), sim4_wave(1, n)}) {
      const auto r = align_all(c.functions, DpConfig::standard(n));
      for (std::size_t i = 0; i < c.size(); ++i) {
        const double norm = l2_norm(to_srvf(c.functions[i]));
        EXPECT_NEAR(l2_norm(r.aligned_srvfs[i]), norm, grid_tolerance(n) * norm) << "n=" << n << " i=" << i;
      }
    }
  }
}
