#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "efda/metrics.hpp"
#include "efda/numerics.hpp"
#include "support.hpp"

using namespace efda;

namespace {

std::vector<SampledFunction> random_set(std::mt19937_64& rng, std::size_t n, std::size_t m = 101) {
  std::vector<SampledFunction> fs;
  for (std::size_t i = 0; i < n; ++i) fs.emplace_back(efda::test::smooth_values(rng, m));
  return fs;
}

std::vector<SampledFunction> transformed(const std::vector<SampledFunction>& fs, double a, double b) {
  std::vector<SampledFunction> out;
  for (const auto& f : fs) {
    std::vector<double> v(f.values().begin(), f.values().end());
    for (double& x : v) x = a * x + b;
    out.emplace_back(f.t0(), f.t1(), std::move(v));
  }
  return out;
}

// Naive formulas, written directly from the definitions.
double naive_loo(const std::vector<SampledFunction>& fs, std::size_t i) {
  const std::size_t m = fs[i].size();
  std::vector<double> r(m);
  for (std::size_t k = 0; k < m; ++k) {
    double others = 0.0;
    for (std::size_t j = 0; j < fs.size(); ++j)
      if (j != i) others += fs[j][k];
    others /= static_cast<double>(fs.size() - 1);
    r[k] = (fs[i][k] - others) * (fs[i][k] - others);
  }
  return trapz(r, grid_step(m));
}

double naive_ls(const std::vector<SampledFunction>& orig, const std::vector<SampledFunction>& alig) {
  double s = 0.0;
  for (std::size_t i = 0; i < orig.size(); ++i) s += naive_loo(alig, i) / naive_loo(orig, i);
  return s / static_cast<double>(orig.size());
}

double naive_pearson(std::span<const double> a, std::span<const double> b) {
  const double n = static_cast<double>(a.size());
  double sa = 0, sb = 0, sab = 0, saa = 0, sbb = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    sa += a[k];
    sb += b[k];
    sab += a[k] * b[k];
    saa += a[k] * a[k];
    sbb += b[k] * b[k];
  }
  return (n * sab - sa * sb) / std::sqrt((n * saa - sa * sa) * (n * sbb - sb * sb));
}

double naive_pc(const std::vector<SampledFunction>& orig, const std::vector<SampledFunction>& alig) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < orig.size(); ++i)
    for (std::size_t j = 0; j < orig.size(); ++j) {
      if (i == j) continue;
      num += naive_pearson(alig[i].values(), alig[j].values());
      den += naive_pearson(orig[i].values(), orig[j].values());
    }
  return num / den;
}

}  // namespace

TEST(Metrics, IdentityGivesOne) {
  std::mt19937_64 rng(1);
  const auto fs = random_set(rng, 8);
  const auto r = evaluate(fs, fs);
  EXPECT_DOUBLE_EQ(r.ls, 1.0);
  EXPECT_DOUBLE_EQ(r.pc, 1.0);
  EXPECT_DOUBLE_EQ(r.sls, 1.0);
  EXPECT_EQ(r.n, 8u);
}

TEST(Metrics, IdenticalAlignedSet) {
  std::mt19937_64 rng(2);
  const auto fs = random_set(rng, 6);
  const std::vector<SampledFunction> same(6, fs[0]);
  // Zero up to rounding of the leave-one-out and cross-sectional means.
  EXPECT_LE(least_squares(fs, same), 1e-28);
  EXPECT_LE(sobolev_least_squares(fs, same), 1e-28);
  // All pairwise correlations equal 1: numerator n(n-1).
  double den = 0.0;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      if (i != j) den += pearson(fs[i].values(), fs[j].values());
  EXPECT_NEAR(pairwise_correlation(fs, same), 30.0 / den, 1e-12);
}

TEST(Metrics, MatchNaiveFormulas) {
  std::mt19937_64 rng(3);
  for (int r = 0; r < 5; ++r) {
    const auto a = random_set(rng, 7, 51);
    const auto b = random_set(rng, 7, 51);
    EXPECT_NEAR(least_squares(a, b), naive_ls(a, b), 1e-10);
    EXPECT_NEAR(pairwise_correlation(a, b), naive_pc(a, b), 1e-9);
  }
}

TEST(Metrics, SobolevUsesFullMeanOfDerivatives) {
  // Two lines with slopes 1 and 3 against slopes 2 and 2: the aligned set
  // has no derivative variance, the original has (1-2)^2 + (3-2)^2 = 2.
  const auto t = linspace(0.0, 1.0, 11);
  auto line = [&](double s) {
    std::vector<double> v(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) v[k] = s * t[k];
    return SampledFunction(v);
  };
  const std::vector<SampledFunction> orig{line(1.0), line(3.0)};
  const std::vector<SampledFunction> flat{line(2.0), line(2.0)};
  const std::vector<SampledFunction> wide{line(0.0), line(4.0)};
  EXPECT_EQ(sobolev_least_squares(orig, flat), 0.0);
  EXPECT_NEAR(sobolev_least_squares(orig, wide), 4.0, 1e-12);
}

TEST(Metrics, Invariances) {
  std::mt19937_64 rng(4);
  const auto a = random_set(rng, 9);
  const auto b = random_set(rng, 9);
  // A common constant shift of both sets.
  EXPECT_NEAR(least_squares(transformed(a, 1, 5), transformed(b, 1, 5)), least_squares(a, b), 1e-10);
  EXPECT_NEAR(sobolev_least_squares(transformed(a, 1, 5), transformed(b, 1, 5)), sobolev_least_squares(a, b), 1e-10);
  // Positive affine maps of both sets.
  EXPECT_NEAR(pairwise_correlation(transformed(a, 3, -2), transformed(b, 3, -2)), pairwise_correlation(a, b), 1e-10);
  EXPECT_NEAR(pairwise_correlation(transformed(a, 0.5, 7), b), pairwise_correlation(a, b), 1e-10);
}

TEST(Metrics, Pearson) {
  const std::vector<double> x{1, 2, 3, 4};
  const std::vector<double> y{2, 4, 6, 8};
  const std::vector<double> z{4, 3, 2, 1};
  const std::vector<double> c{5, 5, 5, 5};
  EXPECT_NEAR(pearson(x, y), 1.0, 1e-15);
  EXPECT_NEAR(pearson(x, z), -1.0, 1e-15);
  EXPECT_EQ(pearson(x, c), 0.0);
  EXPECT_THROW(pearson(x, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST(Metrics, Errors) {
  std::mt19937_64 rng(5);
  const auto a = random_set(rng, 4);
  const std::vector<SampledFunction> same(4, a[0]);
  EXPECT_THROW(least_squares(same, a), std::domain_error);
  EXPECT_THROW(sobolev_least_squares(same, a), std::domain_error);
  const std::vector<SampledFunction> consts(4, SampledFunction(std::vector<double>(101, 2.0)));
  EXPECT_THROW(pairwise_correlation(consts, a), std::domain_error);
  EXPECT_THROW(least_squares(std::span(a).first(1), std::span(a).first(1)), std::invalid_argument);
  EXPECT_THROW(least_squares(a, std::span(a).first(3)), std::invalid_argument);
}
