#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include "efda/numerics.hpp"
#include "efda/srvf.hpp"

namespace efda::test {

// Smooth random samples on [0,1]: a few low-frequency sine/cosine terms.
inline std::vector<double> smooth_values(std::mt19937_64& rng, std::size_t n, int terms = 4, double offset = 0.0) {
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> a(terms), b(terms);
  for (int j = 0; j < terms; ++j) {
    a[j] = z(rng) / (j + 1);
    b[j] = z(rng) / (j + 1);
  }
  std::vector<double> v(n, offset);
  const auto t = linspace(0.0, 1.0, n);
  for (std::size_t k = 0; k < n; ++k)
    for (int j = 0; j < terms; ++j)
      v[k] += a[j] * std::sin((j + 1) * std::numbers::pi * t[k]) + b[j] * std::cos((j + 1) * std::numbers::pi * t[k]);
  return v;
}

inline Srvf random_srvf(std::mt19937_64& rng, std::size_t n) { return Srvf(smooth_values(rng, n)); }

// Strictly positive smooth SRVF.
inline Srvf positive_srvf(std::mt19937_64& rng, std::size_t n) {
  auto v = smooth_values(rng, n, 3);
  double lo = v[0];
  for (double x : v) lo = std::min(lo, x);
  for (double& x : v) x += 0.5 - lo;
  return Srvf(std::move(v));
}

// Closed-form smooth warp: an exponential warp after a sine perturbation.
inline double smooth_warp_at(double t, double a, double b) {
  const double s = t + b * std::sin(2.0 * std::numbers::pi * t) / (2.0 * std::numbers::pi);
  return a == 0.0 ? s : std::expm1(a * s) / std::expm1(a);
}

inline Warping random_warp(std::mt19937_64& rng, std::size_t n, double max_a = 1.0, double max_b = 0.5) {
  std::uniform_real_distribution<double> ua(-max_a, max_a), ub(-max_b, max_b);
  const double a = ua(rng);
  const double b = ub(rng);
  std::vector<double> g(n);
  const auto t = linspace(0.0, 1.0, n);
  for (std::size_t k = 0; k < n; ++k) g[k] = smooth_warp_at(t[k], a, b);
  return Warping(std::move(g));
}

inline Warping warp_from(std::size_t n, double (*fn)(double)) {
  std::vector<double> g(n);
  const auto t = linspace(0.0, 1.0, n);
  for (std::size_t k = 0; k < n; ++k) g[k] = fn(t[k]);
  return Warping(std::move(g));
}

inline SampledFunction sampled(std::size_t n, double (*fn)(double), double t0 = 0.0, double t1 = 1.0) {
  std::vector<double> v(n);
  const auto t = linspace(t0, t1, n);
  for (std::size_t k = 0; k < n; ++k) v[k] = fn(t[k]);
  return {t0, t1, std::move(v)};
}

inline double sup_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace efda::test
