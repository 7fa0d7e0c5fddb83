#pragma once

// Uniform-grid numerics shared by every module: trapezoidal quadrature,
// second-order finite differences and linear interpolation.

#include <cstddef>
#include <span>
#include <vector>

namespace efda {

/// Spacing of an n-point uniform grid on [0,1].
inline double grid_step(std::size_t n) { return 1.0 / static_cast<double>(n - 1); }

/// Discretization tolerance used throughout the test suites: the grid step h.
/// Piecewise-linear warps and linear interpolation are first order in h.
inline double grid_tolerance(std::size_t n) { return grid_step(n); }

std::vector<double> linspace(double a, double b, std::size_t n);

/// Trapezoidal integral of samples spaced h apart.
double trapz(std::span<const double> y, double h);

/// Cumulative trapezoidal integral; out[0] = 0.
std::vector<double> cumtrapz(std::span<const double> y, double h);

/// Trapezoidal inner product of two equally sampled functions.
double inner(std::span<const double> a, std::span<const double> b, double h);

/// Central differences in the interior, one-sided second-order stencils at
/// both endpoints. Requires y.size() >= 3.
std::vector<double> gradient(std::span<const double> y, double h);

/// Linear interpolation of samples on the uniform grid of [0,1] at x.
/// x is clamped to [0,1].
double interp_unit(std::span<const double> y, double x);

/// Linear resampling of y (uniform on [0,1]) onto an m-point uniform grid.
std::vector<double> resample(std::span<const double> y, std::size_t m);

}  // namespace efda
