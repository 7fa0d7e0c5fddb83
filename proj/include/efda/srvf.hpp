#pragma once

// Discrete functions, square-root velocity functions (SRVFs) and warpings.
//
// All three live on uniform grids.  A SampledFunction keeps its original
// interval [t0, t1]; every derivative and integral is taken on the rescaled
// unit interval, so an SRVF or a warping always lives on [0,1].

#include <cstddef>
#include <span>
#include <vector>

namespace efda {

class SampledFunction {
 public:
  /// Throws std::invalid_argument unless t1 > t0, values.size() >= 3 and all
  /// values are finite.
  SampledFunction(double t0, double t1, std::vector<double> values);

  /// Samples on the unit interval.
  explicit SampledFunction(std::vector<double> values) : SampledFunction(0.0, 1.0, std::move(values)) {}

  double t0() const { return t0_; }
  double t1() const { return t1_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }

  /// Time of sample k in the original interval.
  double time(std::size_t k) const;
  std::vector<double> times() const;

  /// Same samples re-labelled onto a different interval.
  SampledFunction with_interval(double t0, double t1) const { return {t0, t1, values_}; }

 private:
  double t0_;
  double t1_;
  std::vector<double> values_;
};

class Srvf {
 public:
  /// Throws std::invalid_argument on fewer than 3 samples or non-finite values.
  explicit Srvf(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }

  Srvf scaled(double c) const;

 private:
  std::vector<double> values_;
};

/// Boundary-preserving, strictly increasing map of [0,1] sampled on a
/// uniform grid.
class Warping {
 public:
  /// Throws std::invalid_argument unless values[0] == 0, values.back() == 1
  /// (within 1e-9, then snapped exactly) and the samples strictly increase.
  explicit Warping(std::vector<double> values);

  static Warping identity(std::size_t n);

  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }

  /// Piecewise-linear evaluation at x in [0,1].
  double operator()(double x) const;

 private:
  std::vector<double> values_;
};

/// Q(x) = x / sqrt(|x|), Q(0) = 0.
double q_map(double x);

Srvf to_srvf(const SampledFunction& f);

/// Integrates q|q| on [0,1] and maps the result onto [t0, t1] (values unchanged).
SampledFunction from_srvf(const Srvf& q, double f0, double t0 = 0.0, double t1 = 1.0);

/// Resamples a warping onto an n-point grid, keeping the endpoints exact.
Warping resample(const Warping& g, std::size_t n);

/// f o g: samples of f interpolated at g(t_k) mapped into f's interval.
SampledFunction warp_function(const SampledFunction& f, const Warping& g);

/// (q o g) sqrt(g'), with g' from the finite-difference scheme.
Srvf warp_srvf(const Srvf& q, const Warping& g);

/// g1 o g2.
Warping compose(const Warping& g1, const Warping& g2);

double l2_norm(std::span<const double> values);
double l2_norm(const Srvf& q);

/// Trapezoidal L2 distance on [0,1]. Throws std::invalid_argument on a grid
/// size mismatch.
double l2_distance(const Srvf& q1, const Srvf& q2);
double l2_distance(std::span<const double> a, std::span<const double> b);

/// Pointwise average of equally sized functions.
Srvf mean(std::span<const Srvf> qs);

double sup_distance(const Warping& g1, const Warping& g2);

}  // namespace efda
