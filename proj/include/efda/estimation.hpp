#pragma once

// Signal estimation under random warping, scaling and vertical translation:
// f_i = c_i (g o gamma_i) + e_i with constant c_i > 0 and e_i.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "efda/dp_align.hpp"
#include "efda/quotient_mean.hpp"
#include "efda/srvf.hpp"

namespace efda {

enum class LawKind { constant, normal, exponential };

/// Scalar distribution: constant(value), normal(mean, sd), exponential(mean).
struct Law {
  LawKind kind = LawKind::constant;
  double p1 = 0.0;
  double p2 = 0.0;

  static Law constant(double v) { return {LawKind::constant, v, 0.0}; }
  static Law normal(double mean, double sd) { return {LawKind::normal, mean, sd}; }
  static Law exponential(double mean) { return {LawKind::exponential, mean, 0.0}; }

  double mean() const;
  double sample(std::mt19937_64& rng) const;
  /// Throws std::invalid_argument on non-finite parameters, a negative sd or
  /// a non-positive exponential mean.
  void validate() const;
};

struct ObservationModel {
  SampledFunction signal;
  Law scale = Law::exponential(1.0);
  Law noise = Law::normal(0.0, 1.0);
  double warp_amplitude = 0.25;
  int warp_basis = 3;
  std::uint64_t seed = 0;

  double c_mean() const { return scale.mean(); }
  double e_mean() const { return noise.mean(); }

  /// g(t) = sin(5 pi t) on [0,1], exponential(1) scales, standard normal shifts.
  static ObservationModel sine_default(std::size_t n_points = 101, std::uint64_t seed = 0);

  void validate() const;
};

struct Observations {
  std::vector<SampledFunction> functions;
  std::vector<double> scales;
  std::vector<double> shifts;
  std::vector<Warping> warps;
  /// Sample mean of sqrt(c_i).
  double s_bar;
};

/// Draws n observations from the random stream seeded by (m.seed, n).
Observations simulate_observations(const ObservationModel& m, std::size_t n);

struct EstimationReport {
  SampledFunction estimate;
  /// L2 distance to the true signal on [0,1]; NaN when no truth was given.
  double error;
  std::size_t n;
  std::optional<double> s_bar;
};

/// g_hat = (mean of aligned functions - e_mean) / c_mean. Throws
/// std::invalid_argument when c_mean == 0 or fs is empty.
EstimationReport estimate_signal(std::span<const SampledFunction> fs, double c_mean, double e_mean,
                                 const DpConfig& cfg, const std::optional<SampledFunction>& truth = std::nullopt,
                                 const AlignOptions& opt = {});

struct ConsistencyPoint {
  std::size_t n;
  double error;  // averaged over repeats
};

/// For each n: simulate, estimate, record the L2 error. Repeat r uses model
/// seed m.seed + r.
std::vector<ConsistencyPoint> consistency_experiment(const ObservationModel& m, std::span<const std::size_t> sizes,
                                                     const DpConfig& cfg, std::size_t repeats = 1,
                                                     const AlignOptions& opt = {});

/// Spearman rank correlation (average ranks for ties).
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace efda
