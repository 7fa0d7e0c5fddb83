#pragma once

// Alignment-quality criteria comparing original functions with their aligned
// versions. Lower ls and sls, higher pc: better synchronization.

#include <span>

#include "efda/srvf.hpp"

namespace efda {

struct MetricReport {
  double ls;
  double pc;
  double sls;
  std::size_t n;
};

/// Cross-validated least squares: mean over i of the leave-one-out residual
/// energy of the aligned set relative to that of the original set.
/// Throws std::domain_error if an original residual vanishes.
double least_squares(std::span<const SampledFunction> original, std::span<const SampledFunction> aligned);

/// Ratio of summed pairwise Pearson correlations, aligned over original.
/// A constant function correlates 0 with everything.
double pairwise_correlation(std::span<const SampledFunction> original, std::span<const SampledFunction> aligned);

/// Total cross-sectional variance of first derivatives, aligned over original.
double sobolev_least_squares(std::span<const SampledFunction> original, std::span<const SampledFunction> aligned);

MetricReport evaluate(std::span<const SampledFunction> original, std::span<const SampledFunction> aligned);

/// Sample Pearson correlation of two equally sized sample vectors; 0 when
/// either is constant.
double pearson(std::span<const double> a, std::span<const double> b);

}  // namespace efda
