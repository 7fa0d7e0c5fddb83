#pragma once

// Karcher mean of SRVF orbits, orbit centering, and the complete alignment
// of a collection of functions to a centered template.

#include <cstddef>
#include <span>
#include <vector>

#include "efda/dp_align.hpp"
#include "efda/srvf.hpp"
#include "efda/warp_geometry.hpp"

namespace efda {

struct OrbitMeanOptions {
  int max_iter = 30;
  double rel_tol = 1e-3;  // stop once the increment < rel_tol * max(|mu|, 1)
};

enum class StopReason { small_increment, cost_stagnated, max_iter };

struct OrbitMean {
  Srvf mean;
  /// Sum of squared elastic distances from the mean to every orbit, one
  /// entry per evaluated iterate; non-increasing.
  std::vector<double> cost_trace;
  int iterations;
  StopReason reason;
  bool converged() const { return reason != StopReason::max_iter; }
};

/// Throws std::invalid_argument on empty input or mixed grid sizes.
OrbitMean karcher_mean_orbits(std::span<const Srvf> qs, const DpConfig& cfg, const OrbitMeanOptions& opt = {});

struct CenteredTemplate {
  Srvf center;
  /// Warps aligning each q_i to the input template, and their Karcher mean.
  std::vector<Warping> warps;
  Warping warp_mean;
};

/// Center of the orbit of mu with respect to qs: mu moved by the inverse of
/// the Karcher mean of the optimal warps from qs to mu.
CenteredTemplate center_of_orbit(const Srvf& mu, std::span<const Srvf> qs, const DpConfig& cfg,
                                 const KarcherWarpOptions& kopt = {});

struct AlignOptions {
  OrbitMeanOptions orbit;
  KarcherWarpOptions karcher;
  /// Fisher-Rao radius around gamma_id that the Karcher mean of the output
  /// warps must reach; further centering passes are applied until it does.
  double centering_tol = 1e-3;
  int max_centering_passes = 4;
};

struct AlignmentResult {
  Srvf template_srvf;
  SampledFunction template_function;
  std::vector<Warping> warps;
  std::vector<SampledFunction> aligned;
  std::vector<Srvf> aligned_srvfs;
  std::vector<double> cost_trace;
  int iterations;
  bool converged;
  /// Fisher-Rao distance of the Karcher mean of warps from gamma_id.
  double centering_error;
};

/// Complete alignment: orbit mean, centering, final alignment to the
/// centered template. Throws std::invalid_argument on empty input or
/// inconsistent grids.
AlignmentResult align_all(std::span<const SampledFunction> fs, const DpConfig& cfg, const AlignOptions& opt = {});

}  // namespace efda
