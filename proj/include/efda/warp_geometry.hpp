#pragma once

// Geometry of the warping group through psi = sqrt(gamma'), which places
// every warping on the positive orthant of the unit sphere in L2[0,1].

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "efda/srvf.hpp"

namespace efda {

/// Unit-norm, strictly positive function on the uniform grid of [0,1].
class SpherePoint {
 public:
  /// Renormalizes to unit norm. Throws std::invalid_argument if any sample
  /// is not strictly positive and finite.
  explicit SpherePoint(std::vector<double> values);

  static SpherePoint identity(std::size_t n);

  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }

 private:
  std::vector<double> values_;
};

/// Element of the tangent space at base; projected onto it on construction.
class TangentVector {
 public:
  TangentVector(std::vector<double> values, const SpherePoint& base);

  static TangentVector zero(const SpherePoint& base);

  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double norm() const;
  const SpherePoint& base() const { return base_; }

 private:
  std::vector<double> values_;
  SpherePoint base_;
};

/// Raw great-circle maps on the unit Hilbert sphere, with no positivity
/// requirement. log_map throws std::domain_error for antipodal points.
namespace sphere {
std::vector<double> exp_map(std::span<const double> base, std::span<const double> v);
std::vector<double> log_map(std::span<const double> base, std::span<const double> p);
/// Angle between two unit vectors, 2 atan2(norm(a - b), norm(a + b)).
double arc_length(std::span<const double> a, std::span<const double> b);
}  // namespace sphere

/// Lower bound applied to gamma' before the square root.
inline constexpr double kMinSlope = 1e-8;

SpherePoint warp_to_sphere(const Warping& g);
Warping sphere_to_warp(const SpherePoint& p);

/// Fisher-Rao distance, in [0, pi].
double fr_warp_distance(const Warping& g1, const Warping& g2);

SpherePoint exp_map(const SpherePoint& base, const TangentVector& v);
/// nullopt when the geodesic leaves the positive orthant.
std::optional<SpherePoint> try_exp_map(const SpherePoint& base, const TangentVector& v);
TangentVector log_map(const SpherePoint& base, const SpherePoint& p);

Warping invert_warp(const Warping& g);

struct KarcherWarpOptions {
  double step = 0.5;
  double tol = 1e-6;     // stop once the mean shooting vector is shorter
  int max_iter = 100;
};

struct KarcherWarpResult {
  Warping mean;
  bool converged;
  int iterations;
  /// Sum of squared Fisher-Rao distances at every accepted iterate.
  std::vector<double> cost_trace;
  /// |norm(mu) - 1| over all iterates.
  double max_norm_error;
};

/// Gradient-descent Karcher mean under the Fisher-Rao distance. Throws
/// std::invalid_argument on an empty list or mixed grid sizes.
KarcherWarpResult karcher_mean_warps(std::span<const Warping> gs, const KarcherWarpOptions& opt = {});

/// Sum of squared Fisher-Rao distances from g to each of gs.
double fr_cost(const Warping& g, std::span<const Warping> gs);

struct RandomWarpOptions {
  double amplitude = 0.25;
  int n_basis = 3;
  std::size_t n_points = 101;
};

/// n warpings whose inverses have sample Karcher mean gamma_id. Tangent
/// vectors at psi_id are truncated sine series with coefficient j drawn from
/// Normal(0, amplitude^2 / j^2), centered across the sample, exp-mapped and
/// inverted. Deterministic in seed.
std::vector<Warping> random_warps_identity_mean(std::size_t n, std::uint64_t seed, const RandomWarpOptions& opt = {});

}  // namespace efda
