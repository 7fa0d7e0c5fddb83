#pragma once

// Elastic matching of two SRVFs by dynamic programming over a square lattice.
//
// A path runs from lattice point (0,0) to (m-1,m-1) through steps (a,b):
// a cells along the template axis t and b cells along the warped axis
// gamma(t). Along a step the warp is linear with slope b/a, and the step
// contributes the trapezoidal sum of (q1(t) - q2(gamma(t)) sqrt(b/a))^2 over
// the a+1 lattice samples it covers, so the total path energy is exactly the
// trapezoidal L2 energy of the piecewise-linear warp.

#include <cstddef>
#include <span>
#include <vector>

#include "efda/srvf.hpp"

namespace efda {

inline constexpr int kDefaultSlopeMax = 7;

struct Slope {
  int a;  // template-axis cells
  int b;  // warped-axis cells
  friend bool operator==(Slope, Slope) = default;
};

struct DpConfig {
  std::size_t grid_n = 101;
  /// Admissible steps, ordered by preference for tie-breaking.
  std::vector<Slope> slopes;

  /// Lattice of grid_n points with every coprime (a,b), 1 <= a,b <= slope_max,
  /// ordered by closeness of b/a to 1.
  static DpConfig standard(std::size_t grid_n, int slope_max = kDefaultSlopeMax);

  /// Throws std::invalid_argument unless grid_n >= 8, every step has
  /// a,b >= 1 and (1,1) is admissible.
  void validate() const;
};

struct LatticePoint {
  int i;  // template axis
  int j;  // warped axis
  friend bool operator==(LatticePoint, LatticePoint) = default;
};

struct DpSolution {
  Warping warp;
  double energy;  // minimized squared distance on the lattice
  std::vector<LatticePoint> path;
};

/// Energy of one lattice step from (i, j) to (i + s.a, j + s.b). q1 and q2
/// are sampled on the lattice itself (grid_n points).
double segment_energy(std::span<const double> q1, std::span<const double> q2, int i, int j, Slope s);

/// Energy of a complete lattice path, summed step by step from the origin.
double path_energy(std::span<const double> q1, std::span<const double> q2, std::span<const LatticePoint> path);

/// Piecewise-linear warp through a lattice path, sampled on n points.
Warping path_to_warp(std::span<const LatticePoint> path, std::size_t grid_n, std::size_t n);

/// argmin over lattice paths of || q1 - (q2, gamma) ||^2.
DpSolution optimal_warp(const Srvf& q1, const Srvf& q2, const DpConfig& cfg);

struct ElasticMatch {
  double distance;
  Warping warp;         // warp applied to the moved function
  bool swapped;         // true when the minimum came from aligning q1 onto q2
};

/// Symmetrized elastic distance: both matching directions are solved and the
/// smaller energy wins. When swapped is false, warp aligns q2 to q1;
/// otherwise it aligns q1 to q2.
ElasticMatch elastic_match(const Srvf& q1, const Srvf& q2, const DpConfig& cfg);

double elastic_distance(const Srvf& q1, const Srvf& q2, const DpConfig& cfg);

}  // namespace efda
