#include "efda/dp_align.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "efda/numerics.hpp"

namespace efda {

DpConfig DpConfig::standard(std::size_t grid_n, int slope_max) {
  if (slope_max < 1) throw std::invalid_argument("DpConfig: slope_max must be >= 1");
  DpConfig cfg;
  cfg.grid_n = grid_n;
  for (int a = 1; a <= slope_max; ++a)
    for (int b = 1; b <= slope_max; ++b)
      if (std::gcd(a, b) == 1) cfg.slopes.push_back({a, b});
  std::stable_sort(cfg.slopes.begin(), cfg.slopes.end(), [](Slope l, Slope r) {
    return std::abs(std::log(static_cast<double>(l.b) / l.a)) < std::abs(std::log(static_cast<double>(r.b) / r.a));
  });
  return cfg;
}

void DpConfig::validate() const {
  if (grid_n < 8) throw std::invalid_argument("DpConfig: grid_n must be >= 8");
  if (slopes.empty()) throw std::invalid_argument("DpConfig: empty slope set");
  bool has_unit = false;
  for (Slope s : slopes) {
    if (s.a < 1 || s.b < 1) throw std::invalid_argument("DpConfig: slope entries must be >= 1");
    has_unit = has_unit || (s.a == 1 && s.b == 1);
  }
  if (!has_unit) throw std::invalid_argument("DpConfig: slope set must contain (1,1)");
}

double segment_energy(std::span<const double> q1, std::span<const double> q2, int i, int j, Slope s) {
  const double h = grid_step(q1.size());
  const double root = std::sqrt(static_cast<double>(s.b) / static_cast<double>(s.a));
  double sum = 0.0;
  for (int k = 0; k <= s.a; ++k) {
    const int num = k * s.b;
    const auto jj = static_cast<std::size_t>(j + num / s.a);
    const int rem = num % s.a;
    double v2 = q2[jj];
    if (rem != 0) v2 += (static_cast<double>(rem) / s.a) * (q2[jj + 1] - q2[jj]);
    const double e = q1[static_cast<std::size_t>(i + k)] - v2 * root;
    const double w = (k == 0 || k == s.a) ? 0.5 : 1.0;
    sum += w * e * e;
  }
  return sum * h;
}

double path_energy(std::span<const double> q1, std::span<const double> q2, std::span<const LatticePoint> path) {
  double e = 0.0;
  for (std::size_t k = 1; k < path.size(); ++k) {
    const Slope s{path[k].i - path[k - 1].i, path[k].j - path[k - 1].j};
    e = e + segment_energy(q1, q2, path[k - 1].i, path[k - 1].j, s);
  }
  return e;
}

Warping path_to_warp(std::span<const LatticePoint> path, std::size_t grid_n, std::size_t n) {
  if (path.size() < 2) throw std::invalid_argument("path_to_warp: path needs at least two points");
  const double cells = static_cast<double>(grid_n - 1);
  std::vector<double> g(n);
  std::size_t seg = 1;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = static_cast<double>(k) * cells / static_cast<double>(n - 1);
    while (seg + 1 < path.size() && x > path[seg].i) ++seg;
    const LatticePoint p0 = path[seg - 1];
    const LatticePoint p1 = path[seg];
    const double frac = (x - p0.i) / static_cast<double>(p1.i - p0.i);
    g[k] = (p0.j + frac * (p1.j - p0.j)) / cells;
  }
  g.front() = 0.0;
  g.back() = 1.0;
  return Warping(std::move(g));
}

DpSolution optimal_warp(const Srvf& q1, const Srvf& q2, const DpConfig& cfg) {
  cfg.validate();
  if (q1.size() != q2.size()) throw std::invalid_argument("optimal_warp: grid size mismatch");
  const std::size_t m = cfg.grid_n;
  const auto a = resample(q1.values(), m);
  const auto b = resample(q2.values(), m);

  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> cost(m * m, inf);
  std::vector<int> from(m * m, -1);
  cost[0] = 0.0;
  for (std::size_t i = 1; i < m; ++i) {
    for (std::size_t j = 1; j < m; ++j) {
      double best = inf;
      int arg = -1;
      for (std::size_t s = 0; s < cfg.slopes.size(); ++s) {
        const Slope st = cfg.slopes[s];
        const auto pi = static_cast<long>(i) - st.a;
        const auto pj = static_cast<long>(j) - st.b;
        if (pi < 0 || pj < 0) continue;
        const double prev = cost[static_cast<std::size_t>(pi) * m + static_cast<std::size_t>(pj)];
        if (prev == inf) continue;
        const double c = prev + segment_energy(a, b, static_cast<int>(pi), static_cast<int>(pj), st);
        if (c < best) {
          best = c;
          arg = static_cast<int>(s);
        }
      }
      cost[i * m + j] = best;
      from[i * m + j] = arg;
    }
  }
  if (from[m * m - 1] < 0) throw std::domain_error("optimal_warp: lattice corner unreachable");

  std::vector<LatticePoint> path;
  int i = static_cast<int>(m - 1);
  int j = static_cast<int>(m - 1);
  path.push_back({i, j});
  while (i > 0 || j > 0) {
    const Slope st = cfg.slopes[static_cast<std::size_t>(from[static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)])];
    i -= st.a;
    j -= st.b;
    path.push_back({i, j});
  }
  std::reverse(path.begin(), path.end());
  Warping warp = path_to_warp(path, m, q1.size());
  return {std::move(warp), cost[m * m - 1], std::move(path)};
}

ElasticMatch elastic_match(const Srvf& q1, const Srvf& q2, const DpConfig& cfg) {
  DpSolution forward = optimal_warp(q1, q2, cfg);
  DpSolution backward = optimal_warp(q2, q1, cfg);
  if (backward.energy < forward.energy)
    return {std::sqrt(std::max(backward.energy, 0.0)), std::move(backward.warp), true};
  return {std::sqrt(std::max(forward.energy, 0.0)), std::move(forward.warp), false};
}

double elastic_distance(const Srvf& q1, const Srvf& q2, const DpConfig& cfg) {
  return elastic_match(q1, q2, cfg).distance;
}

}  // namespace efda
