#include "efda/quotient_mean.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "efda/numerics.hpp"

namespace efda {
namespace {

void require_common_grid(std::span<const Srvf> qs, const char* what) {
  if (qs.empty()) throw std::invalid_argument(std::string(what) + ": empty input");
  for (const auto& q : qs)
    if (q.size() != qs.front().size()) throw std::invalid_argument(std::string(what) + ": functions on different grids");
}

struct AlignedSet {
  std::vector<Warping> warps;
  std::vector<Srvf> srvfs;
  double cost = 0.0;
};

AlignedSet align_to(const Srvf& mu, std::span<const Srvf> qs, const DpConfig& cfg) {
  AlignedSet out;
  out.warps.reserve(qs.size());
  out.srvfs.reserve(qs.size());
  for (const auto& q : qs) {
    DpSolution sol = optimal_warp(mu, q, cfg);
    out.cost += sol.energy;
    out.srvfs.push_back(warp_srvf(q, sol.warp));
    out.warps.push_back(std::move(sol.warp));
  }
  return out;
}

}  // namespace

OrbitMean karcher_mean_orbits(std::span<const Srvf> qs, const DpConfig& cfg, const OrbitMeanOptions& opt) {
  require_common_grid(qs, "karcher_mean_orbits");
  cfg.validate();
  if (qs.size() == 1) return {qs.front(), {0.0}, 1, StopReason::small_increment};

  const Srvf cross = mean(qs);
  std::size_t start = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const double d = l2_distance(qs[i], cross);
    if (d < best) {
      best = d;
      start = i;
    }
  }

  Srvf mu = qs[start];
  Srvf previous = mu;
  std::vector<double> trace;
  StopReason reason = StopReason::max_iter;
  for (int iter = 0; iter < opt.max_iter; ++iter) {
    AlignedSet set = align_to(mu, qs, cfg);
    if (!trace.empty() && set.cost > trace.back()) {
      // Discretization floor: the lattice can no longer realize the descent
      // the continuous argument guarantees. Keep the last decreasing iterate.
      mu = previous;
      reason = StopReason::cost_stagnated;
      break;
    }
    trace.push_back(set.cost);
    Srvf next = mean(set.srvfs);
    const double increment = l2_distance(next, mu);
    if (increment < opt.rel_tol * std::max(l2_norm(mu), 1.0)) {
      reason = StopReason::small_increment;
      break;
    }
    previous = std::move(mu);
    mu = std::move(next);
  }
  const int iterations = static_cast<int>(trace.size());
  return {std::move(mu), std::move(trace), iterations, reason};
}

CenteredTemplate center_of_orbit(const Srvf& mu, std::span<const Srvf> qs, const DpConfig& cfg,
                                 const KarcherWarpOptions& kopt) {
  require_common_grid(qs, "center_of_orbit");
  if (mu.size() != qs.front().size()) throw std::invalid_argument("center_of_orbit: template grid mismatch");
  std::vector<Warping> warps;
  warps.reserve(qs.size());
  for (const auto& q : qs) warps.push_back(optimal_warp(mu, q, cfg).warp);
  Warping gbar = karcher_mean_warps(warps, kopt).mean;
  Srvf center = warp_srvf(mu, invert_warp(gbar));
  return {std::move(center), std::move(warps), std::move(gbar)};
}

AlignmentResult align_all(std::span<const SampledFunction> fs, const DpConfig& cfg, const AlignOptions& opt) {
  if (fs.empty()) throw std::invalid_argument("align_all: empty input");
  const std::size_t n_points = fs.front().size();
  for (const auto& f : fs)
    if (f.size() != n_points || f.t0() != fs.front().t0() || f.t1() != fs.front().t1())
      throw std::invalid_argument("align_all: functions must share one grid and interval");
  cfg.validate();

  std::vector<Srvf> qs;
  qs.reserve(fs.size());
  double f0 = 0.0;
  for (const auto& f : fs) {
    qs.push_back(to_srvf(f));
    f0 += f[0] / static_cast<double>(fs.size());
  }
  const Warping identity = Warping::identity(n_points);

  AlignmentResult res{qs.front(), fs.front(), {}, {}, {}, {}, 0, true, 0.0};
  if (fs.size() == 1) {
    res.template_function = from_srvf(qs.front(), fs.front()[0], fs.front().t0(), fs.front().t1());
    res.warps.push_back(identity);
    res.aligned.push_back(fs.front());
    res.aligned_srvfs.push_back(qs.front());
    res.cost_trace.push_back(0.0);
    return res;
  }

  OrbitMean om = karcher_mean_orbits(qs, cfg, opt.orbit);
  res.cost_trace = om.cost_trace;
  res.iterations = om.iterations;
  res.converged = om.converged();

  Srvf center = center_of_orbit(om.mean, qs, cfg, opt.karcher).center;
  std::vector<Warping> warps;
  warps.reserve(fs.size());
  for (const auto& q : qs) warps.push_back(optimal_warp(center, q, cfg).warp);

  // Lattice quantization of the final warps perturbs the centering
  // condition; moving template and warps by the inverse of the residual mean
  // keeps every alignment optimal (the action is an isometry) and restores it.
  double err = fr_warp_distance(karcher_mean_warps(warps, opt.karcher).mean, identity);
  for (int pass = 0; pass < opt.max_centering_passes && err > opt.centering_tol; ++pass) {
    const Warping undo = invert_warp(karcher_mean_warps(warps, opt.karcher).mean);
    center = warp_srvf(center, undo);
    for (auto& g : warps) g = compose(g, undo);
    err = fr_warp_distance(karcher_mean_warps(warps, opt.karcher).mean, identity);
  }

  res.template_srvf = center;
  res.template_function = from_srvf(center, f0, fs.front().t0(), fs.front().t1());
  res.centering_error = err;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    res.aligned.push_back(warp_function(fs[i], warps[i]));
    res.aligned_srvfs.push_back(warp_srvf(qs[i], warps[i]));
  }
  res.warps = std::move(warps);
  return res;
}

}  // namespace efda
