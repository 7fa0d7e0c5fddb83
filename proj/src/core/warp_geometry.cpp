#include "efda/warp_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "efda/numerics.hpp"

namespace efda {
namespace {

double unit_norm(std::span<const double> v) { return std::sqrt(std::max(inner(v, v, grid_step(v.size())), 0.0)); }

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": grid size mismatch");
}

}  // namespace

SpherePoint::SpherePoint(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 3) throw std::invalid_argument("SpherePoint: need at least 3 samples");
  for (double x : values_)
    if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("SpherePoint: samples must be positive");
  const double nrm = unit_norm(values_);
  for (double& x : values_) x /= nrm;
}

SpherePoint SpherePoint::identity(std::size_t n) { return SpherePoint(std::vector<double>(n, 1.0)); }

TangentVector::TangentVector(std::vector<double> values, const SpherePoint& base)
    : values_(std::move(values)), base_(base) {
  require_same_size(values_.size(), base_.size(), "TangentVector");
  const double along = inner(values_, base_.values(), grid_step(values_.size()));
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= along * base_[k];
}

TangentVector TangentVector::zero(const SpherePoint& base) {
  return TangentVector(std::vector<double>(base.size(), 0.0), base);
}

double TangentVector::norm() const { return unit_norm(values_); }

namespace sphere {

std::vector<double> exp_map(std::span<const double> base, std::span<const double> v) {
  require_same_size(base.size(), v.size(), "exp_map");
  const double r = unit_norm(v);
  std::vector<double> out(base.begin(), base.end());
  if (r == 0.0) return out;
  const double c = std::cos(r);
  const double s = std::sin(r) / r;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = c * base[k] + s * v[k];
  return out;
}

// Half-angle form: acos of a clamped inner product loses half the digits
// near 0 and pi.
double arc_length(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size(), "arc_length");
  std::vector<double> diff(a.size()), sum(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    diff[k] = a[k] - b[k];
    sum[k] = a[k] + b[k];
  }
  return 2.0 * std::atan2(unit_norm(diff), unit_norm(sum));
}

std::vector<double> log_map(std::span<const double> base, std::span<const double> p) {
  require_same_size(base.size(), p.size(), "log_map");
  const double ip = std::clamp(inner(base, p, grid_step(base.size())), -1.0, 1.0);
  const double theta = arc_length(base, p);
  std::vector<double> v(base.size(), 0.0);
  if (theta < 1e-10) return v;
  if (std::numbers::pi - theta < 1e-8) throw std::domain_error("log_map: antipodal points have no unique geodesic");
  const double scale = theta / std::sin(theta);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = scale * (p[k] - ip * base[k]);
  return v;
}

}  // namespace sphere

SpherePoint warp_to_sphere(const Warping& g) {
  auto d = gradient(g.values(), grid_step(g.size()));
  for (double& x : d) x = std::sqrt(std::max(x, kMinSlope));
  return SpherePoint(std::move(d));
}

Warping sphere_to_warp(const SpherePoint& p) {
  std::vector<double> sq(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) sq[k] = p[k] * p[k];
  auto g = cumtrapz(sq, grid_step(p.size()));
  const double total = g.back();
  for (double& x : g) x /= total;
  return Warping(std::move(g));
}

double fr_warp_distance(const Warping& g1, const Warping& g2) {
  require_same_size(g1.size(), g2.size(), "fr_warp_distance");
  return sphere::arc_length(warp_to_sphere(g1).values(), warp_to_sphere(g2).values());
}

std::optional<SpherePoint> try_exp_map(const SpherePoint& base, const TangentVector& v) {
  auto out = sphere::exp_map(base.values(), v.values());
  for (double x : out)
    if (!(x > 0.0)) return std::nullopt;
  return SpherePoint(std::move(out));
}

SpherePoint exp_map(const SpherePoint& base, const TangentVector& v) {
  auto p = try_exp_map(base, v);
  if (!p) throw std::domain_error("exp_map: geodesic leaves the positive orthant");
  return *std::move(p);
}

TangentVector log_map(const SpherePoint& base, const SpherePoint& p) {
  return TangentVector(sphere::log_map(base.values(), p.values()), base);
}

Warping invert_warp(const Warping& g) {
  const std::size_t n = g.size();
  const double h = grid_step(n);
  std::vector<double> out(n);
  std::size_t m = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = static_cast<double>(k) * h;
    while (m + 2 < n && g[m + 1] < s) ++m;
    const double frac = (s - g[m]) / (g[m + 1] - g[m]);
    out[k] = (static_cast<double>(m) + std::clamp(frac, 0.0, 1.0)) * h;
  }
  out.front() = 0.0;
  out.back() = 1.0;
  return Warping(std::move(out));
}

namespace {

double sphere_cost(std::span<const double> mu, std::span<const SpherePoint> psis) {
  double c = 0.0;
  for (const auto& p : psis) {
    const double d = sphere::arc_length(mu, p.values());
    c += d * d;
  }
  return c;
}

}  // namespace

double fr_cost(const Warping& g, std::span<const Warping> gs) {
  const SpherePoint mu = warp_to_sphere(g);
  double c = 0.0;
  for (const auto& gi : gs) {
    const double d = sphere::arc_length(mu.values(), warp_to_sphere(gi).values());
    c += d * d;
  }
  return c;
}

KarcherWarpResult karcher_mean_warps(std::span<const Warping> gs, const KarcherWarpOptions& opt) {
  if (gs.empty()) throw std::invalid_argument("karcher_mean_warps: empty input");
  const std::size_t n = gs.front().size();
  std::vector<SpherePoint> psis;
  psis.reserve(gs.size());
  std::vector<double> w(n, 0.0);
  for (const auto& g : gs) {
    require_same_size(g.size(), n, "karcher_mean_warps");
    psis.push_back(warp_to_sphere(g));
    for (std::size_t k = 0; k < n; ++k) w[k] += psis.back()[k];
  }
  SpherePoint mu(std::move(w));

  KarcherWarpResult res{Warping::identity(n), false, 0, {}, 0.0};
  double cost = sphere_cost(mu.values(), psis);
  res.cost_trace.push_back(cost);
  auto track_norm = [&](const SpherePoint& p) {
    res.max_norm_error = std::max(res.max_norm_error, std::abs(unit_norm(p.values()) - 1.0));
  };
  track_norm(mu);

  for (int iter = 0; iter < opt.max_iter; ++iter) {
    std::vector<double> vbar(n, 0.0);
    for (const auto& p : psis) {
      const auto v = sphere::log_map(mu.values(), p.values());
      for (std::size_t k = 0; k < n; ++k) vbar[k] += v[k];
    }
    for (double& x : vbar) x /= static_cast<double>(psis.size());
    TangentVector step_dir(std::move(vbar), mu);
    if (step_dir.norm() < opt.tol) {
      res.converged = true;
      break;
    }
    bool accepted = false;
    for (double eps = opt.step; eps > 1e-10; eps *= 0.5) {
      std::vector<double> scaled(step_dir.values().begin(), step_dir.values().end());
      for (double& x : scaled) x *= eps;
      auto cand = try_exp_map(mu, TangentVector(std::move(scaled), mu));
      if (!cand) continue;
      const double c = sphere_cost(cand->values(), psis);
      if (c <= cost) {
        mu = *std::move(cand);
        cost = c;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    ++res.iterations;
    track_norm(mu);
    res.cost_trace.push_back(cost);
  }
  res.mean = sphere_to_warp(mu);
  return res;
}

std::vector<Warping> random_warps_identity_mean(std::size_t n, std::uint64_t seed, const RandomWarpOptions& opt) {
  if (n < 2) throw std::invalid_argument("random_warps_identity_mean: need n >= 2");
  if (opt.amplitude < 0.0 || opt.n_basis < 1) throw std::invalid_argument("random_warps_identity_mean: bad options");
  const std::size_t m = opt.n_points;
  const auto t = linspace(0.0, 1.0, m);
  const SpherePoint id = SpherePoint::identity(m);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::vector<double>> vs(n, std::vector<double>(m, 0.0));
    for (auto& v : vs) {
      for (int j = 1; j <= opt.n_basis; ++j) {
        const double coef = opt.amplitude / j * normal(rng);
        for (std::size_t k = 0; k < m; ++k) v[k] += coef * std::numbers::sqrt2 * std::sin(j * std::numbers::pi * t[k]);
      }
    }
    std::vector<double> avg(m, 0.0);
    for (const auto& v : vs)
      for (std::size_t k = 0; k < m; ++k) avg[k] += v[k] / static_cast<double>(n);

    std::vector<Warping> inverses;
    inverses.reserve(n);
    for (auto& v : vs) {
      for (std::size_t k = 0; k < m; ++k) v[k] -= avg[k];
      TangentVector tv(std::move(v), id);
      if (tv.norm() >= std::numbers::pi / 2) break;
      auto p = try_exp_map(id, tv);
      if (!p) break;
      inverses.push_back(sphere_to_warp(*p));
    }
    if (inverses.size() != n) continue;

    std::vector<Warping> out;
    out.reserve(n);
    for (const auto& g : inverses) out.push_back(invert_warp(g));

    // Discretization moves the sample mean of the inverses slightly off
    // gamma_id. The inverses are recomputed from the returned warps each pass
    // and g_i <- c o g_i undoes the current mean c.
    const KarcherWarpOptions tight{0.5, 1e-11, 400};
    const Warping identity = Warping::identity(m);
    for (int pass = 0; pass < 8; ++pass) {
      for (std::size_t i = 0; i < n; ++i) inverses[i] = invert_warp(out[i]);
      const Warping centre = karcher_mean_warps(inverses, tight).mean;
      if (sup_distance(centre, identity) < 1e-10) break;
      for (auto& g : out) g = compose(centre, g);
    }
    return out;
  }
  throw std::domain_error("random_warps_identity_mean: amplitude too large, resampling failed");
}

}  // namespace efda
