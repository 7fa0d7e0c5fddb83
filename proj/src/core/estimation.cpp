#include "efda/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "efda/numerics.hpp"
#include "efda/warp_geometry.hpp"

namespace efda {

// Every supported law is parameterized by its mean first.
double Law::mean() const { return p1; }

double Law::sample(std::mt19937_64& rng) const {
  switch (kind) {
    case LawKind::constant:
      return p1;
    case LawKind::normal:
      return std::normal_distribution<double>(p1, p2)(rng);
    case LawKind::exponential:
      return std::exponential_distribution<double>(1.0 / p1)(rng);
  }
  return p1;
}

void Law::validate() const {
  if (!std::isfinite(p1) || !std::isfinite(p2)) throw std::invalid_argument("Law: non-finite parameter");
  if (kind == LawKind::normal && p2 < 0.0) throw std::invalid_argument("Law: negative standard deviation");
  if (kind == LawKind::exponential && !(p1 > 0.0)) throw std::invalid_argument("Law: exponential mean must be > 0");
}

ObservationModel ObservationModel::sine_default(std::size_t n_points, std::uint64_t seed) {
  const auto t = linspace(0.0, 1.0, n_points);
  std::vector<double> g(n_points);
  for (std::size_t k = 0; k < n_points; ++k) g[k] = std::sin(5.0 * std::numbers::pi * t[k]);
  ObservationModel m{SampledFunction(std::move(g))};
  m.seed = seed;
  return m;
}

void ObservationModel::validate() const {
  scale.validate();
  noise.validate();
  if (!(c_mean() > 0.0)) throw std::invalid_argument("ObservationModel: scale mean must be positive");
  if (scale.kind == LawKind::normal || (scale.kind == LawKind::constant && !(scale.p1 > 0.0)))
    throw std::invalid_argument("ObservationModel: scales must be positive (constant or exponential law)");
  if (warp_amplitude < 0.0) throw std::invalid_argument("ObservationModel: negative warp amplitude");
}

Observations simulate_observations(const ObservationModel& m, std::size_t n) {
  m.validate();
  if (n < 2) throw std::invalid_argument("simulate_observations: need n >= 2");
  const auto lo = static_cast<std::uint32_t>(m.seed & 0xffffffffu);
  const auto hi = static_cast<std::uint32_t>(m.seed >> 32);
  std::seed_seq seq{lo, hi, static_cast<std::uint32_t>(n)};
  std::mt19937_64 rng(seq);

  Observations obs;
  const RandomWarpOptions wopt{m.warp_amplitude, m.warp_basis, m.signal.size()};
  obs.warps = random_warps_identity_mean(n, rng(), wopt);
  double root_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = m.scale.sample(rng);
    const double e = m.noise.sample(rng);
    const SampledFunction warped = warp_function(m.signal, obs.warps[i]);
    std::vector<double> v(warped.values().begin(), warped.values().end());
    for (double& x : v) x = c * x + e;
    obs.functions.emplace_back(m.signal.t0(), m.signal.t1(), std::move(v));
    obs.scales.push_back(c);
    obs.shifts.push_back(e);
    root_sum += std::sqrt(c);
  }
  obs.s_bar = root_sum / static_cast<double>(n);
  return obs;
}

EstimationReport estimate_signal(std::span<const SampledFunction> fs, double c_mean, double e_mean,
                                 const DpConfig& cfg, const std::optional<SampledFunction>& truth,
                                 const AlignOptions& opt) {
  if (fs.empty()) throw std::invalid_argument("estimate_signal: no functions");
  if (c_mean == 0.0 || !std::isfinite(c_mean)) throw std::invalid_argument("estimate_signal: c_mean must be non-zero");
  const AlignmentResult res = align_all(fs, cfg, opt);
  const std::size_t m = fs.front().size();
  std::vector<double> est(m, 0.0);
  for (const auto& f : res.aligned)
    for (std::size_t k = 0; k < m; ++k) est[k] += f[k];
  for (double& x : est) x = (x / static_cast<double>(fs.size()) - e_mean) / c_mean;

  double error = std::numeric_limits<double>::quiet_NaN();
  if (truth) {
    if (truth->size() != m) throw std::invalid_argument("estimate_signal: truth on a different grid");
    error = l2_distance(est, truth->values());
  }
  return {SampledFunction(fs.front().t0(), fs.front().t1(), std::move(est)), error, fs.size(), std::nullopt};
}

std::vector<ConsistencyPoint> consistency_experiment(const ObservationModel& m, std::span<const std::size_t> sizes,
                                                     const DpConfig& cfg, std::size_t repeats,
                                                     const AlignOptions& opt) {
  if (sizes.empty()) throw std::invalid_argument("consistency_experiment: no sample sizes");
  if (repeats == 0) throw std::invalid_argument("consistency_experiment: repeats must be >= 1");
  std::vector<ConsistencyPoint> curve;
  for (std::size_t n : sizes) {
    if (n < 2) throw std::invalid_argument("consistency_experiment: sample sizes must be >= 2");
    double total = 0.0;
    for (std::size_t r = 0; r < repeats; ++r) {
      ObservationModel trial = m;
      trial.seed = m.seed + r;
      const Observations obs = simulate_observations(trial, n);
      total += estimate_signal(obs.functions, m.c_mean(), m.e_mean(), cfg, m.signal, opt).error;
    }
    curve.push_back({n, total / static_cast<double>(repeats)});
  }
  return curve;
}

namespace {

std::vector<double> ranks(std::span<const double> x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("spearman: need two equal samples");
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < rx.size(); ++k) {
    sxy += (rx[k] - mx) * (ry[k] - my);
    sxx += (rx[k] - mx) * (rx[k] - mx);
    syy += (ry[k] - my) * (ry[k] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace efda
