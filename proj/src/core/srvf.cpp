#include "efda/srvf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "efda/numerics.hpp"

namespace efda {
namespace {

void require_finite(std::span<const double> v, const char* what) {
  if (v.size() < 3) throw std::invalid_argument(std::string(what) + ": need at least 3 samples");
  for (double x : v)
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + ": non-finite sample");
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    throw std::invalid_argument(std::string(what) + ": grid size mismatch (" + std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
}

}  // namespace

SampledFunction::SampledFunction(double t0, double t1, std::vector<double> values)
    : t0_(t0), t1_(t1), values_(std::move(values)) {
  if (!(t1_ > t0_) || !std::isfinite(t0_) || !std::isfinite(t1_))
    throw std::invalid_argument("SampledFunction: interval must satisfy t1 > t0");
  require_finite(values_, "SampledFunction");
}

double SampledFunction::time(std::size_t k) const {
  if (k + 1 == values_.size()) return t1_;
  return t0_ + static_cast<double>(k) * (t1_ - t0_) / static_cast<double>(values_.size() - 1);
}

std::vector<double> SampledFunction::times() const { return linspace(t0_, t1_, values_.size()); }

Srvf::Srvf(std::vector<double> values) : values_(std::move(values)) { require_finite(values_, "Srvf"); }

Srvf Srvf::scaled(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return Srvf(std::move(v));
}

Warping::Warping(std::vector<double> values) : values_(std::move(values)) {
  require_finite(values_, "Warping");
  if (std::abs(values_.front()) > 1e-9 || std::abs(values_.back() - 1.0) > 1e-9)
    throw std::invalid_argument("Warping: must fix the endpoints 0 and 1");
  values_.front() = 0.0;
  values_.back() = 1.0;
  for (std::size_t k = 0; k + 1 < values_.size(); ++k)
    if (!(values_[k + 1] > values_[k]))
      throw std::invalid_argument("Warping: not strictly increasing at sample " + std::to_string(k + 1));
}

Warping Warping::identity(std::size_t n) { return Warping(linspace(0.0, 1.0, n)); }

double Warping::operator()(double x) const { return interp_unit(values_, x); }

double q_map(double x) {
  if (x == 0.0) return 0.0;
  return x / std::sqrt(std::abs(x));
}

Srvf to_srvf(const SampledFunction& f) {
  auto d = gradient(f.values(), grid_step(f.size()));
  for (double& x : d) x = q_map(x);
  return Srvf(std::move(d));
}

SampledFunction from_srvf(const Srvf& q, double f0, double t0, double t1) {
  std::vector<double> integrand(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) integrand[k] = q[k] * std::abs(q[k]);
  auto f = cumtrapz(integrand, grid_step(q.size()));
  for (double& x : f) x += f0;
  return {t0, t1, std::move(f)};
}

Warping resample(const Warping& g, std::size_t n) {
  if (g.size() == n) return g;
  auto v = resample(g.values(), n);
  v.front() = 0.0;
  v.back() = 1.0;
  return Warping(std::move(v));
}

SampledFunction warp_function(const SampledFunction& f, const Warping& g) {
  const Warping gg = resample(g, f.size());
  std::vector<double> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = interp_unit(f.values(), gg[k]);
  return {f.t0(), f.t1(), std::move(out)};
}

Srvf warp_srvf(const Srvf& q, const Warping& g) {
  const Warping gg = resample(g, q.size());
  const auto slope = gradient(gg.values(), grid_step(q.size()));
  std::vector<double> out(q.size());
  for (std::size_t k = 0; k < q.size(); ++k)
    out[k] = interp_unit(q.values(), gg[k]) * std::sqrt(std::max(slope[k], 0.0));
  return Srvf(std::move(out));
}

Warping compose(const Warping& g1, const Warping& g2) {
  std::vector<double> out(g2.size());
  for (std::size_t k = 0; k < g2.size(); ++k) out[k] = g1(g2[k]);
  out.front() = 0.0;
  out.back() = 1.0;
  return Warping(std::move(out));
}

double l2_norm(std::span<const double> values) {
  return std::sqrt(std::max(inner(values, values, grid_step(values.size())), 0.0));
}

double l2_norm(const Srvf& q) { return l2_norm(q.values()); }

double l2_distance(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size(), "l2_distance");
  std::vector<double> d(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) d[k] = a[k] - b[k];
  return l2_norm(d);
}

double l2_distance(const Srvf& q1, const Srvf& q2) { return l2_distance(q1.values(), q2.values()); }

Srvf mean(std::span<const Srvf> qs) {
  if (qs.empty()) throw std::invalid_argument("mean: empty input");
  std::vector<double> acc(qs.front().size(), 0.0);
  for (const auto& q : qs) {
    require_same_size(q.size(), acc.size(), "mean");
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += q[k];
  }
  for (double& x : acc) x /= static_cast<double>(qs.size());
  return Srvf(std::move(acc));
}

double sup_distance(const Warping& g1, const Warping& g2) {
  require_same_size(g1.size(), g2.size(), "sup_distance");
  double m = 0.0;
  for (std::size_t k = 0; k < g1.size(); ++k) m = std::max(m, std::abs(g1[k] - g2[k]));
  return m;
}

}  // namespace efda
