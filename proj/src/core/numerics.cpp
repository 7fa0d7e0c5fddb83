#include "efda/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace efda {

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = a;
    return out;
  }
  const double step = (b - a) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) out[k] = a + static_cast<double>(k) * step;
  out[n - 1] = b;
  return out;
}

double trapz(std::span<const double> y, double h) {
  if (y.size() < 2) return 0.0;
  double sum = 0.5 * (y.front() + y.back());
  for (std::size_t k = 1; k + 1 < y.size(); ++k) sum += y[k];
  return sum * h;
}

std::vector<double> cumtrapz(std::span<const double> y, double h) {
  std::vector<double> out(y.size(), 0.0);
  for (std::size_t k = 1; k < y.size(); ++k) out[k] = out[k - 1] + 0.5 * h * (y[k - 1] + y[k]);
  return out;
}

double inner(std::span<const double> a, std::span<const double> b, double h) {
  if (a.size() != b.size()) throw std::invalid_argument("inner: grid size mismatch");
  if (a.size() < 2) return 0.0;
  const std::size_t n = a.size();
  double sum = 0.5 * (a[0] * b[0] + a[n - 1] * b[n - 1]);
  for (std::size_t k = 1; k + 1 < n; ++k) sum += a[k] * b[k];
  return sum * h;
}

std::vector<double> gradient(std::span<const double> y, double h) {
  const std::size_t n = y.size();
  if (n < 3) throw std::invalid_argument("gradient: need at least 3 samples");
  std::vector<double> d(n);
  for (std::size_t k = 1; k + 1 < n; ++k) d[k] = (y[k + 1] - y[k - 1]) / (2.0 * h);
  d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h);
  d[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * h);
  return d;
}

double interp_unit(std::span<const double> y, double x) {
  const std::size_t n = y.size();
  if (x <= 0.0) return y.front();
  if (x >= 1.0) return y.back();
  const double pos = x * static_cast<double>(n - 1);
  const auto k = std::min(static_cast<std::size_t>(pos), n - 2);
  const double frac = pos - static_cast<double>(k);
  return y[k] + frac * (y[k + 1] - y[k]);
}

std::vector<double> resample(std::span<const double> y, std::size_t m) {
  if (m == y.size()) return {y.begin(), y.end()};
  std::vector<double> out(m);
  const double h = grid_step(m);
  for (std::size_t k = 0; k < m; ++k) out[k] = interp_unit(y, static_cast<double>(k) * h);
  return out;
}

}  // namespace efda
