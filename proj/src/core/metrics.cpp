#include "efda/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "efda/numerics.hpp"

namespace efda {
namespace {

void check_sets(std::span<const SampledFunction> original, std::span<const SampledFunction> aligned, const char* what) {
  if (original.size() != aligned.size()) throw std::invalid_argument(std::string(what) + ": set sizes differ");
  if (original.size() < 2) throw std::invalid_argument(std::string(what) + ": need at least two functions");
  const std::size_t n = original.front().size();
  for (std::size_t i = 0; i < original.size(); ++i)
    if (original[i].size() != n || aligned[i].size() != n)
      throw std::invalid_argument(std::string(what) + ": functions on different grids");
}

std::vector<double> column_sum(std::span<const std::vector<double>> rows) {
  std::vector<double> s(rows.front().size(), 0.0);
  for (const auto& r : rows)
    for (std::size_t k = 0; k < s.size(); ++k) s[k] += r[k];
  return s;
}

std::vector<std::vector<double>> as_rows(std::span<const SampledFunction> fs) {
  std::vector<std::vector<double>> rows;
  rows.reserve(fs.size());
  for (const auto& f : fs) rows.emplace_back(f.values().begin(), f.values().end());
  return rows;
}

std::vector<std::vector<double>> derivative_rows(std::span<const SampledFunction> fs) {
  std::vector<std::vector<double>> rows;
  rows.reserve(fs.size());
  for (const auto& f : fs) rows.push_back(gradient(f.values(), grid_step(f.size())));
  return rows;
}

// Residual energy of row i against the leave-one-out mean of the others.
double loo_energy(std::span<const std::vector<double>> rows, std::span<const double> sum, std::size_t i) {
  const double others = static_cast<double>(rows.size() - 1);
  std::vector<double> r(sum.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double e = rows[i][k] - (sum[k] - rows[i][k]) / others;
    r[k] = e * e;
  }
  return trapz(r, grid_step(r.size()));
}

double total_variance(std::span<const std::vector<double>> rows) {
  const auto sum = column_sum(rows);
  const double n = static_cast<double>(rows.size());
  double total = 0.0;
  std::vector<double> r(sum.size());
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < r.size(); ++k) {
      const double e = row[k] - sum[k] / n;
      r[k] = e * e;
    }
    total += trapz(r, grid_step(r.size()));
  }
  return total;
}

double energy(std::span<const double> row) { return inner(row, row, grid_step(row.size())); }

// Residuals dominated by rounding count as zero: identical rows give a
// leave-one-out mean a few ulps away from the row itself.
bool negligible(double residual, double scale) { return !(residual > 1e-24 * scale); }

double correlation_sum(std::span<const SampledFunction> fs) {
  double s = 0.0;
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = i + 1; j < fs.size(); ++j) s += 2.0 * pearson(fs[i].values(), fs[j].values());
  return s;
}

}  // namespace

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) throw std::invalid_argument("pearson: size mismatch");
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    ma += a[k];
    mb += b[k];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    sab += (a[k] - ma) * (b[k] - mb);
    saa += (a[k] - ma) * (a[k] - ma);
    sbb += (b[k] - mb) * (b[k] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  // Unbiased covariance and variances; the (n-1) factors cancel.
  return (sab / (n - 1.0)) / std::sqrt((saa / (n - 1.0)) * (sbb / (n - 1.0)));
}

double least_squares(std::span<const SampledFunction> original, std::span<const SampledFunction> aligned) {
  check_sets(original, aligned, "least_squares");
  const auto orig = as_rows(original);
  const auto alig = as_rows(aligned);
  const auto so = column_sum(orig);
  const auto sa = column_sum(alig);
  double ls = 0.0;
  for (std::size_t i = 0; i < orig.size(); ++i) {
    const double den = loo_energy(orig, so, i);
    if (negligible(den, energy(orig[i]))) throw std::domain_error("least_squares: zero residual in the original set");
    ls += loo_energy(alig, sa, i) / den;
  }
  return ls / static_cast<double>(orig.size());
}

double pairwise_correlation(std::span<const SampledFunction> original, std::span<const SampledFunction> aligned) {
  check_sets(original, aligned, "pairwise_correlation");
  const double den = correlation_sum(original);
  if (den == 0.0) throw std::domain_error("pairwise_correlation: original correlations sum to zero");
  return correlation_sum(aligned) / den;
}

double sobolev_least_squares(std::span<const SampledFunction> original, std::span<const SampledFunction> aligned) {
  check_sets(original, aligned, "sobolev_least_squares");
  const auto rows = derivative_rows(original);
  const double den = total_variance(rows);
  double scale = 0.0;
  for (const auto& r : rows) scale += energy(r);
  if (negligible(den, scale)) throw std::domain_error("sobolev_least_squares: original derivatives have no variance");
  return total_variance(derivative_rows(aligned)) / den;
}

MetricReport evaluate(std::span<const SampledFunction> original, std::span<const SampledFunction> aligned) {
  return {least_squares(original, aligned), pairwise_correlation(original, aligned),
          sobolev_least_squares(original, aligned), original.size()};
}

}  // namespace efda
