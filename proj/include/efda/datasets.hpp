#pragma once

// Simulated function collections, spike-train smoothing and CSV/JSON I/O.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "efda/metrics.hpp"
#include "efda/quotient_mean.hpp"
#include "efda/srvf.hpp"

namespace efda {

inline constexpr std::size_t kDefaultGridSize = 101;

struct FunctionCollection {
  std::vector<SampledFunction> functions;
  std::vector<std::string> labels;
  double t0 = 0.0;
  double t1 = 1.0;

  std::size_t size() const { return functions.size(); }
  std::size_t grid_size() const { return functions.empty() ? 0 : functions.front().size(); }

  /// Throws std::invalid_argument unless every function shares the grid and
  /// interval and there is exactly one label per function.
  void validate() const;
};

/// Builds a collection labelled f1..fn; the interval is taken from the functions.
FunctionCollection make_collection(std::vector<SampledFunction> fs);

/// Equally spaced exponential-warp parameters a_0..a_{n-1} from lo to hi.
std::vector<double> warp_parameters(std::size_t n, double lo, double hi);

/// Exponential warp family mapping [t0, t1] onto itself; identity when a = 0.
double exponential_warp(double t, double a, double t0, double t1);

/// 21 bimodal Gaussian mixtures on [-3, 3], exponentially warped.
FunctionCollection sim1_bimodal(std::uint64_t seed, std::size_t n_points = kDefaultGridSize);

/// The same mixtures as sim1_bimodal for the same seed, unwarped.
FunctionCollection sim2_unwarped(std::uint64_t seed, std::size_t n_points = kDefaultGridSize);

struct GaussianShiftOptions {
  std::size_t count = 29;
  double shift = 0.2;   // shifts uniform on +-shift (fraction of the interval)
  double width = 0.08;  // full width at half maximum (fraction of the interval)
  double amp_low = 0.9;
  double amp_high = 1.1;
};

/// Horizontally shifted, slightly rescaled Gaussian kernels on [0, 1].
FunctionCollection sim3_gaussian_shifts(std::uint64_t seed, std::size_t n_points = kDefaultGridSize,
                                        const GaussianShiftOptions& opt = {});

/// Nine exponentially warped copies of one wave shape on [0, 9]. The seed
/// is accepted for interface symmetry; the family is deterministic.
FunctionCollection sim4_wave(std::uint64_t seed, std::size_t n_points = kDefaultGridSize);

/// Sum of unit-mass Gaussian kernels centred on each spike time, on [0, 1].
SampledFunction smooth_spike_train(std::span<const double> spikes, double sigma = 0.001,
                                   std::size_t n_points = kDefaultGridSize);

/// Raised for malformed input files; line() is 1-based (0 when not tied to a line).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads `t,f1,f2,...` with a strictly increasing, uniformly spaced first
/// column. Throws ParseError (with the offending line) or std::runtime_error
/// when the file cannot be opened.
FunctionCollection read_csv(const std::filesystem::path& path);
FunctionCollection parse_csv(const std::string& text);

/// Writes through a temporary file renamed into place.
void write_csv(const FunctionCollection& c, const std::filesystem::path& path);
std::string format_csv(const FunctionCollection& c);

/// JSON document describing an alignment of `original`.
std::string alignment_json(const FunctionCollection& original, const AlignmentResult& result,
                           const std::optional<MetricReport>& metrics);
void write_alignment_json(const FunctionCollection& original, const AlignmentResult& result,
                          const std::optional<MetricReport>& metrics, const std::filesystem::path& path);

/// Atomic text write: temp file in the same directory, then rename.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace efda
