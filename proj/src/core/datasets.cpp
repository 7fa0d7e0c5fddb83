#include "efda/datasets.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "efda/numerics.hpp"
#include "json.hpp"

namespace efda {

void FunctionCollection::validate() const {
  if (labels.size() != functions.size()) throw std::invalid_argument("FunctionCollection: one label per function");
  for (const auto& f : functions)
    if (f.size() != functions.front().size() || f.t0() != t0 || f.t1() != t1)
      throw std::invalid_argument("FunctionCollection: functions must share one grid and interval");
}

FunctionCollection make_collection(std::vector<SampledFunction> fs) {
  FunctionCollection c;
  if (!fs.empty()) {
    c.t0 = fs.front().t0();
    c.t1 = fs.front().t1();
  }
  for (std::size_t i = 0; i < fs.size(); ++i) c.labels.push_back("f" + std::to_string(i + 1));
  c.functions = std::move(fs);
  c.validate();
  return c;
}

std::vector<double> warp_parameters(std::size_t n, double lo, double hi) {
  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = n == 1 ? lo : lo + static_cast<double>(i) * (hi - lo) / static_cast<double>(n - 1);
    if (std::abs(a[i]) < 1e-12) a[i] = 0.0;
  }
  return a;
}

double exponential_warp(double t, double a, double t0, double t1) {
  if (a == 0.0) return t;
  const double len = t1 - t0;
  return t0 + len * std::expm1(a * (t - t0) / len) / std::expm1(a);
}

namespace {

constexpr std::size_t kBimodalCount = 21;

double bimodal(double t, double z1, double z2) {
  return z1 * std::exp(-(t - 1.5) * (t - 1.5) / 2.0) + z2 * std::exp(-(t + 1.5) * (t + 1.5) / 2.0);
}

FunctionCollection bimodal_family(std::uint64_t seed, std::size_t n_points, bool warped) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(1.0, 0.25);
  const auto t = linspace(-3.0, 3.0, n_points);
  const auto a = warp_parameters(kBimodalCount, -1.0, 1.0);
  std::vector<SampledFunction> fs;
  for (std::size_t i = 0; i < kBimodalCount; ++i) {
    const double z1 = z(rng);
    const double z2 = z(rng);
    std::vector<double> v(n_points);
    for (std::size_t k = 0; k < n_points; ++k) {
      const double s = warped ? exponential_warp(t[k], a[i], -3.0, 3.0) : t[k];
      v[k] = bimodal(s, z1, z2);
    }
    fs.emplace_back(-3.0, 3.0, std::move(v));
  }
  return make_collection(std::move(fs));
}

}  // namespace

FunctionCollection sim1_bimodal(std::uint64_t seed, std::size_t n_points) { return bimodal_family(seed, n_points, true); }

FunctionCollection sim2_unwarped(std::uint64_t seed, std::size_t n_points) {
  return bimodal_family(seed, n_points, false);
}

FunctionCollection sim3_gaussian_shifts(std::uint64_t seed, std::size_t n_points, const GaussianShiftOptions& opt) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> shift(-opt.shift, opt.shift);
  std::uniform_real_distribution<double> amp(opt.amp_low, opt.amp_high);
  const auto t = linspace(0.0, 1.0, n_points);
  const double sigma = opt.width / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
  std::vector<SampledFunction> fs;
  for (std::size_t i = 0; i < opt.count; ++i) {
    const double centre = 0.5 + (opt.shift > 0.0 ? shift(rng) : 0.0);
    const double height = opt.amp_high > opt.amp_low ? amp(rng) : opt.amp_low;
    std::vector<double> v(n_points);
    for (std::size_t k = 0; k < n_points; ++k) {
      const double u = (t[k] - centre) / sigma;
      v[k] = height * std::exp(-0.5 * u * u);
    }
    fs.emplace_back(0.0, 1.0, std::move(v));
  }
  return make_collection(std::move(fs));
}

FunctionCollection sim4_wave(std::uint64_t /*seed*/, std::size_t n_points) {
  const auto t = linspace(0.0, 9.0, n_points);
  const auto a = warp_parameters(9, -1.5, 1.5);
  std::vector<SampledFunction> fs;
  for (double ai : a) {
    std::vector<double> v(n_points);
    for (std::size_t k = 0; k < n_points; ++k) {
      const double g = exponential_warp(t[k], ai, 0.0, 9.0);
      const double env = g / 9.0 - 0.5;
      v[k] = (1.0 - env * env) * std::sin(std::numbers::pi * g);
    }
    fs.emplace_back(0.0, 9.0, std::move(v));
  }
  return make_collection(std::move(fs));
}

SampledFunction smooth_spike_train(std::span<const double> spikes, double sigma, std::size_t n_points) {
  if (!(sigma > 0.0)) throw std::invalid_argument("smooth_spike_train: sigma must be positive");
  const auto t = linspace(0.0, 1.0, n_points);
  const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * sigma);
  std::vector<double> v(n_points, 0.0);
  for (double s : spikes)
    for (std::size_t k = 0; k < n_points; ++k) {
      const double u = (t[k] - s) / sigma;
      v[k] += norm * std::exp(-0.5 * u * u);
    }
  return {0.0, 1.0, std::move(v)};
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

double parse_number(std::string_view cell, std::size_t line, std::size_t column) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v))
    throw ParseError("column " + std::to_string(column) + ": not a number: '" + std::string(cell) + "'", line);
  return v;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

FunctionCollection parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  std::size_t header_line = 0;
  std::vector<double> times;
  std::vector<std::vector<double>> columns;
  std::vector<std::size_t> row_lines;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    const auto cells = split(line);
    if (header.empty()) {
      if (cells.size() < 2) throw ParseError("header needs a time column and at least one function column", line_no);
      for (auto c : cells) header.emplace_back(c);
      header_line = line_no;
      columns.resize(cells.size() - 1);
      continue;
    }
    if (cells.size() != header.size())
      throw ParseError("expected " + std::to_string(header.size()) + " cells, found " + std::to_string(cells.size()),
                       line_no);
    const double t = parse_number(cells[0], line_no, 1);
    if (!times.empty() && !(t > times.back())) throw ParseError("time column is not strictly increasing", line_no);
    times.push_back(t);
    row_lines.push_back(line_no);
    for (std::size_t c = 1; c < cells.size(); ++c) columns[c - 1].push_back(parse_number(cells[c], line_no, c + 1));
  }
  if (header.empty()) throw ParseError("empty file", 0);
  if (times.empty()) throw ParseError("no data rows", header_line);
  if (times.size() < 3) throw ParseError("need at least 3 data rows", row_lines.back());

  const double t0 = times.front();
  const double t1 = times.back();
  const double step = times[1] - times[0];
  for (std::size_t k = 2; k < times.size(); ++k)
    if (std::abs((times[k] - times[k - 1]) - step) > 1e-4 * step)
      throw ParseError("time column is not uniformly spaced", row_lines[k]);

  FunctionCollection c;
  c.t0 = t0;
  c.t1 = t1;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    c.functions.emplace_back(t0, t1, std::move(columns[j]));
    c.labels.push_back(header[j + 1]);
  }
  return c;
}

FunctionCollection read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

std::string format_csv(const FunctionCollection& c) {
  c.validate();
  if (c.functions.empty()) throw std::invalid_argument("format_csv: empty collection");
  std::string out = "t";
  for (const auto& l : c.labels) out += "," + l;
  out += "\n";
  const auto& first = c.functions.front();
  for (std::size_t k = 0; k < first.size(); ++k) {
    out += format_double(first.time(k));
    for (const auto& f : c.functions) out += "," + format_double(f[k]);
    out += "\n";
  }
  return out;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_csv(const FunctionCollection& c, const std::filesystem::path& path) { write_text_atomic(path, format_csv(c)); }

// ---------------------------------------------------------------------------
// JSON

std::string alignment_json(const FunctionCollection& original, const AlignmentResult& result,
                           const std::optional<MetricReport>& metrics) {
  using nlohmann::json;
  original.validate();
  const double t0 = original.t0;
  const double len = original.t1 - original.t0;

  json doc;
  doc["grid"] = original.functions.front().times();
  doc["interval"] = {original.t0, original.t1};
  doc["labels"] = original.labels;
  doc["template"] = std::vector<double>(result.template_function.values().begin(), result.template_function.values().end());
  doc["template_srvf"] = std::vector<double>(result.template_srvf.values().begin(), result.template_srvf.values().end());
  json warps = json::array();
  for (const auto& g : result.warps) {
    std::vector<double> v(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) v[k] = t0 + len * g[k];
    warps.push_back(std::move(v));
  }
  doc["warps"] = std::move(warps);
  json aligned = json::array();
  for (const auto& f : result.aligned) aligned.push_back(std::vector<double>(f.values().begin(), f.values().end()));
  doc["aligned"] = std::move(aligned);
  doc["cost_trace"] = result.cost_trace;
  doc["iterations"] = result.iterations;
  doc["converged"] = result.converged;
  doc["centering_error"] = result.centering_error;
  if (metrics)
    doc["metrics"] = {{"ls", metrics->ls}, {"pc", metrics->pc}, {"sls", metrics->sls}};
  else
    doc["metrics"] = nullptr;
  return doc.dump(1) + "\n";
}

void write_alignment_json(const FunctionCollection& original, const AlignmentResult& result,
                          const std::optional<MetricReport>& metrics, const std::filesystem::path& path) {
  write_text_atomic(path, alignment_json(original, result, metrics));
}

}  // namespace efda
