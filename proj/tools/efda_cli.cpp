// efda: command-line front end over the C API.
//
// Exit codes: 0 success, 2 usage or input error, 3 numerical failure,
// 1 anything else.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "efda/efda.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct CollectionDeleter {
  void operator()(efda_collection* c) const { efda_collection_free(c); }
};
struct AlignmentDeleter {
  void operator()(efda_alignment* a) const { efda_alignment_free(a); }
};
using Collection = std::unique_ptr<efda_collection, CollectionDeleter>;
using Alignment = std::unique_ptr<efda_alignment, AlignmentDeleter>;

// Thrown after the message has been printed.
struct Exit {
  int code;
};

int exit_code(efda_status s) {
  switch (s) {
    case EFDA_OK:
      return 0;
    case EFDA_ERR_INVALID_ARGUMENT:
    case EFDA_ERR_PARSE:
    case EFDA_ERR_IO:
    case EFDA_ERR_OUT_OF_RANGE:
      return kExitUsage;
    case EFDA_ERR_NUMERICAL:
      return kExitNumerical;
    case EFDA_ERR_INTERNAL:
      break;
  }
  return 1;
}

void check(efda_status s, const std::string& context) {
  if (s == EFDA_OK) return;
  std::cerr << "efda: " << context << ": " << efda_status_name(s) << ": " << efda_last_error() << "\n";
  throw Exit{exit_code(s)};
}

[[noreturn]] void usage_error(const std::string& msg) {
  std::cerr << "efda: " << msg << "\n";
  throw Exit{kExitUsage};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Collection read_input(const std::string& path) {
  efda_collection* c = nullptr;
  check(efda_collection_read_csv(path.c_str(), &c), path);
  return Collection(c);
}

void write_collection(const efda_collection* c, const fs::path& path) {
  check(efda_collection_write_csv(c, path.string().c_str()), path.string());
  std::cout << "wrote " << path.string() << "\n";
}

void write_atomic(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!(out << text)) usage_error("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) usage_error("cannot rename " + tmp.string() + ": " + ec.message());
  std::cout << "wrote " << path.string() << "\n";
}

fs::path output_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) usage_error("cannot create output directory " + dir + ": " + ec.message());
  return dir;
}

struct DpFlags {
  std::size_t grid_n = 0;
  int slope_max = 0;
  int max_iter = 0;
  double tol = 0.0;

  void add(CLI::App* cmd) {
    efda_options d;
    efda_options_default(&d);
    slope_max = d.slope_max;
    max_iter = d.max_iter;
    tol = d.tol;
    cmd->add_option("--grid-n", grid_n, "DP lattice size (default: data grid)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--slope-max", slope_max, "largest DP step component")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", max_iter, "orbit-mean iterations")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--tol", tol, "orbit-mean relative tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  }

  efda_options options() const {
    if (grid_n != 0 && grid_n < 8) usage_error("--grid-n must be >= 8");
    return {grid_n, slope_max, max_iter, tol};
  }
};

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 2) throw std::invalid_argument(item);
      sizes.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      usage_error("--sizes: '" + item + "' is not an integer >= 2");
    }
  }
  if (sizes.empty()) usage_error("--sizes: empty list");
  return sizes;
}

// ---------------------------------------------------------------------------

struct AlignCmd {
  std::string input;
  std::string out = ".";
  DpFlags dp;

  int run() const {
    const Collection data = read_input(input);
    const efda_options opt = dp.options();
    efda_alignment* raw = nullptr;
    check(efda_align(data.get(), &opt, &raw), "align");
    const Alignment a(raw);
    const fs::path dir = output_dir(out);

    efda_collection* c = nullptr;
    check(efda_alignment_aligned(a.get(), &c), "aligned functions");
    write_collection(Collection(c).get(), dir / "aligned.csv");
    check(efda_alignment_warps(a.get(), &c), "warps");
    write_collection(Collection(c).get(), dir / "warps.csv");
    check(efda_alignment_template(a.get(), &c), "template");
    write_collection(Collection(c).get(), dir / "template.csv");
    check(efda_alignment_write_json(a.get(), (dir / "result.json").string().c_str()), "result.json");
    std::cout << "wrote " << (dir / "result.json").string() << "\n";

    efda_metrics m{};
    const efda_status s = efda_alignment_metrics(a.get(), &m);
    if (s == EFDA_OK)
      std::cout << "ls=" << fmt(m.ls) << " pc=" << fmt(m.pc) << " sls=" << fmt(m.sls) << "\n";
    else
      std::cout << "metrics unavailable: " << efda_last_error() << "\n";
    std::cout << "converged=" << (efda_alignment_converged(a.get()) ? "true" : "false")
              << " iterations=" << efda_alignment_iterations(a.get())
              << " centering_error=" << fmt(efda_alignment_centering_error(a.get())) << "\n";
    // A single function has no metrics; a degenerate set is a numerical failure.
    return s == EFDA_ERR_NUMERICAL ? kExitNumerical : 0;
  }
};

struct DistanceCmd {
  std::string input;
  std::size_t i = 0;
  std::size_t j = 0;
  std::string out = ".";
  DpFlags dp;

  int run() const {
    const Collection data = read_input(input);
    const std::size_t n = efda_collection_size(data.get());
    for (std::size_t k : {i, j})
      if (k < 1 || k > n)
        usage_error("function index " + std::to_string(k) + " out of range 1.." + std::to_string(n));
    const efda_options opt = dp.options();
    std::vector<double> warp(efda_collection_grid_size(data.get()));
    double d = 0.0;
    check(efda_elastic_distance(data.get(), i - 1, j - 1, &opt, &d, warp.data()), "distance");

    double t0 = 0.0, t1 = 1.0;
    check(efda_collection_interval(data.get(), &t0, &t1), "interval");
    efda_collection* w = nullptr;
    check(efda_collection_create(t0, t1, warp.size(), 1, warp.data(), &w), "warp");
    const Collection wc(w);
    const fs::path dir = output_dir(out);
    std::printf("%.12g\n", d);
    write_collection(wc.get(), dir / ("warp_" + std::to_string(i) + "_" + std::to_string(j) + ".csv"));
    return 0;
  }
};

struct SimulateCmd {
  std::string name;
  std::uint64_t seed = 0;
  std::size_t n = 50;
  std::size_t grid_n = 101;
  std::string out = ".";

  int run() const {
    if (grid_n < 3) usage_error("--grid-n must be >= 3 for simulation");
    efda_collection* raw = nullptr;
    if (name == "consistency") {
      efda_model m;
      efda_model_default(&m);
      m.seed = seed;
      m.n_points = grid_n;
      check(efda_model_simulate(&m, n, &raw), "simulate consistency");
    } else {
      check(efda_simulate(name.c_str(), seed, grid_n, &raw), "simulate");
    }
    const Collection c(raw);
    write_collection(c.get(), output_dir(out) / (name + ".csv"));
    return 0;
  }
};

struct EstimateCmd {
  std::string input;
  bool model = false;
  std::optional<double> c_mean;
  double e_mean = 0.0;
  std::string sizes;
  std::string truth;
  std::size_t repeats = 1;
  std::size_t n = 50;
  std::uint64_t seed = 0;
  std::size_t points = 101;
  std::string scale_law = "exponential";
  double noise_sd = 1.0;
  std::string out = ".";
  DpFlags dp;

  efda_model make_model() const {
    efda_model m;
    efda_model_default(&m);
    m.seed = seed;
    m.n_points = points;
    m.scale = {scale_law == "constant" ? EFDA_LAW_CONSTANT : EFDA_LAW_EXPONENTIAL, *c_mean, 0.0};
    m.noise = {noise_sd == 0.0 ? EFDA_LAW_CONSTANT : EFDA_LAW_NORMAL, e_mean, noise_sd};
    return m;
  }

  int run() const {
    if (*c_mean == 0.0) usage_error("--c-mean must be non-zero");
    if (model == !input.empty()) usage_error("estimate needs exactly one of an input CSV or --model");
    if (!sizes.empty() && !model) usage_error("--sizes requires --model");
    const efda_options opt = dp.options();
    const fs::path dir = output_dir(out);

    if (!sizes.empty()) {
      const auto ns = parse_sizes(sizes);
      const efda_model m = make_model();
      std::vector<double> errors(ns.size());
      check(efda_consistency(&m, ns.data(), ns.size(), repeats, &opt, errors.data()), "consistency");
      std::string csv = "n,error\n";
      for (std::size_t k = 0; k < ns.size(); ++k) {
        char line[64];
        std::snprintf(line, sizeof line, "%zu,%.17g\n", ns[k], errors[k]);
        csv += line;
        std::cout << "n=" << ns[k] << " error=" << fmt(errors[k]) << "\n";
      }
      if (ns.size() >= 2) {
        std::vector<double> x(ns.begin(), ns.end());
        double rho = 0.0;
        check(efda_spearman(x.data(), errors.data(), ns.size(), &rho), "spearman");
        std::cout << "spearman=" << fmt(rho) << "\n";
      }
      write_atomic(dir / "error_curve.csv", csv);
      return 0;
    }

    Collection data;
    Collection g;
    efda_collection* raw = nullptr;
    if (model) {
      const efda_model m = make_model();
      check(efda_model_simulate(&m, n, &raw), "simulate");
      data.reset(raw);
      check(efda_model_signal(&m, &raw), "signal");
      g.reset(raw);
    } else {
      data = read_input(input);
      if (!truth.empty()) g = read_input(truth);
    }
    double error = NAN;
    check(efda_estimate(data.get(), *c_mean, e_mean, &opt, g.get(), &raw, &error), "estimate");
    const Collection est(raw);
    write_collection(est.get(), dir / "estimate.csv");
    if (g) std::cout << "error=" << fmt(error) << "\n";
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elastic functional data alignment with the Fisher-Rao metric"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(efda_version()));

  AlignCmd align;
  auto* a = app.add_subcommand("align", "align every function of a CSV to a common template");
  a->add_option("input", align.input, "CSV with columns t,f1,f2,...")->required();
  a->add_option("--out", align.out, "output directory")->capture_default_str();
  align.dp.add(a);

  DistanceCmd dist;
  auto* d = app.add_subcommand("distance", "elastic distance between two functions of a CSV");
  d->add_option("input", dist.input, "CSV with columns t,f1,f2,...")->required();
  d->add_option("i", dist.i, "first function (1-based)")->required();
  d->add_option("j", dist.j, "second function (1-based)")->required();
  d->add_option("--out", dist.out, "output directory")->capture_default_str();
  dist.dp.add(d);

  SimulateCmd sim;
  auto* s = app.add_subcommand("simulate", "write a simulated dataset");
  s->add_option("name", sim.name, "sim1, sim2, sim3, sim4 or consistency")
      ->required()
      ->check(CLI::IsMember({"sim1", "sim2", "sim3", "sim4", "consistency"}));
  s->add_option("--seed", sim.seed, "random seed")->capture_default_str();
  s->add_option("--n", sim.n, "number of functions (consistency only)")->capture_default_str()->check(CLI::Range(2, 100000));
  s->add_option("--grid-n", sim.grid_n, "samples per function")->capture_default_str();
  s->add_option("--out", sim.out, "output directory")->capture_default_str();

  EstimateCmd est;
  auto* e = app.add_subcommand("estimate", "estimate a signal observed under random warping, scaling and shifts");
  e->add_option("input", est.input, "CSV of observations");
  e->add_flag("--model", est.model, "simulate observations from the sin(5 pi t) model instead of reading a CSV");
  e->add_option("--c-mean", est.c_mean, "mean of the scale factors")->required();
  e->add_option("--e-mean", est.e_mean, "mean of the vertical shifts")->capture_default_str();
  e->add_option("--sizes", est.sizes, "comma-separated sample sizes for the consistency curve (with --model)");
  e->add_option("--truth", est.truth, "CSV whose first function is the true signal");
  e->add_option("--repeats", est.repeats, "seeds averaged per sample size")->capture_default_str()->check(CLI::PositiveNumber);
  e->add_option("--n", est.n, "number of simulated observations")->capture_default_str()->check(CLI::Range(2, 100000));
  e->add_option("--seed", est.seed, "random seed")->capture_default_str();
  e->add_option("--points", est.points, "samples per simulated function")->capture_default_str();
  e->add_option("--scale-law", est.scale_law, "law of the scales")
      ->capture_default_str()
      ->check(CLI::IsMember({"exponential", "constant"}));
  e->add_option("--noise-sd", est.noise_sd, "standard deviation of the shifts")->capture_default_str()->check(CLI::NonNegativeNumber);
  e->add_option("--out", est.out, "output directory")->capture_default_str();
  est.dp.add(e);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*a) return align.run();
    if (*d) return dist.run();
    if (*s) return sim.run();
    if (*e) return est.run();
  } catch (const Exit& x) {
    return x.code;
  }
  return kExitUsage;
}
