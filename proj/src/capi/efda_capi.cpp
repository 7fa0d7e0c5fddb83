#include "efda/efda.h"

#include <cmath>
#include <filesystem>
#include <limits>
#include <new>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "efda/datasets.hpp"
#include "efda/estimation.hpp"
#include "efda/metrics.hpp"
#include "efda/quotient_mean.hpp"

struct efda_collection {
  efda::FunctionCollection data;
};

struct efda_alignment {
  efda::FunctionCollection original;
  efda::AlignmentResult result;
};

namespace {

thread_local std::string g_error;
thread_local std::size_t g_error_line = 0;

efda_status fail(efda_status s, const std::string& msg, std::size_t line = 0) {
  g_error = msg;
  g_error_line = line;
  return s;
}

template <class F>
efda_status guarded(F&& body) {
  try {
    g_error.clear();
    g_error_line = 0;
    body();
    return EFDA_OK;
  } catch (const efda::ParseError& e) {
    return fail(EFDA_ERR_PARSE, e.what(), e.line());
  } catch (const std::invalid_argument& e) {
    return fail(EFDA_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(EFDA_ERR_OUT_OF_RANGE, e.what());
  } catch (const std::domain_error& e) {
    return fail(EFDA_ERR_NUMERICAL, e.what());
  } catch (const std::runtime_error& e) {
    return fail(EFDA_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(EFDA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(EFDA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(EFDA_ERR_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* what) {
  if (!p) throw std::invalid_argument(std::string(what) + " is NULL");
}

efda::DpConfig dp_config(const efda_options* opt, std::size_t data_grid) {
  efda_options o;
  efda_options_default(&o);
  if (opt) o = *opt;
  return efda::DpConfig::standard(o.grid_n ? o.grid_n : data_grid, o.slope_max);
}

efda::AlignOptions align_options(const efda_options* opt) {
  efda::AlignOptions a;
  if (opt) {
    if (opt->max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    if (!(opt->tol > 0.0)) throw std::invalid_argument("tol must be > 0");
    a.orbit.max_iter = opt->max_iter;
    a.orbit.rel_tol = opt->tol;
  }
  return a;
}

efda::Law to_law(const efda_law& l) {
  switch (l.kind) {
    case EFDA_LAW_CONSTANT:
      return efda::Law::constant(l.p1);
    case EFDA_LAW_NORMAL:
      return efda::Law::normal(l.p1, l.p2);
    case EFDA_LAW_EXPONENTIAL:
      return efda::Law::exponential(l.p1);
  }
  throw std::invalid_argument("unknown law kind");
}

efda::ObservationModel to_model(const efda_model* m) {
  require(m, "model");
  auto model = efda::ObservationModel::sine_default(m->n_points, m->seed);
  model.scale = to_law(m->scale);
  model.noise = to_law(m->noise);
  model.warp_amplitude = m->warp_amplitude;
  model.warp_basis = m->warp_basis;
  model.validate();
  return model;
}

efda_collection* wrap(efda::FunctionCollection c) { return new efda_collection{std::move(c)}; }

const efda::SampledFunction& function_at(const efda_collection* c, std::size_t i) {
  require(c, "collection");
  if (i >= c->data.size())
    throw std::out_of_range("function index " + std::to_string(i) + " out of range (collection has " +
                            std::to_string(c->data.size()) + ")");
  return c->data.functions[i];
}

std::optional<efda::MetricReport> try_metrics(const efda_alignment* a) {
  if (a->original.size() < 2) return std::nullopt;
  try {
    return efda::evaluate(a->original.functions, a->result.aligned);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

}  // namespace

extern "C" {

const char* efda_version(void) { return "0.1.0"; }

const char* efda_status_name(efda_status s) {
  switch (s) {
    case EFDA_OK:
      return "ok";
    case EFDA_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case EFDA_ERR_PARSE:
      return "parse error";
    case EFDA_ERR_IO:
      return "i/o error";
    case EFDA_ERR_NUMERICAL:
      return "numerical failure";
    case EFDA_ERR_OUT_OF_RANGE:
      return "out of range";
    case EFDA_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* efda_last_error(void) { return g_error.c_str(); }
size_t efda_last_error_line(void) { return g_error_line; }

void efda_options_default(efda_options* opt) {
  if (!opt) return;
  const efda::OrbitMeanOptions orbit;
  opt->grid_n = 0;
  opt->slope_max = efda::kDefaultSlopeMax;
  opt->max_iter = orbit.max_iter;
  opt->tol = orbit.rel_tol;
}

efda_status efda_collection_create(double t0, double t1, size_t n_points, size_t n_functions, const double* values,
                                   efda_collection** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    if (n_functions == 0) throw std::invalid_argument("collection needs at least one function");
    require(values, "values");
    std::vector<efda::SampledFunction> fs;
    for (std::size_t i = 0; i < n_functions; ++i)
      fs.emplace_back(t0, t1, std::vector<double>(values + i * n_points, values + (i + 1) * n_points));
    *out = wrap(efda::make_collection(std::move(fs)));
  });
}

efda_status efda_collection_read_csv(const char* path, efda_collection** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    *out = wrap(efda::read_csv(path));
  });
}

efda_status efda_collection_write_csv(const efda_collection* c, const char* path) {
  return guarded([&] {
    require(c, "collection");
    require(path, "path");
    efda::write_csv(c->data, path);
  });
}

void efda_collection_free(efda_collection* c) { delete c; }

size_t efda_collection_size(const efda_collection* c) { return c ? c->data.size() : 0; }
size_t efda_collection_grid_size(const efda_collection* c) { return c ? c->data.grid_size() : 0; }

efda_status efda_collection_interval(const efda_collection* c, double* t0, double* t1) {
  return guarded([&] {
    require(c, "collection");
    if (t0) *t0 = c->data.t0;
    if (t1) *t1 = c->data.t1;
  });
}

efda_status efda_collection_values(const efda_collection* c, size_t i, double* out) {
  return guarded([&] {
    const auto& f = function_at(c, i);
    require(out, "out");
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k];
  });
}

const char* efda_collection_label(const efda_collection* c, size_t i) {
  if (!c || i >= c->data.labels.size()) return nullptr;
  return c->data.labels[i].c_str();
}

efda_status efda_simulate(const char* name, uint64_t seed, size_t n_points, efda_collection** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = nullptr;
    const std::string n = name;
    if (n == "sim1")
      *out = wrap(efda::sim1_bimodal(seed, n_points));
    else if (n == "sim2")
      *out = wrap(efda::sim2_unwarped(seed, n_points));
    else if (n == "sim3")
      *out = wrap(efda::sim3_gaussian_shifts(seed, n_points));
    else if (n == "sim4")
      *out = wrap(efda::sim4_wave(seed, n_points));
    else
      throw std::invalid_argument("unknown dataset '" + n + "' (expected sim1, sim2, sim3 or sim4)");
  });
}

efda_status efda_align(const efda_collection* c, const efda_options* opt, efda_alignment** out) {
  return guarded([&] {
    require(c, "collection");
    require(out, "out");
    *out = nullptr;
    const auto cfg = dp_config(opt, c->data.grid_size());
    auto result = efda::align_all(c->data.functions, cfg, align_options(opt));
    *out = new efda_alignment{c->data, std::move(result)};
  });
}

void efda_alignment_free(efda_alignment* a) { delete a; }

int efda_alignment_converged(const efda_alignment* a) { return a && a->result.converged ? 1 : 0; }
int efda_alignment_iterations(const efda_alignment* a) { return a ? a->result.iterations : 0; }

double efda_alignment_centering_error(const efda_alignment* a) {
  return a ? a->result.centering_error : std::numeric_limits<double>::quiet_NaN();
}

size_t efda_alignment_cost_trace(const efda_alignment* a, double* out, size_t cap) {
  if (!a) return 0;
  const auto& t = a->result.cost_trace;
  for (std::size_t k = 0; out && k < cap && k < t.size(); ++k) out[k] = t[k];
  return t.size();
}

efda_status efda_alignment_metrics(const efda_alignment* a, efda_metrics* out) {
  return guarded([&] {
    require(a, "alignment");
    require(out, "out");
    const auto m = efda::evaluate(a->original.functions, a->result.aligned);
    *out = {m.ls, m.pc, m.sls};
  });
}

efda_status efda_alignment_aligned(const efda_alignment* a, efda_collection** out) {
  return guarded([&] {
    require(a, "alignment");
    require(out, "out");
    efda::FunctionCollection c = a->original;
    c.functions = a->result.aligned;
    *out = wrap(std::move(c));
  });
}

efda_status efda_alignment_warps(const efda_alignment* a, efda_collection** out) {
  return guarded([&] {
    require(a, "alignment");
    require(out, "out");
    efda::FunctionCollection c = a->original;
    const double t0 = c.t0;
    const double len = c.t1 - c.t0;
    c.functions.clear();
    for (const auto& g : a->result.warps) {
      std::vector<double> v(g.size());
      for (std::size_t k = 0; k < g.size(); ++k) v[k] = t0 + len * g[k];
      c.functions.emplace_back(c.t0, c.t1, std::move(v));
    }
    *out = wrap(std::move(c));
  });
}

efda_status efda_alignment_template(const efda_alignment* a, efda_collection** out) {
  return guarded([&] {
    require(a, "alignment");
    require(out, "out");
    efda::FunctionCollection c;
    c.t0 = a->original.t0;
    c.t1 = a->original.t1;
    c.functions.push_back(a->result.template_function);
    c.labels.push_back("template");
    *out = wrap(std::move(c));
  });
}

efda_status efda_alignment_write_json(const efda_alignment* a, const char* path) {
  return guarded([&] {
    require(a, "alignment");
    require(path, "path");
    efda::write_alignment_json(a->original, a->result, try_metrics(a), path);
  });
}

efda_status efda_metrics_compute(const efda_collection* original, const efda_collection* aligned, efda_metrics* out) {
  return guarded([&] {
    require(original, "original");
    require(aligned, "aligned");
    require(out, "out");
    const auto m = efda::evaluate(original->data.functions, aligned->data.functions);
    *out = {m.ls, m.pc, m.sls};
  });
}

efda_status efda_elastic_distance(const efda_collection* c, size_t i, size_t j, const efda_options* opt,
                                  double* distance, double* warp) {
  return guarded([&] {
    const auto& fi = function_at(c, i);
    const auto& fj = function_at(c, j);
    require(distance, "distance");
    const auto cfg = dp_config(opt, fi.size());
    const auto m = efda::elastic_match(efda::to_srvf(fi), efda::to_srvf(fj), cfg);
    *distance = m.distance;
    if (warp) {
      // swapped: the stored warp moves fi onto fj, so invert it.
      const efda::Warping g = m.swapped ? efda::invert_warp(m.warp) : m.warp;
      const double len = c->data.t1 - c->data.t0;
      for (std::size_t k = 0; k < g.size(); ++k) warp[k] = c->data.t0 + len * g[k];
    }
  });
}

void efda_model_default(efda_model* m) {
  if (!m) return;
  const auto d = efda::ObservationModel::sine_default();
  m->scale = {EFDA_LAW_EXPONENTIAL, d.scale.p1, 0.0};
  m->noise = {EFDA_LAW_NORMAL, d.noise.p1, d.noise.p2};
  m->warp_amplitude = d.warp_amplitude;
  m->warp_basis = d.warp_basis;
  m->seed = 0;
  m->n_points = efda::kDefaultGridSize;
}

efda_status efda_model_simulate(const efda_model* m, size_t n, efda_collection** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    const auto obs = efda::simulate_observations(to_model(m), n);
    *out = wrap(efda::make_collection(obs.functions));
  });
}

efda_status efda_model_signal(const efda_model* m, efda_collection** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    auto c = efda::make_collection({to_model(m).signal});
    c.labels = {"g"};
    *out = wrap(std::move(c));
  });
}

efda_status efda_estimate(const efda_collection* c, double c_mean, double e_mean, const efda_options* opt,
                          const efda_collection* truth, efda_collection** estimate, double* error) {
  return guarded([&] {
    require(c, "collection");
    require(estimate, "estimate");
    *estimate = nullptr;
    std::optional<efda::SampledFunction> g;
    if (truth) g = function_at(truth, 0);
    const auto cfg = dp_config(opt, c->data.grid_size());
    auto rep = efda::estimate_signal(c->data.functions, c_mean, e_mean, cfg, g, align_options(opt));
    if (error) *error = rep.error;
    auto out = efda::make_collection({std::move(rep.estimate)});
    out.labels = {"estimate"};
    *estimate = wrap(std::move(out));
  });
}

efda_status efda_consistency(const efda_model* m, const size_t* sizes, size_t n_sizes, size_t repeats,
                             const efda_options* opt, double* errors) {
  return guarded([&] {
    require(sizes, "sizes");
    require(errors, "errors");
    const auto model = to_model(m);
    const std::vector<std::size_t> ns(sizes, sizes + n_sizes);
    const auto cfg = dp_config(opt, model.signal.size());
    const auto curve = efda::consistency_experiment(model, ns, cfg, repeats, align_options(opt));
    for (std::size_t k = 0; k < curve.size(); ++k) errors[k] = curve[k].error;
  });
}

efda_status efda_spearman(const double* x, const double* y, size_t n, double* out) {
  return guarded([&] {
    require(x, "x");
    require(y, "y");
    require(out, "out");
    *out = efda::spearman({x, n}, {y, n});
  });
}

}  // extern "C"
