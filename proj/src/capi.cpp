#include "oamem/oamem.h"

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "oamem/config.hpp"
#include "oamem/coupling.hpp"
#include "oamem/error.hpp"
#include "oamem/modes.hpp"
#include "oamem/search.hpp"
#include "oamem/specfun.hpp"
#include "oamem/sweep.hpp"
#include "oamem/transfer.hpp"
#include "oamem/version.hpp"

struct oamem_config {
  oamem::RunConfig cfg;
  std::string hash;
  std::string canonical;
};

struct oamem_dataset {
  oamem::Dataset data;
  std::vector<std::string> flags;  // joined per row
  std::string csv;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

oamem_status fail(oamem_status code, const char* what) {
  g_last_error = what;
  return code;
}

// Runs body, translating exceptions to status codes.
template <class F>
oamem_status guard(F&& body) noexcept {
  g_last_error.clear();
  try {
    body();
    return OAMEM_OK;
  } catch (const oamem::DomainError& e) {
    return fail(OAMEM_ERR_ARGUMENT, e.what());
  } catch (const oamem::ArgumentError& e) {
    return fail(OAMEM_ERR_ARGUMENT, e.what());
  } catch (const oamem::ConfigError& e) {
    return fail(OAMEM_ERR_CONFIG, e.what());
  } catch (const oamem::ConvergenceError& e) {
    return fail(OAMEM_ERR_CONVERGENCE, e.what());
  } catch (const oamem::IoError& e) {
    return fail(OAMEM_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(OAMEM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(OAMEM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(OAMEM_ERR_INTERNAL, "unknown exception");
  }
}

void need(const void* ptr, const char* name) {
  if (!ptr) throw oamem::ArgumentError(std::string(name) + " must not be NULL");
}

oamem::QuadratureConfig to_cpp(const oamem_quadrature_config* q) {
  oamem::QuadratureConfig out;
  if (!q) return out;
  out.radial_panels = q->radial_panels;
  out.angular_panels = q->angular_panels;
  out.nodes_per_panel = q->nodes_per_panel;
  out.r_max_waists = q->r_max_waists;
  out.target_rel_error = q->target_rel_error;
  out.max_doublings = q->max_doublings;
  return out;
}

void to_c(const oamem::QuadratureResult& r, oamem_quadrature_result* out) {
  out->value = r.value;
  out->error_estimate = r.error_estimate;
  out->radial_panels = r.radial_panels;
  out->angular_panels = r.angular_panels;
}

oamem::TransferParams to_cpp(const oamem_transfer_params& p) {
  return {p.g, p.n_c, p.kappa, p.gamma_m, p.N_m, p.alpha};
}

oamem_transfer_params to_c(const oamem::TransferParams& p) {
  return {p.g, p.n_c, p.kappa, p.gamma_m, p.N_m, p.alpha};
}

oamem_fidelity to_c(const oamem::FidelityBreakdown& f) {
  return {f.n, f.lambda, f.fidelity, f.log_fidelity};
}

oamem::SearchBounds to_cpp(const oamem_search_bounds* b) {
  oamem::SearchBounds out;
  if (!b) return out;
  out.p_max = b->p_max;
  out.p_prime_max = b->p_prime_max;
  out.gamma_lo = b->gamma_lo;
  out.gamma_hi = b->gamma_hi;
  return out;
}

oamem_search_bounds to_c(const oamem::SearchBounds& b) {
  return {b.p_max, b.p_prime_max, b.gamma_lo, b.gamma_hi};
}

void to_c(const oamem::SearchResult& r, oamem_search_result* out) {
  out->l = r.l;
  out->best_p = r.best_p;
  out->best_p_prime = r.best_p_prime;
  out->best_gamma = r.best_gamma;
  out->objective = r.objective;
  out->objective_kind = r.kind == oamem::Objective::fidelity ? OAMEM_OBJECTIVE_FIDELITY
                                                             : OAMEM_OBJECTIVE_COUPLING;
  out->signed_xi = r.signed_xi;
  out->boundary_argmax = r.boundary_argmax ? 1 : 0;
  out->has_breakdown = r.breakdown ? 1 : 0;
  out->breakdown = r.breakdown ? to_c(*r.breakdown) : oamem_fidelity{0.0, 0.0, 0.0, 0.0};
}

}  // namespace

extern "C" {

const char* oamem_version(void) { return oamem::kVersion.data(); }

const char* oamem_last_error(void) { return g_last_error.c_str(); }

oamem_status oamem_ln_gamma(double x, double* out) {
  return guard([&] {
    need(out, "out");
    *out = oamem::specfun::ln_gamma(x);
  });
}

oamem_status oamem_binomial(unsigned n, unsigned k, double* out) {
  return guard([&] {
    need(out, "out");
    *out = oamem::specfun::binomial(n, k);
  });
}

oamem_status oamem_assoc_laguerre(unsigned p, unsigned a, double x, double* out) {
  return guard([&] {
    need(out, "out");
    *out = oamem::specfun::assoc_laguerre(p, a, x);
  });
}

oamem_status oamem_hyp2f1_terminating(unsigned a_neg, unsigned b_neg, unsigned c_neg,
                                      double z, double* out) {
  return guard([&] {
    need(out, "out");
    *out = oamem::specfun::hyp2f1_terminating({a_neg, b_neg, c_neg, z});
  });
}

void oamem_quadrature_config_default(oamem_quadrature_config* cfg) {
  if (!cfg) return;
  const oamem::QuadratureConfig d;
  *cfg = {d.radial_panels,    d.angular_panels,   d.nodes_per_panel,
          d.r_max_waists,     d.target_rel_error, d.max_doublings};
}

oamem_status oamem_mode_amplitude(int l, int p, double waist, double r, double theta,
                                  double* out) {
  return guard([&] {
    need(out, "out");
    const oamem::ModeIndex mode{l, p};
    const oamem::ModeGeometry geom{waist, oamem::ModeRole::acoustic};
    oamem::validate(mode);
    oamem::validate(geom);
    *out = oamem::modes::lg_mode_amplitude(mode, geom, r, theta);
  });
}

oamem_status oamem_mode_norm(int l, int p, double waist,
                             const oamem_quadrature_config* quad,
                             oamem_quadrature_result* out) {
  return guard([&] {
    need(out, "out");
    const oamem::ModeGeometry geom{waist, oamem::ModeRole::acoustic};
    to_c(oamem::modes::mode_norm({l, p}, geom, to_cpp(quad)), out);
  });
}

int oamem_selection_allowed(int l_optical, int l_acoustic) {
  return oamem::coupling::selection_allowed(l_optical, l_acoustic) ? 1 : 0;
}

oamem_status oamem_xi_analytic(int l, int p, int p_prime, double gamma, double* out) {
  return guard([&] {
    need(out, "out");
    *out = oamem::coupling::xi_analytic(l, p, p_prime, oamem::WaistRatio(gamma));
  });
}

oamem_status oamem_xi_p0_closed_form(int l, double gamma, double* out) {
  return guard([&] {
    need(out, "out");
    *out = oamem::coupling::xi_p0_closed_form(l, oamem::WaistRatio(gamma));
  });
}

oamem_status oamem_gamma_opt(int l, double* out) {
  return guard([&] {
    need(out, "out");
    *out = oamem::coupling::gamma_opt(l);
  });
}

oamem_status oamem_chi_quadrature(int l, int p, int l_prime, int p_prime, double w_c,
                                  double w_a, const oamem_quadrature_config* quad,
                                  oamem_quadrature_result* out) {
  return guard([&] {
    need(out, "out");
    to_c(oamem::coupling::chi_quadrature({l, p}, {l_prime, p_prime}, w_c, w_a,
                                         to_cpp(quad)),
         out);
  });
}

oamem_status oamem_single_photon_coupling(double x0, double omega_c, double length,
                                          double* out) {
  return guard([&] {
    need(out, "out");
    *out = oamem::coupling::single_photon_coupling({x0, omega_c, length});
  });
}

oamem_status oamem_transfer_fidelity(const oamem_transfer_params* params, double xi,
                                     oamem_fidelity* out) {
  return guard([&] {
    need(params, "params");
    need(out, "out");
    *out = to_c(oamem::transfer::transfer_fidelity(to_cpp(*params), xi));
  });
}

oamem_status oamem_bose_occupation(double omega_m, double temperature, double* out) {
  return guard([&] {
    need(out, "out");
    *out = oamem::transfer::bose_occupation(omega_m, temperature);
  });
}

void oamem_search_bounds_default(oamem_search_bounds* bounds) {
  if (bounds) *bounds = to_c(oamem::SearchBounds{});
}

oamem_status oamem_max_coupling(int l, double gamma, const oamem_search_bounds* bounds,
                                unsigned threads, oamem_search_result* out) {
  return guard([&] {
    need(out, "out");
    to_c(oamem::search::max_coupling_over_pp(l, oamem::WaistRatio(gamma), to_cpp(bounds),
                                             threads),
         out);
  });
}

oamem_status oamem_max_fidelity(int l, double gamma, const oamem_transfer_params* params,
                                const oamem_search_bounds* bounds, unsigned threads,
                                oamem_search_result* out) {
  return guard([&] {
    need(params, "params");
    need(out, "out");
    to_c(oamem::search::max_fidelity_over_pp(l, oamem::WaistRatio(gamma), to_cpp(*params),
                                             to_cpp(bounds), threads),
         out);
  });
}

oamem_status oamem_argmax_gamma(int l, const oamem_search_bounds* bounds, double tol,
                                double* out) {
  return guard([&] {
    need(out, "out");
    *out = oamem::search::argmax_gamma_numeric(l, to_cpp(bounds), tol);
  });
}

oamem_status oamem_config_create(const char* preset, oamem_config** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    auto handle = std::make_unique<oamem_config>();
    handle->cfg = preset ? oamem::config::preset(preset) : oamem::config::defaults();
    *out = handle.release();
  });
}

oamem_status oamem_config_load(const char* path, oamem_config** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    std::optional<std::filesystem::path> explicit_path;
    if (path) explicit_path = path;
    auto handle = std::make_unique<oamem_config>();
    const auto resolved = oamem::config::resolve_path(explicit_path);
    handle->cfg = resolved ? oamem::config::load(*resolved) : oamem::config::defaults();
    *out = handle.release();
  });
}

void oamem_config_destroy(oamem_config* cfg) { delete cfg; }

oamem_status oamem_config_set(oamem_config* cfg, const char* key, const char* value,
                              int rad_per_sec) {
  return guard([&] {
    need(cfg, "cfg");
    need(key, "key");
    need(value, "value");
    oamem::RunConfig next = cfg->cfg;
    oamem::config::set(next, key, value, rad_per_sec != 0);
    oamem::config::validate(next);
    cfg->cfg = std::move(next);
  });
}

size_t oamem_config_warning_count(const oamem_config* cfg) {
  return cfg ? cfg->cfg.warnings.size() : 0;
}

const char* oamem_config_warning(const oamem_config* cfg, size_t index) {
  if (!cfg || index >= cfg->cfg.warnings.size()) return nullptr;
  return cfg->cfg.warnings[index].c_str();
}

double oamem_config_gamma(const oamem_config* cfg) { return cfg ? cfg->cfg.gamma : 0.0; }

oamem_status oamem_config_bounds(const oamem_config* cfg, oamem_search_bounds* out) {
  return guard([&] {
    need(cfg, "cfg");
    need(out, "out");
    *out = to_c(cfg->cfg.bounds);
  });
}

oamem_status oamem_config_transfer_params(const oamem_config* cfg,
                                          oamem_transfer_params* out) {
  return guard([&] {
    need(cfg, "cfg");
    need(out, "out");
    *out = to_c(oamem::config::transfer_params(cfg->cfg));
  });
}

const char* oamem_config_hash(oamem_config* cfg) {
  if (!cfg) return nullptr;
  cfg->hash = oamem::config::hash(cfg->cfg);
  return cfg->hash.c_str();
}

const char* oamem_config_canonical(oamem_config* cfg) {
  if (!cfg) return nullptr;
  cfg->canonical = oamem::config::canonical_text(cfg->cfg);
  return cfg->canonical.c_str();
}

oamem_status oamem_parse_figure(const char* name, oamem_figure* out) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    *out = static_cast<oamem_figure>(oamem::parse_figure(name));
  });
}

oamem_status oamem_parse_format(const char* name, oamem_format* out) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    *out = static_cast<oamem_format>(oamem::parse_format(name));
  });
}

oamem_status oamem_sweep_run(const oamem_config* cfg, oamem_figure figure,
                             const int* l_values, size_t l_count, unsigned threads,
                             oamem_dataset** out) {
  return guard([&] {
    need(cfg, "cfg");
    need(out, "out");
    *out = nullptr;
    if (figure < OAMEM_FIG2 || figure > OAMEM_FIG5) {
      throw oamem::ArgumentError("unknown figure code " + std::to_string(figure));
    }
    if (l_count > 0) need(l_values, "l_values");

    oamem::SweepRequest request;
    request.figure = static_cast<oamem::Figure>(figure);
    request.l_values.assign(l_values, l_values + l_count);
    request.gamma = cfg->cfg.gamma;
    request.bounds = cfg->cfg.bounds;
    oamem::SweepContext context;
    context.config_hash = oamem::config::hash(cfg->cfg);
    context.notes = cfg->cfg.warnings;
    if (request.figure == oamem::Figure::fig4b || request.figure == oamem::Figure::fig5) {
      request.transfer = oamem::config::transfer_params(cfg->cfg);
      context.notes.push_back("preset " + cfg->cfg.preset);
    }

    auto handle = std::make_unique<oamem_dataset>();
    handle->data = oamem::run_sweep(request, context, threads);
    handle->flags.reserve(handle->data.rows.size());
    for (const auto& row : handle->data.rows) {
      std::string joined;
      for (const auto& f : row.flags) {
        if (!joined.empty()) joined += ';';
        joined += f;
      }
      handle->flags.push_back(std::move(joined));
    }
    *out = handle.release();
  });
}

size_t oamem_dataset_row_count(const oamem_dataset* data) {
  return data ? data->data.rows.size() : 0;
}

oamem_status oamem_dataset_get_row(const oamem_dataset* data, size_t index,
                               oamem_dataset_row* out) {
  return guard([&] {
    need(data, "data");
    need(out, "out");
    if (index >= data->data.rows.size()) {
      throw oamem::ArgumentError("row index " + std::to_string(index) + " out of range");
    }
    const oamem::DatasetRow& r = data->data.rows[index];
    out->series = r.series.c_str();
    out->l = r.l;
    out->p = r.p;
    out->p_prime = r.p_prime;
    out->gamma = r.gamma;
    out->xi = r.xi;
    out->has_n = r.n ? 1 : 0;
    out->n = r.n.value_or(0.0);
    out->has_lambda = r.lambda ? 1 : 0;
    out->lambda = r.lambda.value_or(0.0);
    out->has_fidelity = r.fidelity ? 1 : 0;
    out->fidelity = r.fidelity.value_or(0.0);
    out->flags = data->flags[index].c_str();
  });
}

oamem_status oamem_dataset_format(oamem_dataset* data, oamem_format format,
                                  const char** text, size_t* length) {
  return guard([&] {
    need(data, "data");
    need(text, "text");
    const auto fmt = static_cast<oamem::OutputFormat>(format);
    std::string& slot = fmt == oamem::OutputFormat::json ? data->json : data->csv;
    if (slot.empty()) slot = oamem::dataset::format(data->data, fmt);
    *text = slot.c_str();
    if (length) *length = slot.size();
  });
}

oamem_status oamem_dataset_write(oamem_dataset* data, oamem_format format,
                                 const char* path) {
  const char* text = nullptr;
  size_t length = 0;
  if (const oamem_status s = oamem_dataset_format(data, format, &text, &length);
      s != OAMEM_OK) {
    return s;
  }
  return guard([&] {
    if (!path || std::string_view(path) == "-") {
      if (std::fwrite(text, 1, length, stdout) != length || std::fflush(stdout) != 0) {
        throw oamem::IoError("failed writing to stdout");
      }
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw oamem::IoError(std::string("cannot open '") + path + "' for writing");
    file.write(text, static_cast<std::streamsize>(length));
    file.close();
    if (!file) throw oamem::IoError(std::string("failed writing '") + path + "'");
  });
}

void oamem_dataset_destroy(oamem_dataset* data) { delete data; }

}  // extern "C"
