// oamem command-line front end. Talks to the library only through oamem.h.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oamem/oamem.h"

namespace {

// Carries a status code out of nested helpers to main's single exit point.
struct Failure {
  oamem_status status;
  std::string message;
};

void check(oamem_status s) {
  if (s != OAMEM_OK) throw Failure{s, oamem_last_error()};
}

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

class ConfigHandle {
 public:
  ConfigHandle() = default;
  ConfigHandle(const ConfigHandle&) = delete;
  ConfigHandle& operator=(const ConfigHandle&) = delete;
  ~ConfigHandle() { oamem_config_destroy(ptr_); }
  oamem_config* get() const { return ptr_; }
  oamem_config** out() { return &ptr_; }

 private:
  oamem_config* ptr_ = nullptr;
};

class DatasetHandle {
 public:
  DatasetHandle() = default;
  DatasetHandle(const DatasetHandle&) = delete;
  DatasetHandle& operator=(const DatasetHandle&) = delete;
  ~DatasetHandle() { oamem_dataset_destroy(ptr_); }
  oamem_dataset* get() const { return ptr_; }
  oamem_dataset** out() { return &ptr_; }

 private:
  oamem_dataset* ptr_ = nullptr;
};

// Options shared by every subcommand that needs run parameters.
struct RunOptions {
  std::string config_path;
  std::string preset;
  bool rad_per_sec = false;
  std::optional<double> g, n_c, kappa, gamma_m, alpha, N_m, omega_m, temperature;
  std::optional<double> gamma;
  std::optional<int> p_max, p_prime_max;
  std::optional<double> gamma_lo, gamma_hi;
  std::vector<std::string> sets;
};

void add_config_options(CLI::App* cmd, RunOptions& o) {
  auto* config = cmd->add_option("--config", o.config_path,
                                 "key = value config file (default: $OAMEM_CONFIG)");
  cmd->add_option("--preset", o.preset, "parameter preset: fig5-caption or body-text")
      ->excludes(config);
  cmd->add_flag("--rad-per-sec", o.rad_per_sec,
                "rates on the command line are angular (rad/s), not Hz");
  cmd->add_option("--set", o.sets, "override a config key, KEY=VALUE (repeatable)");
}

void add_transfer_options(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--g", o.g, "single-photon coupling (Hz)");
  cmd->add_option("--n-c", o.n_c, "intracavity photon number");
  cmd->add_option("--kappa", o.kappa, "cavity decay rate (Hz)");
  cmd->add_option("--gamma-m", o.gamma_m, "acoustic decay rate (Hz)");
  cmd->add_option("--alpha", o.alpha, "coherent amplitude |alpha|");
  cmd->add_option("--N-m", o.N_m, "environmental phonon number");
  cmd->add_option("--omega-m", o.omega_m, "mechanical frequency (Hz), with --temperature");
  cmd->add_option("--temperature", o.temperature, "bath temperature (K)");
}

void add_bounds_options(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--p-max", o.p_max, "largest optical radial index searched");
  cmd->add_option("--pp-max", o.p_prime_max, "largest acoustic radial index searched");
  cmd->add_option("--gamma-lo", o.gamma_lo, "lower end of the waist-ratio bracket");
  cmd->add_option("--gamma-hi", o.gamma_hi, "upper end of the waist-ratio bracket");
}

void set_key(oamem_config* cfg, const char* key, const std::string& value, bool rad) {
  check(oamem_config_set(cfg, key, value.c_str(), rad ? 1 : 0));
}

template <class T>
void set_if(oamem_config* cfg, const char* key, const std::optional<T>& v, bool rad) {
  if (!v) return;
  std::ostringstream text;
  text.precision(17);
  text << *v;
  set_key(cfg, key, text.str(), rad);
}

void build_config(const RunOptions& o, ConfigHandle& cfg) {
  if (!o.preset.empty()) {
    check(oamem_config_create(o.preset.c_str(), cfg.out()));
  } else {
    check(oamem_config_load(o.config_path.empty() ? nullptr : o.config_path.c_str(),
                            cfg.out()));
  }
  for (size_t i = 0; i < oamem_config_warning_count(cfg.get()); ++i) {
    std::fprintf(stderr, "warning: %s\n", oamem_config_warning(cfg.get(), i));
  }
  for (const std::string& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw Failure{OAMEM_ERR_ARGUMENT, "--set expects KEY=VALUE, got '" + kv + "'"};
    }
    set_key(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1), o.rad_per_sec);
  }
  oamem_config* c = cfg.get();
  const bool rad = o.rad_per_sec;
  set_if(c, "g", o.g, rad);
  set_if(c, "n_c", o.n_c, rad);
  set_if(c, "kappa", o.kappa, rad);
  set_if(c, "gamma_m", o.gamma_m, rad);
  set_if(c, "alpha", o.alpha, rad);
  set_if(c, "N_m", o.N_m, rad);
  set_if(c, "omega_m", o.omega_m, rad);
  set_if(c, "temperature_k", o.temperature, rad);
  set_if(c, "gamma", o.gamma, rad);
  set_if(c, "p_max", o.p_max, rad);
  set_if(c, "p_prime_max", o.p_prime_max, rad);
  set_if(c, "gamma_lo", o.gamma_lo, rad);
  set_if(c, "gamma_hi", o.gamma_hi, rad);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    if (std::fflush(stdout) != 0) throw Failure{OAMEM_ERR_IO, "failed writing to stdout"};
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw Failure{OAMEM_ERR_IO, "cannot open '" + out_path + "' for writing"};
  file << text;
  file.close();
  if (!file) throw Failure{OAMEM_ERR_IO, "failed writing '" + out_path + "'"};
}

void print_line(const char* key, double value) {
  std::printf("%-16s %s\n", key, real(value).c_str());
}

void print_line(const char* key, int value) { std::printf("%-16s %d\n", key, value); }

std::vector<int> default_ls() { return {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optoacoustic OAM coupling constants, optimizers and transfer fidelity"};
  app.set_version_flag("--version", std::string(oamem_version()));
  app.require_subcommand(1);

  // xi
  int xi_l = 0, xi_p = 0, xi_pp = 0;
  double xi_gamma = 0.0;
  bool xi_verify = false;
  auto* xi = app.add_subcommand("xi", "analytic overlap xi_lpp'(gamma)");
  xi->add_option("--l", xi_l, "optical azimuthal index")->required();
  xi->add_option("--p", xi_p, "optical radial index")->required();
  xi->add_option("--pp", xi_pp, "acoustic radial index p'")->required();
  xi->add_option("--gamma", xi_gamma, "waist ratio (w_c/w_a)^2")->required();
  xi->add_flag("--verify", xi_verify, "also evaluate the overlap by direct quadrature");

  // chi-oracle
  int co_l = 0, co_p = 0, co_lp = 0, co_pp = 0;
  double co_wc = 1.0, co_wa = 1.0;
  oamem_quadrature_config quad;
  oamem_quadrature_config_default(&quad);
  auto* chi = app.add_subcommand("chi-oracle", "overlap integral by 2-D quadrature");
  chi->add_option("--l", co_l, "optical azimuthal index")->required();
  chi->add_option("--p", co_p, "optical radial index")->required();
  chi->add_option("--lp", co_lp, "acoustic azimuthal index l' (default 2l)");
  chi->add_option("--pp", co_pp, "acoustic radial index p'")->required();
  chi->add_option("--wc", co_wc, "optical waist")->capture_default_str();
  chi->add_option("--wa", co_wa, "acoustic waist")->capture_default_str();
  chi->add_option("--radial-panels", quad.radial_panels)->capture_default_str();
  chi->add_option("--angular-panels", quad.angular_panels)->capture_default_str();
  chi->add_option("--nodes", quad.nodes_per_panel, "Gauss points per panel")
      ->capture_default_str();
  chi->add_option("--r-max", quad.r_max_waists, "radial cutoff in waists")
      ->capture_default_str();
  chi->add_option("--tol", quad.target_rel_error, "convergence tolerance")
      ->capture_default_str();
  chi->add_option("--max-doublings", quad.max_doublings)->capture_default_str();

  // fidelity
  int fi_l = 0, fi_p = 0, fi_pp = 0;
  RunOptions fi_opts;
  auto* fid = app.add_subcommand("fidelity", "coherent-state transfer fidelity (n, lambda, F)");
  fid->add_option("--l", fi_l, "optical azimuthal index")->required();
  fid->add_option("--p", fi_p, "optical radial index")->capture_default_str();
  fid->add_option("--pp", fi_pp, "acoustic radial index p'")->capture_default_str();
  fid->add_option("--gamma", fi_opts.gamma, "waist ratio (default from config)");
  add_config_options(fid, fi_opts);
  add_transfer_options(fid, fi_opts);

  // gamma-opt
  int go_l = 1;
  bool go_numeric = false;
  double go_tol = 1e-8;
  RunOptions go_opts;
  auto* gopt = app.add_subcommand("gamma-opt", "waist ratio maximizing xi_l00");
  gopt->add_option("--l", go_l, "optical azimuthal index, |l| >= 1")->required();
  gopt->add_flag("--numeric", go_numeric, "also maximize numerically on the bracket");
  gopt->add_option("--tol", go_tol, "golden-section tolerance")->capture_default_str();
  add_config_options(gopt, go_opts);
  add_bounds_options(gopt, go_opts);

  // optimize
  std::vector<int> op_ls;
  std::string op_objective = "coupling";
  std::string op_out;
  unsigned op_threads = 1;
  RunOptions op_opts;
  auto* opt = app.add_subcommand("optimize", "maximize over (p, p') for each l");
  opt->add_option("--l", op_ls, "azimuthal indices (default 0..9)");
  opt->add_option("--gamma", op_opts.gamma, "waist ratio (default from config)");
  opt->add_option("--objective", op_objective, "coupling or fidelity")
      ->check(CLI::IsMember({"coupling", "fidelity"}))
      ->capture_default_str();
  opt->add_option("--out", op_out, "output path (default stdout)");
  opt->add_option("--threads", op_threads, "worker threads")->capture_default_str();
  add_config_options(opt, op_opts);
  add_transfer_options(opt, op_opts);
  add_bounds_options(opt, op_opts);

  // sweep
  std::string sw_figure;
  std::vector<int> sw_ls;
  std::string sw_format = "csv";
  std::string sw_out;
  unsigned sw_threads = 1;
  RunOptions sw_opts;
  auto* sweep = app.add_subcommand("sweep", "emit a figure dataset (CSV or JSON)");
  sweep->add_option("--figure", sw_figure, "fig2, fig3, fig4a, fig4b or fig5")->required();
  sweep->add_option("--l", sw_ls, "azimuthal indices (default per figure)");
  sweep->add_option("--gamma", sw_opts.gamma, "waist ratio (default from config)");
  sweep->add_option("--format", sw_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sweep->add_option("--out", sw_out, "output path (default stdout)");
  sweep->add_option("--threads", sw_threads, "worker threads")->capture_default_str();
  add_config_options(sweep, sw_opts);
  add_transfer_options(sweep, sw_opts);
  add_bounds_options(sweep, sw_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return OAMEM_ERR_ARGUMENT;
  }

  try {
    if (*xi) {
      double value = 0.0;
      check(oamem_xi_analytic(xi_l, xi_p, xi_pp, xi_gamma, &value));
      print_line("xi", value);
      if (xi_verify) {
        oamem_quadrature_result q;
        check(oamem_chi_quadrature(xi_l, xi_p, 2 * xi_l, xi_pp, std::sqrt(xi_gamma), 1.0,
                                   nullptr, &q));
        print_line("chi_quadrature", q.value);
        print_line("abs_difference", std::abs(value - q.value));
        print_line("quad_error_est", q.error_estimate);
      }
    } else if (*chi) {
      if (chi->count("--lp") == 0) co_lp = 2 * co_l;
      oamem_quadrature_result q;
      check(oamem_chi_quadrature(co_l, co_p, co_lp, co_pp, co_wc, co_wa, &quad, &q));
      print_line("chi", q.value);
      print_line("error_estimate", q.error_estimate);
      print_line("radial_panels", q.radial_panels);
      print_line("angular_panels", q.angular_panels);
      print_line("selection_ok", oamem_selection_allowed(co_l, co_lp));
    } else if (*fid) {
      ConfigHandle cfg;
      build_config(fi_opts, cfg);
      oamem_transfer_params params;
      check(oamem_config_transfer_params(cfg.get(), &params));
      const double gamma = oamem_config_gamma(cfg.get());
      double xi_value = 0.0;
      check(oamem_xi_analytic(fi_l, fi_p, fi_pp, gamma, &xi_value));
      if (xi_value == 0.0) {
        throw Failure{OAMEM_ERR_ARGUMENT, "xi vanishes for this (l, p, p', gamma)"};
      }
      oamem_fidelity f;
      check(oamem_transfer_fidelity(&params, std::abs(xi_value), &f));
      print_line("gamma", gamma);
      print_line("xi", xi_value);
      print_line("N_m", params.N_m);
      print_line("n", f.n);
      print_line("lambda", f.lambda);
      print_line("fidelity", f.fidelity);
      print_line("log_fidelity", f.log_fidelity);
    } else if (*gopt) {
      double closed = 0.0;
      check(oamem_gamma_opt(go_l, &closed));
      print_line("gamma_opt", closed);
      double peak = 0.0;
      check(oamem_xi_p0_closed_form(go_l, closed, &peak));
      print_line("xi_l00_at_opt", peak);
      if (go_numeric) {
        ConfigHandle cfg;
        build_config(go_opts, cfg);
        oamem_search_bounds bounds;
        check(oamem_config_bounds(cfg.get(), &bounds));
        double numeric = 0.0;
        check(oamem_argmax_gamma(go_l, &bounds, go_tol, &numeric));
        print_line("gamma_numeric", numeric);
        print_line("abs_difference", std::abs(numeric - closed));
      }
    } else if (*opt) {
      ConfigHandle cfg;
      build_config(op_opts, cfg);
      oamem_search_bounds bounds;
      check(oamem_config_bounds(cfg.get(), &bounds));
      const double gamma = oamem_config_gamma(cfg.get());
      const bool fidelity = op_objective == "fidelity";
      oamem_transfer_params params{};
      if (fidelity) check(oamem_config_transfer_params(cfg.get(), &params));
      if (op_ls.empty()) op_ls = default_ls();
      std::string text = "l,best_p,best_p_prime,gamma,objective_kind,objective,signed_xi,"
                         "boundary_argmax\n";
      for (const int l : op_ls) {
        oamem_search_result r;
        if (fidelity) {
          check(oamem_max_fidelity(l, gamma, &params, &bounds, op_threads, &r));
        } else {
          check(oamem_max_coupling(l, gamma, &bounds, op_threads, &r));
        }
        text += std::to_string(r.l) + ',' + std::to_string(r.best_p) + ',' +
                std::to_string(r.best_p_prime) + ',' + real(r.best_gamma) + ',' +
                (fidelity ? "fidelity" : "coupling") + ',' + real(r.objective) + ',' +
                real(r.signed_xi) + ',' + (r.boundary_argmax ? "1" : "0") + '\n';
        if (r.boundary_argmax) {
          std::fprintf(stderr, "warning: l=%d argmax on the search boundary\n", l);
        }
      }
      emit(text, op_out);
    } else if (*sweep) {
      ConfigHandle cfg;
      build_config(sw_opts, cfg);
      oamem_figure figure;
      check(oamem_parse_figure(sw_figure.c_str(), &figure));
      oamem_format format;
      check(oamem_parse_format(sw_format.c_str(), &format));
      DatasetHandle data;
      check(oamem_sweep_run(cfg.get(), figure, sw_ls.empty() ? nullptr : sw_ls.data(),
                            sw_ls.size(), sw_threads, data.out()));
      check(oamem_dataset_write(data.get(), format, sw_out.empty() ? nullptr : sw_out.c_str()));
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return static_cast<int>(f.status);
  }
  return 0;
}
