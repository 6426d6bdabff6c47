#include "oamem/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>

#include "oamem/coupling.hpp"
#include "oamem/error.hpp"
#include "oamem/version.hpp"

namespace oamem {

std::string_view to_string(Figure figure) noexcept {
  switch (figure) {
    case Figure::fig2: return "fig2";
    case Figure::fig3: return "fig3";
    case Figure::fig4a: return "fig4a";
    case Figure::fig4b: return "fig4b";
    case Figure::fig5: return "fig5";
  }
  return "fig2";
}

Figure parse_figure(std::string_view name) {
  for (Figure f : {Figure::fig2, Figure::fig3, Figure::fig4a, Figure::fig4b, Figure::fig5}) {
    if (to_string(f) == name) return f;
  }
  throw ArgumentError("unknown figure '" + std::string(name) +
                      "' (expected fig2, fig3, fig4a, fig4b or fig5)");
}

std::string_view to_string(OutputFormat format) noexcept {
  return format == OutputFormat::json ? "json" : "csv";
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ArgumentError("unknown output format '" + std::string(name) +
                      "' (expected csv or json)");
}

std::vector<int> default_l_values(Figure figure) {
  if (figure == Figure::fig3) return {0, 1, 3, 6};
  std::vector<int> ls(10);
  std::iota(ls.begin(), ls.end(), 0);
  return ls;
}

void validate(const SweepRequest& request) {
  const bool needs_transfer = request.figure == Figure::fig4b || request.figure == Figure::fig5;
  if (needs_transfer && !request.transfer) {
    throw ArgumentError(std::string(to_string(request.figure)) +
                        " needs transfer parameters (including N_m)");
  }
  if (!needs_transfer && request.transfer) {
    throw ArgumentError(std::string(to_string(request.figure)) +
                        " does not take transfer parameters");
  }
  if (request.transfer) validate(*request.transfer);
  (void)WaistRatio(request.gamma);
  validate(request.bounds);
}

namespace {

void add_search_flags(DatasetRow& row, const SearchResult& result) {
  if (result.boundary_argmax) row.flags.emplace_back("boundary-argmax");
  if (result.signed_xi < 0.0) row.flags.emplace_back("negative-overlap");
}

DatasetRow p00_row(int l, double gamma) {
  DatasetRow row;
  row.series = "p00";
  row.l = l;
  row.gamma = gamma;
  row.xi = coupling::xi_analytic(l, 0, 0, WaistRatio(gamma));
  return row;
}

void attach(DatasetRow& row, const FidelityBreakdown& f) {
  row.n = f.n;
  row.lambda = f.lambda;
  row.fidelity = f.fidelity;
}

}  // namespace

Dataset run_sweep(const SweepRequest& request, const SweepContext& context, unsigned threads) {
  validate(request);
  const WaistRatio gamma(request.gamma);
  const std::vector<int> ls = request.l_values.empty() ? default_l_values(request.figure)
                                                    : request.l_values;
  Dataset out;
  out.metadata.tool_version = std::string(kVersion);
  out.metadata.figure = request.figure;
  out.metadata.gamma = request.gamma;
  out.metadata.bounds = request.bounds;
  out.metadata.transfer = request.transfer;
  out.metadata.config_hash = context.config_hash;
  out.metadata.notes = context.notes;

  for (const int l : ls) {
    switch (request.figure) {
      case Figure::fig2:
        out.rows.push_back(p00_row(l, request.gamma));
        break;
      case Figure::fig3: {
        const std::vector<double> grid = search::xi_grid(l, gamma, request.bounds, threads);
        std::size_t i = 0;
        for (int p = 0; p <= request.bounds.p_max; ++p) {
          for (int pp = 0; pp <= request.bounds.p_prime_max; ++pp) {
            DatasetRow row;
            row.series = "grid";
            row.l = l;
            row.p = p;
            row.p_prime = pp;
            row.gamma = request.gamma;
            row.xi = grid[i++];
            out.rows.push_back(std::move(row));
          }
        }
        break;
      }
      case Figure::fig4a: {
        const SearchResult r = search::max_coupling_over_pp(l, gamma, request.bounds, threads);
        DatasetRow row;
        row.series = "max";
        row.l = l;
        row.p = r.best_p;
        row.p_prime = r.best_p_prime;
        row.gamma = request.gamma;
        row.xi = r.objective;
        add_search_flags(row, r);
        out.rows.push_back(std::move(row));
        break;
      }
      case Figure::fig4b:
      case Figure::fig5: {
        if (request.figure == Figure::fig5) {
          DatasetRow base = p00_row(l, request.gamma);
          if (base.xi == 0.0) {
            base.flags.emplace_back("zero-coupling");
          } else {
            attach(base, transfer::transfer_fidelity(*request.transfer, std::abs(base.xi)));
          }
          out.rows.push_back(std::move(base));
        }
        const SearchResult r =
            search::max_fidelity_over_pp(l, gamma, *request.transfer, request.bounds, threads);
        DatasetRow row;
        row.series = "max";
        row.l = l;
        row.p = r.best_p;
        row.p_prime = r.best_p_prime;
        row.gamma = request.gamma;
        row.xi = std::abs(r.signed_xi);
        attach(row, *r.breakdown);
        add_search_flags(row, r);
        out.rows.push_back(std::move(row));
        break;
      }
    }
  }
  return out;
}

}  // namespace oamem
