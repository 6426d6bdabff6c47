#pragma once

// Figure dataset sweeps and their tabular CSV / JSON representations.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oamem/search.hpp"
#include "oamem/transfer.hpp"

namespace oamem {

enum class Figure { fig2, fig3, fig4a, fig4b, fig5 };
enum class OutputFormat { csv, json };

std::string_view to_string(Figure figure) noexcept;
/// Throws ArgumentError for an unknown name.
Figure parse_figure(std::string_view name);
std::string_view to_string(OutputFormat format) noexcept;
OutputFormat parse_format(std::string_view name);

struct SweepRequest {
  Figure figure = Figure::fig2;
  /// Empty selects the per-figure default (fig3: 0, 1, 3, 6; otherwise 0..9).
  std::vector<int> l_values;
  double gamma = 0.1;
  SearchBounds bounds;
  /// Required by fig4b and fig5, rejected by fig2, fig3 and fig4a.
  std::optional<TransferParams> transfer;
  OutputFormat output_format = OutputFormat::csv;
};

/// Throws ArgumentError describing the first violated rule.
void validate(const SweepRequest& request);

std::vector<int> default_l_values(Figure figure);

struct DatasetRow {
  /// "p00" (p = p' = 0), "max" (optimized over p, p') or "grid" (full grid).
  std::string series;
  int l = 0;
  int p = 0;
  int p_prime = 0;
  double gamma = 0.0;
  double xi = 0.0;
  std::optional<double> n;
  std::optional<double> lambda;
  std::optional<double> fidelity;
  /// e.g. "boundary-argmax", "negative-overlap".
  std::vector<std::string> flags;

  bool operator==(const DatasetRow&) const = default;
};

struct DatasetMetadata {
  std::string tool_version;
  Figure figure = Figure::fig2;
  double gamma = 0.0;
  SearchBounds bounds;
  std::optional<TransferParams> transfer;
  std::string config_hash;
  std::vector<std::string> notes;
};

struct Dataset {
  DatasetMetadata metadata;
  std::vector<DatasetRow> rows;
};

/// Provenance attached to a sweep's metadata.
struct SweepContext {
  std::string config_hash;
  std::vector<std::string> notes;
};

/// Rows are ordered by l (in the order given), then series, then (p, p').
Dataset run_sweep(const SweepRequest& request, const SweepContext& context = {},
                  unsigned threads = 1);

namespace dataset {

inline constexpr std::string_view kCsvHeader =
    "series,l,p,p_prime,gamma,xi,n,lambda,fidelity,flags";

/// Header plus one record per row; reals as %.17e, absent optionals empty,
/// flags joined with ';', RFC 4180 quoting where needed.
std::string to_csv(const Dataset& data);

/// {"metadata": {...}, "rows": [...]} with fixed key order.
std::string to_json(const Dataset& data);

/// Inverse of to_csv for the row records. Throws ArgumentError on malformed input.
std::vector<DatasetRow> rows_from_csv(std::string_view text);

/// Inverse of to_json for the row records.
std::vector<DatasetRow> rows_from_json(std::string_view text);

std::string format(const Dataset& data, OutputFormat format);

}  // namespace dataset
}  // namespace oamem
