#pragma once

// Flat key = value run configuration.
//
//   # comment
//   preset          = fig5-caption   # applied before any other key
//   frequency_units = hz             # hz (value is f, multiplied by 2 pi) or rad/s
//   g               = 0.2
//   n_c             = 2e18
//   kappa           = 50e3
//   gamma_m         = 50e3
//   alpha           = 1
//   N_m             = 2e4            # or omega_m together with temperature_k
//   omega_m         = 1e6
//   temperature_k   = 1
//   gamma           = 0.1
//   p_max           = 64
//   p_prime_max     = 30
//   gamma_lo        = 0.01
//   gamma_hi        = 10
//
// Unknown or repeated keys are rejected. Rates are stored in rad/s.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oamem/search.hpp"
#include "oamem/transfer.hpp"

namespace oamem {

struct RunConfig {
  std::string preset;
  double g = 0.0;        // rad/s
  double n_c = 0.0;
  double kappa = 0.0;    // rad/s
  double gamma_m = 0.0;  // rad/s
  double alpha = 0.0;
  std::optional<double> N_m;
  std::optional<double> omega_m;  // rad/s
  std::optional<double> temperature_k;
  double gamma = 0.1;
  SearchBounds bounds;
  /// Non-fatal diagnostics gathered while loading (missing file, ...).
  std::vector<std::string> warnings;
};

namespace config {

inline constexpr std::string_view kEnvVar = "OAMEM_CONFIG";
inline constexpr std::string_view kDefaultPreset = "fig5-caption";

std::vector<std::string> preset_names();

/// Throws ConfigError for an unknown preset name.
RunConfig preset(std::string_view name);

/// The default preset.
RunConfig defaults();

/// Overlays `text` onto `base`. Throws ConfigError with the offending line
/// for syntax errors and unknown keys, and naming the field for invalid values.
RunConfig parse(std::string_view text, RunConfig base = defaults());

/// Parses the file at `path`. A missing file yields defaults plus a warning.
RunConfig load(const std::filesystem::path& path);

/// Explicit path if given, else $OAMEM_CONFIG, else none.
std::optional<std::filesystem::path> resolve_path(
    const std::optional<std::filesystem::path>& explicit_path);

/// Sets one key as if it appeared in a file (line 0). `units` applies to rate keys.
void set(RunConfig& cfg, std::string_view key, std::string_view value,
         bool rad_per_sec = false);

/// Throws ConfigError naming the first invalid field.
void validate(const RunConfig& cfg);

/// N_m directly or from (omega_m, temperature_k). Throws ArgumentError when
/// neither is available; the mechanical frequency is never assumed.
TransferParams transfer_params(const RunConfig& cfg);

/// Canonical `key = value` listing of every resolved field (17 significant digits).
std::string canonical_text(const RunConfig& cfg);

/// FNV-1a 64 of canonical_text, as 16 hex digits.
std::string hash(const RunConfig& cfg);

}  // namespace config
}  // namespace oamem
