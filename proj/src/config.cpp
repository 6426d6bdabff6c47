#include "oamem/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "oamem/error.hpp"

namespace oamem::config {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr std::array<std::string_view, 15> kKeys = {
    "preset",  "frequency_units", "g",     "n_c",         "kappa",
    "gamma_m", "alpha",           "N_m",   "omega_m",     "temperature_k",
    "gamma",   "p_max",           "p_prime_max", "gamma_lo", "gamma_hi"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ConfigError("field '" + std::string(key) + "': '" + std::string(text) +
                          "' is not a finite number",
                      0, std::string(key));
  }
  return value;
}

int parse_int(std::string_view key, std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("field '" + std::string(key) + "': '" + std::string(text) +
                          "' is not an integer",
                      0, std::string(key));
  }
  return value;
}

bool parse_units(std::string_view text) {
  if (text == "hz" || text == "Hz") return false;
  if (text == "rad/s" || text == "rad_per_s") return true;
  throw ConfigError("field 'frequency_units': expected hz or rad/s, got '" +
                        std::string(text) + "'",
                    0, "frequency_units");
}

ConfigError with_line(const ConfigError& e, int line) {
  std::string what = e.what();
  if (line > 0) what = "line " + std::to_string(line) + ": " + what;
  return ConfigError(what, line, e.field());
}

void require(bool ok, const char* field, const char* rule) {
  if (!ok) {
    throw ConfigError(std::string("field '") + field + "': " + rule, 0, field);
  }
}

}  // namespace

std::vector<std::string> preset_names() { return {"fig5-caption", "body-text"}; }

RunConfig preset(std::string_view name) {
  RunConfig cfg;
  cfg.g = kTwoPi * 0.2;
  cfg.kappa = kTwoPi * 50e3;
  cfg.gamma_m = kTwoPi * 50e3;
  cfg.alpha = 1.0;
  cfg.gamma = 0.1;
  if (name == "fig5-caption") {
    cfg.preset = "fig5-caption";
    cfg.n_c = 2e18;
    cfg.temperature_k = 1.0;
  } else if (name == "body-text") {
    cfg.preset = "body-text";
    cfg.n_c = 1e18;
    cfg.temperature_k = 20e-3;
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'", 0, "preset");
  }
  return cfg;
}

RunConfig defaults() { return preset(kDefaultPreset); }

void set(RunConfig& cfg, std::string_view key, std::string_view value, bool rad_per_sec) {
  const double rate_scale = rad_per_sec ? 1.0 : kTwoPi;
  auto rate = [&] { return parse_double(key, value) * rate_scale; };
  if (key == "preset") {
    auto warnings = std::move(cfg.warnings);
    cfg = preset(value);
    cfg.warnings = std::move(warnings);
  } else if (key == "frequency_units") {
    parse_units(value);
  } else if (key == "g") {
    cfg.g = rate();
  } else if (key == "n_c") {
    cfg.n_c = parse_double(key, value);
  } else if (key == "kappa") {
    cfg.kappa = rate();
  } else if (key == "gamma_m") {
    cfg.gamma_m = rate();
  } else if (key == "alpha") {
    cfg.alpha = parse_double(key, value);
  } else if (key == "N_m") {
    cfg.N_m = parse_double(key, value);
  } else if (key == "omega_m") {
    cfg.omega_m = rate();
  } else if (key == "temperature_k") {
    cfg.temperature_k = parse_double(key, value);
  } else if (key == "gamma") {
    cfg.gamma = parse_double(key, value);
  } else if (key == "p_max") {
    cfg.bounds.p_max = parse_int(key, value);
  } else if (key == "p_prime_max") {
    cfg.bounds.p_prime_max = parse_int(key, value);
  } else if (key == "gamma_lo") {
    cfg.bounds.gamma_lo = parse_double(key, value);
  } else if (key == "gamma_hi") {
    cfg.bounds.gamma_hi = parse_double(key, value);
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'", 0, std::string(key));
  }
}

void validate(const RunConfig& cfg) {
  require(cfg.g > 0.0, "g", "must be positive");
  require(cfg.n_c > 0.0, "n_c", "must be positive");
  require(cfg.kappa > 0.0, "kappa", "must be positive");
  require(cfg.gamma_m > 0.0, "gamma_m", "must be positive");
  require(cfg.alpha >= 0.0, "alpha", "must be >= 0");
  require(!cfg.N_m || *cfg.N_m >= 0.0, "N_m", "must be >= 0");
  require(!cfg.omega_m || *cfg.omega_m > 0.0, "omega_m", "must be positive");
  require(!cfg.temperature_k || *cfg.temperature_k >= 0.0, "temperature_k",
          "must be >= 0");
  require(cfg.gamma > 0.0, "gamma", "must be positive");
  require(cfg.bounds.p_max >= 0, "p_max", "must be >= 0");
  require(cfg.bounds.p_prime_max >= 0, "p_prime_max", "must be >= 0");
  require(cfg.bounds.gamma_lo > 0.0, "gamma_lo", "must be positive");
  require(cfg.bounds.gamma_hi > cfg.bounds.gamma_lo, "gamma_hi",
          "must exceed gamma_lo");
}

RunConfig parse(std::string_view text, RunConfig base) {
  struct Entry {
    std::string value;
    int line;
  };
  std::map<std::string, Entry, std::less<>> entries;
  std::vector<std::string> order;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash_pos = line.find('#'); hash_pos != std::string_view::npos) {
      line = line.substr(0, hash_pos);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'",
                        line_no);
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'",
                        line_no, key);
    }
    if (value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + key +
                            "' has no value",
                        line_no, key);
    }
    if (entries.contains(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + key +
                            "' repeated (first on line " +
                            std::to_string(entries.at(key).line) + ")",
                        line_no, key);
    }
    entries.emplace(key, Entry{value, line_no});
    order.push_back(key);
    if (end == text.size()) break;
  }

  RunConfig cfg = std::move(base);
  auto apply = [&](const std::string& key, bool rad_per_sec) {
    const Entry& e = entries.at(key);
    try {
      set(cfg, key, e.value, rad_per_sec);
    } catch (const ConfigError& err) {
      throw with_line(err, e.line);
    }
  };
  if (entries.contains("preset")) apply("preset", false);
  bool rad_per_sec = false;
  if (auto it = entries.find("frequency_units"); it != entries.end()) {
    try {
      rad_per_sec = parse_units(it->second.value);
    } catch (const ConfigError& err) {
      throw with_line(err, it->second.line);
    }
  }
  for (const auto& key : order) {
    if (key == "preset" || key == "frequency_units") continue;
    apply(key, rad_per_sec);
  }
  try {
    validate(cfg);
  } catch (const ConfigError& err) {
    auto it = entries.find(err.field());
    throw with_line(err, it == entries.end() ? 0 : it->second.line);
  }
  return cfg;
}

RunConfig load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    RunConfig cfg = defaults();
    cfg.warnings.push_back("config file '" + path.string() +
                           "' not found; using preset " + std::string(kDefaultPreset));
    return cfg;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse(buffer.str());
  } catch (const ConfigError& err) {
    throw ConfigError(path.string() + ": " + err.what(), err.line(), err.field());
  }
}

std::optional<std::filesystem::path> resolve_path(
    const std::optional<std::filesystem::path>& explicit_path) {
  if (explicit_path) return explicit_path;
  if (const char* env = std::getenv(std::string(kEnvVar).c_str()); env && *env) {
    return std::filesystem::path(env);
  }
  return std::nullopt;
}

TransferParams transfer_params(const RunConfig& cfg) {
  TransferParams params;
  params.g = cfg.g;
  params.n_c = cfg.n_c;
  params.kappa = cfg.kappa;
  params.gamma_m = cfg.gamma_m;
  params.alpha = cfg.alpha;
  if (cfg.N_m) {
    params.N_m = *cfg.N_m;
  } else if (cfg.omega_m && cfg.temperature_k) {
    params.N_m = transfer::bose_occupation(*cfg.omega_m, *cfg.temperature_k);
  } else {
    throw ArgumentError(
        "environmental phonon number unavailable: set N_m, or omega_m together with "
        "temperature_k (the mechanical frequency is not assumed)");
  }
  validate(params);
  return params;
}

std::string canonical_text(const RunConfig& cfg) {
  std::string out;
  auto put = [&](const char* key, std::optional<double> v) {
    char buf[64];
    if (v) {
      std::snprintf(buf, sizeof buf, "%.17g", *v);
    } else {
      std::snprintf(buf, sizeof buf, "unset");
    }
    out += key;
    out += " = ";
    out += buf;
    out += '\n';
  };
  out += "preset = " + cfg.preset + "\n";
  out += "frequency_units = rad/s\n";
  put("g", cfg.g);
  put("n_c", cfg.n_c);
  put("kappa", cfg.kappa);
  put("gamma_m", cfg.gamma_m);
  put("alpha", cfg.alpha);
  put("N_m", cfg.N_m);
  put("omega_m", cfg.omega_m);
  put("temperature_k", cfg.temperature_k);
  put("gamma", cfg.gamma);
  out += "p_max = " + std::to_string(cfg.bounds.p_max) + "\n";
  out += "p_prime_max = " + std::to_string(cfg.bounds.p_prime_max) + "\n";
  put("gamma_lo", cfg.bounds.gamma_lo);
  put("gamma_hi", cfg.bounds.gamma_hi);
  return out;
}

std::string hash(const RunConfig& cfg) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : canonical_text(cfg)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace oamem::config
