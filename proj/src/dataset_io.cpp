#include <charconv>
#include <cmath>
#include <cstdio>
#include <json.hpp>

#include "oamem/error.hpp"
#include "oamem/sweep.hpp"
#include "oamem/transfer.hpp"

namespace oamem::dataset {

namespace {

using Json = nlohmann::ordered_json;

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

std::string quoted(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (i) out += ';';
    out += flags[i];
  }
  return out;
}

std::vector<std::string> split_flags(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (!text.empty() && pos <= text.size()) {
    const auto end = std::min(text.find(';', pos), text.size());
    out.emplace_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return out;
}

// One CSV record; handles quoted fields with doubled quotes.
std::vector<std::string> split_record(std::string_view line, int line_no) {
  std::vector<std::string> fields(1);
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (in_quotes) {
    throw ArgumentError("csv line " + std::to_string(line_no) + ": unterminated quote");
  }
  return fields;
}

double to_real(const std::string& s, int line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ArgumentError("csv line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
  return v;
}

int to_int(const std::string& s, int line_no) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ArgumentError("csv line " + std::to_string(line_no) + ": bad integer '" + s + "'");
  }
  return v;
}

Json optional_real(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> read_optional(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

std::string to_csv(const Dataset& data) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const DatasetRow& row : data.rows) {
    out += quoted(row.series);
    out += ',' + std::to_string(row.l);
    out += ',' + std::to_string(row.p);
    out += ',' + std::to_string(row.p_prime);
    out += ',' + real(row.gamma);
    out += ',' + real(row.xi);
    out += ',' + (row.n ? real(*row.n) : std::string());
    out += ',' + (row.lambda ? real(*row.lambda) : std::string());
    out += ',' + (row.fidelity ? real(*row.fidelity) : std::string());
    out += ',' + quoted(join_flags(row.flags));
    out += '\n';
  }
  return out;
}

std::vector<DatasetRow> rows_from_csv(std::string_view text) {
  std::vector<DatasetRow> rows;
  std::size_t pos = 0;
  int line_no = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header_seen) {
      if (line != kCsvHeader) {
        throw ArgumentError("csv: unexpected header '" + std::string(line) + "'");
      }
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    const auto f = split_record(line, line_no);
    if (f.size() != 10) {
      throw ArgumentError("csv line " + std::to_string(line_no) + ": expected 10 fields, got " +
                          std::to_string(f.size()));
    }
    DatasetRow row;
    row.series = f[0];
    row.l = to_int(f[1], line_no);
    row.p = to_int(f[2], line_no);
    row.p_prime = to_int(f[3], line_no);
    row.gamma = to_real(f[4], line_no);
    row.xi = to_real(f[5], line_no);
    if (!f[6].empty()) row.n = to_real(f[6], line_no);
    if (!f[7].empty()) row.lambda = to_real(f[7], line_no);
    if (!f[8].empty()) row.fidelity = to_real(f[8], line_no);
    row.flags = split_flags(f[9]);
    rows.push_back(std::move(row));
  }
  if (!header_seen) throw ArgumentError("csv: empty input");
  return rows;
}

std::string to_json(const Dataset& data) {
  const DatasetMetadata& m = data.metadata;
  Json meta;
  meta["tool"] = "oamem";
  meta["version"] = m.tool_version;
  meta["figure"] = std::string(to_string(m.figure));
  meta["gamma"] = m.gamma;
  meta["bounds"] = {{"p_max", m.bounds.p_max},
                    {"p_prime_max", m.bounds.p_prime_max},
                    {"gamma_lo", m.bounds.gamma_lo},
                    {"gamma_hi", m.bounds.gamma_hi}};
  if (m.transfer) {
    meta["transfer"] = {{"g_rad_per_s", m.transfer->g},
                        {"n_c", m.transfer->n_c},
                        {"kappa_rad_per_s", m.transfer->kappa},
                        {"gamma_m_rad_per_s", m.transfer->gamma_m},
                        {"N_m", m.transfer->N_m},
                        {"alpha", m.transfer->alpha}};
  } else {
    meta["transfer"] = nullptr;
  }
  meta["config_hash"] = m.config_hash;
  meta["constants"] = {{"hbar_J_s", constants::hbar},
                       {"k_B_J_per_K", constants::k_boltzmann},
                       {"source", "CODATA 2018"}};
  meta["notes"] = m.notes;

  Json rows = Json::array();
  for (const DatasetRow& row : data.rows) {
    rows.push_back({{"series", row.series},
                    {"l", row.l},
                    {"p", row.p},
                    {"p_prime", row.p_prime},
                    {"gamma", row.gamma},
                    {"xi", row.xi},
                    {"n", optional_real(row.n)},
                    {"lambda", optional_real(row.lambda)},
                    {"fidelity", optional_real(row.fidelity)},
                    {"flags", row.flags}});
  }
  Json doc;
  doc["metadata"] = std::move(meta);
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::vector<DatasetRow> rows_from_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ArgumentError(std::string("json: ") + e.what());
  }
  std::vector<DatasetRow> rows;
  try {
    for (const Json& j : doc.at("rows")) {
      DatasetRow row;
      row.series = j.at("series").get<std::string>();
      row.l = j.at("l").get<int>();
      row.p = j.at("p").get<int>();
      row.p_prime = j.at("p_prime").get<int>();
      row.gamma = j.at("gamma").get<double>();
      row.xi = j.at("xi").get<double>();
      row.n = read_optional(j.at("n"));
      row.lambda = read_optional(j.at("lambda"));
      row.fidelity = read_optional(j.at("fidelity"));
      row.flags = j.at("flags").get<std::vector<std::string>>();
      rows.push_back(std::move(row));
    }
  } catch (const Json::exception& e) {
    throw ArgumentError(std::string("json: ") + e.what());
  }
  return rows;
}

std::string format(const Dataset& data, OutputFormat format) {
  return format == OutputFormat::json ? to_json(data) : to_csv(data);
}

}  // namespace oamem::dataset
