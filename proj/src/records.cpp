#include "sqcavity/records.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "sqcavity/errors.hpp"

namespace sqcavity {

namespace {

bool needs_quotes(const std::string& s) {
  return s.find_first_of(",\"\n\r") != std::string::npos;
}

std::string quote(const std::string& s) {
  if (!needs_quotes(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        in_quotes = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

void ensure_parent(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ConfigError("not a number: '" + s + "'");
  }
  return x;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  ensure_parent(path);
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  auto write_row = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << quote(row[i]);
    }
    out << '\n';
  };
  write_row(table.header);
  for (const auto& row : table.rows) write_row(row);
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
  table.header = split_csv_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto row = split_csv_line(line);
    if (row.size() != table.header.size()) {
      throw IoError(path.string() + ": row with " + std::to_string(row.size()) +
                    " fields, header has " + std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

const std::vector<std::string>& trajectory_columns() {
  static const std::vector<std::string> cols = {
      "t_ns",        "rho_ee",      "rho_e1_re",   "rho_e1_im",   "alpha_re", "alpha_im",
      "sigma_e0_re", "sigma_e0_im", "sigma_10_re", "sigma_10_im", "S_t"};
  return cols;
}

CsvTable trajectory_table(const Trajectory& traj) {
  CsvTable table{trajectory_columns(), {}};
  table.rows.reserve(traj.times.size());
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const BlochState& s = traj.states[i];
    table.rows.push_back({format_number(traj.times[i]), format_number(s.rho_ee),
                          format_number(s.rho_e1.real()), format_number(s.rho_e1.imag()),
                          format_number(s.alpha_t.real()), format_number(s.alpha_t.imag()),
                          format_number(s.sigma_e0.real()), format_number(s.sigma_e0.imag()),
                          format_number(s.sigma_10.real()), format_number(s.sigma_10.imag()),
                          format_number(traj.pulse[i])});
  }
  return table;
}

const std::vector<std::string>& run_report_columns() {
  static const std::vector<std::string> cols = {
      "theta", "alpha_final_re", "alpha_final_im", "loss_fraction", "d",
      "rho10_mag", "F_r", "F_i", "F", "rho_ee_max", "loss_consistency_rel",
      "overlap_exponent", "g_over_2pi_GHz"};
  return cols;
}

std::vector<double> run_report_values(const RunReport& r) {
  return {r.theta, r.alpha_final.real(), r.alpha_final.imag(), r.loss_fraction, r.d,
          r.rho10_mag, r.F_r, r.F_i, r.F, r.rho_ee_max, r.loss_consistency_rel,
          r.overlap_exponent, r.g_over_2pi_GHz};
}

RunReport run_report_from_values(std::span<const double> v) {
  if (v.size() != run_report_columns().size()) {
    throw ConfigError("run report needs " + std::to_string(run_report_columns().size()) +
                      " values, got " + std::to_string(v.size()));
  }
  RunReport r;
  r.theta = v[0];
  r.alpha_final = {v[1], v[2]};
  r.loss_fraction = v[3];
  r.d = v[4];
  r.rho10_mag = v[5];
  r.F_r = v[6];
  r.F_i = v[7];
  r.F = v[8];
  r.rho_ee_max = v[9];
  r.loss_consistency_rel = v[10];
  r.overlap_exponent = v[11];
  r.g_over_2pi_GHz = v[12];
  return r;
}

nlohmann::ordered_json to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  const auto& cols = run_report_columns();
  const auto vals = run_report_values(r);
  for (std::size_t i = 0; i < cols.size(); ++i) j[cols[i]] = vals[i];
  return j;
}

RunReport run_report_from_json(const nlohmann::json& j) {
  std::vector<double> vals;
  for (const auto& col : run_report_columns()) {
    if (!j.contains(col) || !j.at(col).is_number()) {
      throw ConfigError("run report field '" + col + "' missing or not a number");
    }
    vals.push_back(j.at(col).get<double>());
  }
  return run_report_from_values(vals);
}

nlohmann::ordered_json to_json(const ApproxReport& r) {
  nlohmann::ordered_json j;
  j["rho_ee_peak"] = r.rho_ee_peak;
  j["theta_approx"] = r.theta_approx;
  j["loss_approx"] = r.loss_approx;
  j["sigma10_damping"] = r.sigma10_damping;
  return j;
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc) {
  ensure_parent(path);
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace sqcavity
