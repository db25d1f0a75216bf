#pragma once

// Flat-record persistence: CSV tables with a fixed header and 12
// significant digits, and JSON reports with a stable key order.

#include <filesystem>
#include <json.hpp>
#include <span>
#include <string>
#include <vector>

#include "sqcavity/approx.hpp"
#include "sqcavity/bloch.hpp"
#include "sqcavity/observables.hpp"

namespace sqcavity {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Shortest-style general format with 12 significant digits ("nan"/"inf" as is).
std::string format_number(double x);
double parse_number(const std::string& s);

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

// t_ns, rho_ee, rho_e1_re, rho_e1_im, alpha_re, alpha_im, sigma_e0_re,
// sigma_e0_im, sigma_10_re, sigma_10_im, S_t
const std::vector<std::string>& trajectory_columns();
CsvTable trajectory_table(const Trajectory& traj);

// Field names of RunReport in record order.
const std::vector<std::string>& run_report_columns();
std::vector<double> run_report_values(const RunReport& r);
RunReport run_report_from_values(std::span<const double> values);

nlohmann::ordered_json to_json(const RunReport& r);
RunReport run_report_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const ApproxReport& r);

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc);

}  // namespace sqcavity
