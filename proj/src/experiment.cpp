#include "sqcavity/experiment.hpp"

#include <cmath>
#include <set>

#include "sqcavity/errors.hpp"

namespace sqcavity {

namespace {

using nlohmann::json;

[[noreturn]] void section_error(const std::string& section, const std::string& key,
                                const std::string& what) {
  throw ConfigError("config field '" + section + "." + key + "': " + what);
}

void reject_unknown(const json& sec, const std::string& section, const std::set<std::string>& known) {
  for (const auto& [key, _] : sec.items()) {
    if (!known.contains(key)) section_error(section, key, "unknown field");
  }
}

double number_in(const json& sec, const std::string& section, const std::string& key) {
  const json& v = sec.at(key);
  if (!v.is_number() || !std::isfinite(v.get<double>())) section_error(section, key, "expected a finite number");
  return v.get<double>();
}

std::vector<double> numbers_in(const json& sec, const std::string& section, const std::string& key) {
  const json& v = sec.at(key);
  if (!v.is_array()) section_error(section, key, "expected an array of numbers");
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number() || !std::isfinite(x.get<double>())) section_error(section, key, "expected finite numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

SweepSpec sweep_spec_from(const RunConfig& cfg, int figure, const std::optional<std::string>& grid_override) {
  SweepSpec spec;
  spec.parameter = parameter_for_figure(figure);
  spec.base = cfg.params;
  spec.settings = cfg.settings;
  reject_unknown(cfg.sweep, "sweep", {"grid"});
  if (grid_override) {
    spec.grid = parse_grid(*grid_override);
  } else if (cfg.sweep.contains("grid")) {
    const json& g = cfg.sweep.at("grid");
    spec.grid = g.is_string() ? parse_grid(g.get<std::string>()) : numbers_in(cfg.sweep, "sweep", "grid");
  } else {
    spec.grid = default_grid(spec.parameter);
  }
  spec.validate();
  return spec;
}

PhaseMatchSpec phase_match_spec_from(const RunConfig& cfg) {
  const json& sec = cfg.phase_match;
  const std::string name = "phase_match";
  reject_unknown(sec, name,
                 {"theta_targets", "r_values", "g_lo_over_2pi_GHz", "g_hi_over_2pi_GHz", "rel_tol"});
  PhaseMatchSpec spec;
  spec.base = cfg.params;
  spec.settings = cfg.settings;
  spec.theta_targets = sec.contains("theta_targets") ? numbers_in(sec, name, "theta_targets")
                                                     : default_theta_targets();
  if (sec.contains("r_values")) spec.r_values = numbers_in(sec, name, "r_values");
  if (sec.contains("g_lo_over_2pi_GHz")) spec.g_lo = from_ghz_over_2pi(number_in(sec, name, "g_lo_over_2pi_GHz"));
  if (sec.contains("g_hi_over_2pi_GHz")) spec.g_hi = from_ghz_over_2pi(number_in(sec, name, "g_hi_over_2pi_GHz"));
  if (sec.contains("rel_tol")) spec.rel_tol = number_in(sec, name, "rel_tol");
  spec.validate();
  return spec;
}

}  // namespace sqcavity
