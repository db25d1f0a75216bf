#include "sqcavity/config.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <string>

#include "sqcavity/errors.hpp"
#include "sqcavity/presets.hpp"

namespace sqcavity {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

double number_at(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_number()) field_error(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) field_error(key, "must be finite");
  return x;
}

std::optional<double> optional_number(const json& doc, const std::string& key) {
  if (!doc.contains(key)) return std::nullopt;
  return number_at(doc, key);
}

// Number or [re, im].
std::optional<cplx> optional_complex(const json& doc, const std::string& key) {
  if (!doc.contains(key)) return std::nullopt;
  const json& v = doc.at(key);
  if (v.is_number()) return cplx{number_at(doc, key), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    const cplx z{v[0].get<double>(), v[1].get<double>()};
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) field_error(key, "must be finite");
    return z;
  }
  field_error(key, "expected a number or a [re, im] pair");
}

// Reads <name>_over_2pi_GHz or <name>_over_2pi_MHz, returning rad/ns.
std::optional<double> optional_rate(const json& doc, const std::string& name) {
  const std::string ghz = name + "_over_2pi_GHz";
  const std::string mhz = name + "_over_2pi_MHz";
  const bool has_ghz = doc.contains(ghz);
  const bool has_mhz = doc.contains(mhz);
  if (has_ghz && has_mhz) field_error(ghz, "given together with " + mhz);
  if (has_ghz) return from_ghz_over_2pi(number_at(doc, ghz));
  if (has_mhz) return from_mhz_over_2pi(number_at(doc, mhz));
  return std::nullopt;
}

double required_rate(const json& doc, const std::string& name) {
  auto v = optional_rate(doc, name);
  if (!v) field_error(name + "_over_2pi_GHz", "missing (or give " + name + "_over_2pi_MHz)");
  return *v;
}

const std::set<std::string>& known_fields() {
  static const std::set<std::string> fields = [] {
    std::set<std::string> f = {"alpha", "r", "phi", "sigma_ns", "rho11_0", "rho10_0",
                               "rtol", "atol", "window_sigmas", "samples", "sweep",
                               "phase_match", "description"};
    for (const char* name : {"g", "Gamma", "kappa", "gamma", "Omega", "Delta"}) {
      f.insert(std::string(name) + "_over_2pi_GHz");
      f.insert(std::string(name) + "_over_2pi_MHz");
    }
    return f;
  }();
  return fields;
}

}  // namespace

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (!known_fields().contains(key)) field_error(key, "unknown field");
  }
  for (const char* key : {"alpha", "r", "sigma_ns"}) {
    if (!doc.contains(key)) field_error(key, "missing");
  }

  RunConfig cfg;
  SystemParams& p = cfg.params;
  p.alpha = *optional_complex(doc, "alpha");
  const double r = number_at(doc, "r");
  if (r < 0.0) field_error("r", "must be >= 0");
  const double phi = optional_number(doc, "phi").value_or(presets::kDefaultSqueezePhase);
  p.squeeze = make_squeeze(r, phi);
  p.g = required_rate(doc, "g");
  p.Gamma = required_rate(doc, "Gamma");
  p.kappa = required_rate(doc, "kappa");
  p.gamma = required_rate(doc, "gamma");
  p.Omega = required_rate(doc, "Omega");
  p.Delta = optional_rate(doc, "Delta").value_or(0.0);
  p.sigma = number_at(doc, "sigma_ns");
  p.rho11_0 = optional_number(doc, "rho11_0").value_or(0.5);
  p.rho00_0 = 1.0 - p.rho11_0;
  p.rho10_0 = optional_complex(doc, "rho10_0").value_or(cplx{0.5, 0.0});

  IntegratorSettings& s = cfg.settings;
  s.rtol = optional_number(doc, "rtol").value_or(s.rtol);
  s.atol = optional_number(doc, "atol").value_or(s.atol);
  s.window_sigmas = optional_number(doc, "window_sigmas").value_or(s.window_sigmas);
  if (doc.contains("samples")) {
    const json& v = doc.at("samples");
    if (!v.is_number_integer() || v.get<long long>() < 2) field_error("samples", "expected an integer >= 2");
    s.samples = v.get<std::size_t>();
  }

  if (doc.contains("sweep")) {
    if (!doc.at("sweep").is_object()) field_error("sweep", "expected an object");
    cfg.sweep = doc.at("sweep");
  }
  if (doc.contains("phase_match")) {
    if (!doc.at("phase_match").is_object()) field_error("phase_match", "expected an object");
    cfg.phase_match = doc.at("phase_match");
  }

  p.validate();
  s.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  try {
    return parse_config(doc);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
  const SystemParams& p = cfg.params;
  nlohmann::ordered_json j;
  j["alpha"] = p.alpha.imag() == 0.0 ? json(p.alpha.real()) : json::array({p.alpha.real(), p.alpha.imag()});
  j["r"] = p.squeeze.r;
  j["phi"] = p.squeeze.phi;
  j["g_over_2pi_GHz"] = to_ghz_over_2pi(p.g);
  j["Gamma_over_2pi_MHz"] = to_ghz_over_2pi(p.Gamma) * 1e3;
  j["kappa_over_2pi_GHz"] = to_ghz_over_2pi(p.kappa);
  j["gamma_over_2pi_GHz"] = to_ghz_over_2pi(p.gamma);
  j["sigma_ns"] = p.sigma;
  j["Omega_over_2pi_GHz"] = to_ghz_over_2pi(p.Omega);
  j["Delta_over_2pi_GHz"] = to_ghz_over_2pi(p.Delta);
  j["rho11_0"] = p.rho11_0;
  j["rho10_0"] = p.rho10_0.imag() == 0.0 ? json(p.rho10_0.real())
                                         : json::array({p.rho10_0.real(), p.rho10_0.imag()});
  j["rtol"] = cfg.settings.rtol;
  j["atol"] = cfg.settings.atol;
  j["window_sigmas"] = cfg.settings.window_sigmas;
  j["samples"] = cfg.settings.samples;
  return j;
}

}  // namespace sqcavity
