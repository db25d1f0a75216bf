#include "sqcavity/sweep.hpp"

#include <cmath>
#include <sstream>

#include "sqcavity/errors.hpp"
#include "sqcavity/parallel.hpp"

namespace sqcavity {

namespace {

double cosh2r(double r) { return std::cosh(2.0 * r); }  // cosh^2 r + sinh^2 r

std::size_t parse_count(const std::string& s) {
  const double n = parse_number(s);
  if (n < 1 || n != std::floor(n)) throw ConfigError("grid count must be a positive integer: " + s);
  return static_cast<std::size_t>(n);
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

std::string swept_name(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::Gamma: return "Gamma_over_2pi_GHz";
    case SweepParameter::alpha: return "alpha";
    case SweepParameter::g: return "g_over_2pi_GHz";
    case SweepParameter::r_with_g_rescale: return "r";
    case SweepParameter::sigma: return "log10_sigma_over_3ns";
  }
  return "?";
}

SweepParameter parameter_for_figure(int figure) {
  switch (figure) {
    case 3: return SweepParameter::Gamma;
    case 4: return SweepParameter::alpha;
    case 5: return SweepParameter::g;
    case 6: return SweepParameter::r_with_g_rescale;
    case 7: return SweepParameter::sigma;
    default: throw ConfigError("sweep figure must be one of 3, 4, 5, 6, 7");
  }
}

std::vector<double> linear_grid(double from, double to, std::size_t count) {
  if (count == 1) return {from};
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = from + (to - from) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  grid.back() = to;
  return grid;
}

std::vector<double> log_grid(double from, double to, std::size_t count) {
  if (!(from > 0.0 && to > 0.0) && !(from < 0.0 && to < 0.0)) {
    throw ConfigError("log grid endpoints must be non-zero and share a sign");
  }
  const double sign = from > 0.0 ? 1.0 : -1.0;
  auto exps = linear_grid(std::log10(sign * from), std::log10(sign * to), count);
  for (double& e : exps) e = sign * std::pow(10.0, e);
  exps.front() = from;
  exps.back() = to;
  return exps;
}

std::vector<double> default_grid(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::Gamma: return log_grid(1e-3, 1.0, 25);
    case SweepParameter::alpha: return linear_grid(10.0, 300.0, 30);
    case SweepParameter::g: return linear_grid(0.05, 0.5, 30);
    case SweepParameter::r_with_g_rescale: return linear_grid(0.0, 2.0, 21);
    case SweepParameter::sigma: return linear_grid(0.0, 3.0, 16);
  }
  return {};
}

std::vector<double> parse_grid(std::string_view text) {
  const auto colon = split(text, ':');
  if (colon.size() == 4 && (colon[0] == "lin" || colon[0] == "log")) {
    const double a = parse_number(colon[1]);
    const double b = parse_number(colon[2]);
    const std::size_t n = parse_count(colon[3]);
    return colon[0] == "lin" ? linear_grid(a, b, n) : log_grid(a, b, n);
  }
  if (colon.size() != 1) throw ConfigError("grid must be lin:a:b:n, log:a:b:n or a comma list");
  std::vector<double> grid;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) throw ConfigError("empty value in grid list");
    grid.push_back(parse_number(item));
  }
  return grid;
}

SystemParams apply_sweep_value(SweepParameter parameter, double value, const SystemParams& base) {
  SystemParams p = base;
  switch (parameter) {
    case SweepParameter::Gamma: p.Gamma = from_ghz_over_2pi(value); break;
    case SweepParameter::alpha: p.alpha = value; break;
    case SweepParameter::g: p.g = from_ghz_over_2pi(value); break;
    case SweepParameter::r_with_g_rescale:
      p.squeeze = make_squeeze(value, base.squeeze.phi);
      p.g = base.g * cosh2r(base.squeeze.r) / cosh2r(value);
      break;
    case SweepParameter::sigma: p.sigma = 3.0 * std::pow(10.0, value); break;
  }
  return p;
}

void SweepSpec::validate() const {
  if (grid.empty()) throw ConfigError("sweep grid is empty");
  const double direction = grid.size() > 1 && grid[1] < grid[0] ? -1.0 : 1.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!((grid[i] - grid[i - 1]) * direction > 0.0)) {
      throw ConfigError("sweep grid must be strictly monotone");
    }
  }
  settings.validate();
  for (double v : grid) {
    try {
      apply_sweep_value(parameter, v, base).validate();
    } catch (const ConfigError& e) {
      std::ostringstream msg;
      msg << swept_name(parameter) << " = " << v << ": " << e.what();
      throw ConfigError(msg.str());
    }
  }
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  const std::size_t n = spec.grid.size();

  std::vector<SystemParams> points(n);
  std::vector<SystemParams> ref_keys;
  std::vector<std::size_t> ref_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    points[i] = apply_sweep_value(spec.parameter, spec.grid[i], spec.base);
    const SystemParams key = without_decay(points[i]);
    std::size_t k = 0;
    while (k < ref_keys.size() && !(ref_keys[k] == key)) ++k;
    if (k == ref_keys.size()) ref_keys.push_back(key);
    ref_of[i] = k;
  }

  std::vector<std::optional<Trajectory>> refs(ref_keys.size());
  std::vector<std::string> ref_errors(ref_keys.size());
  parallel_for(ref_keys.size(), threads, [&](std::size_t k) {
    try {
      refs[k] = integrate(ref_keys[k], spec.settings);
    } catch (const std::exception& e) {
      ref_errors[k] = std::string("reference run: ") + e.what();
    }
  });

  std::vector<SweepRow> rows(n);
  parallel_for(n, threads, [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.value = spec.grid[i];
    const std::size_t k = ref_of[i];
    if (!refs[k]) {
      row.error = ref_errors[k];
      return;
    }
    try {
      if (points[i].Gamma == 0.0) {
        row.report = make_report(*refs[k], *refs[k]);
      } else {
        row.report = make_report(integrate(points[i], spec.settings), *refs[k]);
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });
  return rows;
}

std::vector<std::string> sweep_columns() {
  std::vector<std::string> cols = {"swept_name", "swept_value"};
  const auto& report = run_report_columns();
  cols.insert(cols.end(), report.begin(), report.end());
  cols.push_back("error");
  return cols;
}

CsvTable sweep_table(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  CsvTable table{sweep_columns(), {}};
  const std::string name = swept_name(spec.parameter);
  const std::size_t n_report = run_report_columns().size();
  for (const auto& row : rows) {
    std::vector<std::string> cells = {name, format_number(row.value)};
    if (row.report) {
      for (double v : run_report_values(*row.report)) cells.push_back(format_number(v));
    } else {
      cells.insert(cells.end(), n_report, "nan");
    }
    cells.push_back(row.error);
    table.rows.push_back(std::move(cells));
  }
  return table;
}

}  // namespace sqcavity
