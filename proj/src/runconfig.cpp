#include "deltaineff/runconfig.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "deltaineff/errors.hpp"
#include "deltaineff/fit.hpp"
#include "deltaineff/regularized.hpp"
#include "deltaineff/spectral.hpp"
#include "deltaineff/specfun.hpp"
#include "deltaineff/variational.hpp"
#include "deltaineff/version.hpp"
#include "deltaineff/wavefn.hpp"
#include "deltaineff/wellbarrier.hpp"

namespace deltaineff::cli {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("parameter '" + key + "': expected a number, got '" +
                      value + "'");
  }
}

std::size_t parse_size(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  if (!(v >= 0.0) || v != std::floor(v) || v > 9e15)
    throw ConfigError("parameter '" + key + "': expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) items.push_back(trim(item));
  return items;
}

class Params {
 public:
  Params(const RunConfig& config, std::set<std::string> allowed)
      : params_(config.params), allowed_(std::move(allowed)) {
    for (const auto& [key, value] : params_)
      if (!allowed_.count(key))
        throw ConfigError("unknown parameter '" + key + "' for command '" +
                          config.command + "'");
  }

  bool has(const std::string& key) const { return params_.count(key) > 0; }

  const std::string& raw(const std::string& key) const {
    auto it = params_.find(key);
    if (it == params_.end())
      throw ConfigError("missing required parameter '" + key + "'");
    return it->second;
  }

  double number(const std::string& key) const {
    return parse_double(key, raw(key));
  }
  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }
  std::size_t size(const std::string& key) const {
    return parse_size(key, raw(key));
  }
  std::size_t size_or(const std::string& key, std::size_t fallback) const {
    return has(key) ? size(key) : fallback;
  }
  std::vector<double> number_list(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : split_list(raw(key)))
      out.push_back(parse_double(key, item));
    if (out.empty()) throw ConfigError("parameter '" + key + "': empty list");
    return out;
  }
  std::vector<std::size_t> size_list(const std::string& key) const {
    std::vector<std::size_t> out;
    for (const auto& item : split_list(raw(key)))
      out.push_back(parse_size(key, item));
    if (out.empty()) throw ConfigError("parameter '" + key + "': empty list");
    return out;
  }

  /// g parameter: a finite number or the literal "hardcore". g = 0 is legal
  /// only where the caller special-cases it.
  bool is_hardcore(const std::string& key) const { return raw(key) == "hardcore"; }
  Coupling coupling(const std::string& key) const {
    if (is_hardcore(key)) return Coupling::hard_core();
    return Coupling::finite(number(key));
  }

 private:
  std::map<std::string, std::string> params_;
  std::set<std::string> allowed_;
};

/// Index-parallel map; results land in input order, so output never depends
/// on scheduling.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(count));
  const std::size_t chunk = (count + n - 1) / n;
  for (unsigned t = 0; t < n; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(begin + chunk, count);
    if (begin < end)
      pool.emplace_back([&fn, begin, end] {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      });
  }
  for (auto& th : pool) th.join();
}

// ---- command implementations ----------------------------------------------

std::vector<Artifact> cmd_shift(const RunConfig& config) {
  Params p(config, {"D", "g", "K", "n"});
  const double dim = p.number("D");
  const std::size_t K = p.size("K");
  const std::size_t n = p.size_or("n", 0);
  Table t;
  t.columns = {"D", "g", "K", "n", "shift", "energy", "residual"};
  const double g_col = p.is_hardcore("g")
                           ? std::numeric_limits<double>::infinity()
                           : p.number("g");
  if (!p.is_hardcore("g") && p.number("g") == 0.0) {
    t.rows.push_back({dim, 0.0, static_cast<double>(K), static_cast<double>(n),
                      0.0, specfun::level_energy(n, dim), 0.0});
    return {{"", std::move(t)}};
  }
  const auto problem =
      spectral::SpectralProblem::make(dim, p.coupling("g"), K, n);
  const auto sol = spectral::solve_shift(problem);
  t.rows.push_back({dim, g_col, static_cast<double>(K), static_cast<double>(n),
                    sol.shift, sol.energy, sol.residual});
  return {{"", std::move(t)}};
}

std::vector<Artifact> cmd_sweep(const RunConfig& config) {
  Params p(config, {"D", "g", "K", "n"});
  const double dim = p.number("D");
  const Coupling g = p.coupling("g");
  const std::vector<std::size_t> grid = p.size_list("K");
  if (p.size_or("n", 0) != 0)
    throw ConfigError("sweep is a ground-level command (n = 0)");
  for (std::size_t K : grid)
    (void)spectral::SpectralProblem::make(dim, g, K, 0);  // validate early
  std::vector<spectral::SweepRow> rows(grid.size());
  parallel_for(grid.size(), config.threads, [&](std::size_t i) {
    const std::size_t one[] = {grid[i]};
    rows[i] = spectral::shift_sweep(dim, g, one)[0];
  });
  Table t;
  t.columns = {"K", "shift", "predicted_shift", "ratio"};
  for (const auto& r : rows)
    t.rows.push_back(
        {static_cast<double>(r.truncation), r.shift, r.predicted, r.ratio});
  return {{"", std::move(t)}};
}

std::vector<Artifact> cmd_figure(const RunConfig& config, json& extras) {
  Params p(config, {"D", "g", "K"});
  const double dim = p.number("D");
  const Coupling g = p.coupling("g");
  std::vector<std::size_t> ks = p.size_list("K");
  if (!std::is_sorted(ks.begin(), ks.end()))
    throw ConfigError("figure truncation list must be increasing");

  std::vector<wavefn::WaveFunctionExpansion> expansions(ks.size());
  parallel_for(ks.size(), config.threads, [&](std::size_t i) {
    const auto problem = spectral::SpectralProblem::make(dim, g, ks[i], 0);
    expansions[i] = wavefn::reconstruct(spectral::solve_shift(problem), ks[i], dim);
  });

  auto build = [&](const std::vector<double>& grid) {
    Table t;
    t.columns.push_back("r");
    for (std::size_t K : ks) t.columns.push_back("psi_K" + std::to_string(K));
    t.columns.push_back("psi_unperturbed");
    std::vector<std::vector<double>> vals(expansions.size());
    parallel_for(expansions.size(), config.threads, [&](std::size_t i) {
      vals[i] = wavefn::evaluate(expansions[i], grid);
    });
    for (std::size_t row = 0; row < grid.size(); ++row) {
      std::vector<double> cells;
      cells.push_back(grid[row]);
      for (const auto& v : vals) cells.push_back(v[row]);
      cells.push_back(specfun::radial_eigenfunction(0, dim, grid[row]));
      t.rows.push_back(std::move(cells));
    }
    return t;
  };

  const std::vector<double> main_grid = wavefn::figure_grid();
  const std::vector<double> inset_grid = wavefn::figure_inset_grid();
  std::vector<Artifact> artifacts;
  artifacts.push_back({"", build(main_grid)});
  artifacts.push_back({"inset", build(inset_grid)});

  // Reported (not asserted): width of the region where the largest-K curve
  // still deviates from the unperturbed one by > 5% of its origin value.
  const auto& last = expansions.back();
  const double scale = specfun::radial_eigenfunction(0, dim, 0.0);
  double width = 0.0;
  for (double r : inset_grid) {
    const double dev = std::abs(wavefn::evaluate_at(last, r) -
                                specfun::radial_eigenfunction(0, dim, r));
    if (dev > 0.05 * scale) width = r;
  }
  extras["origin_layer_width_estimate"] = width;
  return artifacts;
}

std::vector<Artifact> cmd_asymptotics(const RunConfig& config) {
  Params p(config, {"D", "K"});
  const double dim = p.number("D");
  Table t;
  t.columns = {"K", "predicted_E0"};
  for (std::size_t K : p.size_list("K"))
    t.rows.push_back(
        {static_cast<double>(K), spectral::asymptotic_law(K, dim)});
  return {{"", std::move(t)}};
}

std::vector<Artifact> cmd_pt(const RunConfig& config) {
  Params p(config, {"D", "g", "n", "K"});
  const double dim = p.number("D");
  const double g = p.number("g");
  const std::size_t n = p.size_or("n", 0);
  const std::vector<std::size_t> ks = p.size_list("K");
  const double first = spectral::pt_first_order(n, g, dim);
  std::vector<double> second(ks.size());
  parallel_for(ks.size(), config.threads, [&](std::size_t i) {
    second[i] = spectral::pt_second_order_partial(n, g, dim, ks[i]);
  });
  Table t;
  t.columns = {"K", "first_order", "second_order_partial"};
  for (std::size_t i = 0; i < ks.size(); ++i)
    t.rows.push_back({static_cast<double>(ks[i]), first, second[i]});
  return {{"", std::move(t)}};
}

std::vector<Artifact> cmd_regularized(const RunConfig& config) {
  Params p(config, {"D", "g", "epsilon", "K"});
  const auto rows = regularized::double_limit_study(
      p.number("D"), p.number("g"), p.number_list("epsilon"), p.size_list("K"));
  Table t;
  t.columns = {"epsilon", "K", "E0"};
  for (const auto& r : rows)
    t.rows.push_back(
        {r.width, static_cast<double>(r.truncation), r.ground_energy});
  return {{"", std::move(t)}};
}

std::vector<Artifact> cmd_well(const RunConfig& config) {
  Params p(config, {"R", "g", "epsilon"});
  const double R = p.number("R");
  const Coupling g = p.coupling("g");
  const std::vector<double> eps = p.number_list("epsilon");
  Table t;
  t.columns = {"epsilon",       "E",    "E_hardcore",
               "E_unperturbed", "psi0", "predicted_psi0"};
  std::vector<std::vector<double>> rows(eps.size());
  parallel_for(eps.size(), config.threads, [&](std::size_t i) {
    const auto sol = wellbarrier::solve_well(wellbarrier::WellModel::make(R, eps[i], g));
    double psi0 = 0.0, predicted = 0.0;
    if (!g.is_hard_core()) {
      const double one[] = {eps[i]};
      const auto origin = wellbarrier::origin_suppression(R, g.value(), one)[0];
      psi0 = origin.psi_origin;
      predicted = origin.predicted;
    }
    const double pi_sq = std::numbers::pi * std::numbers::pi;
    rows[i] = {eps[i],
               sol.energy,
               pi_sq / ((R - eps[i]) * (R - eps[i])),
               pi_sq / (R * R),
               psi0,
               predicted};
  });
  t.rows = std::move(rows);
  return {{"", std::move(t)}};
}

double excess_slope(const std::vector<double>& bs,
                    const std::vector<variational::VariationalEstimate>& est) {
  if (bs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    lx.push_back(std::log(bs[i]));
    ly.push_back(std::log(est[i].correction / est[i].norm));
  }
  return fit_line(lx, ly).slope;
}

Table estimates_table(const std::vector<double>& bs,
                      const std::vector<variational::VariationalEstimate>& est) {
  Table t;
  t.columns = {"b", "correction", "stderr", "norm", "fitted_slope"};
  const double slope = excess_slope(bs, est);
  for (std::size_t i = 0; i < bs.size(); ++i)
    t.rows.push_back(
        {bs[i], est[i].correction, est[i].stat_error, est[i].norm, slope});
  return t;
}

std::vector<Artifact> cmd_variational(const RunConfig& config) {
  Params p(config, {"D", "b"});
  const double dim = p.number("D");
  const std::vector<double> bs = p.number_list("b");
  std::vector<variational::VariationalEstimate> est(bs.size());
  parallel_for(bs.size(), config.threads, [&](std::size_t i) {
    est[i] = variational::two_particle_bound(dim, bs[i]);
  });
  return {{"", estimates_table(bs, est)}};
}

std::vector<Artifact> cmd_nbody(const RunConfig& config) {
  Params p(config, {"N", "D", "b", "samples", "seed"});
  const std::size_t N = p.size("N");
  const std::size_t dim = p.size("D");
  const std::vector<double> bs = p.number_list("b");
  const auto samples = static_cast<std::uint64_t>(p.size("samples"));
  const auto seed = static_cast<std::uint64_t>(p.size_or("seed", 1));
  variational::McOptions options;
  options.threads = config.threads;
  std::vector<variational::VariationalEstimate> est(bs.size());
  for (std::size_t i = 0; i < bs.size(); ++i)
    est[i] = variational::nbody_bound_mc(N, dim, bs[i], samples, seed, options);
  return {{"", estimates_table(bs, est)}};
}

// ---- emission --------------------------------------------------------------

std::vector<Artifact> do_execute(const RunConfig& config, json& extras) {
  if (config.command == "shift") return cmd_shift(config);
  if (config.command == "sweep") return cmd_sweep(config);
  if (config.command == "figure") return cmd_figure(config, extras);
  if (config.command == "asymptotics") return cmd_asymptotics(config);
  if (config.command == "pt") return cmd_pt(config);
  if (config.command == "regularized") return cmd_regularized(config);
  if (config.command == "well") return cmd_well(config);
  if (config.command == "variational") return cmd_variational(config);
  if (config.command == "nbody") return cmd_nbody(config);
  throw ConfigError("unknown command '" + config.command + "'");
}

void write_csv(const std::filesystem::path& path, const Table& table) {
  std::ofstream out(path, std::ios::binary);  // LF endings on every platform
  if (!out) throw ConfigError("cannot open output file " + path.string());
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << table.columns[c];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << format_full(row[c]);
    out << "\n";
  }
}

void write_json(const std::filesystem::path& path, const Table& table) {
  json j;
  j["columns"] = table.columns;
  j["rows"] = table.rows;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file " + path.string());
  out << j.dump(2) << "\n";
}

std::filesystem::path with_suffix(const std::filesystem::path& path,
                                  const std::string& suffix) {
  if (suffix.empty()) return path;
  std::filesystem::path p = path;
  const std::string ext = p.extension().string();
  p.replace_extension();
  p += "." + suffix;
  p += ext;
  return p;
}

}  // namespace

std::filesystem::path RunConfig::resolved_out() const {
  if (!out.empty()) return out;
  return command + (format == OutputFormat::csv ? ".csv" : ".json");
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  RunConfig config;

  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    // A run manifest: re-runnable as a config.
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("bad manifest: ") + e.what());
    }
    if (j.contains("command")) config.command = j["command"].get<std::string>();
    if (j.contains("params"))
      for (const auto& [key, value] : j["params"].items())
        config.params[key] = value.get<std::string>();
    if (j.contains("out")) config.out = j["out"].get<std::string>();
    if (j.contains("format")) {
      const auto f = j["format"].get<std::string>();
      if (f == "csv")
        config.format = OutputFormat::csv;
      else if (f == "json")
        config.format = OutputFormat::json;
      else
        throw ConfigError("bad format in manifest: " + f);
    }
    if (j.contains("threads")) config.threads = j["threads"].get<unsigned>();
    return config;
  }

  std::stringstream lines(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key or value");
    if (key == "command") {
      config.command = value;
    } else if (key == "out") {
      config.out = value;
    } else if (key == "format") {
      if (value == "csv")
        config.format = OutputFormat::csv;
      else if (value == "json")
        config.format = OutputFormat::json;
      else
        throw ConfigError("format must be csv or json");
    } else if (key == "threads") {
      if (value == "auto") {
        config.threads = std::max(1u, std::thread::hardware_concurrency());
      } else {
        config.threads =
            static_cast<unsigned>(parse_size("threads", value));
        if (config.threads == 0) throw ConfigError("threads must be >= 1");
      }
    } else {
      config.params[key] = value;
    }
  }
  return config;
}

std::string format_full(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", value);
  return buf;
}

std::vector<Artifact> execute(const RunConfig& config) {
  json extras;
  return do_execute(config, extras);
}

RunOutput run(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  json extras;
  const std::vector<Artifact> artifacts = do_execute(config, extras);
  const std::filesystem::path out = config.resolved_out();

  RunOutput result;
  for (const Artifact& artifact : artifacts) {
    const std::filesystem::path path = with_suffix(out, artifact.name_suffix);
    if (config.format == OutputFormat::csv)
      write_csv(path, artifact.table);
    else
      write_json(path, artifact.table);
    result.written.push_back(path);
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  json manifest;
  manifest["library_version"] = kVersion;
  manifest["command"] = config.command;
  manifest["params"] = config.params;
  manifest["out"] = out.string();
  manifest["format"] = config.format == OutputFormat::csv ? "csv" : "json";
  manifest["threads"] = config.threads;
  if (config.params.count("seed")) manifest["seed"] = config.params.at("seed");
  manifest["wall_time_seconds"] = wall;
  json names = json::array();
  for (const auto& p : result.written) names.push_back(p.string());
  manifest["artifacts"] = names;
  if (!extras.is_null()) manifest["extras"] = extras;

  std::filesystem::path manifest_path = out;
  manifest_path += ".manifest.json";
  std::ofstream mout(manifest_path, std::ios::binary);
  if (!mout)
    throw ConfigError("cannot open manifest file " + manifest_path.string());
  mout << manifest.dump(2) << "\n";
  result.written.push_back(manifest_path);
  return result;
}

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const ConfigError*>(&error)) return 2;
  if (dynamic_cast<const DomainRejection*>(&error)) return 3;
  if (dynamic_cast<const NumericalError*>(&error)) return 4;
  return 1;
}

}  // namespace deltaineff::cli
