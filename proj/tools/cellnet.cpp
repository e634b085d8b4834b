// Batch front end: reproduces the SIR/SINR/energy figures and the
// shadowing convergence experiment as CSV tables.

#include <CLI11.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cellnet/analytic.hpp"
#include "cellnet/model.hpp"
#include "cellnet/simulate.hpp"
#include "cellnet/stats.hpp"

namespace {

using namespace cellnet;

constexpr int kExitBadConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }
double watts_to_dbm(double w) { return 10.0 * std::log10(w * 1e3); }
double linear_to_db(double v) { return 10.0 * std::log10(v); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

struct RunConfig {
  double k_per_km = 4250.0;
  double beta = 3.52;
  double sigma_db = 12.0;
  std::optional<double> lambda_per_km2;
  double cell_radius_km = 0.26;
  int n_side = 30;
  double noise_dbm = -93.0;
  double power_dbm = 58.5;
  double bandwidth_hz = 1e7;
  double c = 21.45;
  double d_watts = 354.44;
  std::uint64_t seed = 1;
  int realizations = 10;
  int samples = 10000;
  std::string pattern = "hex";
  double displacement_km = 0.0;

  double lambda() const {
    if (lambda_per_km2) return *lambda_per_km2;
    // equal-area convention: hexagonal cell area = pi R^2
    return 1.0 / (M_PI * cell_radius_km * cell_radius_km);
  }

  model::PropagationModel propagation() const {
    model::PropagationModel prop;
    prop.path_gain_k = k_per_km;
    prop.beta = beta;
    prop.noise_w = dbm_to_watts(noise_dbm);
    prop.tx_power_w = dbm_to_watts(power_dbm);
    prop.bandwidth_hz = bandwidth_hz;
    prop.power_cost_slope = c;
    prop.power_cost_offset_w = d_watts;
    return prop;
  }

  model::ShadowingSpec shadowing() const {
    return sigma_db > 0.0 ? model::ShadowingSpec::log_normal(sigma_db)
                          : model::ShadowingSpec::unit();
  }
};

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  RunConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        throw ConfigError(path + ":" + std::to_string(line_no) +
                          ": expected key = value");
      }
      continue;
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": empty key or value");
    }
    auto as_double = [&] {
      try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
      } catch (const std::exception&) {
        throw ConfigError(path + ":" + std::to_string(line_no) +
                          ": bad numeric value for " + key);
      }
    };
    if (key == "k_per_km") cfg.k_per_km = as_double();
    else if (key == "beta") cfg.beta = as_double();
    else if (key == "sigma_db") cfg.sigma_db = as_double();
    else if (key == "lambda_per_km2") cfg.lambda_per_km2 = as_double();
    else if (key == "cell_radius_km") cfg.cell_radius_km = as_double();
    else if (key == "n_side") cfg.n_side = static_cast<int>(as_double());
    else if (key == "noise_dbm") cfg.noise_dbm = as_double();
    else if (key == "power_dbm") cfg.power_dbm = as_double();
    else if (key == "bandwidth_hz") cfg.bandwidth_hz = as_double();
    else if (key == "c") cfg.c = as_double();
    else if (key == "d_watts") cfg.d_watts = as_double();
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(as_double());
    else if (key == "realizations") cfg.realizations = static_cast<int>(as_double());
    else if (key == "samples") cfg.samples = static_cast<int>(as_double());
    else if (key == "pattern") {
      if (value != "hex" && value != "poisson" && value != "perturbed-hex") {
        throw ConfigError(path + ":" + std::to_string(line_no) +
                          ": pattern must be hex | poisson | perturbed-hex");
      }
      cfg.pattern = value;
    } else if (key == "displacement_km") cfg.displacement_km = as_double();
    else {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw IoError("cannot open output file: " + tmp);
    out << content;
    if (!out) throw IoError("write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("rename failed: " + path + ": " + ec.message());
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Pattern for one realization: deterministic lattices are shared, Poisson
// patterns are redrawn per realization.
simulate::PointPattern realization_pattern(const RunConfig& cfg,
                                           const simulate::PointPattern& base,
                                           std::uint64_t stream) {
  if (cfg.pattern == "poisson") {
    simulate::Rng rng = simulate::make_stream(cfg.seed, stream);
    return simulate::poisson_pattern(cfg.lambda(), base.width_km,
                                     base.height_km, rng);
  }
  if (cfg.pattern == "perturbed-hex") {
    simulate::Rng rng = simulate::make_stream(cfg.seed, stream);
    return simulate::perturbed_hex_pattern(cfg.cell_radius_km, cfg.n_side,
                                           cfg.displacement_km, rng);
  }
  return base;
}

struct LossSample {
  double path_loss;
  double interference_factor;
};

// (L, f) pairs pooled over realizations; shadowing frozen per realization.
std::vector<LossSample> simulate_losses(const RunConfig& cfg,
                                        const model::ShadowingSpec& shadow,
                                        std::uint64_t stream_base) {
  const model::PropagationModel prop = cfg.propagation();
  const simulate::PointPattern base =
      simulate::hex_pattern(cfg.cell_radius_km, cfg.n_side);
  std::vector<std::vector<LossSample>> per_realization(cfg.realizations);
  simulate::parallel_for_index(cfg.realizations, [&](std::size_t r) {
    const std::uint64_t stream = stream_base + r;
    const simulate::PointPattern pattern =
        realization_pattern(cfg, base, stream);
    simulate::Rng rng = simulate::make_stream(cfg.seed, stream ^ 0x5151u);
    const std::vector<double> shadowing = simulate::draw_shadowing(
        shadow, prop.beta, pattern.points.size(), rng);
    std::uniform_real_distribution<double> ux(0.0, pattern.width_km);
    std::uniform_real_distribution<double> uy(0.0, pattern.height_km);
    std::vector<LossSample>& out = per_realization[r];
    out.reserve(cfg.samples);
    while (out.size() < static_cast<std::size_t>(cfg.samples)) {
      try {
        const simulate::TypicalUserSample s = simulate::typical_user_at(
            pattern, {ux(rng), uy(rng)}, prop, shadowing);
        out.push_back({s.path_loss, s.interference_factor});
      } catch (const std::domain_error&) {
      }
    }
  });
  std::vector<LossSample> pooled;
  pooled.reserve(static_cast<std::size_t>(cfg.realizations) * cfg.samples);
  for (const auto& block : per_realization) {
    pooled.insert(pooled.end(), block.begin(), block.end());
  }
  return pooled;
}

std::vector<double> sir_values(const std::vector<LossSample>& losses) {
  std::vector<double> sirs;
  sirs.reserve(losses.size());
  for (const LossSample& s : losses) {
    if (s.interference_factor > 0.0) sirs.push_back(1.0 / s.interference_factor);
  }
  return sirs;
}

std::vector<double> sinr_values(const std::vector<LossSample>& losses,
                                double noise_over_power) {
  std::vector<double> out;
  out.reserve(losses.size());
  for (const LossSample& s : losses) {
    out.push_back(1.0 /
                  (noise_over_power * s.path_loss + s.interference_factor));
  }
  return out;
}

int cmd_fig_sir(const RunConfig& cfg, const std::string& out_path) {
  const std::vector<LossSample> losses =
      simulate_losses(cfg, cfg.shadowing(), 1000);
  const stats::EmpiricalCdf hex_cdf(sir_values(losses));

  std::ostringstream csv;
  csv << "sir_db,cdf_hex_sim,cdf_poisson_analytic,cdf_explicit_eq13\n";
  for (double sir_db = -10.0; sir_db <= 40.0 + 1e-9; sir_db += 0.5) {
    const double t = db_to_linear(sir_db);
    csv << fmt(sir_db) << ',' << fmt(hex_cdf(t)) << ','
        << fmt(analytic::sir_cdf(cfg.beta, t)) << ',';
    if (t >= 1.0) csv << fmt(1.0 - analytic::sir_ccdf_explicit(cfg.beta, t));
    csv << '\n';
  }
  write_atomic(out_path, csv.str());
  return 0;
}

int cmd_fig_sinr(const RunConfig& cfg, const std::string& out_path) {
  const model::PropagationModel prop = cfg.propagation();
  const double nop = prop.noise_w / prop.tx_power_w;

  const std::vector<LossSample> hex_shadow =
      simulate_losses(cfg, cfg.shadowing(), 2000);
  const std::vector<LossSample> hex_noshadow =
      simulate_losses(cfg, model::ShadowingSpec::unit(), 3000);
  RunConfig poisson_cfg = cfg;
  poisson_cfg.pattern = "poisson";
  const std::vector<LossSample> poisson_finite =
      simulate_losses(poisson_cfg, cfg.shadowing(), 4000);

  const stats::EmpiricalCdf cdf_hex_shadow(sinr_values(hex_shadow, nop));
  const stats::EmpiricalCdf cdf_hex_noshadow(sinr_values(hex_noshadow, nop));
  const stats::EmpiricalCdf cdf_poisson_finite(sinr_values(poisson_finite, nop));

  const model::EquivalentPoisson eq =
      model::equivalent_poisson(cfg.lambda(), prop, cfg.shadowing());
  analytic::SinrLaw law;
  law.intensity_a = eq.intensity_a;
  law.beta = eq.beta;
  law.noise_over_power = nop;

  std::ostringstream csv;
  csv << "sinr_db,cdf_hex_shadow,cdf_hex_noshadow,cdf_poisson_finite,"
         "cdf_poisson_infinite,cdf_explicit_eq18\n";
  for (double sinr_db = -10.0; sinr_db <= 40.0 + 1e-9; sinr_db += 0.5) {
    const double t = db_to_linear(sinr_db);
    csv << fmt(sinr_db) << ',' << fmt(cdf_hex_shadow(t)) << ','
        << fmt(cdf_hex_noshadow(t)) << ',' << fmt(cdf_poisson_finite(t)) << ','
        << fmt(1.0 - analytic::sinr_ccdf(law, t)) << ',';
    if (t >= 1.0) csv << fmt(1.0 - analytic::sinr_ccdf_explicit(law, t));
    csv << '\n';
  }
  write_atomic(out_path, csv.str());
  return 0;
}

int cmd_fig_energy(const RunConfig& cfg, const std::vector<double>& p_grid_dbm,
                   const std::string& out_path) {
  const model::PropagationModel prop = cfg.propagation();
  const std::vector<LossSample> hex_shadow =
      simulate_losses(cfg, cfg.shadowing(), 5000);
  const std::vector<LossSample> hex_noshadow =
      simulate_losses(cfg, model::ShadowingSpec::unit(), 6000);

  const model::EquivalentPoisson eq =
      model::equivalent_poisson(cfg.lambda(), prop, cfg.shadowing());
  analytic::SinrLaw tmpl;
  tmpl.intensity_a = eq.intensity_a;
  tmpl.beta = eq.beta;

  auto simulated_ee = [&](const std::vector<LossSample>& losses, double p_w) {
    const double consumed = prop.power_cost_slope * p_w + prop.power_cost_offset_w;
    double sum = 0.0;
    for (const LossSample& s : losses) {
      const double sinr =
          1.0 / (prop.noise_w / p_w * s.path_loss + s.interference_factor);
      sum += std::log1p(sinr);
    }
    return prop.bandwidth_hz * sum / losses.size() / (std::log(2.0) * consumed);
  };

  std::ostringstream csv;
  csv << "p_dbm,ee_hex_shadow_sim,ee_hex_noshadow_sim,ee_poisson_analytic\n";
  std::vector<std::array<double, 4>> rows;
  for (double p_dbm : p_grid_dbm) {
    const double p_w = dbm_to_watts(p_dbm);
    rows.push_back({p_dbm, simulated_ee(hex_shadow, p_w),
                    simulated_ee(hex_noshadow, p_w),
                    analytic::mean_energy_efficiency(tmpl, prop, p_w)});
  }
  for (const auto& row : rows) {
    csv << fmt(row[0]) << ',' << fmt(row[1]) << ',' << fmt(row[2]) << ','
        << fmt(row[3]) << '\n';
  }
  for (int col = 1; col <= 3; ++col) {
    // grid argmax per curve, appended as a comment summary
    double best_p = rows.front()[0], best_v = rows.front()[col];
    for (const auto& row : rows) {
      if (row[col] > best_v) {
        best_v = row[col];
        best_p = row[0];
      }
    }
    static const char* names[] = {"ee_hex_shadow_sim", "ee_hex_noshadow_sim",
                                  "ee_poisson_analytic"};
    csv << "# argmax_p_dbm " << names[col - 1] << ' ' << fmt(best_p) << '\n';
  }
  write_atomic(out_path, csv.str());
  return 0;
}

int cmd_converge(const RunConfig& cfg, const std::vector<double>& sigma_db_list,
                 const std::string& out_path) {
  const simulate::PointPattern pattern =
      simulate::hex_pattern(cfg.cell_radius_km, cfg.n_side);
  stats::SweepConfig sweep_cfg;
  sweep_cfg.realizations = cfg.realizations;
  sweep_cfg.samples_per_realization = cfg.samples;
  sweep_cfg.seed = cfg.seed;
  const std::vector<stats::SweepRow> table =
      stats::convergence_sweep(pattern, cfg.propagation(), sigma_db_list,
                               sweep_cfg);
  std::ostringstream csv;
  csv << "sigma_db,pass_fraction,median_ks_d,realizations\n";
  for (const stats::SweepRow& row : table) {
    csv << fmt(row.sigma_db) << ',' << fmt(row.pass_fraction) << ','
        << fmt(row.median_statistic) << ',' << row.realizations << '\n';
  }
  write_atomic(out_path, csv.str());
  return 0;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw ConfigError("bad numeric list entry: " + item);
    }
    if (pos != item.size()) throw ConfigError("bad numeric list entry: " + item);
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty numeric list: " + text);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson/hexagonal cellular network distribution toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed_override;
  std::string sigma_list_text = "0,3,6,9,12,15,20";
  std::string p_grid_text;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key = value config file")
        ->required();
    cmd->add_option("--out", out_path, "output CSV path")->required();
    cmd->add_option("--seed", seed_override, "override the config seed");
  };
  CLI::App* fig_sir = app.add_subcommand("fig-sir", "SIR CDF table");
  CLI::App* fig_sinr = app.add_subcommand("fig-sinr", "SINR CDF table");
  CLI::App* fig_energy =
      app.add_subcommand("fig-energy", "mean energy efficiency vs power");
  CLI::App* converge =
      app.add_subcommand("converge", "shadowing convergence sweep");
  add_common(fig_sir);
  add_common(fig_sinr);
  add_common(fig_energy);
  add_common(converge);
  converge->add_option("--sigma-db", sigma_list_text,
                       "comma-separated sigma_dB list");
  fig_energy->add_option("--p-grid-dbm", p_grid_text,
                         "comma-separated power grid in dBm");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadConfig;
  }

  try {
    RunConfig cfg = load_config(config_path);
    if (seed_override) cfg.seed = *seed_override;
    if (fig_sir->parsed()) return cmd_fig_sir(cfg, out_path);
    if (fig_sinr->parsed()) return cmd_fig_sinr(cfg, out_path);
    if (fig_energy->parsed()) {
      std::vector<double> grid;
      if (p_grid_text.empty()) {
        for (double p = 30.0; p <= 80.0 + 1e-9; p += 1.0) grid.push_back(p);
      } else {
        grid = parse_list(p_grid_text);
      }
      return cmd_fig_energy(cfg, grid, out_path);
    }
    if (converge->parsed()) {
      return cmd_converge(cfg, parse_list(sigma_list_text), out_path);
    }
    return kExitBadConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  }
}
