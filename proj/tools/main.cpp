#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ionheat/analytics.hpp"
#include "ionheat/chain.hpp"
#include "ionheat/config_io.hpp"
#include "ionheat/constants.hpp"
#include "ionheat/mc.hpp"
#include "ionheat/noise.hpp"
#include "ionheat/trap.hpp"
#include "ionheat/validate.hpp"

namespace {

constexpr const char* kToolName = "ionheat";
constexpr const char* kVersion = "0.1.0";

// usage mistakes exit with code 2; everything else that fails exits with 1
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  // locale-independent, 17 significant digits (round-trip exact)
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

struct Column {
  std::string name;
  std::vector<double> values;
};

void write_csv(const std::string& path, const std::vector<Column>& columns) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t c = 0; c < columns.size(); ++c)
    out << (c ? "," : "") << columns[c].name;
  out << "\n";
  const std::size_t rows = columns.empty() ? 0 : columns.front().values.size();
  for (std::size_t rix = 0; rix < rows; ++rix) {
    for (std::size_t c = 0; c < columns.size(); ++c)
      out << (c ? "," : "") << fmt17(columns[c].values[rix]);
    out << "\n";
  }
}

void write_manifest(const std::string& out_path, const std::string& subcommand,
                    const std::vector<std::string>& command_line, const nlohmann::json& params,
                    const std::vector<std::string>& outputs) {
  nlohmann::json m;
  m["tool"] = kToolName;
  m["version"] = kVersion;
  m["subcommand"] = subcommand;
  m["command"] = command_line;
  m["parameters"] = params;
  m["outputs"] = outputs;
  std::ofstream out(out_path + ".manifest.json");
  if (!out) throw std::runtime_error("cannot write manifest for " + out_path);
  out << m.dump(2) << "\n";
}

struct GridSpec {
  double min = 0.0, max = 25.0;
  std::size_t count = 500;
};

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%zu%c", &g.min, &g.max, &g.count, &extra) != 3)
    throw UsageError("bad grid spec '" + text + "' (expected min:max:count)");
  if (!(g.min >= 0.0) || !(g.max > g.min) || g.count < 2)
    throw UsageError("bad grid spec '" + text + "' (need 0 <= min < max, count >= 2)");
  return g;
}

std::pair<double, double> parse_pair(const std::string& text) {
  double w = 0.0, r = 0.0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%lf,%lf%c", &w, &r, &extra) != 2)
    throw UsageError("bad parameter pair '" + text + "' (expected omega0T,omega0tau1)");
  if (!(w > 0.0) || !(r > 0.0)) throw UsageError("parameter pair values must be positive");
  return {w, r};
}

nlohmann::json heating_time_json(const ionheat::HeatingTime& t) {
  if (t.is_unbounded()) return "inf";
  return t.value();
}

void dump_noise_csv(const std::string& path, const ionheat::EnsembleConfig& cfg, double t_max,
                    std::uint64_t seed) {
  const double dt = cfg.dt_target;
  const std::size_t n_samples = static_cast<std::size_t>(std::llround(t_max / dt)) + 1;
  const ionheat::NoisePath noise =
      ionheat::correlated_paths(cfg.chain, cfg.gamma, cfg.omega0T, dt, n_samples, {seed, 0});
  std::vector<Column> cols;
  cols.push_back({"t", {}});
  for (int i = 1; i <= cfg.chain.n; ++i) cols.push_back({"E_" + std::to_string(i), {}});
  for (std::size_t k = 0; k < n_samples; ++k) {
    cols[0].values.push_back(dt * static_cast<double>(k));
    for (std::size_t i = 0; i < static_cast<std::size_t>(cfg.chain.n); ++i)
      cols[i + 1].values.push_back(noise.samples(i, k));
  }
  write_csv(path, cols);
}

const char* thermal_note() {
  return "tau1 = 3 c eps0 omega0 M kB / (e^2 sigma Theta^3) is an order-of-magnitude "
         "estimate for a thermal ambient field. The mercury-ion example often quoted with "
         "it (tau1 = 135 ms at 4.6 K) does not reproduce under direct evaluation of the "
         "formula, which gives approximately 17.5 K for the same trap and tau1. All values "
         "reported here are direct evaluations of the formula as written.";
}

// ---------------------------------------------------------------------------

int run_fig1(const std::string& out, const GridSpec& grid,
             const std::vector<std::pair<double, double>>& pairs, std::size_t mc_realizations,
             std::uint64_t seed, const std::optional<std::string>& dump_paths,
             const std::vector<std::string>& command_line) {
  std::vector<Column> cols;
  cols.push_back({"omega0_t", {}});
  for (std::size_t i = 0; i < grid.count; ++i)
    cols[0].values.push_back(grid.min + (grid.max - grid.min) * static_cast<double>(i) /
                                            static_cast<double>(grid.count - 1));

  for (std::size_t c = 0; c < pairs.size(); ++c) {
    const std::string label(1, static_cast<char>('a' + c));
    Column col{"F_" + label, {}};
    for (double t : cols[0].values)
      col.values.push_back(
          ionheat::fidelity_from_moments(ionheat::moments_exponential(pairs[c].first,
                                                                      pairs[c].second, t)));
    cols.push_back(std::move(col));
  }

  if (mc_realizations > 0) {
    if (grid.min != 0.0) throw UsageError("--mc requires a grid starting at 0");
    for (std::size_t c = 0; c < pairs.size(); ++c) {
      ionheat::EnsembleConfig cfg;
      cfg.chain = ionheat::build_chain(1);
      cfg.omega0T = pairs[c].first;
      cfg.omega0_tau1 = pairs[c].second;
      cfg.gamma = ionheat::Matrix(1, 1, 1.0);
      const auto est = ionheat::run_ensemble(cfg, grid.max, grid.count - 1, mc_realizations,
                                             {seed, 0});
      const std::string label(1, static_cast<char>('a' + c));
      Column mean{"F_" + label + "_mc", {1.0}};
      Column se{"F_" + label + "_mc_se", {0.0}};
      mean.values.insert(mean.values.end(), est.fidelity.begin(), est.fidelity.end());
      se.values.insert(se.values.end(), est.fidelity_se.begin(), est.fidelity_se.end());
      cols.push_back(std::move(mean));
      cols.push_back(std::move(se));
    }
  }

  write_csv(out, cols);
  if (dump_paths) {
    ionheat::EnsembleConfig cfg;
    cfg.chain = ionheat::build_chain(1);
    cfg.omega0T = pairs.front().first;
    cfg.omega0_tau1 = pairs.front().second;
    cfg.gamma = ionheat::Matrix(1, 1, 1.0);
    dump_noise_csv(*dump_paths, cfg, grid.max, seed);
  }

  nlohmann::json params;
  params["grid"] = {{"min", grid.min}, {"max", grid.max}, {"count", grid.count}};
  nlohmann::json jp = nlohmann::json::array();
  for (const auto& [w, r] : pairs) jp.push_back({{"omega0T", w}, {"omega0_tau1", r}});
  params["pairs"] = jp;
  params["mc_realizations"] = mc_realizations;
  params["seed"] = seed;
  std::vector<std::string> outputs{out};
  if (dump_paths) outputs.push_back(*dump_paths);
  write_manifest(out, "fig1", command_line, params, outputs);
  return 0;
}

int run_fig2(const std::string& out, int n_max, const std::vector<std::string>& command_line) {
  if (n_max < 1 || n_max > 20) throw UsageError("--N must be in [1, 20]");
  std::vector<Column> cols{{"N", {}}, {"tau_coherent_over_tau1", {}},
                           {"tau_incoherent_over_tau1", {}}};
  for (int n = 1; n <= n_max; ++n) {
    const ionheat::ChainModes chain = ionheat::build_chain(n);
    cols[0].values.push_back(n);
    cols[1].values.push_back(1.0 / n);
    cols[2].values.push_back(ionheat::tau_n_incoherent(chain, 1.0));
  }
  write_csv(out, cols);
  write_manifest(out, "fig2", command_line, {{"n_max", n_max}}, {out});
  return 0;
}

int run_modes(const std::string& out, int n_ions, double lcoh_over_scale,
              const std::vector<std::string>& command_line) {
  if (n_ions < 1 || n_ions > 50) throw UsageError("--N must be in [1, 50]");
  if (!(lcoh_over_scale > 0.0)) throw UsageError("--lcoh must be positive");
  const ionheat::ChainModes chain = ionheat::build_chain(n_ions);

  nlohmann::json j;
  j["n"] = chain.n;
  j["u"] = chain.positions;
  j["mu"] = chain.eigenvalues;
  nlohmann::json b = nlohmann::json::array();
  for (int p = 0; p < chain.n; ++p) {
    const auto row = chain.eigenvectors.row(static_cast<std::size_t>(p));
    b.push_back(std::vector<double>(row.begin(), row.end()));
  }
  j["b"] = b;

  const auto per_mode = [&](const ionheat::Matrix& gamma) {
    nlohmann::json arr = nlohmann::json::array();
    for (int p = 1; p <= chain.n; ++p)
      arr.push_back(heating_time_json(ionheat::tau_n_mode(chain, gamma, p, 1.0)));
    return arr;
  };
  using SCM = ionheat::SpatialCoherenceModel;
  nlohmann::json times;
  times["coherent"] = per_mode(ionheat::gamma_matrix_scaled(chain, SCM::coherent(), 0.0));
  times["incoherent"] = per_mode(ionheat::gamma_matrix_scaled(chain, SCM::incoherent(), 0.0));
  times["exponential_distance"] = {
      {"coherence_length_over_scale", lcoh_over_scale},
      {"values", per_mode(ionheat::gamma_matrix_scaled(
                     chain, SCM::exponential_distance(1.0), lcoh_over_scale))},
      {"note", "exponential-distance coherence is an interpolation between the coherent "
               "and incoherent limits; only those limits are distinguished physically"}};
  j["heating_times_over_tau1"] = times;

  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << j.dump(2) << "\n";
  write_manifest(out, "modes", command_line,
                 {{"n_ions", n_ions}, {"coherence_length_over_scale", lcoh_over_scale}}, {out});
  return 0;
}

int run_thermal(const ionheat::TrapConfig& trap, std::optional<double> theta,
                std::optional<double> tau1, const std::optional<std::string>& out,
                const std::vector<std::string>& command_line) {
  nlohmann::json j;
  if (theta) {
    j["theta_K"] = *theta;
    j["tau1_s"] = ionheat::thermal_tau1(trap, *theta);
  } else {
    j["tau1_s"] = *tau1;
    j["theta_K"] = ionheat::thermal_theta(trap, *tau1);
  }
  j["note"] = thermal_note();
  std::cout << j.dump(2) << "\n";
  if (out) {
    std::ofstream f(*out);
    if (!f) throw std::runtime_error("cannot write " + *out);
    f << j.dump(2) << "\n";
    nlohmann::json params{{"charge_C", trap.charge}, {"mass_kg", trap.mass},
                          {"omega0_rad_s", trap.omega0}};
    if (theta) params["theta_K"] = *theta;
    if (tau1) params["tau1_s"] = *tau1;
    write_manifest(*out, "thermal", command_line, params, {*out});
  }
  return 0;
}

int run_validate(const std::string& suite, std::size_t realizations, std::uint64_t seed,
                 int n_ions, const std::optional<std::string>& out,
                 const std::optional<std::string>& dump_paths,
                 const std::vector<std::string>& command_line) {
  std::vector<std::string> to_run;
  if (suite == "all") {
    to_run = ionheat::suite_names();
  } else if (ionheat::is_suite_name(suite)) {
    to_run = {suite};
  } else {
    throw UsageError("unknown validation suite '" + suite + "'");
  }

  nlohmann::json summary;
  summary["tool"] = kToolName;
  summary["version"] = kVersion;
  summary["seed"] = seed;
  summary["realizations"] = realizations;
  nlohmann::json suites = nlohmann::json::array();
  bool all_pass = true;
  for (const std::string& name : to_run) {
    const ionheat::SuiteResult res = ionheat::run_suite(name, realizations, seed, n_ions);
    nlohmann::json js;
    js["suite"] = res.suite;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : res.checks)
      checks.push_back({{"name", c.name},
                        {"measured", c.measured},
                        {"comparator", c.comparator},
                        {"bound", c.bound},
                        {"pass", c.pass}});
    js["checks"] = checks;
    js["pass"] = res.pass;
    suites.push_back(js);
    all_pass = all_pass && res.pass;
  }
  summary["suites"] = suites;
  summary["pass"] = all_pass;

  std::cout << summary.dump(2) << "\n";
  if (out) {
    std::ofstream f(*out);
    if (!f) throw std::runtime_error("cannot write " + *out);
    f << summary.dump(2) << "\n";
    write_manifest(*out, "validate", command_line,
                   {{"suite", suite}, {"realizations", realizations}, {"seed", seed},
                    {"n_ions", n_ions}},
                   {*out});
  }
  if (dump_paths) {
    ionheat::EnsembleConfig cfg;
    cfg.chain = ionheat::build_chain(1);
    cfg.omega0T = 1.0;
    cfg.omega0_tau1 = 8.5;
    cfg.gamma = ionheat::Matrix(1, 1, 1.0);
    dump_noise_csv(*dump_paths, cfg, 20.0, seed);
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> command_line(argv, argv + argc);
  CLI::App app{"stochastic heating of trapped-ion motional ground states"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::function<int()> action;

  // fig1 ---------------------------------------------------------------
  auto* fig1 = app.add_subcommand(
      "fig1", "ground-state fidelity curves F(omega0 t) for (omega0T, omega0tau1) pairs");
  auto fig1_out = std::make_shared<std::string>();
  auto fig1_grid = std::make_shared<std::string>("0:25:500");
  auto fig1_pairs = std::make_shared<std::vector<std::string>>();
  auto fig1_mc = std::make_shared<std::size_t>(0);
  auto fig1_seed = std::make_shared<std::uint64_t>(42);
  auto fig1_dump = std::make_shared<std::string>();
  fig1->add_option("--out", *fig1_out, "output CSV path")->required();
  fig1->add_option("--grid", *fig1_grid, "time grid min:max:count (default 0:25:500)");
  fig1->add_option("--pair", *fig1_pairs,
                   "curve parameters 'omega0T,omega0tau1' (repeatable; default four "
                   "reference curves at omega0T=1)");
  fig1->add_option("--mc", *fig1_mc, "append Monte Carlo columns with this many realizations");
  fig1->add_option("--seed", *fig1_seed, "ensemble master seed (default 42)");
  fig1->add_option("--dump-paths", *fig1_dump, "write one noise realization to this CSV");
  fig1->callback([=, &action, &command_line]() {
    action = [=, &command_line]() {
      std::vector<std::pair<double, double>> pairs;
      if (fig1_pairs->empty()) {
        pairs = {{1.0, 1.0}, {1.0, 8.5}, {1.0, 41.0}, {1.0, 128.5}};
      } else {
        for (const std::string& p : *fig1_pairs) pairs.push_back(parse_pair(p));
        if (pairs.size() > 26) throw UsageError("at most 26 curves per file");
      }
      return run_fig1(*fig1_out, parse_grid(*fig1_grid), pairs, *fig1_mc, *fig1_seed,
                      fig1_dump->empty() ? std::nullopt
                                         : std::optional<std::string>(*fig1_dump),
                      command_line);
    };
  });

  // fig2 ---------------------------------------------------------------
  auto* fig2 = app.add_subcommand(
      "fig2", "chain heating time tau_N/tau_1 vs ion count, coherent and incoherent limits");
  auto fig2_out = std::make_shared<std::string>();
  auto fig2_n = std::make_shared<int>(10);
  fig2->add_option("--out", *fig2_out, "output CSV path")->required();
  fig2->add_option("--N", *fig2_n, "largest ion count (default 10, max 20)");
  fig2->callback([=, &action, &command_line]() {
    action = [=, &command_line]() { return run_fig2(*fig2_out, *fig2_n, command_line); };
  });

  // modes --------------------------------------------------------------
  auto* modes = app.add_subcommand(
      "modes", "chain equilibrium positions, normal modes and per-mode heating times (JSON)");
  auto modes_out = std::make_shared<std::string>();
  auto modes_n = std::make_shared<int>(0);
  auto modes_lcoh = std::make_shared<double>(1.0);
  modes->add_option("--out", *modes_out, "output JSON path")->required();
  modes->add_option("--N", *modes_n, "ion count")->required();
  modes->add_option("--lcoh", *modes_lcoh,
                    "coherence length in units of the Coulomb length scale for the "
                    "exponential-distance entry (default 1.0)");
  modes->callback([=, &action, &command_line]() {
    action = [=, &command_line]() {
      return run_modes(*modes_out, *modes_n, *modes_lcoh, command_line);
    };
  });

  // thermal ------------------------------------------------------------
  auto* thermal = app.add_subcommand(
      "thermal", "thermal-field heating estimate: tau1 from Theta or Theta from tau1");
  auto th_config = std::make_shared<std::string>();
  auto th_mass_kg = std::make_shared<double>(0);
  auto th_mass_amu = std::make_shared<double>(0);
  auto th_freq = std::make_shared<double>(0);
  auto th_omega0 = std::make_shared<double>(0);
  auto th_charge_e = std::make_shared<double>(0);
  auto th_charge_c = std::make_shared<double>(0);
  auto th_theta = std::make_shared<double>(0);
  auto th_tau1 = std::make_shared<double>(0);
  auto th_out = std::make_shared<std::string>();
  auto o_config = thermal->add_option("--config", *th_config, "trap config JSON file");
  auto o_mkg = thermal->add_option("--mass-kg", *th_mass_kg, "ion mass in kg");
  auto o_mamu = thermal->add_option("--mass-amu", *th_mass_amu, "ion mass in u");
  auto o_freq = thermal->add_option("--freq-hz", *th_freq, "secular frequency in Hz");
  auto o_om = thermal->add_option("--omega0-rad-s", *th_omega0, "secular frequency in rad/s");
  auto o_qe = thermal->add_option("--charge-e", *th_charge_e, "charge in units of e (default 1)");
  auto o_qc = thermal->add_option("--charge-c", *th_charge_c, "charge in coulombs");
  auto o_theta = thermal->add_option("--theta", *th_theta, "temperature in K");
  auto o_tau1 = thermal->add_option("--tau1", *th_tau1, "heating time in s");
  thermal->add_option("--out", *th_out, "also write the JSON result to this path");
  thermal->callback([=, &action, &command_line]() {
    action = [=, &command_line]() -> int {
      if (static_cast<bool>(*o_theta) == static_cast<bool>(*o_tau1))
        throw UsageError("thermal: give exactly one of --theta or --tau1");
      std::optional<ionheat::TrapConfig> trap;
      if (*o_config) {
        if (*o_mkg || *o_mamu || *o_freq || *o_om || *o_qe || *o_qc)
          throw UsageError("thermal: --config excludes the individual trap flags");
        trap = ionheat::load_trap_config(*th_config);
      } else {
        if (static_cast<bool>(*o_mkg) == static_cast<bool>(*o_mamu))
          throw UsageError("thermal: give exactly one of --mass-kg or --mass-amu");
        if (static_cast<bool>(*o_freq) == static_cast<bool>(*o_om))
          throw UsageError("thermal: give exactly one of --freq-hz or --omega0-rad-s");
        if (*o_qe && *o_qc)
          throw UsageError("thermal: give at most one of --charge-e or --charge-c");
        // route through the config loader so flags and config files share one
        // unit-conversion path
        nlohmann::json j;
        if (*o_mkg) j["mass_kg"] = *th_mass_kg;
        if (*o_mamu) j["mass_amu"] = *th_mass_amu;
        if (*o_freq) j["freq_Hz"] = *th_freq;
        if (*o_om) j["omega0_rad_s"] = *th_omega0;
        if (*o_qc) j["charge_C"] = *th_charge_c;
        if (*o_qe) j["charge_e"] = *th_charge_e;
        if (!*o_qc && !*o_qe) j["charge_e"] = 1.0;
        trap.emplace(ionheat::trap_from_json(j));
      }
      return run_thermal(*trap,
                         *o_theta ? std::optional<double>(*th_theta) : std::nullopt,
                         *o_tau1 ? std::optional<double>(*th_tau1) : std::nullopt,
                         th_out->empty() ? std::nullopt : std::optional<std::string>(*th_out),
                         command_line);
    };
  });

  // validate -----------------------------------------------------------
  auto* validate = app.add_subcommand(
      "validate", "run a Monte-Carlo-vs-closed-form validation suite (or 'all')");
  auto va_suite = std::make_shared<std::string>();
  auto va_r = std::make_shared<std::size_t>(10000);
  auto va_seed = std::make_shared<std::uint64_t>(42);
  auto va_n = std::make_shared<int>(3);
  auto va_out = std::make_shared<std::string>();
  auto va_dump = std::make_shared<std::string>();
  validate->add_option("suite", *va_suite,
                       "gaussian-identity | closed-form | quadrature-crosscheck | "
                       "mode-selectivity | noise-stats | all")
      ->required();
  validate->add_option("--R", *va_r, "realization count (default 10000)");
  validate->add_option("--seed", *va_seed, "master seed (default 42)");
  validate->add_option("--N", *va_n, "ion count for mode-selectivity (default 3)");
  validate->add_option("--out", *va_out, "write the JSON summary to this path");
  validate->add_option("--dump-paths", *va_dump, "write one noise realization to this CSV");
  validate->callback([=, &action, &command_line]() {
    action = [=, &command_line]() {
      return run_validate(*va_suite, *va_r, *va_seed, *va_n,
                          va_out->empty() ? std::nullopt : std::optional<std::string>(*va_out),
                          va_dump->empty() ? std::nullopt
                                           : std::optional<std::string>(*va_dump),
                          command_line);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << kToolName << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << kToolName << ": " << e.what() << "\n";
    return 1;
  }
}
