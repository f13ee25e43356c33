// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exits nonzero if any fail.
// Usage: acceptance <path-to-cli> [workdir]

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ionheat/analytics.hpp"
#include "ionheat/chain.hpp"
#include "ionheat/constants.hpp"
#include "ionheat/mc.hpp"
#include "ionheat/validate.hpp"

namespace {

namespace fs = std::filesystem;
using ionheat::build_chain;
using ionheat::ChainModes;
using ionheat::fidelity_from_moments;
using ionheat::moments_exponential;

std::string g_cli;
fs::path g_work;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

int run_cli(const std::string& args, const std::string& log_name) {
  const fs::path log = g_work / log_name;
  const std::string cmd = g_cli + " " + args + " > " + log.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Csv read_csv(const fs::path& p) {
  Csv csv;
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::string line;
  if (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) csv.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

Outcome from_suite(const ionheat::SuiteResult& res, double elapsed, double budget) {
  Outcome o;
  o.pass = res.pass;
  std::string worst;
  for (const auto& c : res.checks) {
    if (!worst.empty()) worst += "; ";
    worst += c.name + " = " + fmt(c.measured) + " (" + c.comparator + " " + fmt(c.bound) +
             (c.pass ? ", ok)" : ", FAIL)");
  }
  if (budget > 0.0) {
    o.pass = o.pass && elapsed < budget;
    worst += "; runtime " + fmt(elapsed) + " s (< " + fmt(budget) + " s)";
  }
  o.detail = worst;
  return o;
}

// --------------------------------------------------------------------------

Outcome criterion1_gaussian_identity() {
  const double t0 = now_seconds();
  const auto res = ionheat::run_suite("gaussian-identity", 10000, 42);
  return from_suite(res, now_seconds() - t0, 30.0);
}

Outcome criterion2_closed_form() {
  const auto res = ionheat::run_suite("closed-form", 10000, 42);
  return from_suite(res, 0.0, 0.0);
}

Outcome criterion3_quadrature() {
  const double t0 = now_seconds();
  const auto res = ionheat::run_suite("quadrature-crosscheck", 0, 42);
  return from_suite(res, now_seconds() - t0, 5.0);
}

Outcome criterion4_fig1() {
  const fs::path out = g_work / "fig1.csv";
  const int rc = run_cli("fig1 --out " + out.string(), "fig1.log");
  if (rc != 0) return {false, "fig1 exited with code " + std::to_string(rc)};
  const Csv csv = read_csv(out);
  if (csv.header != std::vector<std::string>{"omega0_t", "F_a", "F_b", "F_c", "F_d"})
    return {false, "unexpected fig1 header"};
  if (csv.rows.size() != 500) return {false, "expected 500 grid rows"};

  bool start_at_one = true;
  for (int c = 1; c <= 4; ++c) start_at_one = start_at_one && (csv.rows[0][c] == 1.0);

  bool ordered = true;
  for (std::size_t i = 1; i < csv.rows.size(); ++i)
    for (int c = 1; c < 4; ++c) ordered = ordered && (csv.rows[i][c] < csv.rows[i][c + 1]);

  int maxima = 0;
  for (std::size_t i = 1; i + 1 < csv.rows.size(); ++i)
    if (csv.rows[i][4] > csv.rows[i - 1][4] && csv.rows[i][4] > csv.rows[i + 1][4]) ++maxima;

  Outcome o;
  o.pass = start_at_one && ordered && (maxima >= 1);
  o.detail = std::string("F(0)=1 ") + (start_at_one ? "ok" : "FAIL") +
             "; strict ordering by tau1 " + (ordered ? "ok" : "FAIL") +
             "; curve-d interior local maxima = " + std::to_string(maxima) +
             " (>= 1" + (maxima >= 1 ? ", ok)" : ", FAIL)");
  return o;
}

Outcome criterion5_fig2() {
  const fs::path out = g_work / "fig2.csv";
  const double t0 = now_seconds();
  const int rc = run_cli("fig2 --N 10 --out " + out.string(), "fig2.log");
  const double elapsed = now_seconds() - t0;
  if (rc != 0) return {false, "fig2 exited with code " + std::to_string(rc)};
  const Csv csv = read_csv(out);
  if (csv.rows.size() != 10) return {false, "expected 10 rows"};

  bool coherent_exact = true;
  for (std::size_t i = 0; i < 10; ++i)
    coherent_exact =
        coherent_exact && (csv.rows[i][1] == 1.0 / static_cast<double>(i + 1));

  const double incoh2 = csv.rows[1][2];
  const double expect2 = 0.6339745962155614;  // 1/(1 + 1/sqrt(3))
  const bool two_ion_ok = std::abs(incoh2 - expect2) <= 1e-6;

  bool decreasing = true, coh_below = true;
  for (std::size_t i = 0; i < 10; ++i) {
    if (i > 0)
      decreasing = decreasing && (csv.rows[i][1] < csv.rows[i - 1][1]) &&
                   (csv.rows[i][2] < csv.rows[i - 1][2]);
    coh_below = coh_below && (csv.rows[i][1] <= csv.rows[i][2]);
  }

  Outcome o;
  o.pass = coherent_exact && two_ion_ok && decreasing && coh_below && elapsed < 1.0;
  o.detail = std::string("coherent column = 1/N exactly ") +
             (coherent_exact ? "ok" : "FAIL") + "; incoherent N=2 = " + fmt(incoh2) +
             " (|diff| = " + fmt(std::abs(incoh2 - expect2)) + " <= 1e-6" +
             (two_ion_ok ? ", ok)" : ", FAIL)") + "; monotone " +
             (decreasing && coh_below ? "ok" : "FAIL") + "; runtime " + fmt(elapsed) +
             " s (< 1 s)";
  return o;
}

Outcome criterion6_chain_invariants() {
  double worst_residual = 0.0, worst_mu1 = 0.0, worst_mu2 = 0.0, worst_orth = 0.0,
         worst_sum = 0.0;
  for (int n = 1; n <= 20; ++n) {
    const ChainModes chain = build_chain(n);
    worst_residual = std::max(worst_residual, ionheat::equilibrium_residual(chain.positions));
    worst_mu1 = std::max(worst_mu1, std::abs(chain.eigenvalues[0] - 1.0));
    if (n >= 2) worst_mu2 = std::max(worst_mu2, std::abs(chain.eigenvalues[1] - 3.0));
    for (int p = 0; p < n; ++p) {
      for (int q = p; q < n; ++q) {
        double dot = 0.0;
        for (int k = 0; k < n; ++k)
          dot += chain.eigenvectors(p, k) * chain.eigenvectors(q, k);
        worst_orth = std::max(worst_orth, std::abs(dot - (p == q ? 1.0 : 0.0)));
      }
      if (p >= 1) {
        double sum = 0.0;
        for (int k = 0; k < n; ++k) sum += chain.eigenvectors(p, k);
        worst_sum = std::max(worst_sum, std::abs(sum));
      }
    }
  }
  Outcome o;
  o.pass = worst_residual <= 1e-12 && worst_mu1 <= 1e-10 && worst_mu2 <= 1e-8 &&
           worst_orth <= 1e-10 && worst_sum <= 1e-10;
  o.detail = "N=1..20: residual " + fmt(worst_residual) + " (<= 1e-12); |mu1-1| " +
             fmt(worst_mu1) + " (<= 1e-10); |mu2-3| " + fmt(worst_mu2) +
             " (<= 1e-8); orthonormality " + fmt(worst_orth) +
             " (<= 1e-10); higher-mode vector sums " + fmt(worst_sum) + " (<= 1e-10)";
  return o;
}

Outcome criterion7_mode_selectivity() {
  const auto res = ionheat::run_suite("mode-selectivity", 10000, 42, 3);
  return from_suite(res, 0.0, 0.0);
}

Outcome criterion8_short_time() {
  double worst = 0.0;
  const double r = 8.5, h = 1e-4;
  for (double w : {0.2, 1.0, 5.0}) {
    // independent evaluation of the closed form, continued to negative times
    const double phi = std::atan(w);
    auto m_oracle = [&](double th) {
      return (w / r) *
             (std::exp(-th / w) * std::cos(th + 2.0 * phi) - std::cos(2.0 * phi) + th / w);
    };
    if (std::abs(m_oracle(0.7) - moments_exponential(w, r, 0.7).m) > 1e-14)
      return {false, "closed form disagrees with the acceptance oracle"};
    const double second = (m_oracle(h) - 2.0 * m_oracle(0.0) + m_oracle(-h)) / (h * h);
    const double coeff = ionheat::short_time_nbar(w, r, 1.0);
    worst = std::max(worst, std::abs(coeff - 0.5 * second) / (0.5 * second));
  }
  return {worst <= 1e-3, "max relative coefficient error over omega0T in {0.2, 1, 5}: " +
                             fmt(worst) + " (<= 0.001)"};
}

Outcome criterion9_long_time() {
  const double w = 1.0, r = 41.0, th = 1000.0;
  const double f_exact = fidelity_from_moments(moments_exponential(w, r, th));
  const double scaled = (f_exact - r / th) * th * th / (r * r);
  const double t0 = ionheat::long_time_asymptotes(w, r, th).params.t0;
  const double target = -(1.0 - t0 / r);
  const double rel = std::abs(scaled - target) / std::abs(target);

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = 51;
  for (int i = 0; i < n; ++i) {
    const double x = 500.0 + 10.0 * i;
    const double y = moments_exponential(w, r, x).m;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double slope_rel = std::abs(slope - 1.0 / r) * r;

  Outcome o;
  o.pass = rel <= 0.05 && slope_rel <= 0.005;
  o.detail = "scaled fidelity deviation " + fmt(scaled) + " vs " + fmt(target) +
             " (rel " + fmt(rel) + " <= 0.05); occupation slope relative error " +
             fmt(slope_rel) + " (<= 0.005)";
  return o;
}

Outcome criterion10_thermal() {
  const ionheat::TrapConfig trap(ionheat::constants::elementary_charge, 3.29e-25,
                                 2.0 * ionheat::constants::pi * 4.66e6);
  double worst_rt = 0.0;
  for (double theta : {1.0, 4.6, 300.0})
    worst_rt = std::max(worst_rt, std::abs(ionheat::thermal_theta(
                                      trap, ionheat::thermal_tau1(trap, theta)) -
                                  theta) /
                                      theta);

  const double theta_recomputed = ionheat::thermal_theta(trap, 0.135);
  const double oracle = 17.533008911419174;  // independent arithmetic evaluation
  const double rel = std::abs(theta_recomputed - oracle) / oracle;

  const int rc = run_cli(
      "thermal --mass-kg 3.29e-25 --freq-hz 4.66e6 --tau1 0.135 --out " +
          (g_work / "thermal.json").string(),
      "thermal.log");
  bool note_ok = false;
  if (rc == 0) {
    const auto j = nlohmann::json::parse(slurp(g_work / "thermal.json"));
    const std::string note = j.value("note", "");
    note_ok = note.find("17.5") != std::string::npos &&
              note.find("4.6") != std::string::npos &&
              std::abs(j.value("theta_K", 0.0) - oracle) / oracle < 1e-9;
  }

  Outcome o;
  o.pass = worst_rt <= 1e-12 && rel <= 1e-9 && note_ok;
  o.detail = "round-trip relative error " + fmt(worst_rt) +
             " (<= 1e-12); mercury recomputed Theta = " + fmt(theta_recomputed) +
             " K vs oracle (rel " + fmt(rel) + " <= 1e-9); discrepancy note in output " +
             (note_ok ? "ok" : "FAIL");
  return o;
}

Outcome criterion11_noise_stats() {
  const auto res = ionheat::run_suite("noise-stats", 0, 42);
  return from_suite(res, 0.0, 0.0);
}

Outcome criterion12_determinism() {
  const fs::path out1 = g_work / "validate1.json";
  const fs::path out2 = g_work / "validate2.json";
  const std::string args = "validate all --R 1000 --seed 42 --out ";
  const int rc1 = run_cli(args + out1.string(), "validate1.log");
  const int rc2 = run_cli(args + out2.string(), "validate2.log");
  const bool byte_identical = slurp(out1) == slurp(out2) && !slurp(out1).empty();

  // contract: 0 = success, 1 = validation failure, 2 = usage error
  const int rc_bad_suite = run_cli("validate nosuch", "validate_bad.log");
  const int rc_bad_grid =
      run_cli("fig1 --grid nonsense --out " + (g_work / "x.csv").string(), "fig1_bad.log");

  Outcome o;
  o.pass = rc1 == 0 && rc2 == 0 && byte_identical && rc_bad_suite == 2 && rc_bad_grid == 2;
  o.detail = std::string("repeated summaries byte-identical ") +
             (byte_identical ? "ok" : "FAIL") + "; exit codes: validate all -> " +
             std::to_string(rc1) + "," + std::to_string(rc2) +
             " (0); unknown suite -> " + std::to_string(rc_bad_suite) +
             " (2); bad grid -> " + std::to_string(rc_bad_grid) + " (2)";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-cli> [workdir]\n";
    return 2;
  }
  g_cli = argv[1];
  g_work = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "ionheat_acceptance";
  fs::create_directories(g_work);

  struct Criterion {
    int id;
    std::string name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "Gaussian-identity validation (MC fidelity vs moment formula)",
       criterion1_gaussian_identity},
      {2, "closed-form validation (MC moments vs exponential-kernel forms)",
       criterion2_closed_form},
      {3, "quadrature cross-check (integrals vs closed forms)", criterion3_quadrature},
      {4, "fidelity curve reproduction (four reference curves)", criterion4_fig1},
      {5, "chain heating-time curve reproduction (N = 1..10)", criterion5_fig2},
      {6, "chain-mode invariants (N = 1..20)", criterion6_chain_invariants},
      {7, "mode selectivity under coherent noise (N = 3)", criterion7_mode_selectivity},
      {8, "short-time quadratic law coefficient", criterion8_short_time},
      {9, "long-time asymptotics", criterion9_long_time},
      {10, "thermal-field estimate round trip and mercury example", criterion10_thermal},
      {11, "noise statistics", criterion11_noise_stats},
      {12, "determinism and CLI exit-code contract", criterion12_determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion-" << c.id << ": " << c.name
              << " | " << o.detail << "\n";
  }
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criterion(s) failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
