// Command-line front end for the repeated-GBSM teleportation simulator.
// Talks to the core exclusively through the C API in pqtsim.h.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pqtsim.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(pqt_status status) {
  if (status != PQT_OK) {
    throw UsageError(std::string(pqt_status_name(status)) + ": " +
                     pqt_last_error());
  }
}

// Fixed 12-significant-digit decimal formatting; locale-independent.
std::string fmt(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 12);
  (void)ec;
  return std::string(buf.data(), end);
}

struct Grid {
  std::vector<double> values;
  bool over_chi = false;
};

Grid parse_grid(const std::string& spec, bool over_chi) {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  std::istringstream is(spec);
  char c1 = 0;
  char c2 = 0;
  if (!(is >> start >> c1 >> stop >> c2 >> count) || c1 != ':' || c2 != ':' ||
      !is.eof()) {
    throw UsageError("grid must be start:stop:count, got '" + spec + "'");
  }
  if (count < 2) throw UsageError("grid count must be >= 2");
  if (start > stop) throw UsageError("grid start must not exceed stop");
  Grid grid;
  grid.over_chi = over_chi;
  grid.values.reserve(count);
  for (int i = 0; i < count; ++i) {
    grid.values.push_back(start + (stop - start) * i / (count - 1));
  }
  return grid;
}

struct GridPoint {
  double concurrence;
  double chi;
};

GridPoint resolve(const Grid& grid, double value) {
  GridPoint point{};
  if (grid.over_chi) {
    point.chi = value;
    check(pqt_concurrence(value, &point.concurrence));
  } else {
    point.concurrence = value;
    check(pqt_chi_from_concurrence(value, &point.chi));
  }
  return point;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw IoError("cannot open output file: " + path);
    }
  }

  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  void finish() {
    stream().flush();
    if (file_.is_open() && !file_) throw IoError("write failed");
  }

 private:
  std::ofstream file_;
};

pqt_complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  pqt_complex value{0.0, 0.0};
  try {
    if (comma == std::string::npos) {
      value.re = std::stod(text);
    } else {
      value.re = std::stod(text.substr(0, comma));
      value.im = std::stod(text.substr(comma + 1));
    }
  } catch (const std::exception&) {
    throw UsageError("cannot parse complex number '" + text + "' (use RE or RE,IM)");
  }
  return value;
}

pqt_strategy parse_strategy(const std::string& name) {
  if (name == "continue") return PQT_STRATEGY_CONTINUE_GBSM;
  if (name == "me-final") return PQT_STRATEGY_ME_BELL_FINAL;
  throw UsageError("unknown strategy '" + name + "'");
}

const char* correction_name(int code) {
  switch (code) {
    case 0: return "I";
    case 1: return "Z";
    case 2: return "X";
    case 3: return "ZX";
  }
  return "?";
}

// --- sweep-success ----------------------------------------------------

struct SweepSuccessConfig {
  std::string grid_spec = "0.05:1.0:20";
  bool over_chi = false;
  bool analytic = false;
  std::string variant = "corrected";
  std::string out_path;
};

int cmd_sweep_success(const SweepSuccessConfig& config) {
  const Grid grid = parse_grid(config.grid_spec, config.over_chi);
  const pqt_variant variant = config.variant == "printed"
                                  ? PQT_VARIANT_AS_PRINTED
                                  : PQT_VARIANT_CORRECTED;
  if (config.variant != "printed" && config.variant != "corrected") {
    throw UsageError("variant must be printed or corrected");
  }

  Output output(config.out_path);
  std::ostream& os = output.stream();
  os << "concurrence,chi,p_attempt0,p_attempt1,p_attempt2,p_attempt3";
  if (config.analytic) {
    os << ",analytic0,analytic1,analytic2,analytic3,max_abs_diff";
  }
  os << "\n";

  for (double value : grid.values) {
    const GridPoint point = resolve(grid, value);
    pqt_tree* tree = nullptr;
    check(pqt_tree_create(point.chi, {1.0, 0.0}, {0.0, 0.0}, 3,
                          PQT_STRATEGY_CONTINUE_GBSM, &tree));
    std::array<double, 4> p{};
    for (int m = 0; m < 4; ++m) {
      const pqt_status status = pqt_tree_cumulative_success(tree, m, &p[m]);
      if (status != PQT_OK) {
        pqt_tree_destroy(tree);
        check(status);
      }
    }
    pqt_tree_destroy(tree);

    os << fmt(point.concurrence) << "," << fmt(point.chi);
    for (int m = 0; m < 4; ++m) os << "," << fmt(p[m]);
    if (config.analytic) {
      double max_diff = 0.0;
      std::array<double, 4> closed{};
      for (int m = 0; m < 4; ++m) {
        check(pqt_closed_form_success(m, point.concurrence, variant, &closed[m]));
        max_diff = std::max(max_diff, std::abs(closed[m] - p[m]));
      }
      for (int m = 0; m < 4; ++m) os << "," << fmt(closed[m]);
      os << "," << fmt(max_diff);
    }
    os << "\n";
  }
  output.finish();
  return kExitOk;
}

// --- sweep-maf ---------------------------------------------------------

struct SweepMafConfig {
  std::string grid_spec = "0.05:1.0:20";
  bool over_chi = false;
  int max_attempts = 2;
  std::string strategy = "both";
  std::string out_path;
};

int cmd_sweep_maf(const SweepMafConfig& config) {
  const Grid grid = parse_grid(config.grid_spec, config.over_chi);
  std::vector<pqt_strategy> strategies;
  if (config.strategy == "both") {
    strategies = {PQT_STRATEGY_CONTINUE_GBSM, PQT_STRATEGY_ME_BELL_FINAL};
  } else {
    strategies = {parse_strategy(config.strategy)};
  }

  Output output(config.out_path);
  std::ostream& os = output.stream();
  os << "concurrence,m,strategy,maf\n";
  for (double value : grid.values) {
    const GridPoint point = resolve(grid, value);
    for (int m = 0; m <= config.max_attempts; ++m) {
      for (pqt_strategy strategy : strategies) {
        double maf = 0.0;
        check(pqt_average_fidelity(point.chi, m, strategy, &maf));
        os << fmt(point.concurrence) << "," << m << ","
           << (strategy == PQT_STRATEGY_CONTINUE_GBSM ? "continue" : "me-final")
           << "," << fmt(maf) << "\n";
      }
    }
  }
  output.finish();
  return kExitOk;
}

// --- verify ------------------------------------------------------------

int cmd_verify() {
  pqt_verify_report* report = nullptr;
  check(pqt_verify_run(&report));
  const size_t count = pqt_verify_check_count(report);
  for (size_t i = 0; i < count; ++i) {
    const bool passed = pqt_verify_check_passed(report, i) != 0;
    const bool expected = pqt_verify_check_expected_discrepancy(report, i) != 0;
    const char* status = expected ? "NOTE" : (passed ? "PASS" : "FAIL");
    std::cout << "[" << status << "] " << pqt_verify_check_name(report, i)
              << ": " << pqt_verify_check_detail(report, i) << "\n";
  }
  const bool all = pqt_verify_all_passed(report) != 0;
  std::cout << (all ? "verification passed" : "verification FAILED") << " ("
            << count << " checks)\n";
  pqt_verify_report_destroy(report);
  return all ? kExitOk : kExitVerifyFailure;
}

// --- simulate ------------------------------------------------------------

struct SimulateConfig {
  std::optional<double> chi;
  std::optional<double> concurrence;
  std::optional<std::string> a_text;
  std::optional<std::string> b_text;
  std::optional<double> theta;
  std::optional<double> phi;
  int max_attempts = 3;
  std::string strategy = "continue";
  std::uint64_t trials = 100000;
  std::uint64_t seed = 42;
  bool renormalize = false;
  std::string out_path;
};

int cmd_simulate(const SimulateConfig& config) {
  if (config.trials == 0) throw UsageError("trials must be >= 1");
  double chi = 0.0;
  if (config.chi && config.concurrence) {
    throw UsageError("give either --chi or --concurrence, not both");
  } else if (config.chi) {
    chi = *config.chi;
  } else if (config.concurrence) {
    check(pqt_chi_from_concurrence(*config.concurrence, &chi));
  } else {
    throw UsageError("one of --chi or --concurrence is required");
  }

  pqt_complex a{1.0, 0.0};
  pqt_complex b{0.0, 0.0};
  if (config.a_text || config.b_text) {
    if (!config.a_text || !config.b_text) {
      throw UsageError("--a and --b must be given together");
    }
    if (config.theta || config.phi) {
      throw UsageError("give either --a/--b or --theta/--phi, not both");
    }
    a = parse_complex(*config.a_text);
    b = parse_complex(*config.b_text);
    const double n =
        a.re * a.re + a.im * a.im + b.re * b.re + b.im * b.im;
    if (std::abs(n - 1.0) > 1e-12) {
      if (!config.renormalize) {
        throw UsageError("info state is not normalized (|a|^2+|b|^2 = " +
                         fmt(n) + "); pass --renormalize to scale it");
      }
      const double scale = 1.0 / std::sqrt(n);
      a.re *= scale;
      a.im *= scale;
      b.re *= scale;
      b.im *= scale;
    }
  } else {
    const double theta = config.theta.value_or(1.047197551196597746);  // pi/3
    const double phi = config.phi.value_or(0.0);
    a = {std::cos(theta / 2), 0.0};
    b = {std::sin(theta / 2) * std::cos(phi), std::sin(theta / 2) * std::sin(phi)};
  }

  const pqt_strategy strategy = parse_strategy(config.strategy);
  double concurrence = 0.0;
  check(pqt_concurrence(chi, &concurrence));

  pqt_tree* tree = nullptr;
  check(pqt_tree_create(chi, a, b, config.max_attempts, strategy, &tree));
  std::vector<double> exact(config.max_attempts + 1);
  for (int m = 0; m <= config.max_attempts; ++m) {
    pqt_tree_cumulative_success(tree, m, &exact[m]);
  }
  pqt_tree_destroy(tree);

  pqt_mc_estimate estimate{};
  check(pqt_monte_carlo(chi, a, b, config.max_attempts, strategy, config.trials,
                        config.seed, &estimate));

  std::cout << "resource: chi=" << fmt(chi) << " concurrence=" << fmt(concurrence)
            << "\n";
  std::cout << "info: a=" << fmt(a.re) << (a.im == 0.0 ? "" : "+" + fmt(a.im) + "i")
            << " b=" << fmt(b.re) << (b.im == 0.0 ? "" : "+" + fmt(b.im) + "i")
            << "\n";
  std::cout << "plan: m=" << config.max_attempts << " strategy=" << config.strategy
            << " trials=" << config.trials << " seed=" << config.seed << "\n";
  std::cout << "attempt  exact_cumulative  empirical_successes\n";
  std::uint64_t running = 0;
  for (int m = 0; m <= config.max_attempts; ++m) {
    running += estimate.successes_by_attempt[m];
    std::cout << "  " << m << "        " << fmt(exact[m]) << "  "
              << fmt(static_cast<double>(running) /
                     static_cast<double>(estimate.trials))
              << "\n";
  }
  std::cout << "empirical success rate: " << fmt(estimate.success_rate)
            << " +/- " << fmt(estimate.standard_error) << "\n";

  std::cout << "example runs:\n";
  for (int i = 0; i < 5; ++i) {
    pqt_run_result run{};
    check(pqt_sample_run(chi, a, b, config.max_attempts, strategy,
                         config.seed + 1000 + i, &run));
    std::cout << "  seed " << (config.seed + 1000 + i) << ": history=";
    for (int k = 0; k < run.attempts_used; ++k) std::cout << run.history[k];
    std::cout << (run.success ? " success" : " no-success")
              << " correction=" << correction_name(run.correction)
              << " fidelity=" << fmt(run.fidelity_after_correction) << "\n";
  }

  if (!config.out_path.empty()) {
    Output output(config.out_path);
    std::ostream& os = output.stream();
    os << "trial,history,success,attempts_used,correction,fidelity\n";
    const std::uint64_t rows = std::min<std::uint64_t>(config.trials, 1000);
    for (std::uint64_t t = 0; t < rows; ++t) {
      pqt_run_result run{};
      check(pqt_sample_run(chi, a, b, config.max_attempts, strategy,
                           config.seed + t, &run));
      os << t << ",";
      for (int k = 0; k < run.attempts_used; ++k) os << run.history[k];
      os << "," << run.success << "," << run.attempts_used << ","
         << correction_name(run.correction) << ","
         << fmt(run.fidelity_after_correction) << "\n";
    }
    output.finish();
  }
  return kExitOk;
}

// --- security-demo -------------------------------------------------------

int cmd_security_demo(std::uint64_t seed, std::uint64_t samples) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  struct Sample {
    const char* name;
    pqt_complex a;
    pqt_complex b;
  };
  const std::array<Sample, 3> states{{
      {"|0>", {1.0, 0.0}, {0.0, 0.0}},
      {"(|0>+|1>)/sqrt2", {inv_sqrt2, 0.0}, {inv_sqrt2, 0.0}},
      {"bloch(1.0, 0.7)", {std::cos(0.5), 0.0},
       {std::sin(0.5) * std::cos(0.7), std::sin(0.5) * std::sin(0.7)}},
  }};

  for (const Sample& s : states) {
    pqt_complex rho[4] = {};
    check(pqt_bob_pauli_mixture(s.a, s.b, rho));
    double overlap = 0.0;
    check(pqt_eavesdropper_overlap(s.a, s.b, &overlap));
    std::cout << "info " << s.name << ":\n";
    std::cout << "  rho_Bob = [[" << fmt(rho[0].re) << (rho[0].im < 0 ? "-" : "+")
              << fmt(std::abs(rho[0].im)) << "i, " << fmt(rho[1].re)
              << (rho[1].im < 0 ? "-" : "+") << fmt(std::abs(rho[1].im))
              << "i], [" << fmt(rho[2].re) << (rho[2].im < 0 ? "-" : "+")
              << fmt(std::abs(rho[2].im)) << "i, " << fmt(rho[3].re)
              << (rho[3].im < 0 ? "-" : "+") << fmt(std::abs(rho[3].im))
              << "i]]\n";
    std::cout << "  Tr[rho_Bob rho_I] = " << fmt(overlap) << "\n";
  }

  double mean = 0.0;
  double std_error = 0.0;
  check(pqt_haar_overlap_estimate(states[2].a, states[2].b, samples, seed, &mean,
                                  &std_error));
  std::cout << "Haar-random comparison over " << samples
            << " samples: mean overlap = " << fmt(mean) << " +/- "
            << fmt(std_error) << " (expected 0.5)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Repeated-GBSM probabilistic teleportation simulator"};
  app.require_subcommand(1);

  SweepSuccessConfig sweep_success;
  CLI::App* sub_success = app.add_subcommand(
      "sweep-success", "Success probability per attempt over a resource grid");
  sub_success->add_option("--grid", sweep_success.grid_spec,
                          "start:stop:count (concurrence by default)");
  sub_success->add_flag("--chi", sweep_success.over_chi,
                        "interpret the grid over chi instead of concurrence");
  sub_success->add_flag("--analytic", sweep_success.analytic,
                        "add closed-form columns and max_abs_diff");
  sub_success->add_option("--variant", sweep_success.variant,
                          "closed-form variant: printed or corrected");
  sub_success->add_option("--out", sweep_success.out_path, "output CSV path");

  SweepMafConfig sweep_maf;
  CLI::App* sub_maf = app.add_subcommand(
      "sweep-maf", "Maximal average fidelity over a resource grid");
  sub_maf->add_option("--grid", sweep_maf.grid_spec, "start:stop:count");
  sub_maf->add_flag("--chi", sweep_maf.over_chi,
                    "interpret the grid over chi instead of concurrence");
  sub_maf->add_option("--m", sweep_maf.max_attempts, "largest attempt budget")
      ->check(CLI::Range(0, PQT_MAX_ATTEMPTS));
  sub_maf->add_option("--strategy", sweep_maf.strategy,
                      "continue, me-final, or both");
  sub_maf->add_option("--out", sweep_maf.out_path, "output CSV path");

  CLI::App* sub_verify = app.add_subcommand(
      "verify", "Cross-check the implementation against the published results");

  SimulateConfig simulate;
  CLI::App* sub_simulate = app.add_subcommand(
      "simulate", "Seeded Monte-Carlo trajectories vs exact enumeration");
  auto* chi_opt = sub_simulate->add_option("--chi", simulate.chi, "resource angle");
  sub_simulate->add_option("--concurrence", simulate.concurrence,
                           "resource concurrence")
      ->excludes(chi_opt);
  sub_simulate->add_option("--a", simulate.a_text, "info amplitude a (RE or RE,IM)");
  sub_simulate->add_option("--b", simulate.b_text, "info amplitude b (RE or RE,IM)");
  sub_simulate->add_option("--theta", simulate.theta, "Bloch polar angle");
  sub_simulate->add_option("--phi", simulate.phi, "Bloch azimuth");
  sub_simulate->add_option("--m", simulate.max_attempts, "repeated attempts")
      ->check(CLI::Range(0, PQT_MAX_ATTEMPTS));
  sub_simulate->add_option("--strategy", simulate.strategy, "continue or me-final");
  sub_simulate->add_option("--trials", simulate.trials, "Monte-Carlo trial count");
  sub_simulate->add_option("--seed", simulate.seed, "master RNG seed");
  sub_simulate->add_flag("--renormalize", simulate.renormalize,
                         "scale a non-normalized info state instead of failing");
  sub_simulate->add_option("--out", simulate.out_path, "trajectory CSV path");

  std::uint64_t demo_seed = 20240;
  std::uint64_t demo_samples = 100000;
  CLI::App* sub_security = app.add_subcommand(
      "security-demo", "Pauli-mixture security identity and Haar comparison");
  sub_security->add_option("--seed", demo_seed, "RNG seed");
  sub_security->add_option("--samples", demo_samples, "Haar sample count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sub_success->parsed()) return cmd_sweep_success(sweep_success);
    if (sub_maf->parsed()) return cmd_sweep_maf(sweep_maf);
    if (sub_verify->parsed()) return cmd_verify();
    if (sub_simulate->parsed()) return cmd_simulate(simulate);
    if (sub_security->parsed()) return cmd_security_demo(demo_seed, demo_samples);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
