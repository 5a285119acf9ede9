// Acceptance suite: prints one pass/fail line per criterion and exits
// nonzero if any of them fail. Runs on a desk scale, under a minute total.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pqtsim/analytic.hpp"
#include "pqtsim/engine.hpp"
#include "pqtsim/maf.hpp"
#include "pqtsim/verify.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace pqtsim;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& description, bool passed,
               const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", passed ? "PASS" : "FAIL", number,
              description.c_str(), detail.c_str());
  if (!passed) ++g_failures;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

// criteria 1-4: tree enumeration against the closed forms
void closed_form_criteria() {
  std::mt19937_64 rng(101);
  std::array<double, 4> max_dev{};
  for (int i = 1; i <= 50; ++i) {
    const double c = i / 50.0;
    const double chi = chi_from_concurrence(c);
    for (int trial = 0; trial < 10; ++trial) {
      const InfoState info = testutil::random_info(rng);
      const OutcomeTree tree =
          enumerate_tree(chi, info, AttemptPlan{3, Strategy::ContinueGBSM});
      for (int m = 0; m < 4; ++m) {
        max_dev[m] = std::max(
            max_dev[m], std::abs(tree.cumulative_success(m) -
                                 closed_form_success(
                                     m, c, ClosedFormVariant::CorrectedNesting)));
      }
    }
  }
  const OutcomeTree at_one = enumerate_tree(
      kQuarterPi, InfoState(0.6, 0.8), AttemptPlan{3, Strategy::ContinueGBSM});

  criterion(1, "primary success probability equals C^2/2",
            max_dev[0] <= 1e-12, "max |diff| = " + fmt(max_dev[0]) +
                " over 50 C values x 10 secrets");
  criterion(2, "first-repeat closed form matches enumeration",
            max_dev[1] <= 1e-10 &&
                std::abs(at_one.cumulative_success(1) - 0.75) <= 1e-12,
            "max |diff| = " + fmt(max_dev[1]) + ", value at C=1 = " +
                fmt(at_one.cumulative_success(1)));
  criterion(3, "second-repeat closed form matches enumeration",
            max_dev[2] <= 1e-10 &&
                std::abs(at_one.cumulative_success(2) - 0.875) <= 1e-12,
            "max |diff| = " + fmt(max_dev[2]) + ", value at C=1 = " +
                fmt(at_one.cumulative_success(2)));

  const double printed = closed_form_success(3, 1.0, ClosedFormVariant::AsPrinted);
  const bool printed_deviates = std::abs((0.9375 - printed) - 0.0104166667) < 1e-6;
  // the verify report must state the discrepancy explicitly
  const VerifyReport report = run_verification();
  bool reported = false;
  for (const CheckResult& check : report.checks) {
    if (check.name == "eq4-third-repeat-as-printed" && check.expected_discrepancy &&
        std::abs(check.deviation - 1.0 / 96.0) < 1e-6) {
      reported = true;
    }
  }
  criterion(4, "third-repeat corrected variant matches; printed one deviates",
            max_dev[3] <= 1e-10 &&
                std::abs(at_one.cumulative_success(3) - 0.9375) <= 1e-12 &&
                printed_deviates && reported,
            "max |diff| = " + fmt(max_dev[3]) + ", as-printed gap at C=1 = " +
                fmt(0.9375 - printed) + (reported ? ", reported" : ", NOT reported"));
}

void table_criterion() {
  std::mt19937_64 rng(103);
  const char* t1[] = {"P0", "P1", "P2", "P3"};
  const char* t2[] = {"P00", "P01", "P02", "P03", "P30", "P31", "P32", "P33"};
  const char* t3[] = {"P000", "P001", "P002", "P003", "P030", "P031",
                      "P032", "P033", "P300", "P301", "P302", "P303",
                      "P330", "P331", "P332", "P333"};
  double prob_dev = 0.0;
  double state_dev_13 = 0.0;
  std::vector<std::string> mismatched;

  for (int trial = 0; trial < 20; ++trial) {
    const double chi = testutil::random_chi(rng);
    const InfoState info = testutil::random_info(rng);
    const OutcomeTree tree =
        enumerate_tree(chi, info, AttemptPlan{2, Strategy::ContinueGBSM});

    auto inspect = [&](int table, const char* row) {
      std::vector<int> history;
      for (const char* p = row + 1; *p; ++p) history.push_back(*p - '0');
      const BranchRecord* record = nullptr;
      for (const BranchRecord& r : tree.records_by_depth()[history.size() - 1]) {
        if (r.history == history) record = &r;
      }
      prob_dev = std::max(prob_dev,
                          std::abs(table_row_probability(table, row, chi, info) -
                                   record->conditional_probability));

      const PrintedRowState printed = table_row_state(table, row, chi);
      const int spectator =
          pair_for_attempt(static_cast<int>(history.size()) - 1).spectator;
      const int w = 1 << (3 - spectator);
      const Amplitudes psi = instantiate(record->family, info);
      Complex r0 = 0.0;
      Complex r1 = 0.0;
      double best = -1.0;
      for (int idx = 0; idx < 8; ++idx) {
        if (idx & w) continue;
        const double mag = std::abs(psi[idx]) + std::abs(psi[idx | w]);
        if (mag > best) {
          best = mag;
          r0 = psi[idx];
          r1 = psi[idx | w];
        }
      }
      const Complex p0 = printed.a_ket == 0 ? info.a() * printed.a_coeff
                                            : info.b() * printed.b_coeff;
      const Complex p1 = printed.a_ket == 1 ? info.a() * printed.a_coeff
                                            : info.b() * printed.b_coeff;
      const double rn = std::sqrt(std::norm(r0) + std::norm(r1));
      const double pn = std::sqrt(std::norm(p0) + std::norm(p1));
      const double mismatch =
          std::abs(1.0 - std::abs(std::conj(p0) * r0 + std::conj(p1) * r1) /
                             (rn * pn));
      if (table != 2) {
        state_dev_13 = std::max(state_dev_13, mismatch);
      } else if (mismatch > 1e-10 && trial == 0) {
        mismatched.push_back(std::string("B") + (row + 1));
      }
    };
    for (const char* row : t1) inspect(1, row);
    for (const char* row : t2) inspect(2, row);
    for (const char* row : t3) inspect(3, row);
  }

  std::sort(mismatched.begin(), mismatched.end());
  const std::vector<std::string> known{"B00", "B03", "B30", "B33"};
  const VerifyReport report = run_verification();
  bool listed = false;
  for (const CheckResult& check : report.checks) {
    if (check.name == "table2-states" && check.expected_discrepancy &&
        check.passed) {
      listed = check.detail.find("B00") != std::string::npos &&
               check.detail.find("B33") != std::string::npos;
    }
  }
  criterion(5, "tables 1-3 probabilities and states match the engine",
            prob_dev <= 1e-10 && state_dev_13 <= 1e-10 && mismatched == known &&
                listed,
            "prob |diff| = " + fmt(prob_dev) + ", state dev (t1/t3) = " +
                fmt(state_dev_13) +
                ", table-2 typo rows flagged by name in the verify report");
}

void fixture_criterion() {
  double max_dev = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double chi = i / 50.0 * kQuarterPi;
    const LinearFamilyState root = initial_family(chi);
    const PairBasis primary = printed_fixture(FixtureTag::Primary, chi);
    const std::array<std::pair<FixtureTag, LinearFamilyState>, 3> cases{
        std::pair{FixtureTag::Primary, root},
        std::pair{FixtureTag::AfterZero,
                  project_pair(root, QubitPair{1, 2}, primary.elements[0].vector)},
        std::pair{FixtureTag::AfterThree,
                  project_pair(root, QubitPair{1, 2}, primary.elements[3].vector)},
    };
    for (const auto& [tag, family] : cases) {
      const QubitPair pair =
          tag == FixtureTag::Primary ? QubitPair{1, 2} : QubitPair{1, 3};
      const PairBasis printed = printed_fixture(tag, chi);
      const PairBasis generated = matched_basis(family, pair);
      for (int k = 0; k < 4; ++k) {
        Complex inner = 0.0;
        for (int e = 0; e < 4; ++e) {
          inner += std::conj(printed.elements[k].vector[e]) *
                   generated.elements[k].vector[e];
        }
        max_dev = std::max(max_dev, std::abs(1.0 - std::abs(inner)));
      }
    }
  }
  criterion(6, "matched bases reproduce the printed fixtures",
            max_dev <= 1e-10,
            "50 chi values, phase-insensitive, max dev = " + fmt(max_dev));
}

void success_criteria() {
  std::mt19937_64 rng(107);
  double max_dev = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const OutcomeTree tree =
        enumerate_tree(testutil::random_chi(rng), testutil::random_info(rng),
                       AttemptPlan{5, Strategy::ContinueGBSM});
    for (const auto& level : tree.records_by_depth()) {
      for (const BranchRecord& record : level) {
        if (record.kind == BranchKind::Success) {
          max_dev = std::max(max_dev,
                             std::abs(1.0 - record.fidelity_after_correction));
        }
      }
    }
  }
  criterion(7, "success leaves reach fidelity 1 after their correction",
            max_dev <= 1e-12,
            "to depth 6, 20 random secrets, max |1-F| = " + fmt(max_dev));

  const OutcomeTree tree = enumerate_tree(0.5, InfoState(0.6, 0.8),
                                          AttemptPlan{3, Strategy::ContinueGBSM});
  std::string counts;
  bool ok = true;
  for (int m = 0; m < 4; ++m) {
    counts += std::to_string(tree.success_leaf_count(m)) + " ";
    ok = ok && tree.success_leaf_count(m) == static_cast<std::size_t>(2) << m;
  }
  // cross-checked against the independent enumeration
  const oracle::Enumeration reference = oracle::enumerate(0.5, 0.6, 0.8, 3, false);
  for (int m = 0; m < 4; ++m) {
    ok = ok && reference.success_counts[m] == 2 << m;
  }
  criterion(8, "success-leaf counts per depth are 2, 4, 8, 16", ok,
            "got " + counts + "and the independent oracle agrees");
}

void monte_carlo_criterion() {
  const MonteCarloEstimate at_one =
      monte_carlo(kQuarterPi, InfoState(0.6, 0.8),
                  AttemptPlan{3, Strategy::ContinueGBSM}, 1000000, 2024);
  const bool ok_one = std::abs(at_one.success_rate - 0.9375) <=
                      4.0 * at_one.standard_error;

  const double chi = chi_from_concurrence(std::sqrt(3.0) / 2.0);  // pi/6
  const InfoState info(0.6, 0.8);
  const OutcomeTree tree =
      enumerate_tree(chi, info, AttemptPlan{1, Strategy::ContinueGBSM});
  const MonteCarloEstimate at_pi6 =
      monte_carlo(chi, info, AttemptPlan{1, Strategy::ContinueGBSM}, 1000000, 2025);
  const bool ok_pi6 = std::abs(at_pi6.success_rate - tree.cumulative_success(1)) <=
                      4.0 * at_pi6.standard_error;
  criterion(9, "Monte Carlo agrees with enumeration within four sigma",
            ok_one && ok_pi6,
            "C=1: " + fmt(at_one.success_rate) + " vs 0.9375; pi/6: " +
                fmt(at_pi6.success_rate) + " vs " +
                fmt(tree.cumulative_success(1)));
}

void maf_criteria() {
  double anchor_dev = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double c = i / 20.0;
    anchor_dev = std::max(
        anchor_dev, std::abs(average_fidelity(chi_from_concurrence(c),
                                              MafPlan{0, Strategy::MeBellFinal}) -
                             maf_sqt(c)));
  }
  criterion(10, "delivered MAF of one ME Bell round equals (2+C)/3",
            anchor_dev <= 1e-8, "20 C values, max |diff| = " + fmt(anchor_dev));

  bool dominance = true;
  bool monotone = true;
  double c1_dev = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double c = i / 20.0;
    const double chi = chi_from_concurrence(c);
    double previous = 2.0;
    for (int m = 0; m <= 2; ++m) {
      const double me = average_fidelity(chi, MafPlan{m, Strategy::MeBellFinal});
      const double cont = average_fidelity(chi, MafPlan{m, Strategy::ContinueGBSM});
      dominance = dominance && me >= cont - 1e-10;
      monotone = monotone && me <= previous + 1e-10;
      previous = me;
      if (i == 20) c1_dev = std::max({c1_dev, std::abs(1.0 - me), std::abs(1.0 - cont)});
    }
  }
  criterion(11, "MAF dominance and monotonicity claims hold pointwise",
            dominance && monotone && c1_dev <= 1e-10,
            std::string("me-final >= continue: ") + (dominance ? "yes" : "no") +
                ", nonincreasing in m: " + (monotone ? "yes" : "no") +
                ", |1 - MAF(C=1)| = " + fmt(c1_dev));
}

void security_criterion() {
  std::mt19937_64 rng(109);
  double mix_dev = 0.0;
  double overlap_dev = 0.0;
  for (int i = 0; i < 100; ++i) {
    const InfoState info = testutil::random_info(rng);
    const DensityMatrix2 rho = bob_pauli_mixture(info);
    mix_dev = std::max({mix_dev, std::abs(rho.at(0, 0) - 0.5),
                        std::abs(rho.at(1, 1) - 0.5), std::abs(rho.at(0, 1)),
                        std::abs(rho.at(1, 0))});
    overlap_dev = std::max(overlap_dev,
                           std::abs(eavesdropper_overlap(info) - 0.5));
  }
  criterion(12, "Pauli mixture is identity/2 and the overlap is exactly 1/2",
            mix_dev <= 1e-14 && overlap_dev <= 1e-14,
            "100 random secrets, max deviations " + fmt(mix_dev) + " / " +
                fmt(overlap_dev));
}

void figure_reproduction_criterion() {
  const char* cli = std::getenv("PQT_CLI");
  const std::string binary = cli ? cli : PQT_CLI_PATH;
  const auto dir = std::filesystem::temp_directory_path();
  const auto csv1 = dir / "pqt_accept1.csv";
  const auto csv2 = dir / "pqt_accept2.csv";
  const std::string command1 =
      binary + " sweep-success --grid 0.05:1.0:20 --out " + csv1.string();
  const std::string command2 =
      binary + " sweep-success --grid 0.05:1.0:20 --out " + csv2.string();
  const bool ran = std::system(command1.c_str()) == 0 &&
                   std::system(command2.c_str()) == 0;

  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  const std::string text1 = slurp(csv1);
  const bool stable = ran && !text1.empty() && text1 == slurp(csv2);

  bool monotone = true;
  std::istringstream lines(text1);
  std::string line;
  std::getline(lines, line);  // header
  std::array<double, 4> previous{-1.0, -1.0, -1.0, -1.0};
  while (std::getline(lines, line)) {
    std::array<double, 4> p{};
    std::istringstream cells(line);
    std::string cell;
    for (int col = 0; std::getline(cells, cell, ','); ++col) {
      if (col >= 2 && col <= 5) p[col - 2] = std::stod(cell);
    }
    for (int m = 0; m < 4; ++m) {
      if (p[m] < previous[m] - 1e-12) monotone = false;
      if (m > 0 && p[m] < p[m - 1] - 1e-12) monotone = false;
    }
    previous = p;
  }
  std::filesystem::remove(csv1);
  std::filesystem::remove(csv2);
  criterion(13, "success-sweep CSV is byte-stable with ordered monotone curves",
            ran && stable && monotone,
            std::string("two runs identical: ") + (stable ? "yes" : "no") +
                ", curves ordered and nondecreasing: " + (monotone ? "yes" : "no"));
}

}  // namespace

int main() {
  closed_form_criteria();
  table_criterion();
  fixture_criterion();
  success_criteria();
  monte_carlo_criterion();
  maf_criteria();
  security_criterion();
  figure_reproduction_criterion();

  if (g_failures == 0) {
    std::printf("acceptance: all 13 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  return 1;
}
