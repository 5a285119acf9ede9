#include "pqtsim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "pqtsim/analytic.hpp"
#include "pqtsim/maf.hpp"

namespace pqtsim {

namespace {

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

InfoState random_info(std::mt19937_64& rng) {
  const double pi = 4.0 * kQuarterPi;
  return InfoState::from_bloch(uniform_unit(rng) * pi,
                               uniform_unit(rng) * 2.0 * pi);
}

double random_chi(std::mt19937_64& rng) {
  // Keep away from the degenerate endpoint.
  return (0.02 + 0.98 * uniform_unit(rng)) * kQuarterPi;
}

std::string format(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

struct Collector {
  std::vector<CheckResult> checks;

  void add(std::string name, bool passed, double deviation, std::string detail,
           bool expected = false) {
    checks.push_back(CheckResult{std::move(name), passed, expected, deviation,
                                 std::move(detail)});
  }
};

// Success probabilities from the tree against the closed forms.
void check_closed_forms(Collector& out) {
  std::mt19937_64 rng(11);
  std::array<double, 4> tol{1e-12, 1e-10, 1e-10, 1e-10};
  std::array<double, 4> max_dev{};
  for (int i = 0; i < 50; ++i) {
    const double c = (i + 1) / 50.0;
    const double chi = chi_from_concurrence(c);
    const InfoState info = random_info(rng);
    const OutcomeTree tree =
        enumerate_tree(chi, info, AttemptPlan{3, Strategy::ContinueGBSM});
    for (int m = 0; m < 4; ++m) {
      const double expected =
          closed_form_success(m, c, ClosedFormVariant::CorrectedNesting);
      max_dev[m] = std::max(max_dev[m],
                            std::abs(tree.cumulative_success(m) - expected));
    }
  }
  const char* names[4] = {"eq1-primary-success", "eq2-first-repeat",
                          "eq3-second-repeat", "eq4-third-repeat-corrected"};
  for (int m = 0; m < 4; ++m) {
    out.add(names[m], max_dev[m] <= tol[m], max_dev[m],
            "tree vs closed form over 50 concurrence values, max |diff| = " +
                format(max_dev[m]));
  }

  // Anchors at C = 1.
  const OutcomeTree tree = enumerate_tree(
      kQuarterPi, InfoState(0.6, 0.8), AttemptPlan{3, Strategy::ContinueGBSM});
  const double anchors[4] = {0.5, 0.75, 0.875, 0.9375};
  double anchor_dev = 0.0;
  for (int m = 0; m < 4; ++m) {
    anchor_dev =
        std::max(anchor_dev, std::abs(tree.cumulative_success(m) - anchors[m]));
  }
  out.add("c1-anchors", anchor_dev <= 1e-12, anchor_dev,
          "cumulative success at C=1 vs {0.5, 0.75, 0.875, 0.9375}");

  // The as-printed third-repeat formula: a known typo, reported not failed.
  const double printed = closed_form_success(3, 1.0, ClosedFormVariant::AsPrinted);
  const double dev = 0.9375 - printed;
  out.add("eq4-third-repeat-as-printed",
          std::abs(dev - 1.0 / 96.0) <= 1e-12, dev,
          "printed bracket gives " + format(printed) +
              " at C=1 (expected discrepancy 0.0104166... vs 0.9375; "
              "suspected typo in the nested denominator)",
          /*expected=*/true);
}

void check_tables(Collector& out) {
  std::mt19937_64 rng(23);
  const char* t1[] = {"P0", "P1", "P2", "P3"};
  const char* t2[] = {"P00", "P01", "P02", "P03", "P30", "P31", "P32", "P33"};
  const char* t3[] = {"P000", "P001", "P002", "P003", "P030", "P031",
                      "P032", "P033", "P300", "P301", "P302", "P303",
                      "P330", "P331", "P332", "P333"};

  auto history_of = [](std::string_view row) {
    std::vector<int> h;
    for (char ch : row.substr(1)) h.push_back(ch - '0');
    return h;
  };

  double prob_dev[3] = {0.0, 0.0, 0.0};
  double state_dev[2] = {0.0, 0.0};  // tables 1 and 3
  std::vector<std::string> state_mismatches;

  for (int trial = 0; trial < 20; ++trial) {
    const double chi = random_chi(rng);
    const InfoState info = random_info(rng);
    const OutcomeTree tree =
        enumerate_tree(chi, info, AttemptPlan{2, Strategy::ContinueGBSM});

    auto find_record = [&](const std::vector<int>& history) -> const BranchRecord& {
      for (const BranchRecord& r : tree.records_by_depth()[history.size() - 1]) {
        if (r.history == history) return r;
      }
      throw LookupError("branch not found");
    };

    auto run_table = [&](int table, const char* const* rows, int count) {
      for (int i = 0; i < count; ++i) {
        const std::vector<int> history = history_of(rows[i]);
        const BranchRecord& record = find_record(history);
        const double printed = table_row_probability(table, rows[i], chi, info);
        prob_dev[table - 1] = std::max(
            prob_dev[table - 1],
            std::abs(printed - record.conditional_probability));

        // State column, compared up to normalization and global phase via
        // the overlap of normalized residual 2-vectors.
        const PrintedRowState ps = table_row_state(table, rows[i], chi);
        const int spectator =
            pair_for_attempt(static_cast<int>(history.size()) - 1).spectator;
        const int w = 1 << (3 - spectator);
        const Amplitudes psi = instantiate(record.family, info);
        Complex r0 = 0.0, r1 = 0.0;
        double best = -1.0;
        for (int idx = 0; idx < 8; ++idx) {
          if (idx & w) continue;
          const double mag = std::hypot(std::abs(psi[idx]), std::abs(psi[idx | w]));
          if (mag > best) {
            best = mag;
            r0 = psi[idx];
            r1 = psi[idx | w];
          }
        }
        Complex p0 = info.a() * ps.a_coeff * (ps.a_ket == 0 ? 1.0 : 0.0) +
                     info.b() * ps.b_coeff * (ps.a_ket == 0 ? 0.0 : 1.0);
        Complex p1 = info.a() * ps.a_coeff * (ps.a_ket == 1 ? 1.0 : 0.0) +
                     info.b() * ps.b_coeff * (ps.a_ket == 1 ? 0.0 : 1.0);
        const double rn = std::sqrt(std::norm(r0) + std::norm(r1));
        const double pn = std::sqrt(std::norm(p0) + std::norm(p1));
        double mismatch = 1.0;
        if (rn > 0.0 && pn > 0.0) {
          const double overlap =
              std::abs(std::conj(p0) * r0 + std::conj(p1) * r1) / (rn * pn);
          mismatch = std::abs(1.0 - overlap);
        }
        if (table == 1) state_dev[0] = std::max(state_dev[0], mismatch);
        if (table == 3) state_dev[1] = std::max(state_dev[1], mismatch);
        if (table == 2 && mismatch > 1e-10 && trial == 0) {
          state_mismatches.push_back(std::string("B") +
                                     std::string(rows[i]).substr(1));
        }
      }
    };
    run_table(1, t1, 4);
    run_table(2, t2, 8);
    run_table(3, t3, 16);
  }

  out.add("table1-probabilities", prob_dev[0] <= 1e-10, prob_dev[0],
          "printed vs engine conditionals, max |diff| = " + format(prob_dev[0]));
  out.add("table2-probabilities", prob_dev[1] <= 1e-10, prob_dev[1],
          "printed vs engine conditionals, max |diff| = " + format(prob_dev[1]));
  out.add("table3-probabilities", prob_dev[2] <= 1e-10, prob_dev[2],
          "printed vs engine conditionals, max |diff| = " + format(prob_dev[2]));
  out.add("table1-states", state_dev[0] <= 1e-10, state_dev[0],
          "printed residuals match engine up to phase");
  out.add("table3-states", state_dev[1] <= 1e-10, state_dev[1],
          "printed residuals match engine up to phase");

  std::sort(state_mismatches.begin(), state_mismatches.end());
  const std::vector<std::string> known{"B00", "B03", "B30", "B33"};
  std::string listed;
  for (const std::string& s : state_mismatches) listed += s + " ";
  out.add("table2-states", state_mismatches == known,
          static_cast<double>(state_mismatches.size()),
          "rows " + listed +
              "as printed disagree with their own probability columns and "
              "Table 3 continuations (dropped exponents); engine residuals "
              "follow the probability columns",
          /*expected=*/true);
}

void check_fixtures(Collector& out) {
  double max_dev = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double chi = i / 50.0 * kQuarterPi;
    const LinearFamilyState root = initial_family(chi);
    struct Case {
      FixtureTag tag;
      LinearFamilyState family;
      QubitPair pair;
    };
    const PairBasis primary = printed_fixture(FixtureTag::Primary, chi);
    std::vector<Case> cases{
        {FixtureTag::Primary, root, QubitPair{1, 2}},
        {FixtureTag::AfterZero,
         project_pair(root, QubitPair{1, 2}, primary.elements[0].vector),
         QubitPair{1, 3}},
        {FixtureTag::AfterThree,
         project_pair(root, QubitPair{1, 2}, primary.elements[3].vector),
         QubitPair{1, 3}},
    };
    for (const Case& c : cases) {
      const PairBasis printed = printed_fixture(c.tag, chi);
      const PairBasis generated = matched_basis(c.family, c.pair);
      for (int k = 0; k < 4; ++k) {
        // per-vector comparison up to a global phase
        Complex inner = 0.0;
        for (int e = 0; e < 4; ++e) {
          inner += std::conj(printed.elements[k].vector[e]) *
                   generated.elements[k].vector[e];
        }
        max_dev = std::max(max_dev, std::abs(1.0 - std::abs(inner)));
      }
    }
  }
  out.add("basis-fixtures", max_dev <= 1e-10, max_dev,
          "matched_basis reproduces the printed primary/after-0/after-3 bases "
          "over 50 chi values, max phase-insensitive deviation = " +
              format(max_dev));
}

void check_success_structure(Collector& out) {
  // Leaf counts by depth at a generic resource.
  const OutcomeTree tree =
      enumerate_tree(0.4, InfoState(0.8, 0.6), AttemptPlan{3, Strategy::ContinueGBSM});
  bool counts_ok = true;
  std::string counts;
  for (int m = 0; m < 4; ++m) {
    const std::size_t count = tree.success_leaf_count(m);
    counts += std::to_string(count) + " ";
    if (count != static_cast<std::size_t>(2) << m) counts_ok = false;
  }
  out.add("success-leaf-counts", counts_ok, 0.0,
          "per attempt: " + counts + "(expected 2 4 8 16)");

  // Success exactness to depth 6 for random secrets.
  std::mt19937_64 rng(31);
  double max_dev = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double chi = random_chi(rng);
    const InfoState info = random_info(rng);
    const OutcomeTree deep =
        enumerate_tree(chi, info, AttemptPlan{5, Strategy::ContinueGBSM});
    for (const auto& level : deep.records_by_depth()) {
      for (const BranchRecord& record : level) {
        if (record.kind == BranchKind::Success) {
          max_dev = std::max(max_dev,
                             std::abs(1.0 - record.fidelity_after_correction));
        }
      }
    }
  }
  out.add("success-exactness", max_dev <= 1e-12, max_dev,
          "corrected success fidelity to depth 6, max |1 - F| = " +
              format(max_dev));

  // Probability mass and secret-independence.
  std::mt19937_64 rng2(37);
  double mass_dev = 0.0;
  double info_dev = 0.0;
  const double chi = 0.31;
  std::array<double, 4> reference{};
  for (int trial = 0; trial < 10; ++trial) {
    const InfoState info = random_info(rng2);
    const OutcomeTree t =
        enumerate_tree(chi, info, AttemptPlan{3, Strategy::ContinueGBSM});
    mass_dev = std::max(mass_dev, std::abs(1.0 - t.leaf_probability_mass()));
    for (int m = 0; m < 4; ++m) {
      if (trial == 0) {
        reference[m] = t.cumulative_success(m);
      } else {
        info_dev =
            std::max(info_dev, std::abs(t.cumulative_success(m) - reference[m]));
      }
    }
  }
  out.add("tree-probability-mass", mass_dev <= 1e-10, mass_dev,
          "success + truncated leaves sum to 1");
  out.add("secret-independence", info_dev <= 1e-10, info_dev,
          "cumulative success identical across 10 random secrets");
}

void check_security(Collector& out) {
  std::mt19937_64 rng(41);
  double mix_dev = 0.0;
  double overlap_dev = 0.0;
  for (int i = 0; i < 100; ++i) {
    const InfoState info = random_info(rng);
    const DensityMatrix2 rho = bob_pauli_mixture(info);
    mix_dev = std::max({mix_dev, std::abs(rho.at(0, 0) - 0.5),
                        std::abs(rho.at(1, 1) - 0.5), std::abs(rho.at(0, 1)),
                        std::abs(rho.at(1, 0))});
    overlap_dev =
        std::max(overlap_dev, std::abs(eavesdropper_overlap(info) - 0.5));
  }
  out.add("security-pauli-mixture", mix_dev <= 1e-14, mix_dev,
          "Bob's mixture equals identity/2 for 100 random secrets");
  out.add("security-overlap", overlap_dev <= 1e-14, overlap_dev,
          "Tr[rho_Bob rho_I] = 1/2 for 100 random secrets");

  const HaarOverlapEstimate est =
      haar_overlap_estimate(InfoState(1.0, 0.0), 100000, 20240);
  const double dev = std::abs(est.mean - 0.5);
  out.add("security-haar-comparison", dev <= 3.0 * est.std_error, dev,
          "Haar-random overlap mean " + format(est.mean) + " within 3 sigma (" +
              format(est.std_error) + ") of 1/2");
}

void check_maf(Collector& out) {
  double anchor_dev = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double c = i / 20.0;
    const double chi = chi_from_concurrence(c);
    const double maf = average_fidelity(chi, MafPlan{0, Strategy::MeBellFinal});
    anchor_dev = std::max(anchor_dev, std::abs(maf - maf_sqt(c)));
  }
  out.add("maf-anchor", anchor_dev <= 1e-8, anchor_dev,
          "average_fidelity(me-final, m=0) vs (2+C)/3, max |diff| = " +
              format(anchor_dev));

  bool dominance = true;
  bool monotone = true;
  double at_c1_dev = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double c = i / 20.0;
    const double chi = chi_from_concurrence(c);
    double previous_me = 2.0;
    for (int m = 0; m <= 2; ++m) {
      const double me = average_fidelity(chi, MafPlan{m, Strategy::MeBellFinal});
      const double cont =
          average_fidelity(chi, MafPlan{m, Strategy::ContinueGBSM});
      if (me < cont - 1e-10) dominance = false;
      if (me > previous_me + 1e-10) monotone = false;
      previous_me = me;
      if (c == 1.0) {
        at_c1_dev = std::max({at_c1_dev, std::abs(1.0 - me), std::abs(1.0 - cont)});
      }
    }
  }
  out.add("maf-dominance", dominance, 0.0,
          "me-final >= continue at equal m on a 20-point grid");
  out.add("maf-monotone-in-m", monotone, 0.0,
          "me-final MAF nonincreasing in m on a 20-point grid");
  out.add("maf-at-c1", at_c1_dev <= 1e-10, at_c1_dev,
          "MAF = 1 at C = 1 for all plans");
}

void check_monte_carlo(Collector& out) {
  {
    const MonteCarloEstimate est =
        monte_carlo(kQuarterPi, InfoState(0.6, 0.8),
                    AttemptPlan{3, Strategy::ContinueGBSM}, 1000000, 42);
    const double dev = std::abs(est.success_rate - 0.9375);
    out.add("monte-carlo-c1", dev <= 4.0 * est.standard_error, dev,
            "empirical " + format(est.success_rate) + " vs exact 0.9375 (4 sigma = " +
                format(4.0 * est.standard_error) + ")");
  }
  {
    const double chi = kQuarterPi * 2.0 / 3.0;  // pi/6
    const InfoState info(1.0, 0.0);
    const OutcomeTree tree =
        enumerate_tree(chi, info, AttemptPlan{1, Strategy::ContinueGBSM});
    const double exact = tree.cumulative_success(1);
    const MonteCarloEstimate est =
        monte_carlo(chi, info, AttemptPlan{1, Strategy::ContinueGBSM}, 1000000, 43);
    const double dev = std::abs(est.success_rate - exact);
    out.add("monte-carlo-pi6", dev <= 4.0 * est.standard_error, dev,
            "empirical " + format(est.success_rate) + " vs exact " + format(exact));
  }
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

std::string VerifyReport::render() const {
  std::ostringstream os;
  for (const CheckResult& c : checks) {
    const char* status = c.expected_discrepancy ? "NOTE" : (c.passed ? "PASS" : "FAIL");
    os << "[" << status << "] " << c.name << ": " << c.detail << "\n";
  }
  os << (all_passed() ? "verification passed" : "verification FAILED") << " ("
     << checks.size() << " checks)\n";
  return os.str();
}

VerifyReport run_verification() {
  Collector collector;
  check_closed_forms(collector);
  check_tables(collector);
  check_fixtures(collector);
  check_success_structure(collector);
  check_security(collector);
  check_maf(collector);
  check_monte_carlo(collector);
  return VerifyReport{std::move(collector.checks)};
}

}  // namespace pqtsim
