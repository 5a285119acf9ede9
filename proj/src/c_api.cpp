#include "pqtsim.h"

#include <cstring>
#include <string>

#include "pqtsim/analytic.hpp"
#include "pqtsim/engine.hpp"
#include "pqtsim/maf.hpp"
#include "pqtsim/verify.hpp"

namespace {

thread_local std::string g_last_error;

pqt_status fail(pqt_status status, const char* what) {
  g_last_error = what;
  return status;
}

template <typename Fn>
pqt_status guarded(Fn&& fn) {
  try {
    fn();
    return PQT_OK;
  } catch (const pqtsim::DomainError& e) {
    return fail(PQT_ERROR_DOMAIN, e.what());
  } catch (const pqtsim::ContractError& e) {
    return fail(PQT_ERROR_CONTRACT, e.what());
  } catch (const pqtsim::StructureError& e) {
    return fail(PQT_ERROR_STRUCTURE, e.what());
  } catch (const pqtsim::DegenerateResourceError& e) {
    return fail(PQT_ERROR_DEGENERATE_RESOURCE, e.what());
  } catch (const pqtsim::UndefinedBranchError& e) {
    return fail(PQT_ERROR_UNDEFINED_BRANCH, e.what());
  } catch (const pqtsim::LookupError& e) {
    return fail(PQT_ERROR_LOOKUP, e.what());
  } catch (const std::exception& e) {
    return fail(PQT_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(PQT_ERROR_INTERNAL, "unknown error");
  }
}

pqtsim::InfoState make_info(pqt_complex a, pqt_complex b) {
  return pqtsim::InfoState(pqtsim::Complex(a.re, a.im),
                           pqtsim::Complex(b.re, b.im));
}

pqtsim::AttemptPlan make_plan(int max_attempts, pqt_strategy strategy) {
  return pqtsim::AttemptPlan{max_attempts,
                             strategy == PQT_STRATEGY_ME_BELL_FINAL
                                 ? pqtsim::Strategy::MeBellFinal
                                 : pqtsim::Strategy::ContinueGBSM};
}

int correction_code(pqtsim::PauliCorrection corr) {
  switch (corr) {
    case pqtsim::PauliCorrection::Identity: return 0;
    case pqtsim::PauliCorrection::Z: return 1;
    case pqtsim::PauliCorrection::X: return 2;
    case pqtsim::PauliCorrection::ZX: return 3;
  }
  return 0;
}

}  // namespace

struct pqt_tree {
  pqtsim::OutcomeTree tree;
};

struct pqt_verify_report {
  pqtsim::VerifyReport report;
};

extern "C" {

const char* pqt_version(void) { return "0.1.0"; }

const char* pqt_status_name(pqt_status status) {
  switch (status) {
    case PQT_OK: return "ok";
    case PQT_ERROR_DOMAIN: return "domain-error";
    case PQT_ERROR_CONTRACT: return "contract-error";
    case PQT_ERROR_STRUCTURE: return "structure-error";
    case PQT_ERROR_DEGENERATE_RESOURCE: return "degenerate-resource";
    case PQT_ERROR_UNDEFINED_BRANCH: return "undefined-branch";
    case PQT_ERROR_LOOKUP: return "lookup-error";
    case PQT_ERROR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* pqt_last_error(void) { return g_last_error.c_str(); }

pqt_status pqt_concurrence(double chi, double* out) {
  if (!out) return fail(PQT_ERROR_CONTRACT, "null output pointer");
  return guarded([&] { *out = pqtsim::concurrence(chi); });
}

pqt_status pqt_chi_from_concurrence(double concurrence, double* out) {
  if (!out) return fail(PQT_ERROR_CONTRACT, "null output pointer");
  return guarded([&] { *out = pqtsim::chi_from_concurrence(concurrence); });
}

pqt_status pqt_closed_form_success(int attempts, double concurrence,
                                   pqt_variant variant, double* out) {
  if (!out) return fail(PQT_ERROR_CONTRACT, "null output pointer");
  return guarded([&] {
    *out = pqtsim::closed_form_success(
        attempts, concurrence,
        variant == PQT_VARIANT_AS_PRINTED
            ? pqtsim::ClosedFormVariant::AsPrinted
            : pqtsim::ClosedFormVariant::CorrectedNesting);
  });
}

pqt_status pqt_maf_sqt(double concurrence, double* out) {
  if (!out) return fail(PQT_ERROR_CONTRACT, "null output pointer");
  return guarded([&] { *out = pqtsim::maf_sqt(concurrence); });
}

pqt_status pqt_tree_create(double chi, pqt_complex a, pqt_complex b,
                           int max_attempts, pqt_strategy strategy,
                           pqt_tree** out) {
  if (!out) return fail(PQT_ERROR_CONTRACT, "null output pointer");
  *out = nullptr;
  return guarded([&] {
    *out = new pqt_tree{pqtsim::enumerate_tree(chi, make_info(a, b),
                                               make_plan(max_attempts, strategy))};
  });
}

void pqt_tree_destroy(pqt_tree* tree) { delete tree; }

pqt_status pqt_tree_cumulative_success(const pqt_tree* tree, int attempt,
                                       double* out) {
  if (!tree || !out) return fail(PQT_ERROR_CONTRACT, "null pointer");
  return guarded([&] { *out = tree->tree.cumulative_success(attempt); });
}

pqt_status pqt_tree_success_leaf_count(const pqt_tree* tree, int attempt,
                                       size_t* out) {
  if (!tree || !out) return fail(PQT_ERROR_CONTRACT, "null pointer");
  return guarded([&] { *out = tree->tree.success_leaf_count(attempt); });
}

pqt_status pqt_tree_probability_mass(const pqt_tree* tree, double* out) {
  if (!tree || !out) return fail(PQT_ERROR_CONTRACT, "null pointer");
  return guarded([&] { *out = tree->tree.leaf_probability_mass(); });
}

pqt_status pqt_sample_run(double chi, pqt_complex a, pqt_complex b,
                          int max_attempts, pqt_strategy strategy,
                          uint64_t seed, pqt_run_result* out) {
  if (!out) return fail(PQT_ERROR_CONTRACT, "null output pointer");
  return guarded([&] {
    std::mt19937_64 rng(seed);
    const pqtsim::RunResult result = pqtsim::sample_run(
        chi, make_info(a, b), make_plan(max_attempts, strategy), rng);
    std::memset(out, 0, sizeof(*out));
    for (std::size_t i = 0; i < result.history.size(); ++i) {
      out->history[i] = result.history[i];
    }
    out->attempts_used = result.attempts_used;
    out->success = result.success ? 1 : 0;
    out->correction = correction_code(result.correction);
    out->fidelity_after_correction = result.fidelity_after_correction;
  });
}

pqt_status pqt_monte_carlo(double chi, pqt_complex a, pqt_complex b,
                           int max_attempts, pqt_strategy strategy,
                           uint64_t trials, uint64_t seed,
                           pqt_mc_estimate* out) {
  if (!out) return fail(PQT_ERROR_CONTRACT, "null output pointer");
  return guarded([&] {
    const pqtsim::MonteCarloEstimate est = pqtsim::monte_carlo(
        chi, make_info(a, b), make_plan(max_attempts, strategy), trials, seed);
    std::memset(out, 0, sizeof(*out));
    out->success_rate = est.success_rate;
    out->standard_error = est.standard_error;
    out->trials = est.trials;
    for (std::size_t i = 0; i < est.successes_by_attempt.size(); ++i) {
      out->successes_by_attempt[i] = est.successes_by_attempt[i];
    }
    out->failures = est.failures;
  });
}

pqt_status pqt_average_fidelity(double chi, int max_attempts,
                                pqt_strategy strategy, double* out) {
  return pqt_average_fidelity_order(chi, max_attempts, strategy,
                                    pqtsim::kDefaultQuadratureOrder, out);
}

pqt_status pqt_average_fidelity_order(double chi, int max_attempts,
                                      pqt_strategy strategy, int order,
                                      double* out) {
  if (!out) return fail(PQT_ERROR_CONTRACT, "null output pointer");
  return guarded([&] {
    *out = pqtsim::average_fidelity(chi, make_plan(max_attempts, strategy), order);
  });
}

pqt_status pqt_bob_pauli_mixture(pqt_complex a, pqt_complex b,
                                 pqt_complex out_matrix[4]) {
  if (!out_matrix) return fail(PQT_ERROR_CONTRACT, "null output pointer");
  return guarded([&] {
    const pqtsim::DensityMatrix2 rho = pqtsim::bob_pauli_mixture(make_info(a, b));
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        out_matrix[2 * r + c] =
            pqt_complex{rho.at(r, c).real(), rho.at(r, c).imag()};
      }
    }
  });
}

pqt_status pqt_eavesdropper_overlap(pqt_complex a, pqt_complex b, double* out) {
  if (!out) return fail(PQT_ERROR_CONTRACT, "null output pointer");
  return guarded([&] { *out = pqtsim::eavesdropper_overlap(make_info(a, b)); });
}

pqt_status pqt_haar_overlap_estimate(pqt_complex a, pqt_complex b,
                                     uint64_t samples, uint64_t seed,
                                     double* mean, double* std_error) {
  if (!mean || !std_error) return fail(PQT_ERROR_CONTRACT, "null output pointer");
  return guarded([&] {
    const pqtsim::HaarOverlapEstimate est =
        pqtsim::haar_overlap_estimate(make_info(a, b), samples, seed);
    *mean = est.mean;
    *std_error = est.std_error;
  });
}

pqt_status pqt_verify_run(pqt_verify_report** out) {
  if (!out) return fail(PQT_ERROR_CONTRACT, "null output pointer");
  *out = nullptr;
  return guarded(
      [&] { *out = new pqt_verify_report{pqtsim::run_verification()}; });
}

void pqt_verify_report_destroy(pqt_verify_report* report) { delete report; }

size_t pqt_verify_check_count(const pqt_verify_report* report) {
  return report ? report->report.checks.size() : 0;
}

const char* pqt_verify_check_name(const pqt_verify_report* report, size_t index) {
  if (!report || index >= report->report.checks.size()) return nullptr;
  return report->report.checks[index].name.c_str();
}

const char* pqt_verify_check_detail(const pqt_verify_report* report,
                                    size_t index) {
  if (!report || index >= report->report.checks.size()) return nullptr;
  return report->report.checks[index].detail.c_str();
}

int pqt_verify_check_passed(const pqt_verify_report* report, size_t index) {
  if (!report || index >= report->report.checks.size()) return 0;
  return report->report.checks[index].passed ? 1 : 0;
}

int pqt_verify_check_expected_discrepancy(const pqt_verify_report* report,
                                          size_t index) {
  if (!report || index >= report->report.checks.size()) return 0;
  return report->report.checks[index].expected_discrepancy ? 1 : 0;
}

double pqt_verify_check_deviation(const pqt_verify_report* report, size_t index) {
  if (!report || index >= report->report.checks.size()) return 0.0;
  return report->report.checks[index].deviation;
}

int pqt_verify_all_passed(const pqt_verify_report* report) {
  return report && report->report.all_passed() ? 1 : 0;
}

}  // extern "C"
