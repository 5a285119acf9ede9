/* C interface to the repeated-GBSM probabilistic teleportation simulator.
 *
 * Every function returns a pqt_status; outputs go through pointers. Handles
 * returned by *_create calls are owned by the caller and released with the
 * matching *_destroy. Strings returned by accessors stay owned by their
 * handle. pqt_last_error() gives a thread-local detail message for the most
 * recent failing call on the calling thread.
 */
#ifndef PQTSIM_H
#define PQTSIM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define PQT_MAX_ATTEMPTS 10

typedef enum pqt_status {
  PQT_OK = 0,
  PQT_ERROR_DOMAIN = 1,
  PQT_ERROR_CONTRACT = 2,
  PQT_ERROR_STRUCTURE = 3,
  PQT_ERROR_DEGENERATE_RESOURCE = 4,
  PQT_ERROR_UNDEFINED_BRANCH = 5,
  PQT_ERROR_LOOKUP = 6,
  PQT_ERROR_INTERNAL = 7
} pqt_status;

typedef enum pqt_strategy {
  PQT_STRATEGY_CONTINUE_GBSM = 0,
  PQT_STRATEGY_ME_BELL_FINAL = 1
} pqt_strategy;

typedef enum pqt_variant {
  PQT_VARIANT_AS_PRINTED = 0,
  PQT_VARIANT_CORRECTED = 1
} pqt_variant;

typedef struct pqt_complex {
  double re;
  double im;
} pqt_complex;

const char* pqt_version(void);
const char* pqt_status_name(pqt_status status);
const char* pqt_last_error(void);

/* --- closed forms --------------------------------------------------- */

pqt_status pqt_concurrence(double chi, double* out);
pqt_status pqt_chi_from_concurrence(double concurrence, double* out);
pqt_status pqt_closed_form_success(int attempts, double concurrence,
                                   pqt_variant variant, double* out);
pqt_status pqt_maf_sqt(double concurrence, double* out);

/* --- exact outcome tree ---------------------------------------------- */

typedef struct pqt_tree pqt_tree;

pqt_status pqt_tree_create(double chi, pqt_complex a, pqt_complex b,
                           int max_attempts, pqt_strategy strategy,
                           pqt_tree** out);
void pqt_tree_destroy(pqt_tree* tree);

pqt_status pqt_tree_cumulative_success(const pqt_tree* tree, int attempt,
                                       double* out);
pqt_status pqt_tree_success_leaf_count(const pqt_tree* tree, int attempt,
                                       size_t* out);
pqt_status pqt_tree_probability_mass(const pqt_tree* tree, double* out);

/* --- seeded sampling -------------------------------------------------- */

typedef struct pqt_run_result {
  int history[PQT_MAX_ATTEMPTS + 1]; /* outcome digits, attempts_used valid */
  int attempts_used;
  int success;                     /* 0 or 1 */
  int correction;                  /* 0=I 1=Z 2=X 3=ZX */
  double fidelity_after_correction;
} pqt_run_result;

pqt_status pqt_sample_run(double chi, pqt_complex a, pqt_complex b,
                          int max_attempts, pqt_strategy strategy,
                          uint64_t seed, pqt_run_result* out);

typedef struct pqt_mc_estimate {
  double success_rate;
  double standard_error;
  uint64_t trials;
  uint64_t successes_by_attempt[PQT_MAX_ATTEMPTS + 1];
  uint64_t failures;
} pqt_mc_estimate;

pqt_status pqt_monte_carlo(double chi, pqt_complex a, pqt_complex b,
                           int max_attempts, pqt_strategy strategy,
                           uint64_t trials, uint64_t seed,
                           pqt_mc_estimate* out);

/* --- maximal average fidelity ----------------------------------------- */

pqt_status pqt_average_fidelity(double chi, int max_attempts,
                                pqt_strategy strategy, double* out);
pqt_status pqt_average_fidelity_order(double chi, int max_attempts,
                                      pqt_strategy strategy, int order,
                                      double* out);

/* --- security identity ------------------------------------------------ */

/* out_matrix is row-major: [rho00, rho01, rho10, rho11]. */
pqt_status pqt_bob_pauli_mixture(pqt_complex a, pqt_complex b,
                                 pqt_complex out_matrix[4]);
pqt_status pqt_eavesdropper_overlap(pqt_complex a, pqt_complex b, double* out);
pqt_status pqt_haar_overlap_estimate(pqt_complex a, pqt_complex b,
                                     uint64_t samples, uint64_t seed,
                                     double* mean, double* std_error);

/* --- verification report ---------------------------------------------- */

typedef struct pqt_verify_report pqt_verify_report;

pqt_status pqt_verify_run(pqt_verify_report** out);
void pqt_verify_report_destroy(pqt_verify_report* report);

size_t pqt_verify_check_count(const pqt_verify_report* report);
const char* pqt_verify_check_name(const pqt_verify_report* report, size_t index);
const char* pqt_verify_check_detail(const pqt_verify_report* report, size_t index);
int pqt_verify_check_passed(const pqt_verify_report* report, size_t index);
int pqt_verify_check_expected_discrepancy(const pqt_verify_report* report,
                                          size_t index);
double pqt_verify_check_deviation(const pqt_verify_report* report, size_t index);
int pqt_verify_all_passed(const pqt_verify_report* report);

#ifdef __cplusplus
}
#endif

#endif /* PQTSIM_H */
