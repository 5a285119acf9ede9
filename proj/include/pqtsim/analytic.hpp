#pragma once

#include <string_view>

#include "pqtsim/types.hpp"

namespace pqtsim {

// Trig kernels X^n = cos^n sin^n, Y^n = cos^n + sin^n,
// Z^n = |a|^2 cos^n + |b|^2 sin^n. Computed from chi directly.
double kernel_x(int n, double chi);
double kernel_y(int n, double chi);
double kernel_z(int n, double chi, const InfoState& info);

struct NormalizationConstants {
  double n1;  // [Z^4(chi)]^{-1/2}
  double n2;  // [Z^4(pi/2 - chi)]^{-1/2}
};

NormalizationConstants normalization_constants(double chi, const InfoState& info);

double concurrence(double chi);
double chi_from_concurrence(double concurrence);

// AsPrinted keeps the final bracket of the third-repeat formula exactly as
// typeset; CorrectedNesting replaces it with the bracket the exact tree
// enumeration confirms (the printed one goes negative near C = 1).
enum class ClosedFormVariant { AsPrinted, CorrectedNesting };

ClosedFormVariant variant_from(std::string_view name);  // "printed", "corrected"

double closed_form_success(int attempts, double concurrence,
                           ClosedFormVariant variant = ClosedFormVariant::CorrectedNesting);

// Conditional probability of a labeled outcome row ("P0", "P03", "P331", ...),
// as printed. Table 2/3 rows are conditional on their history prefix.
double table_row_probability(int table, std::string_view row, double chi,
                             const InfoState& info);

// The "State of particle" column as printed: the residual is
// a*a_coeff|a_ket> + b*b_coeff|1 - a_ket>, unnormalized.
struct PrintedRowState {
  int a_ket;
  double a_coeff;
  double b_coeff;
};

PrintedRowState table_row_state(int table, std::string_view row, double chi);

// Maximal average fidelity of single-measurement teleportation over the
// NME resource: (2 + C) / 3.
double maf_sqt(double concurrence);

}  // namespace pqtsim
