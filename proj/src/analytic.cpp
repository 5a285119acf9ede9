#include "pqtsim/analytic.hpp"

#include <cmath>
#include <string>

namespace pqtsim {

namespace {

void check_kernel_exponent(int n) {
  if (n < 1) throw DomainError("kernel exponent must be >= 1");
}

double ipow(double x, int n) {
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= x;
  return out;
}

}  // namespace

double kernel_x(int n, double chi) {
  check_kernel_exponent(n);
  return ipow(std::cos(chi) * std::sin(chi), n);
}

double kernel_y(int n, double chi) {
  check_kernel_exponent(n);
  return ipow(std::cos(chi), n) + ipow(std::sin(chi), n);
}

double kernel_z(int n, double chi, const InfoState& info) {
  check_kernel_exponent(n);
  return std::norm(info.a()) * ipow(std::cos(chi), n) +
         std::norm(info.b()) * ipow(std::sin(chi), n);
}

NormalizationConstants normalization_constants(double chi, const InfoState& info) {
  const double half_pi = 2.0 * kQuarterPi;
  return NormalizationConstants{1.0 / std::sqrt(kernel_z(4, chi, info)),
                                1.0 / std::sqrt(kernel_z(4, half_pi - chi, info))};
}

double concurrence(double chi) {
  return ResourceSpec(chi).concurrence();
}

double chi_from_concurrence(double concurrence) {
  if (!(concurrence >= 0.0 && concurrence <= 1.0)) {
    throw DomainError("concurrence must lie in [0, 1]");
  }
  return std::asin(concurrence) / 2.0;
}

ClosedFormVariant variant_from(std::string_view name) {
  if (name == "printed") return ClosedFormVariant::AsPrinted;
  if (name == "corrected") return ClosedFormVariant::CorrectedNesting;
  throw LookupError("unknown closed-form variant: " + std::string(name));
}

double closed_form_success(int attempts, double c, ClosedFormVariant variant) {
  if (attempts < 0 || attempts > 3) {
    throw DomainError("closed forms cover attempts 0..3 only");
  }
  if (!(c >= 0.0 && c <= 1.0)) throw DomainError("concurrence must lie in [0, 1]");

  const double c2 = c * c;
  const double d1 = 4.0 - 3.0 * c2;
  const double d2 = 4.0 * d1 * d1 - 3.0 * ipow(c, 6);

  double p = c2 / 2.0;
  if (attempts >= 1) {
    p += ipow(c, 4) / 8.0 + ipow(c, 6) / (8.0 * d1);
  }
  if (attempts >= 2) {
    p += ipow(c, 6) / 32.0 + ipow(c, 8) / (32.0 * d1) +
         ipow(c, 12) / (32.0 * ipow(d1, 3)) +
         ipow(c, 18) / (32.0 * ipow(d1, 3) * d2);
  }
  if (attempts >= 3) {
    // Last denominator bracket: as typeset vs the nesting that matches the
    // exact enumeration, 4 D1^2 D2^2 - 3 C^18 (from cos^54 + sin^54).
    const double bracket =
        variant == ClosedFormVariant::AsPrinted
            ? 4.0 * d1 * d1 * ipow(d1 * d1 - ipow(c, 6), 2) - 3.0 * ipow(c, 18)
            : 4.0 * d1 * d1 * d2 * d2 - 3.0 * ipow(c, 18);
    p += ipow(c, 8) / 128.0 + ipow(c, 10) / (128.0 * d1) +
         ipow(c, 14) / (128.0 * ipow(d1, 3)) +
         ipow(c, 18) / (128.0 * ipow(d1, 5)) +
         ipow(c, 20) / (128.0 * ipow(d1, 3) * d2) +
         ipow(c, 24) / (128.0 * ipow(d1, 5) * d2) +
         ipow(c, 36) / (128.0 * ipow(d1, 5) * ipow(d2, 3)) +
         ipow(c, 54) / (128.0 * ipow(d1, 5) * ipow(d2, 3) * bracket);
  }
  return p;
}

namespace {

// Row expressions exactly as printed. chi~ denotes pi/2 - chi.
double row_probability(int table, const std::string& row, double chi,
                       const InfoState& info) {
  const double flip = 2.0 * kQuarterPi - chi;
  auto X = [&](int n) { return kernel_x(n, chi); };
  auto Y = [&](int n) { return kernel_y(n, chi); };
  auto Z = [&](int n) { return kernel_z(n, chi, info); };
  auto Zf = [&](int n) { return kernel_z(n, flip, info); };

  if (table == 1) {
    if (row == "P0") return Z(4);
    if (row == "P1") return X(2);
    if (row == "P2") return X(2);
    if (row == "P3") return Zf(4);
  } else if (table == 2) {
    if (row == "P00") return Z(12) / (Z(4) * Y(6));
    if (row == "P01") return X(6) / (Z(4) * Y(6));
    if (row == "P02") return X(4) / Z(4);
    if (row == "P03") return X(2);
    if (row == "P30") return X(2);
    if (row == "P31") return X(4) / Zf(4);
    if (row == "P32") return X(6) / (Zf(4) * Y(6));
    if (row == "P33") return Zf(12) / (Zf(4) * Y(6));
  } else if (table == 3) {
    if (row == "P000") return Z(36) / (Z(12) * Y(6) * Y(18));
    if (row == "P001") return X(18) / (Z(12) * Y(6) * Y(18));
    if (row == "P002") return X(12) / (Z(12) * Y(6) * Y(6));
    if (row == "P003") return X(6) / (Y(6) * Y(6));
    if (row == "P030") return X(6) / (Z(4) * Y(6));
    if (row == "P031") return Z(12) / (Z(4) * Y(6));
    if (row == "P032") return X(2);
    if (row == "P033") return X(4) / Z(4);
    if (row == "P300") return X(4) / Zf(4);
    if (row == "P301") return X(2);
    if (row == "P302") return Zf(12) / (Zf(4) * Y(6));
    if (row == "P303") return kernel_x(6, flip) / (Zf(4) * Y(6));
    if (row == "P330") return X(6) / (Y(6) * Y(6));
    if (row == "P331") return X(12) / (Zf(12) * Y(6) * Y(6));
    if (row == "P332") return X(18) / (Zf(12) * Y(6) * Y(18));
    if (row == "P333") return Zf(36) / (Zf(12) * Y(6) * Y(18));
  }
  throw LookupError("unknown table row: table " + std::to_string(table) + " " + row);
}

}  // namespace

double table_row_probability(int table, std::string_view row, double chi,
                             const InfoState& info) {
  return row_probability(table, std::string(row), chi, info);
}

PrintedRowState table_row_state(int table, std::string_view row_view, double chi) {
  const std::string row(row_view);
  const double c = std::cos(chi);
  const double s = std::sin(chi);
  auto cp = [&](int n) { return ipow(c, n); };
  auto sp = [&](int n) { return ipow(s, n); };

  if (table == 1) {
    if (row == "P0") return {0, cp(2), sp(2)};
    if (row == "P1") return {0, 1.0, -1.0};
    if (row == "P2") return {1, 1.0, 1.0};
    if (row == "P3") return {1, sp(2), -cp(2)};
  } else if (table == 2) {
    if (row == "P00") return {0, c, s};
    if (row == "P01") return {0, 1.0, -1.0};
    if (row == "P02") return {1, 1.0, 1.0};
    if (row == "P03") return {1, s, -c};
    if (row == "P30") return {0, c, s};
    if (row == "P31") return {0, 1.0, -1.0};
    if (row == "P32") return {1, 1.0, 1.0};
    if (row == "P33") return {1, s, -c};
  } else if (table == 3) {
    if (row == "P000") return {0, cp(18), sp(18)};
    if (row == "P001") return {0, 1.0, -1.0};
    if (row == "P002") return {1, 1.0, 1.0};
    if (row == "P003") return {1, cp(6), -sp(6)};
    if (row == "P030") return {0, 1.0, 1.0};
    if (row == "P031") return {0, cp(6), -sp(6)};
    if (row == "P032") return {1, cp(2), sp(2)};
    if (row == "P033") return {1, 1.0, -1.0};
    if (row == "P300") return {0, 1.0, 1.0};
    if (row == "P301") return {0, sp(2), -cp(2)};
    if (row == "P302") return {1, sp(6), cp(6)};
    if (row == "P303") return {1, 1.0, -1.0};
    if (row == "P330") return {0, sp(6), cp(6)};
    if (row == "P331") return {0, 1.0, -1.0};
    if (row == "P332") return {1, 1.0, 1.0};
    if (row == "P333") return {1, sp(18), -cp(18)};
  }
  throw LookupError("unknown table row: table " + std::to_string(table) + " " + row);
}

double maf_sqt(double concurrence) {
  if (!(concurrence >= 0.0 && concurrence <= 1.0)) {
    throw DomainError("concurrence must lie in [0, 1]");
  }
  return (2.0 + concurrence) / 3.0;
}

}  // namespace pqtsim
