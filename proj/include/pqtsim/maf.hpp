#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pqtsim/engine.hpp"

namespace pqtsim {

inline constexpr int kDefaultQuadratureOrder = 128;

// Haar-averaged fidelity of the delivered qubit under the plan: success
// leaves count as 1, failure/truncated leaves contribute their best-Pauli
// corrected fidelity. The Haar average reduces to a 1-D Gauss-Legendre
// integral over u = cos(theta); phi-independence is asserted on the way.
double average_fidelity(double chi, const MafPlan& plan,
                        int order = kDefaultQuadratureOrder);

struct MafRow {
  double concurrence;
  int max_attempts;
  Strategy strategy;
  double maf;
};

std::vector<MafRow> maf_sweep(std::span<const double> concurrence_grid,
                              std::span<const MafPlan> plans,
                              int order = kDefaultQuadratureOrder);

// 2x2 Hermitian unit-trace matrix with PSD checked on construction.
class DensityMatrix2 {
 public:
  DensityMatrix2(Complex m00, Complex m01, Complex m10, Complex m11);

  Complex at(int row, int col) const { return m_[2 * row + col]; }
  double trace() const { return std::real(m_[0] + m_[3]); }
  double purity() const;

 private:
  std::array<Complex, 4> m_;
};

// (1/4) sum_U U|I><I|U^dag over U in {I, Z, X, ZX}; the Pauli twirl makes
// this the maximally mixed state for every info.
DensityMatrix2 bob_pauli_mixture(const InfoState& info);

// Tr[rho_Bob rho_I]; identically 1/2.
double eavesdropper_overlap(const InfoState& info);

struct HaarOverlapEstimate {
  double mean;
  double std_error;
  std::uint64_t samples;
};

// Monte-Carlo estimate of the overlap a Haar-random qubit state has with
// |I>; its mean is also 1/2.
HaarOverlapEstimate haar_overlap_estimate(const InfoState& info,
                                          std::uint64_t samples,
                                          std::uint64_t seed);

}  // namespace pqtsim
