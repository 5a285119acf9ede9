#pragma once

#include <array>

#include "pqtsim/types.hpp"

namespace pqtsim {

// Full 3-qubit amplitude vector, big-endian kets |q1 q2 q3>.
using Amplitudes = std::array<Complex, 8>;

// Amplitudes of a 2-qubit state |jk> on an ordered pair, index 2j + k.
using PairVector = std::array<Complex, 4>;

// Ordered pair of distinct qubit labels out of {1, 2, 3}.
struct QubitPair {
  int first;
  int second;
};

int spectator_of(QubitPair pair);

// Ket index with the pair qubits set to (j, k) and the spectator to s.
int pair_ket_index(QubitPair pair, int j, int k, int s);

double norm2(const Amplitudes& amps);

// Unnormalized 3-qubit state family a*A + b*B, linear in the secret
// amplitudes. A and B are fixed by chi and the measurement history alone,
// which is what lets Alice compute measurement bases without knowing (a, b).
class LinearFamilyState {
 public:
  LinearFamilyState(Amplitudes a_part, Amplitudes b_part)
      : a_part_(a_part), b_part_(b_part) {}

  const Amplitudes& a_part() const { return a_part_; }
  const Amplitudes& b_part() const { return b_part_; }

 private:
  Amplitudes a_part_;
  Amplitudes b_part_;
};

// (a|0> + b|1>)_1 (cos chi |00> + sin chi |11>)_23 as a family.
LinearFamilyState initial_family(double chi);

// a*A + b*B; not normalized.
Amplitudes instantiate(const LinearFamilyState& family, const InfoState& info);

// Squared norm of the instantiated state. For a child of a normalized parent
// this is the branch probability.
double branch_probability(const LinearFamilyState& family, const InfoState& info);

// Projects the pair subsystem onto |vector> and keeps the measured pair
// collapsed onto it, so the child still lives on the full 3-qubit space.
// The vector must be normalized; the child is left unnormalized.
LinearFamilyState project_pair(const LinearFamilyState& family, QubitPair pair,
                               const PairVector& vector);

LinearFamilyState apply_correction(const LinearFamilyState& family, int qubit,
                                   PauliCorrection corr);

// |<I|psi_spectator>|^2 for the normalized reduced spectator state. Computed
// from the reduced density matrix, so it is exactly 1 iff the residual equals
// |I> up to a global phase. Throws UndefinedBranchError on zero-norm families.
double fidelity_to_info(const LinearFamilyState& family, const InfoState& info,
                        int spectator);

}  // namespace pqtsim
