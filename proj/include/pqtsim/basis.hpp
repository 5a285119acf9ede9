#pragma once

#include <array>
#include <string>
#include <string_view>

#include "pqtsim/state.hpp"

namespace pqtsim {

// Structural classification of a post-measurement child: success means the
// residual carries the secret exactly, up to the stated Pauli correction.
struct Outcome {
  bool success;
  PauliCorrection correction;  // for failures: the best structural Pauli
};

struct BasisElement {
  PairVector vector;
  std::string label;
  Outcome classification;
  // Protocol designation: the outcome Alice's result *indicates* as success,
  // i.e. the branch terminates and the spectator is delivered. Coincides with
  // classification.success for chi < pi/4; at chi = pi/4 the aligned outcomes
  // are also structurally exact but the protocol still repeats on them.
  bool indicated_success;
};

// Four orthonormal measurement vectors on an ordered qubit pair, in the
// published label order: sector {00,11} first, sector {01,10} second, the
// cos-leading "+" vector before the sin-leading "-" vector.
struct PairBasis {
  QubitPair pair;
  std::array<BasisElement, 4> elements;
};

// Per pair-ket factorization of a protocol-reachable family: amplitude
// g, which secret amplitude it carries, and the spectator ket it drags along.
struct SectorEntry {
  Complex geometric = 0.0;
  bool carries_a = false;
  int spectator_ket = 0;
};

struct SectorDecomposition {
  // Indexed by pair-ket 2j + k.
  std::array<SectorEntry, 4> entries;
};

SectorDecomposition decompose(const LinearFamilyState& family, QubitPair pair);

// The adaptive generalized Bell basis matched to the family on this pair.
// Depends only on chi and the measurement history, never on (a, b).
PairBasis matched_basis(const LinearFamilyState& family, QubitPair pair);

// Standard (maximally entangled) Bell basis; classification and designation
// are still evaluated against the family.
PairBasis me_bell_basis(const LinearFamilyState& family, QubitPair pair);

enum class FixtureTag { Primary, AfterZero, AfterThree };

FixtureTag fixture_tag_from(std::string_view name);  // "primary", "after-0", "after-3"

// The explicitly printed bases, verbatim, as functions of chi.
PairBasis printed_fixture(FixtureTag tag, double chi);

Outcome classify(const LinearFamilyState& child, int spectator);

}  // namespace pqtsim
