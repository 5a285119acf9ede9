#include <doctest.h>

#include <cmath>
#include <random>

#include "pqtsim/basis.hpp"
#include "pqtsim/state.hpp"
#include "test_util.hpp"

using namespace pqtsim;

namespace {

const double kPi = 4.0 * kQuarterPi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

PairVector primary_vector(int outcome, double chi) {
  const double c = std::cos(chi);
  const double s = std::sin(chi);
  PairVector v{};
  switch (outcome) {
    case 0: v[0b00] = c; v[0b11] = s; break;
    case 1: v[0b00] = s; v[0b11] = -c; break;
    case 2: v[0b01] = c; v[0b10] = s; break;
    case 3: v[0b01] = s; v[0b10] = -c; break;
  }
  return v;
}

}  // namespace

TEST_CASE("info state enforces normalization") {
  CHECK_THROWS_AS(InfoState(1.0, 1.0), DomainError);
  CHECK_NOTHROW(InfoState(0.6, 0.8));
  const InfoState bloch = InfoState::from_bloch(1.3, 2.1);
  CHECK(std::norm(bloch.a()) + std::norm(bloch.b()) == doctest::Approx(1.0));
}

TEST_CASE("resource spec validates chi and derives concurrence") {
  CHECK_THROWS_AS(ResourceSpec(-0.1), DomainError);
  CHECK_THROWS_AS(ResourceSpec(1.0), DomainError);
  CHECK(ResourceSpec(kPi / 6).concurrence() ==
        doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
  CHECK(ResourceSpec(0.0).concurrence() == doctest::Approx(0.0));
}

TEST_CASE("initial family matches the product-state expansion") {
  SUBCASE("maximally entangled resource with a=1") {
    const Amplitudes psi =
        instantiate(initial_family(kQuarterPi), InfoState(1.0, 0.0));
    CHECK(std::abs(psi[0b000] - kInvSqrt2) < 1e-12);
    CHECK(std::abs(psi[0b011] - kInvSqrt2) < 1e-12);
    for (int i : {1, 2, 4, 5, 6, 7}) CHECK(std::abs(psi[i]) == 0.0);
  }
  SUBCASE("chi = pi/6 amplitudes") {
    const Amplitudes psi =
        instantiate(initial_family(kPi / 6), InfoState(1.0, 0.0));
    CHECK(std::abs(psi[0b000] - std::sqrt(3.0) / 2) < 1e-12);
    CHECK(std::abs(psi[0b011] - 0.5) < 1e-12);
  }
  SUBCASE("chi = 0 is the product resource") {
    const Amplitudes psi =
        instantiate(initial_family(0.0), InfoState(0.6, 0.8));
    CHECK(std::abs(psi[0b000] - 0.6) < 1e-12);
    CHECK(std::abs(psi[0b100] - 0.8) < 1e-12);
    CHECK(norm2(psi) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("normalized instantiation for arbitrary info") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10; ++i) {
      const double chi = testutil::random_chi(rng);
      const InfoState info = testutil::random_info(rng);
      CHECK(branch_probability(initial_family(chi), info) ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(initial_family(2.0), DomainError);
}

TEST_CASE("instantiate is linear in the secret amplitudes") {
  Amplitudes a_part{};
  a_part[0b000] = 1.0;
  Amplitudes b_part{};
  b_part[0b100] = 1.0;
  const LinearFamilyState family(a_part, b_part);
  const Amplitudes selected = instantiate(family, InfoState(1.0, 0.0));
  CHECK(std::abs(selected[0b000] - 1.0) == 0.0);
  CHECK(std::abs(selected[0b100]) == 0.0);

  const Amplitudes only_b = instantiate(initial_family(0.7), InfoState(0.0, 1.0));
  for (int i = 0; i < 8; ++i) {
    CHECK(std::abs(only_b[i] - initial_family(0.7).b_part()[i]) == 0.0);
  }

  const Amplitudes both =
      instantiate(initial_family(kPi / 6), InfoState(kInvSqrt2, kInvSqrt2));
  CHECK(std::abs(both[0b000] - std::sqrt(3.0) / (2 * std::sqrt(2.0))) < 1e-12);
  CHECK(std::abs(both[0b011] - 1.0 / (2 * std::sqrt(2.0))) < 1e-12);
  CHECK(std::abs(both[0b100] - std::sqrt(3.0) / (2 * std::sqrt(2.0))) < 1e-12);
  CHECK(std::abs(both[0b111] - 1.0 / (2 * std::sqrt(2.0))) < 1e-12);
}

TEST_CASE("project_pair reproduces the primary-attempt rows") {
  const double chi = 0.52;
  const double c = std::cos(chi);
  const double s = std::sin(chi);
  const LinearFamilyState root = initial_family(chi);

  SUBCASE("result 1 leaves sin chi cos chi (a|0> - b|1>) on qubit 3") {
    const LinearFamilyState child =
        project_pair(root, QubitPair{1, 2}, primary_vector(1, chi));
    const InfoState info(0.6, 0.8);
    const Amplitudes psi = instantiate(child, info);
    // child = |B1>_{12} x residual_3
    const PairVector b1 = primary_vector(1, chi);
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        for (int sp = 0; sp < 2; ++sp) {
          const Complex expected = b1[2 * j + k] * s * c *
                                   (sp == 0 ? info.a() : -info.b());
          CHECK(std::abs(psi[pair_ket_index(QubitPair{1, 2}, j, k, sp)] -
                         expected) < 1e-12);
        }
      }
    }
    CHECK(branch_probability(child, info) == doctest::Approx(s * s * c * c));
  }

  SUBCASE("result 0 residual is a cos^2|0> + b sin^2|1>") {
    const LinearFamilyState child =
        project_pair(root, QubitPair{1, 2}, primary_vector(0, chi));
    const InfoState info(0.8, 0.6);
    CHECK(fidelity_to_info(child, info, 3) < 1.0);
    CHECK(branch_probability(child, info) ==
          doctest::Approx(0.64 * std::pow(c, 4) + 0.36 * std::pow(s, 4))
              .epsilon(1e-12));
    // chi = pi/6, a = 1 gives cos^4 = 9/16
    const LinearFamilyState child2 = project_pair(
        initial_family(kPi / 6), QubitPair{1, 2}, primary_vector(0, kPi / 6));
    CHECK(branch_probability(child2, InfoState(1.0, 0.0)) ==
          doctest::Approx(9.0 / 16.0).epsilon(1e-12));
  }

  SUBCASE("four orthonormal outcomes exhaust the parent probability") {
    std::mt19937_64 rng(9);
    const InfoState info = testutil::random_info(rng);
    double total = 0.0;
    for (int outcome = 0; outcome < 4; ++outcome) {
      total += branch_probability(
          project_pair(root, QubitPair{1, 2}, primary_vector(outcome, chi)),
          info);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("contract violations") {
    PairVector bad{};
    bad[0] = 0.9;
    CHECK_THROWS_AS(project_pair(root, QubitPair{1, 2}, bad), ContractError);
    CHECK_THROWS_AS(project_pair(root, QubitPair{2, 2}, primary_vector(0, chi)),
                    DomainError);
  }
}

TEST_CASE("projection commutes with instantiation on random families") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    Amplitudes a_part{};
    Amplitudes b_part{};
    for (int i = 0; i < 8; ++i) {
      a_part[i] = Complex(testutil::uniform(rng) - 0.5, testutil::uniform(rng) - 0.5);
      b_part[i] = Complex(testutil::uniform(rng) - 0.5, testutil::uniform(rng) - 0.5);
    }
    const LinearFamilyState family(a_part, b_part);
    const InfoState info = testutil::random_info(rng);

    const std::array<QubitPair, 3> pairs{QubitPair{1, 2}, QubitPair{1, 3},
                                         QubitPair{2, 3}};
    const QubitPair pair = pairs[rng() % 3];
    PairVector v{};
    double n = 0.0;
    for (int i = 0; i < 4; ++i) {
      v[i] = Complex(testutil::uniform(rng) - 0.5, testutil::uniform(rng) - 0.5);
      n += std::norm(v[i]);
    }
    for (int i = 0; i < 4; ++i) v[i] /= std::sqrt(n);

    const Amplitudes via_family = instantiate(project_pair(family, pair, v), info);
    // apply <v| directly to the instantiated state
    const Amplitudes psi = instantiate(family, info);
    std::array<Complex, 2> amp{};
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        for (int sp = 0; sp < 2; ++sp) {
          amp[sp] += std::conj(v[2 * j + k]) * psi[pair_ket_index(pair, j, k, sp)];
        }
      }
    }
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        for (int sp = 0; sp < 2; ++sp) {
          const Complex direct = v[2 * j + k] * amp[sp];
          CHECK(std::abs(via_family[pair_ket_index(pair, j, k, sp)] - direct) <
                1e-12);
        }
      }
    }
  }
}

TEST_CASE("pauli corrections act per qubit") {
  const double chi = 0.61;
  const LinearFamilyState root = initial_family(chi);

  SUBCASE("X repairs the a|1> + b|0> residual") {
    const LinearFamilyState child =
        project_pair(root, QubitPair{1, 2}, primary_vector(2, chi));
    const LinearFamilyState fixed = apply_correction(child, 3, PauliCorrection::X);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 5; ++i) {
      CHECK(fidelity_to_info(fixed, testutil::random_info(rng), 3) ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  SUBCASE("ZX repairs the a|1> - b|0> style residual up to phase") {
    Amplitudes a_part{};
    a_part[0b001] = 1.0;  // a|1> on qubit 3
    Amplitudes b_part{};
    b_part[0b000] = -1.0;  // -b|0>
    const LinearFamilyState family(a_part, b_part);
    const LinearFamilyState fixed =
        apply_correction(family, 3, PauliCorrection::ZX);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 5; ++i) {
      CHECK(fidelity_to_info(fixed, testutil::random_info(rng), 3) ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  SUBCASE("involutions and anticommutation") {
    for (PauliCorrection corr :
         {PauliCorrection::Identity, PauliCorrection::Z, PauliCorrection::X}) {
      const LinearFamilyState twice =
          apply_correction(apply_correction(root, 2, corr), 2, corr);
      for (int i = 0; i < 8; ++i) {
        CHECK(std::abs(twice.a_part()[i] - root.a_part()[i]) == 0.0);
        CHECK(std::abs(twice.b_part()[i] - root.b_part()[i]) == 0.0);
      }
    }
    // X then Z equals minus (Z then X)
    const LinearFamilyState xz = apply_correction(
        apply_correction(root, 1, PauliCorrection::X), 1, PauliCorrection::Z);
    const LinearFamilyState zx = apply_correction(
        apply_correction(root, 1, PauliCorrection::Z), 1, PauliCorrection::X);
    for (int i = 0; i < 8; ++i) {
      CHECK(std::abs(xz.a_part()[i] + zx.a_part()[i]) < 1e-15);
      CHECK(std::abs(xz.b_part()[i] + zx.b_part()[i]) < 1e-15);
    }
  }

  CHECK_THROWS_AS(apply_correction(root, 0, PauliCorrection::X), DomainError);
}

TEST_CASE("fidelity_to_info") {
  const double chi = kPi / 6;
  const LinearFamilyState root = initial_family(chi);
  const LinearFamilyState b0_child =
      project_pair(root, QubitPair{1, 2}, primary_vector(0, chi));

  SUBCASE("identical residual gives 1 for all secrets") {
    std::mt19937_64 rng(11);
    const LinearFamilyState b1_fixed = apply_correction(
        project_pair(root, QubitPair{1, 2}, primary_vector(1, chi)), 3,
        PauliCorrection::Z);
    for (int i = 0; i < 10; ++i) {
      CHECK(fidelity_to_info(b1_fixed, testutil::random_info(rng), 3) ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  SUBCASE("worked example at chi = pi/6, a = b = 1/sqrt2") {
    CHECK(fidelity_to_info(b0_child, InfoState(kInvSqrt2, kInvSqrt2), 3) ==
          doctest::Approx(0.8).epsilon(1e-12));
  }

  SUBCASE("basis-state secrets reach fidelity 1 on every corrected branch") {
    for (int outcome = 0; outcome < 4; ++outcome) {
      const LinearFamilyState child =
          project_pair(root, QubitPair{1, 2}, primary_vector(outcome, chi));
      const Outcome classification = classify(child, 3);
      const LinearFamilyState fixed =
          apply_correction(child, 3, classification.correction);
      CHECK(fidelity_to_info(fixed, InfoState(1.0, 0.0), 3) ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  SUBCASE("global phase of the family is irrelevant") {
    const Complex phase = std::polar(1.0, 0.83);
    Amplitudes a_part = b0_child.a_part();
    Amplitudes b_part = b0_child.b_part();
    for (int i = 0; i < 8; ++i) {
      a_part[i] *= phase;
      b_part[i] *= phase;
    }
    const InfoState info(0.6, 0.8);
    CHECK(fidelity_to_info(LinearFamilyState(a_part, b_part), info, 3) ==
          doctest::Approx(fidelity_to_info(b0_child, info, 3)).epsilon(1e-14));
  }

  SUBCASE("zero-norm family is an undefined branch") {
    const LinearFamilyState zero{Amplitudes{}, Amplitudes{}};
    CHECK_THROWS_AS(fidelity_to_info(zero, InfoState(1.0, 0.0), 3),
                    UndefinedBranchError);
  }
}
