#include "pqtsim/state.hpp"

#include <cmath>

namespace pqtsim {

const char* to_string(PauliCorrection corr) {
  switch (corr) {
    case PauliCorrection::Identity: return "I";
    case PauliCorrection::Z: return "Z";
    case PauliCorrection::X: return "X";
    case PauliCorrection::ZX: return "ZX";
  }
  return "?";
}

namespace {

void check_pair(QubitPair pair) {
  if (pair.first < 1 || pair.first > 3 || pair.second < 1 || pair.second > 3) {
    throw DomainError("qubit labels must be in {1,2,3}");
  }
  if (pair.first == pair.second) {
    throw DomainError("measured pair needs two distinct qubits");
  }
}

int bit_weight(int qubit) { return 1 << (3 - qubit); }  // q1 -> 4, q2 -> 2, q3 -> 1

}  // namespace

int spectator_of(QubitPair pair) {
  check_pair(pair);
  return 6 - pair.first - pair.second;
}

int pair_ket_index(QubitPair pair, int j, int k, int s) {
  return j * bit_weight(pair.first) + k * bit_weight(pair.second) +
         s * bit_weight(spectator_of(pair));
}

double norm2(const Amplitudes& amps) {
  double n = 0.0;
  for (const Complex& c : amps) n += std::norm(c);
  return n;
}

LinearFamilyState initial_family(double chi) {
  ResourceSpec resource(chi);  // validates the range
  Amplitudes a_part{};
  Amplitudes b_part{};
  const double c = std::cos(resource.chi());
  const double s = std::sin(resource.chi());
  a_part[0b000] = c;
  a_part[0b011] = s;
  b_part[0b100] = c;
  b_part[0b111] = s;
  return LinearFamilyState(a_part, b_part);
}

Amplitudes instantiate(const LinearFamilyState& family, const InfoState& info) {
  Amplitudes out{};
  for (int i = 0; i < 8; ++i) {
    out[i] = info.a() * family.a_part()[i] + info.b() * family.b_part()[i];
  }
  return out;
}

double branch_probability(const LinearFamilyState& family, const InfoState& info) {
  return norm2(instantiate(family, info));
}

LinearFamilyState project_pair(const LinearFamilyState& family, QubitPair pair,
                               const PairVector& vector) {
  check_pair(pair);
  double vnorm = 0.0;
  for (const Complex& c : vector) vnorm += std::norm(c);
  if (std::abs(vnorm - 1.0) > kAlgebraTol) {
    throw ContractError("projection vector must be normalized");
  }

  // <vector| applied to the pair subsystem of each coefficient vector.
  std::array<Complex, 2> amp_a{};
  std::array<Complex, 2> amp_b{};
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      const Complex v = std::conj(vector[2 * j + k]);
      for (int s = 0; s < 2; ++s) {
        const int idx = pair_ket_index(pair, j, k, s);
        amp_a[s] += v * family.a_part()[idx];
        amp_b[s] += v * family.b_part()[idx];
      }
    }
  }
  // Re-tensor with |vector> so later measurements on any pair stay expressible.
  Amplitudes a_part{};
  Amplitudes b_part{};
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      const Complex v = vector[2 * j + k];
      for (int s = 0; s < 2; ++s) {
        const int idx = pair_ket_index(pair, j, k, s);
        a_part[idx] = v * amp_a[s];
        b_part[idx] = v * amp_b[s];
      }
    }
  }
  return LinearFamilyState(a_part, b_part);
}

LinearFamilyState apply_correction(const LinearFamilyState& family, int qubit,
                                   PauliCorrection corr) {
  if (qubit < 1 || qubit > 3) throw DomainError("qubit label must be in {1,2,3}");
  const int w = bit_weight(qubit);
  auto transform = [&](const Amplitudes& in) {
    Amplitudes out = in;
    if (corr == PauliCorrection::X || corr == PauliCorrection::ZX) {
      for (int i = 0; i < 8; ++i) {
        out[i] = in[i ^ w];
      }
    }
    if (corr == PauliCorrection::Z || corr == PauliCorrection::ZX) {
      for (int i = 0; i < 8; ++i) {
        if (i & w) out[i] = -out[i];
      }
    }
    return out;
  };
  return LinearFamilyState(transform(family.a_part()), transform(family.b_part()));
}

double fidelity_to_info(const LinearFamilyState& family, const InfoState& info,
                        int spectator) {
  if (spectator < 1 || spectator > 3) {
    throw DomainError("spectator label must be in {1,2,3}");
  }
  Amplitudes psi = instantiate(family, info);
  // Fidelity is scale-invariant; rescaling keeps squared norms of very deep
  // (subnormal-amplitude) branches away from underflow.
  double peak = 0.0;
  for (const Complex& c : psi) peak = std::max(peak, std::abs(c));
  if (peak > 0.0) {
    for (Complex& c : psi) c /= peak;
  }
  const int w = bit_weight(spectator);
  // Reduced spectator density matrix; rho[1] holds <0|rho|1>.
  double rho00 = 0.0;
  double rho11 = 0.0;
  Complex rho01 = 0.0;
  for (int i = 0; i < 8; ++i) {
    if (i & w) continue;
    const Complex p0 = psi[i];
    const Complex p1 = psi[i | w];
    rho00 += std::norm(p0);
    rho11 += std::norm(p1);
    rho01 += p0 * std::conj(p1);
  }
  const double trace = rho00 + rho11;
  if (trace <= 0.0) {
    throw UndefinedBranchError("probability-zero branch has no residual state");
  }
  const Complex a = info.a();
  const Complex b = info.b();
  const double overlap = std::norm(a) * rho00 + std::norm(b) * rho11 +
                         2.0 * std::real(std::conj(a) * b * rho01);
  return overlap / trace;
}

}  // namespace pqtsim
