#include "pqtsim/maf.hpp"

#include <cmath>

#include "pqtsim/analytic.hpp"
#include "pqtsim/quadrature.hpp"

namespace pqtsim {

namespace {

struct LeafTerm {
  bool success;
  // Success leaves: p(w) = w * na2 + (1 - w) * nb2 with w = |a|^2.
  double na2 = 0.0;
  double nb2 = 0.0;
  // Other leaves: p*F = |w * alpha + (1 - w) * beta|^2 for the corrected
  // residual amplitudes alpha (on |0>) and beta (on |1>).
  Complex alpha = 0.0;
  Complex beta = 0.0;
};

std::vector<LeafTerm> collect_leaf_terms(const OutcomeTree& tree) {
  std::vector<LeafTerm> terms;
  const auto& levels = tree.records_by_depth();
  for (std::size_t depth = 0; depth < levels.size(); ++depth) {
    const int spectator = pair_for_attempt(static_cast<int>(depth)).spectator;
    const int w = 1 << (3 - spectator);
    for (const BranchRecord& record : levels[depth]) {
      if (record.kind == BranchKind::Failure) continue;
      LeafTerm term;
      term.success = record.kind == BranchKind::Success;
      if (term.success) {
        term.na2 = norm2(record.family.a_part());
        term.nb2 = norm2(record.family.b_part());
      } else {
        const LinearFamilyState corrected =
            apply_correction(record.family, spectator, record.correction);
        // After the best structural correction the a-residual sits on |0>
        // and the b-residual on |1>. The collapsed pair state is shared, so
        // |alpha| = ||A||, |beta| = ||B||, and the relative phase can be read
        // off any pair-ket populated by both parts.
        Complex rel(1.0, 0.0);
        double best = -1.0;
        for (int i = 0; i < 8; ++i) {
          if (i & w) continue;
          const double mag = std::abs(corrected.a_part()[i]) *
                             std::abs(corrected.b_part()[i | w]);
          if (mag > best) {
            best = mag;
            if (mag > 0.0) {
              rel = corrected.b_part()[i | w] / corrected.a_part()[i];
              rel /= std::abs(rel);
            }
          }
        }
        term.alpha = std::sqrt(norm2(corrected.a_part()));
        term.beta = std::sqrt(norm2(corrected.b_part())) * rel;
      }
      terms.push_back(term);
    }
  }
  return terms;
}

double leaf_sum(const std::vector<LeafTerm>& terms, double w) {
  double total = 0.0;
  for (const LeafTerm& term : terms) {
    if (term.success) {
      total += w * term.na2 + (1.0 - w) * term.nb2;
    } else {
      total += std::norm(w * term.alpha + (1.0 - w) * term.beta);
    }
  }
  return total;
}

// Direct evaluation through instantiate/fidelity, used to assert the
// phi-independence that justifies the 1-D reduction.
double leaf_sum_direct(const OutcomeTree& tree, double theta, double phi) {
  const InfoState info = InfoState::from_bloch(theta, phi);
  double total = 0.0;
  const auto& levels = tree.records_by_depth();
  for (std::size_t depth = 0; depth < levels.size(); ++depth) {
    const int spectator = pair_for_attempt(static_cast<int>(depth)).spectator;
    for (const BranchRecord& record : levels[depth]) {
      if (record.kind == BranchKind::Failure) continue;
      const double p = branch_probability(record.family, info);
      if (p <= 0.0) continue;
      const double f =
          record.kind == BranchKind::Success
              ? 1.0
              : fidelity_to_info(
                    apply_correction(record.family, spectator, record.correction),
                    info, spectator);
      total += p * f;
    }
  }
  return total;
}

double integrate(const std::vector<LeafTerm>& terms, const QuadratureRule& rule) {
  double total = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double w = (1.0 + rule.nodes[i]) / 2.0;  // |a|^2 = (1 + cos theta)/2
    total += rule.weights[i] / 2.0 * leaf_sum(terms, w);
  }
  return total;
}

}  // namespace

double average_fidelity(double chi, const MafPlan& plan, int order) {
  if (order < 2) throw DomainError("quadrature order must be >= 2");
  const InfoState seed_info(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  const OutcomeTree tree = enumerate_tree(chi, seed_info, plan);
  const std::vector<LeafTerm> terms = collect_leaf_terms(tree);

  // phi-independence spot check at an interior theta.
  const double theta = 1.1;
  const double at_zero = leaf_sum_direct(tree, theta, 0.0);
  const double at_phi = leaf_sum_direct(tree, theta, 1.3);
  if (std::abs(at_zero - at_phi) > kAlgebraTol) {
    throw Error("leaf fidelities are not phi-independent");
  }
  // ... and the reduced integrand must agree with the direct evaluation.
  if (std::abs(leaf_sum(terms, std::cos(theta / 2) * std::cos(theta / 2)) -
               at_zero) > 1e-10) {
    throw Error("reduced MAF integrand disagrees with direct evaluation");
  }

  const double value = integrate(terms, gauss_legendre(order));
  const double refined = integrate(terms, gauss_legendre(2 * order));
  if (std::abs(value - refined) > 1e-9) {
    throw Error("MAF quadrature did not converge");
  }
  return value;
}

std::vector<MafRow> maf_sweep(std::span<const double> concurrence_grid,
                              std::span<const MafPlan> plans, int order) {
  std::vector<MafRow> rows;
  rows.reserve(concurrence_grid.size() * plans.size());
  for (double c : concurrence_grid) {
    const double chi = chi_from_concurrence(c);
    for (const MafPlan& plan : plans) {
      rows.push_back(MafRow{c, plan.max_attempts, plan.strategy,
                            average_fidelity(chi, plan, order)});
    }
  }
  return rows;
}

DensityMatrix2::DensityMatrix2(Complex m00, Complex m01, Complex m10, Complex m11)
    : m_{m00, m01, m10, m11} {
  if (std::abs(m01 - std::conj(m10)) > kAlgebraTol ||
      std::abs(std::imag(m00)) > kAlgebraTol ||
      std::abs(std::imag(m11)) > kAlgebraTol) {
    throw ContractError("density matrix must be Hermitian");
  }
  if (std::abs(std::real(m00 + m11) - 1.0) > kAlgebraTol) {
    throw ContractError("density matrix must have unit trace");
  }
  // 2x2 eigenvalues in closed form.
  const double tr = std::real(m00 + m11);
  const double det = std::real(m00 * m11 - m01 * m10);
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  if (tr / 2.0 - disc < -kAlgebraTol) {
    throw ContractError("density matrix must be positive semidefinite");
  }
}

double DensityMatrix2::purity() const {
  double p = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      p += std::real(at(r, c) * at(c, r));
    }
  }
  return p;
}

namespace {

std::array<Complex, 2> apply_pauli(const std::array<Complex, 2>& v,
                                   PauliCorrection corr) {
  std::array<Complex, 2> out = v;
  if (corr == PauliCorrection::X || corr == PauliCorrection::ZX) {
    std::swap(out[0], out[1]);
  }
  if (corr == PauliCorrection::Z || corr == PauliCorrection::ZX) {
    out[1] = -out[1];
  }
  return out;
}

}  // namespace

DensityMatrix2 bob_pauli_mixture(const InfoState& info) {
  std::array<Complex, 4> m{};
  for (PauliCorrection corr : {PauliCorrection::Identity, PauliCorrection::Z,
                               PauliCorrection::X, PauliCorrection::ZX}) {
    const auto v = apply_pauli({info.a(), info.b()}, corr);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        m[2 * r + c] += 0.25 * v[r] * std::conj(v[c]);
      }
    }
  }
  return DensityMatrix2(m[0], m[1], m[2], m[3]);
}

double eavesdropper_overlap(const InfoState& info) {
  const DensityMatrix2 rho = bob_pauli_mixture(info);
  const std::array<Complex, 2> i2{info.a(), info.b()};
  Complex overlap = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      overlap += std::conj(i2[r]) * rho.at(r, c) * i2[c];
    }
  }
  return std::real(overlap);
}

HaarOverlapEstimate haar_overlap_estimate(const InfoState& info,
                                          std::uint64_t samples,
                                          std::uint64_t seed) {
  if (samples == 0) throw DomainError("need at least one sample");
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  auto gaussian_pair = [&]() {
    // Box-Muller; keeps sampling identical across standard libraries.
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double pi = 4.0 * kQuarterPi;
    return std::array<double, 2>{r * std::cos(2.0 * pi * u2),
                                 r * std::sin(2.0 * pi * u2)};
  };

  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const auto g1 = gaussian_pair();
    const auto g2 = gaussian_pair();
    Complex psi0(g1[0], g1[1]);
    Complex psi1(g2[0], g2[1]);
    const double n = std::sqrt(std::norm(psi0) + std::norm(psi1));
    psi0 /= n;
    psi1 /= n;
    const double overlap =
        std::norm(std::conj(psi0) * info.a() + std::conj(psi1) * info.b());
    sum += overlap;
    sum_sq += overlap * overlap;
  }
  const double mean = sum / static_cast<double>(samples);
  const double var =
      std::max(0.0, sum_sq / static_cast<double>(samples) - mean * mean);
  return HaarOverlapEstimate{
      mean, std::sqrt(var / static_cast<double>(samples)), samples};
}

}  // namespace pqtsim
