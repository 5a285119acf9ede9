#include "pqtsim/basis.hpp"

#include <algorithm>
#include <cmath>

namespace pqtsim {

namespace {

// Pair-kets grouped by sector; within a sector the lexically first ket leads.
constexpr int kSectorKets[2][2] = {{0b00, 0b11}, {0b01, 0b10}};

struct ResidualParts {
  // Single-ket residuals of the a- and b-coefficient vectors on the spectator.
  double a_norm;
  double b_norm;
  int a_ket;              // spectator ket carrying the a part
  Complex relative;       // (b residual amplitude) / (a residual amplitude)
};

ResidualParts residual_parts(const LinearFamilyState& child, int spectator) {
  const int w = 1 << (3 - spectator);
  // Classification is scale-invariant; rescale so deep branches with
  // subnormal amplitudes keep full precision in the squared norms.
  double peak = 0.0;
  for (int i = 0; i < 8; ++i) {
    peak = std::max({peak, std::abs(child.a_part()[i]),
                     std::abs(child.b_part()[i])});
  }
  if (peak <= 0.0) {
    throw UndefinedBranchError("probability-zero child cannot be classified");
  }
  auto split_norms = [&](const Amplitudes& amps) {
    std::array<double, 2> n{0.0, 0.0};
    for (int i = 0; i < 8; ++i) {
      n[(i & w) ? 1 : 0] += std::norm(amps[i] / peak);
    }
    return n;
  };
  const auto na = split_norms(child.a_part());
  const auto nb = split_norms(child.b_part());

  const double a_norm2 = na[0] + na[1];
  const double b_norm2 = nb[0] + nb[1];
  const double ket_tol = kClassifyTol * kClassifyTol * std::max(a_norm2, b_norm2);
  auto single_ket = [&](const std::array<double, 2>& n) {
    if (n[0] > ket_tol && n[1] > ket_tol) {
      throw StructureError("residual is not a single computational ket");
    }
    return n[0] >= n[1] ? 0 : 1;
  };
  const int a_ket = single_ket(na);
  const int b_ket = single_ket(nb);
  if (a_norm2 > ket_tol && b_norm2 > ket_tol && a_ket == b_ket) {
    throw StructureError("a- and b-residuals overlap on one spectator ket");
  }

  // The measured pair is collapsed onto one shared vector, so the ratio of
  // A and B amplitudes at any common pair-ket is the residual ratio itself.
  Complex ratio = 0.0;
  double best = 0.0;
  for (int i = 0; i < 8; ++i) {
    if ((i & w) ? a_ket != 1 : a_ket != 0) continue;
    const int j = a_ket == 0 ? (i | w) : (i & ~w);
    const double mag = std::abs(child.a_part()[i] / peak) *
                       std::abs(child.b_part()[j] / peak);
    if (mag > best) {
      best = mag;
      ratio = child.b_part()[j] / child.a_part()[i];
    }
  }
  return ResidualParts{std::sqrt(a_norm2), std::sqrt(b_norm2), a_ket, ratio};
}

PairBasis build_basis(const LinearFamilyState& family, QubitPair pair,
                      bool me_bell) {
  const SectorDecomposition dec = decompose(family, pair);

  PairBasis basis;
  basis.pair = pair;
  for (int sector = 0; sector < 2; ++sector) {
    const int e1 = kSectorKets[sector][0];
    const int e2 = kSectorKets[sector][1];
    const double u = std::abs(dec.entries[e1].geometric);
    const double v = std::abs(dec.entries[e2].geometric);
    // Projection amplitudes are pure products, so a product resource (chi=0)
    // shows up as exact zeros, never as rounding residue.
    if (std::min(u, v) == 0.0) {
      throw DegenerateResourceError(
          "zero geometric factor in a sector; matched basis needs chi in (0, pi/4]");
    }
    double big = std::max(u, v);
    double small = std::min(u, v);
    if (me_bell) big = small = 1.0;
    const double n = std::hypot(big, small);

    PairVector plus{};
    plus[e1] = big / n;
    plus[e2] = small / n;
    PairVector minus{};
    minus[e1] = small / n;
    minus[e2] = -big / n;

    // The success slot is the vector whose magnitudes are swapped relative to
    // the family's; exact ties (chi = pi/4) keep the primary-basis assignment.
    const bool minus_designated = u > v || (u == v && sector == 0);

    const int spec = spectator_of(pair);
    auto element = [&](const PairVector& vec, int label_digit, bool designated) {
      BasisElement el;
      el.vector = vec;
      el.label = "B" + std::to_string(label_digit);
      try {
        el.classification = classify(project_pair(family, pair, vec), spec);
      } catch (const UndefinedBranchError&) {
        // Child norm underflowed to zero; a probability-zero limb.
        el.classification = Outcome{false, PauliCorrection::Identity};
      }
      el.indicated_success = designated && el.classification.success;
      return el;
    };
    basis.elements[2 * sector] = element(plus, 2 * sector, !minus_designated);
    basis.elements[2 * sector + 1] = element(minus, 2 * sector + 1, minus_designated);
  }
  return basis;
}

}  // namespace

SectorDecomposition decompose(const LinearFamilyState& family, QubitPair pair) {
  spectator_of(pair);  // validates the pair
  double scale2 = 0.0;
  for (int i = 0; i < 8; ++i) {
    scale2 = std::max({scale2, std::norm(family.a_part()[i]),
                       std::norm(family.b_part()[i])});
  }
  const double tol2 = kAlgebraTol * kAlgebraTol * scale2;

  SectorDecomposition dec;
  for (int jk = 0; jk < 4; ++jk) {
    const int j = jk >> 1;
    const int k = jk & 1;
    double na = 0.0;
    double nb = 0.0;
    for (int s = 0; s < 2; ++s) {
      na += std::norm(family.a_part()[pair_ket_index(pair, j, k, s)]);
      nb += std::norm(family.b_part()[pair_ket_index(pair, j, k, s)]);
    }
    if (na > tol2 && nb > tol2) {
      throw StructureError("both coefficient vectors populate one pair-ket");
    }
    SectorEntry entry;
    entry.carries_a = na >= nb;
    const Amplitudes& src = entry.carries_a ? family.a_part() : family.b_part();
    const Complex c0 = src[pair_ket_index(pair, j, k, 0)];
    const Complex c1 = src[pair_ket_index(pair, j, k, 1)];
    if (std::norm(c0) > tol2 && std::norm(c1) > tol2) {
      throw StructureError("spectator partner of a pair-ket is not a single ket");
    }
    entry.spectator_ket = std::norm(c0) >= std::norm(c1) ? 0 : 1;
    entry.geometric = entry.spectator_ket == 0 ? c0 : c1;
    dec.entries[jk] = entry;
  }

  // Carriers may be unresolved on empty kets; fill them from the sector
  // partner so each sector pairs one a- with one b-carrier.
  for (const auto& kets : kSectorKets) {
    SectorEntry& x = dec.entries[kets[0]];
    SectorEntry& y = dec.entries[kets[1]];
    if (std::norm(x.geometric) <= tol2 && std::norm(y.geometric) > tol2) {
      x.carries_a = !y.carries_a;
      x.spectator_ket = 1 - y.spectator_ket;
    } else if (std::norm(y.geometric) <= tol2 && std::norm(x.geometric) > tol2) {
      y.carries_a = !x.carries_a;
      y.spectator_ket = 1 - x.spectator_ket;
    }
    if (std::norm(x.geometric) > tol2 && std::norm(y.geometric) > tol2 &&
        x.carries_a == y.carries_a) {
      throw StructureError("sector holds two carriers of the same amplitude");
    }
  }
  return dec;
}

PairBasis matched_basis(const LinearFamilyState& family, QubitPair pair) {
  return build_basis(family, pair, /*me_bell=*/false);
}

PairBasis me_bell_basis(const LinearFamilyState& family, QubitPair pair) {
  return build_basis(family, pair, /*me_bell=*/true);
}

Outcome classify(const LinearFamilyState& child, int spectator) {
  const ResidualParts parts = residual_parts(child, spectator);
  const double scale = std::max(parts.a_norm, parts.b_norm);
  const bool success = std::abs(parts.a_norm - parts.b_norm) <= kClassifyTol * scale;
  const bool swapped = parts.a_ket == 1;
  const bool negated = std::real(parts.relative) < 0.0;
  PauliCorrection corr;
  if (swapped) {
    corr = negated ? PauliCorrection::ZX : PauliCorrection::X;
  } else {
    corr = negated ? PauliCorrection::Z : PauliCorrection::Identity;
  }
  return Outcome{success, corr};
}

FixtureTag fixture_tag_from(std::string_view name) {
  if (name == "primary") return FixtureTag::Primary;
  if (name == "after-0") return FixtureTag::AfterZero;
  if (name == "after-3") return FixtureTag::AfterThree;
  throw LookupError("unknown fixture tag: " + std::string(name));
}

PairBasis printed_fixture(FixtureTag tag, double chi) {
  ResourceSpec resource(chi);
  const double c = std::cos(resource.chi());
  const double s = std::sin(resource.chi());
  const double c3 = c * c * c;
  const double s3 = s * s * s;
  const double y6 = std::sqrt(c3 * c3 + s3 * s3);  // sqrt(cos^6 + sin^6)

  auto vec = [](int ket_hi, Complex hi, int ket_lo, Complex lo) {
    PairVector v{};
    v[ket_hi] = hi;
    v[ket_lo] = lo;
    return v;
  };

  const LinearFamilyState root = initial_family(chi);
  LinearFamilyState source = root;
  QubitPair pair{1, 2};
  std::string prefix;
  std::array<PairVector, 4> vectors;
  switch (tag) {
    case FixtureTag::Primary:
      vectors = {vec(0b00, c, 0b11, s), vec(0b00, s, 0b11, -c),
                 vec(0b01, c, 0b10, s), vec(0b01, s, 0b10, -c)};
      break;
    case FixtureTag::AfterZero:
      source = project_pair(root, pair, vec(0b00, c, 0b11, s));
      pair = QubitPair{1, 3};
      prefix = "0";
      vectors = {vec(0b00, c3 / y6, 0b11, s3 / y6),
                 vec(0b00, s3 / y6, 0b11, -c3 / y6),
                 vec(0b01, c, 0b10, s), vec(0b01, s, 0b10, -c)};
      break;
    case FixtureTag::AfterThree:
      source = project_pair(root, pair, vec(0b01, s, 0b10, -c));
      pair = QubitPair{1, 3};
      prefix = "3";
      vectors = {vec(0b00, c, 0b11, s), vec(0b00, s, 0b11, -c),
                 vec(0b01, c3 / y6, 0b10, s3 / y6),
                 vec(0b01, s3 / y6, 0b10, -c3 / y6)};
      break;
  }

  PairBasis basis;
  basis.pair = pair;
  const PairBasis generated = matched_basis(source, pair);
  for (int i = 0; i < 4; ++i) {
    BasisElement el;
    el.vector = vectors[i];
    el.label = "B" + prefix + std::to_string(i);
    try {
      el.classification = classify(project_pair(source, pair, vectors[i]),
                                   spectator_of(pair));
    } catch (const UndefinedBranchError&) {
      el.classification = Outcome{false, PauliCorrection::Identity};
    }
    el.indicated_success = generated.elements[i].indicated_success;
    basis.elements[i] = el;
  }
  return basis;
}

}  // namespace pqtsim
