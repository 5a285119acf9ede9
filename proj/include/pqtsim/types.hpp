#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace pqtsim {

using Complex = std::complex<double>;

// Tolerance for exact algebraic identities (norms, orthogonality, linearity).
inline constexpr double kAlgebraTol = 1e-12;
// Looser threshold used by outcome classification; absorbs accumulated
// rounding on deep branches.
inline constexpr double kClassifyTol = 1e-10;

inline constexpr double kQuarterPi = 0.78539816339744830962;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside its mathematical domain (chi range, attempt index, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Caller violated an operation contract (e.g. non-normalized vector).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Family does not have the carrier/sector structure the operation requires.
class StructureError : public Error {
 public:
  using Error::Error;
};

// Resource is a product state (chi = 0); the protocol is undefined.
class DegenerateResourceError : public Error {
 public:
  using Error::Error;
};

// Probability-zero branch; residual state undefined.
class UndefinedBranchError : public Error {
 public:
  using Error::Error;
};

// Unknown table row / fixture tag.
class LookupError : public Error {
 public:
  using Error::Error;
};

// Bob's recovery operations. ZX means: apply X first, then Z.
enum class PauliCorrection { Identity, Z, X, ZX };

const char* to_string(PauliCorrection corr);

// The secret 1-qubit amplitudes (a, b) with |a|^2 + |b|^2 = 1.
class InfoState {
 public:
  InfoState(Complex a, Complex b) : a_(a), b_(b) {
    const double n = std::norm(a_) + std::norm(b_);
    if (std::abs(n - 1.0) > kAlgebraTol) {
      throw DomainError("InfoState amplitudes must satisfy |a|^2+|b|^2=1, got " +
                        std::to_string(n));
    }
  }

  static InfoState from_bloch(double theta, double phi) {
    return InfoState(std::cos(theta / 2),
                     std::polar(std::sin(theta / 2), phi));
  }

  Complex a() const { return a_; }
  Complex b() const { return b_; }

 private:
  Complex a_;
  Complex b_;
};

// Entanglement parameter of the resource cos(chi)|00> + sin(chi)|11>.
class ResourceSpec {
 public:
  explicit ResourceSpec(double chi) : chi_(chi) {
    if (!(chi >= 0.0 && chi <= kQuarterPi + kAlgebraTol)) {
      throw DomainError("chi must lie in [0, pi/4], got " + std::to_string(chi));
    }
  }

  double chi() const { return chi_; }
  double concurrence() const { return std::sin(2.0 * chi_); }

 private:
  double chi_;
};

}  // namespace pqtsim
