#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pqtsim/basis.hpp"

namespace pqtsim {

enum class Strategy { ContinueGBSM, MeBellFinal };

const char* to_string(Strategy strategy);

// Hard cap on repeated attempts; 2^10 failure paths cost nothing and the cap
// prevents runaway recursion.
inline constexpr int kMaxAttemptCap = 10;

// max_attempts counts repetitions after the primary GBSM; the primary is
// attempt 0, so a plan runs max_attempts + 1 measurement rounds.
struct AttemptPlan {
  int max_attempts = 0;
  Strategy strategy = Strategy::ContinueGBSM;
};

using MafPlan = AttemptPlan;

struct PairAssignment {
  QubitPair pair;
  int spectator;
};

// Attempt k measures (1,2) for even k and (1,3) for odd k; qubit 1 is in
// every measured pair.
PairAssignment pair_for_attempt(int attempt);

enum class BranchKind { Success, Failure, Truncated };

struct BranchRecord {
  std::vector<int> history;           // outcome digits, one per attempt
  std::string label;                  // e.g. "B031"
  double conditional_probability;     // given the parent branch
  double path_probability;            // product along the history
  BranchKind kind;
  PauliCorrection correction;         // exact for Success, best structural otherwise
  LinearFamilyState family;
  double fidelity_after_correction;
};

class OutcomeTree {
 public:
  OutcomeTree(double chi, InfoState info, AttemptPlan plan,
              LinearFamilyState root,
              std::vector<std::vector<BranchRecord>> records,
              std::vector<double> cumulative);

  double chi() const { return chi_; }
  const InfoState& info() const { return info_; }
  const AttemptPlan& plan() const { return plan_; }
  const LinearFamilyState& root() const { return root_; }

  // records_by_depth()[d] holds the records produced by attempt d.
  const std::vector<std::vector<BranchRecord>>& records_by_depth() const {
    return records_;
  }

  double cumulative_success(int attempt) const;
  std::size_t success_leaf_count(int attempt) const;
  // Sum of success and truncated leaf path probabilities; 1 for a full tree.
  double leaf_probability_mass() const;

 private:
  double chi_;
  InfoState info_;
  AttemptPlan plan_;
  LinearFamilyState root_;
  std::vector<std::vector<BranchRecord>> records_;
  std::vector<double> cumulative_;
};

OutcomeTree enumerate_tree(double chi, const InfoState& info, const AttemptPlan& plan);

struct RunResult {
  std::vector<int> history;
  bool success;
  int attempts_used;
  PauliCorrection correction;
  LinearFamilyState residual;
  double fidelity_after_correction;
};

RunResult sample_run(double chi, const InfoState& info, const AttemptPlan& plan,
                     std::mt19937_64& rng);

struct MonteCarloEstimate {
  double success_rate;
  double standard_error;
  std::uint64_t trials;
  std::vector<std::uint64_t> successes_by_attempt;  // size max_attempts + 1
  std::uint64_t failures;
};

MonteCarloEstimate monte_carlo(double chi, const InfoState& info,
                               const AttemptPlan& plan, std::uint64_t trials,
                               std::uint64_t seed);

}  // namespace pqtsim
