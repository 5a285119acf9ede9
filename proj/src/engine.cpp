#include "pqtsim/engine.hpp"

#include <algorithm>
#include <cmath>

namespace pqtsim {

const char* to_string(Strategy strategy) {
  return strategy == Strategy::ContinueGBSM ? "continue" : "me-final";
}

namespace {

void check_plan(const AttemptPlan& plan) {
  if (plan.max_attempts < 0 || plan.max_attempts > kMaxAttemptCap) {
    throw DomainError("max_attempts must lie in [0, " +
                      std::to_string(kMaxAttemptCap) + "]");
  }
}

void check_chi_nondegenerate(double chi) {
  ResourceSpec resource(chi);
  if (resource.chi() <= 0.0) {
    throw DegenerateResourceError("protocol undefined for product resource (chi=0)");
  }
}

double corrected_fidelity(const LinearFamilyState& family, PauliCorrection corr,
                          int spectator, const InfoState& info) {
  return fidelity_to_info(apply_correction(family, spectator, corr), info,
                          spectator);
}

std::string label_of(const std::vector<int>& history) {
  std::string label = "B";
  for (int digit : history) label += static_cast<char>('0' + digit);
  return label;
}

}  // namespace

PairAssignment pair_for_attempt(int attempt) {
  if (attempt < 0) throw DomainError("attempt index must be nonnegative");
  if (attempt % 2 == 0) return PairAssignment{QubitPair{1, 2}, 3};
  return PairAssignment{QubitPair{1, 3}, 2};
}

OutcomeTree::OutcomeTree(double chi, InfoState info, AttemptPlan plan,
                         LinearFamilyState root,
                         std::vector<std::vector<BranchRecord>> records,
                         std::vector<double> cumulative)
    : chi_(chi),
      info_(info),
      plan_(plan),
      root_(root),
      records_(std::move(records)),
      cumulative_(std::move(cumulative)) {}

double OutcomeTree::cumulative_success(int attempt) const {
  if (attempt < 0 || attempt >= static_cast<int>(cumulative_.size())) {
    throw DomainError("attempt index outside the enumerated plan");
  }
  return cumulative_[attempt];
}

std::size_t OutcomeTree::success_leaf_count(int attempt) const {
  if (attempt < 0 || attempt >= static_cast<int>(records_.size())) {
    throw DomainError("attempt index outside the enumerated plan");
  }
  return static_cast<std::size_t>(
      std::count_if(records_[attempt].begin(), records_[attempt].end(),
                    [](const BranchRecord& r) { return r.kind == BranchKind::Success; }));
}

double OutcomeTree::leaf_probability_mass() const {
  double mass = 0.0;
  for (const auto& level : records_) {
    for (const BranchRecord& r : level) {
      if (r.kind != BranchKind::Failure) mass += r.path_probability;
    }
  }
  return mass;
}

OutcomeTree enumerate_tree(double chi, const InfoState& info,
                           const AttemptPlan& plan) {
  check_plan(plan);
  check_chi_nondegenerate(chi);

  const LinearFamilyState root = initial_family(chi);
  const int rounds = plan.max_attempts + 1;

  struct Frontier {
    LinearFamilyState family;
    std::vector<int> history;
    double path_probability;
    int parent_record;  // index into the previous level, -1 for the root
  };
  std::vector<Frontier> frontier{{root, {}, 1.0, -1}};

  std::vector<std::vector<BranchRecord>> records(rounds);
  std::vector<double> cumulative(rounds, 0.0);

  for (int attempt = 0; attempt < rounds; ++attempt) {
    const PairAssignment assignment = pair_for_attempt(attempt);
    const bool final_attempt = attempt == plan.max_attempts;
    const bool use_me_bell =
        final_attempt && plan.strategy == Strategy::MeBellFinal;

    std::vector<Frontier> next;
    records[attempt].reserve(frontier.size() * 4);
    for (const Frontier& node : frontier) {
      PairBasis basis;
      try {
        basis = use_me_bell ? me_bell_basis(node.family, assignment.pair)
                            : matched_basis(node.family, assignment.pair);
      } catch (const DegenerateResourceError&) {
        if (attempt == 0) throw;
        // A branch can underflow to exact zero at extreme depth; turn its
        // record back into a truncated leaf instead of aborting the tree.
        records[attempt - 1][node.parent_record].kind = BranchKind::Truncated;
        continue;
      }
      for (int outcome = 0; outcome < 4; ++outcome) {
        const BasisElement& element = basis.elements[outcome];
        LinearFamilyState child =
            project_pair(node.family, assignment.pair, element.vector);
        const double path = branch_probability(child, info);

        BranchRecord record{node.history,
                            "",
                            node.path_probability > 0.0
                                ? path / node.path_probability
                                : 0.0,
                            path,
                            BranchKind::Failure,
                            element.classification.correction,
                            child,
                            0.0};
        record.history.push_back(outcome);
        record.label = label_of(record.history);

        if (element.indicated_success) {
          record.kind = BranchKind::Success;
        } else if (final_attempt) {
          record.kind = BranchKind::Truncated;
        }
        record.fidelity_after_correction =
            path > 0.0 ? corrected_fidelity(child, record.correction,
                                            assignment.spectator, info)
                       : 0.0;

        if (record.kind == BranchKind::Success) {
          cumulative[attempt] += path;
        } else if (!final_attempt) {
          next.push_back(Frontier{child, record.history, path,
                                  static_cast<int>(records[attempt].size())});
        }
        records[attempt].push_back(std::move(record));
      }
    }
    frontier = std::move(next);
  }

  for (int attempt = 1; attempt < rounds; ++attempt) {
    cumulative[attempt] += cumulative[attempt - 1];
  }
  return OutcomeTree(chi, info, plan, root, std::move(records),
                     std::move(cumulative));
}

namespace {

double uniform_unit(std::mt19937_64& rng) {
  // 53-bit mantissa draw; keeps sampling identical across standard libraries.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Sampler {
  struct Node {
    std::array<double, 4> cdf;        // conditional, normalized per node
    std::array<int, 4> child;         // next node id, or -1 when terminal
    std::array<const BranchRecord*, 4> record;
  };
  std::vector<Node> nodes;            // node 0 is the root
};

// Flattens the failure skeleton of the tree for fast repeated sampling.
Sampler build_sampler(const OutcomeTree& tree) {
  Sampler sampler;
  const auto& levels = tree.records_by_depth();
  // ids[depth][history-as-string] would be heavy; walk levels in order and
  // match parents by history prefix instead. Records are grouped by parent in
  // blocks of four, in frontier order, which mirrors construction order.
  struct Pending {
    int node_id;
  };
  sampler.nodes.emplace_back();
  std::vector<Pending> parents{{0}};
  for (const auto& level : levels) {
    std::vector<Pending> next_parents;
    std::size_t block = 0;
    for (const Pending& parent : parents) {
      Sampler::Node node{};
      double mass = 0.0;
      for (int outcome = 0; outcome < 4; ++outcome) {
        const BranchRecord& record = level[block * 4 + outcome];
        mass += record.conditional_probability;
        node.cdf[outcome] = mass;
        node.record[outcome] = &record;
        node.child[outcome] = -1;
      }
      for (int outcome = 0; outcome < 4; ++outcome) {
        // Unreachable zero-mass nodes get a flat table instead of NaNs.
        node.cdf[outcome] = mass > 0.0 ? node.cdf[outcome] / mass
                                       : 0.25 * (outcome + 1);
        const BranchRecord& record = *node.record[outcome];
        if (record.kind == BranchKind::Failure) {
          const int id = static_cast<int>(sampler.nodes.size());
          sampler.nodes.emplace_back();
          node.child[outcome] = id;
          next_parents.push_back(Pending{id});
        }
      }
      sampler.nodes[parent.node_id] = node;
      ++block;
    }
    parents = std::move(next_parents);
  }
  return sampler;
}

// Frontier order invariant used above: children of the i-th failure parent
// occupy records [4i, 4i+4) of the next level.

}  // namespace

RunResult sample_run(double chi, const InfoState& info, const AttemptPlan& plan,
                     std::mt19937_64& rng) {
  const OutcomeTree tree = enumerate_tree(chi, info, plan);
  const Sampler sampler = build_sampler(tree);

  int node_id = 0;
  const BranchRecord* record = nullptr;
  for (int attempt = 0; attempt <= plan.max_attempts; ++attempt) {
    const Sampler::Node& node = sampler.nodes[node_id];
    const double u = uniform_unit(rng);
    int outcome = 0;
    while (outcome < 3 && u >= node.cdf[outcome]) ++outcome;
    record = node.record[outcome];
    if (record->kind != BranchKind::Failure) break;
    node_id = node.child[outcome];
  }

  return RunResult{record->history,
                   record->kind == BranchKind::Success,
                   static_cast<int>(record->history.size()),
                   record->correction,
                   record->family,
                   record->fidelity_after_correction};
}

MonteCarloEstimate monte_carlo(double chi, const InfoState& info,
                               const AttemptPlan& plan, std::uint64_t trials,
                               std::uint64_t seed) {
  if (trials == 0) throw DomainError("monte_carlo needs at least one trial");
  const OutcomeTree tree = enumerate_tree(chi, info, plan);
  const Sampler sampler = build_sampler(tree);
  std::mt19937_64 rng(seed);

  MonteCarloEstimate estimate{};
  estimate.trials = trials;
  estimate.successes_by_attempt.assign(plan.max_attempts + 1, 0);

  std::uint64_t successes = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    int node_id = 0;
    for (int attempt = 0; attempt <= plan.max_attempts; ++attempt) {
      const Sampler::Node& node = sampler.nodes[node_id];
      const double u = uniform_unit(rng);
      int outcome = 0;
      while (outcome < 3 && u >= node.cdf[outcome]) ++outcome;
      const BranchRecord& record = *node.record[outcome];
      if (record.kind == BranchKind::Success) {
        ++successes;
        ++estimate.successes_by_attempt[attempt];
        break;
      }
      if (record.kind == BranchKind::Truncated) {
        ++estimate.failures;
        break;
      }
      node_id = node.child[outcome];
    }
  }

  const double p = static_cast<double>(successes) / static_cast<double>(trials);
  estimate.success_rate = p;
  estimate.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return estimate;
}

}  // namespace pqtsim
