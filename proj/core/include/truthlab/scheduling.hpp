#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "truthlab/common.hpp"
#include "truthlab/distribution.hpp"
#include "truthlab/domain.hpp"
#include "truthlab/exact_scalar.hpp"

namespace truthlab::scheduling {

/// Unrelated-machines instance: cost[machine][task], additive over task sets.
struct SchedulingInstance {
  std::size_t machines = 0;
  std::size_t tasks = 0;
  std::vector<std::vector<ExactScalar>> cost;

  /// Throws std::invalid_argument unless m >= 1, the matrix is m x n, and all
  /// costs are >= 0 (+infinity permitted).
  void validate() const;
};

SchedulingInstance make_instance(std::vector<std::vector<ExactScalar>> cost);

/// Total map task -> machine.
struct TaskAllocation {
  std::vector<std::size_t> machine_of;

  std::vector<std::size_t> bundle_of(std::size_t machine) const;
  bool operator==(const TaskAllocation&) const = default;
  /// Canonical id string, e.g. "0,1,0".
  std::string id() const;
};

/// One binary value per task.
using CoinSequence = std::vector<unsigned char>;

ExactScalar makespan(const SchedulingInstance& inst, const TaskAllocation& alloc);

/// Sum of machine `machine`'s assigned costs under `alloc`.
ExactScalar machine_load(const SchedulingInstance& inst, const TaskAllocation& alloc,
                         std::size_t machine);

struct OptimalResult {
  ExactScalar value;
  TaskAllocation allocation;  // lexicographically smallest argmin
};

/// Brute-force optimum over all m^n allocations.
OptimalResult optimal_makespan(const SchedulingInstance& inst,
                               std::size_t budget = kDefaultEnumerationBudget);

/// All m^n allocations in lexicographic order of the assignment vector.
std::vector<TaskAllocation> enumerate_allocations(std::size_t machines, std::size_t tasks,
                                                  std::size_t budget = kDefaultEnumerationBudget);

struct MechanismResult {
  TaskAllocation allocation;
  MechanismOutcome outcome;
};

/// Task-wise VCG: each task to its cheapest machine (lowest index on ties);
/// each machine is paid, per task it wins, the cheapest competing offer.
MechanismResult min_work_vcg(const SchedulingInstance& inst);

/// Machine partition used by the randomized mechanism: the first ceil(m/2)
/// machines versus the rest.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> nr_partition(std::size_t machines);

/// The per-task randomized mechanism with its coins fixed. Requires m >= 2.
MechanismResult nr_sub_mechanism(const SchedulingInstance& inst, const CoinSequence& coins);

/// Uniform distribution over the 2^n coin-fixed runs of nr_sub_mechanism.
DiscreteDistribution<MechanismResult> nr_randomized(
    const SchedulingInstance& inst, std::size_t budget = kDefaultEnumerationBudget);

ExactScalar nr_expected_makespan(const SchedulingInstance& inst,
                                 std::size_t budget = kDefaultEnumerationBudget);

/// The two-machine instance whose costs are the column minima over the two
/// partition sides; the mechanism's makespan on the original instance never
/// exceeds its makespan here under the same coins.
SchedulingInstance nr_collapsed_instance(const SchedulingInstance& inst);

struct NrTruthfulnessViolation {
  std::size_t machine = 0;
  std::size_t task = 0;
  unsigned char coin = 0;
  ExactScalar reported_cost;
  ExactScalar truthful_utility;
  ExactScalar deviating_utility;
};

/// Per-task dominant-strategy check of every coin-fixed sub-mechanism: for each
/// machine, task, and coin, reporting `multiplier * cost` must not increase
/// that task's (payment - cost) utility. Returns all violations found.
std::vector<NrTruthfulnessViolation> check_nr_per_task_truthfulness(
    const SchedulingInstance& inst, const std::vector<Rational>& grid_multipliers);

/// Named per-task cost vector: one player type in a scheduling domain.
struct NamedCosts {
  std::string name;
  std::vector<ExactScalar> cost;
};

/// Per-machine finite type lists over a fixed task count.
struct SchedulingTypeDomain {
  std::size_t machines = 0;
  std::size_t tasks = 0;
  std::vector<std::vector<NamedCosts>> types;  // [machine][k]

  void validate() const;
  ProfileSpace profile_space() const;
  SchedulingInstance instantiate(const Profile& profile) const;
  /// Tabulates each type over the given allocations (machine i's value of an
  /// allocation is the additive cost of its bundle).
  FiniteTypeDomain to_alternative_domain(const std::vector<TaskAllocation>& alternatives) const;
};

}  // namespace truthlab::scheduling
