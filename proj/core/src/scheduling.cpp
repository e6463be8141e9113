#include "truthlab/scheduling.hpp"

#include <algorithm>
#include <stdexcept>

namespace truthlab::scheduling {

namespace {

void check_dimensions(const SchedulingInstance& inst, const TaskAllocation& alloc) {
  if (alloc.machine_of.size() != inst.tasks) {
    throw std::invalid_argument("allocation length does not match task count");
  }
  for (const std::size_t m : alloc.machine_of) {
    if (m >= inst.machines) throw std::invalid_argument("allocation targets a missing machine");
  }
}

/// Number of allocations m^n, guarded against the enumeration budget.
std::size_t allocation_count(std::size_t machines, std::size_t tasks, std::size_t budget) {
  std::size_t count = 1;
  for (std::size_t j = 0; j < tasks; ++j) {
    if (count > budget / machines) throw BudgetExceeded("m^n exceeds the enumeration budget");
    count *= machines;
  }
  return count;
}

}  // namespace

void SchedulingInstance::validate() const {
  if (machines == 0) throw std::invalid_argument("need at least one machine");
  if (cost.size() != machines) throw std::invalid_argument("cost matrix row count mismatch");
  for (const auto& row : cost) {
    if (row.size() != tasks) throw std::invalid_argument("cost matrix column count mismatch");
    for (const auto& c : row) {
      if (c.sign() < 0) throw std::invalid_argument("costs must be nonnegative");
    }
  }
}

SchedulingInstance make_instance(std::vector<std::vector<ExactScalar>> cost) {
  SchedulingInstance inst;
  inst.machines = cost.size();
  inst.tasks = cost.empty() ? 0 : cost.front().size();
  inst.cost = std::move(cost);
  inst.validate();
  return inst;
}

std::vector<std::size_t> TaskAllocation::bundle_of(std::size_t machine) const {
  std::vector<std::size_t> bundle;
  for (std::size_t j = 0; j < machine_of.size(); ++j) {
    if (machine_of[j] == machine) bundle.push_back(j);
  }
  return bundle;
}

std::string TaskAllocation::id() const {
  std::string s;
  for (std::size_t j = 0; j < machine_of.size(); ++j) {
    if (j > 0) s += ',';
    s += std::to_string(machine_of[j]);
  }
  return s;
}

ExactScalar machine_load(const SchedulingInstance& inst, const TaskAllocation& alloc,
                         std::size_t machine) {
  ExactScalar load;
  for (std::size_t j = 0; j < inst.tasks; ++j) {
    if (alloc.machine_of[j] == machine) load += inst.cost[machine][j];
  }
  return load;
}

ExactScalar makespan(const SchedulingInstance& inst, const TaskAllocation& alloc) {
  check_dimensions(inst, alloc);
  ExactScalar worst;
  for (std::size_t i = 0; i < inst.machines; ++i) {
    worst = max(worst, machine_load(inst, alloc, i));
  }
  return worst;
}

OptimalResult optimal_makespan(const SchedulingInstance& inst, std::size_t budget) {
  inst.validate();
  const std::size_t count = allocation_count(inst.machines, inst.tasks, budget);
  TaskAllocation current{std::vector<std::size_t>(inst.tasks, 0)};
  OptimalResult best{makespan(inst, current), current};
  for (std::size_t r = 1; r < count; ++r) {
    // Advance the assignment vector in lexicographic order (last task fastest),
    // so the first strict improvement is the lexicographically smallest argmin.
    for (std::size_t j = inst.tasks; j-- > 0;) {
      if (++current.machine_of[j] < inst.machines) break;
      current.machine_of[j] = 0;
    }
    ExactScalar value = makespan(inst, current);
    if (value < best.value) {
      best.value = std::move(value);
      best.allocation = current;
    }
  }
  return best;
}

std::vector<TaskAllocation> enumerate_allocations(std::size_t machines, std::size_t tasks,
                                                  std::size_t budget) {
  if (machines == 0) throw std::invalid_argument("need at least one machine");
  const std::size_t count = allocation_count(machines, tasks, budget);
  std::vector<TaskAllocation> all;
  all.reserve(count);
  TaskAllocation current{std::vector<std::size_t>(tasks, 0)};
  all.push_back(current);
  for (std::size_t r = 1; r < count; ++r) {
    for (std::size_t j = tasks; j-- > 0;) {
      if (++current.machine_of[j] < machines) break;
      current.machine_of[j] = 0;
    }
    all.push_back(current);
  }
  return all;
}

MechanismResult min_work_vcg(const SchedulingInstance& inst) {
  inst.validate();
  TaskAllocation alloc{std::vector<std::size_t>(inst.tasks, 0)};
  std::vector<ExactScalar> payments(inst.machines);
  for (std::size_t j = 0; j < inst.tasks; ++j) {
    std::size_t winner = 0;
    for (std::size_t i = 1; i < inst.machines; ++i) {
      if (inst.cost[i][j] < inst.cost[winner][j]) winner = i;
    }
    alloc.machine_of[j] = winner;
    if (inst.machines >= 2) {
      ExactScalar second = ExactScalar::infinity();
      for (std::size_t i = 0; i < inst.machines; ++i) {
        if (i != winner) second = min(second, inst.cost[i][j]);
      }
      payments[winner] += second;
    }
  }
  MechanismOutcome outcome(alloc.id(), std::move(payments));
  return MechanismResult{std::move(alloc), std::move(outcome)};
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> nr_partition(std::size_t machines) {
  if (machines < 2) throw std::invalid_argument("partition needs at least two machines");
  // Odd m: the extra machine joins the first side.
  const std::size_t half = (machines + 1) / 2;
  std::vector<std::size_t> s1, s2;
  for (std::size_t i = 0; i < machines; ++i) (i < half ? s1 : s2).push_back(i);
  return {std::move(s1), std::move(s2)};
}

namespace {

struct SideStats {
  ExactScalar best = ExactScalar::infinity();
  ExactScalar second = ExactScalar::infinity();  // +infinity when the side has one machine
  std::size_t argmin = 0;
};

SideStats side_stats(const SchedulingInstance& inst, const std::vector<std::size_t>& side,
                     std::size_t task) {
  SideStats s;
  bool first = true;
  for (const std::size_t i : side) {
    if (first || inst.cost[i][task] < s.best) {
      s.best = inst.cost[i][task];
      s.argmin = i;
      first = false;
    }
  }
  for (const std::size_t i : side) {
    if (i != s.argmin) s.second = min(s.second, inst.cost[i][task]);
  }
  return s;
}

struct TaskDecision {
  std::size_t winner = 0;
  ExactScalar payment;
};

/// The four-branch per-task rule: route by the coin and the 4/3 threshold.
TaskDecision decide_task(const SideStats& one, const SideStats& two, unsigned char coin) {
  const ExactScalar four_thirds{Rational(4, 3)};
  const ExactScalar three_quarters{Rational(3, 4)};
  TaskDecision d;
  if (coin == 0) {
    if (one.best <= four_thirds * two.best) {
      d.winner = one.argmin;
      d.payment = min(one.second, four_thirds * two.best);
    } else {
      d.winner = two.argmin;
      d.payment = min(two.second, three_quarters * one.best);
    }
  } else {
    if (two.best <= four_thirds * one.best) {
      d.winner = two.argmin;
      d.payment = min(two.second, four_thirds * one.best);
    } else {
      d.winner = one.argmin;
      d.payment = min(one.second, three_quarters * two.best);
    }
  }
  return d;
}

}  // namespace

MechanismResult nr_sub_mechanism(const SchedulingInstance& inst, const CoinSequence& coins) {
  inst.validate();
  if (inst.machines < 2) throw std::invalid_argument("the randomized mechanism needs m >= 2");
  if (coins.size() != inst.tasks) throw std::invalid_argument("one coin per task required");
  const auto [s1, s2] = nr_partition(inst.machines);

  TaskAllocation alloc{std::vector<std::size_t>(inst.tasks, 0)};
  std::vector<ExactScalar> payments(inst.machines);
  for (std::size_t j = 0; j < inst.tasks; ++j) {
    const TaskDecision d = decide_task(side_stats(inst, s1, j), side_stats(inst, s2, j),
                                       coins[j] == 0 ? 0 : 1);
    alloc.machine_of[j] = d.winner;
    payments[d.winner] += d.payment;
  }
  MechanismOutcome outcome(alloc.id(), std::move(payments));
  return MechanismResult{std::move(alloc), std::move(outcome)};
}

DiscreteDistribution<MechanismResult> nr_randomized(const SchedulingInstance& inst,
                                                    std::size_t budget) {
  inst.validate();
  if (inst.tasks >= 63 || (std::size_t(1) << inst.tasks) > budget) {
    throw BudgetExceeded("2^n coin sequences exceed the enumeration budget");
  }
  const std::size_t count = std::size_t(1) << inst.tasks;
  std::vector<MechanismResult> outcomes;
  outcomes.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    CoinSequence coins(inst.tasks);
    for (std::size_t j = 0; j < inst.tasks; ++j) coins[j] = (c >> j) & 1u;
    outcomes.push_back(nr_sub_mechanism(inst, coins));
  }
  return DiscreteDistribution<MechanismResult>::uniform(std::move(outcomes));
}

ExactScalar nr_expected_makespan(const SchedulingInstance& inst, std::size_t budget) {
  const auto dist = nr_randomized(inst, budget);
  return dist.expectation(
      [&](const MechanismResult& r) { return makespan(inst, r.allocation); });
}

SchedulingInstance nr_collapsed_instance(const SchedulingInstance& inst) {
  inst.validate();
  const auto [s1, s2] = nr_partition(inst.machines);
  std::vector<std::vector<ExactScalar>> cost(2, std::vector<ExactScalar>(inst.tasks));
  for (std::size_t j = 0; j < inst.tasks; ++j) {
    cost[0][j] = side_stats(inst, s1, j).best;
    cost[1][j] = side_stats(inst, s2, j).best;
  }
  return make_instance(std::move(cost));
}

std::vector<NrTruthfulnessViolation> check_nr_per_task_truthfulness(
    const SchedulingInstance& inst, const std::vector<Rational>& grid_multipliers) {
  inst.validate();
  if (inst.machines < 2) throw std::invalid_argument("the randomized mechanism needs m >= 2");
  const auto [s1, s2] = nr_partition(inst.machines);

  std::vector<NrTruthfulnessViolation> violations;
  SchedulingInstance reported = inst;
  for (std::size_t i = 0; i < inst.machines; ++i) {
    for (std::size_t j = 0; j < inst.tasks; ++j) {
      const ExactScalar true_cost = inst.cost[i][j];
      // Per-task utility of machine i when the column reads `reported`.
      auto utility = [&](unsigned char coin) {
        const TaskDecision d =
            decide_task(side_stats(reported, s1, j), side_stats(reported, s2, j), coin);
        return d.winner == i ? d.payment - true_cost : ExactScalar(0);
      };
      for (unsigned char coin = 0; coin < 2; ++coin) {
        const ExactScalar truthful = utility(coin);
        for (const Rational& mult : grid_multipliers) {
          const ExactScalar lie = ExactScalar(mult) * true_cost;
          if (lie == true_cost) continue;
          reported.cost[i][j] = lie;
          const ExactScalar deviating = utility(coin);
          reported.cost[i][j] = true_cost;
          if (deviating > truthful) {
            violations.push_back(
                NrTruthfulnessViolation{i, j, coin, lie, truthful, deviating});
          }
        }
      }
    }
  }
  return violations;
}

void SchedulingTypeDomain::validate() const {
  if (machines == 0) throw std::invalid_argument("need at least one machine");
  if (types.size() != machines) throw std::invalid_argument("one type list per machine required");
  for (const auto& list : types) {
    if (list.empty()) throw std::invalid_argument("every machine needs at least one type");
    for (const auto& t : list) {
      if (t.cost.size() != tasks) throw std::invalid_argument("type cost vector length mismatch");
    }
  }
}

ProfileSpace SchedulingTypeDomain::profile_space() const {
  std::vector<std::size_t> radices;
  radices.reserve(types.size());
  for (const auto& list : types) radices.push_back(list.size());
  return ProfileSpace(std::move(radices));
}

SchedulingInstance SchedulingTypeDomain::instantiate(const Profile& profile) const {
  if (profile.size() != machines) throw std::invalid_argument("profile length mismatch");
  std::vector<std::vector<ExactScalar>> cost;
  cost.reserve(machines);
  for (std::size_t i = 0; i < machines; ++i) cost.push_back(types[i].at(profile[i]).cost);
  return make_instance(std::move(cost));
}

FiniteTypeDomain SchedulingTypeDomain::to_alternative_domain(
    const std::vector<TaskAllocation>& alternatives) const {
  validate();
  std::vector<std::vector<NamedValuation>> players(machines);
  for (std::size_t i = 0; i < machines; ++i) {
    for (const auto& t : types[i]) {
      NamedValuation v{t.name, {}};
      v.values.reserve(alternatives.size());
      for (const auto& alloc : alternatives) {
        ExactScalar total;
        for (std::size_t j = 0; j < tasks; ++j) {
          if (alloc.machine_of[j] == i) total += t.cost[j];
        }
        v.values.push_back(std::move(total));
      }
      players[i].push_back(std::move(v));
    }
  }
  return FiniteTypeDomain(alternatives.size(), std::move(players));
}

}  // namespace truthlab::scheduling
