#include <doctest.h>

#include "truthlab/instance_gen.hpp"
#include "truthlab/prng.hpp"
#include "truthlab/scheduling.hpp"

using namespace truthlab;
using namespace truthlab::scheduling;

namespace {

const Rational kEps(1, 100);

SchedulingInstance thm2_instance_truthful() {
  // Both machines report v_i: 1 on their own task and the shared task, 100 elsewhere.
  return make_instance({{ExactScalar(1), ExactScalar(100), ExactScalar(1)},
                        {ExactScalar(100), ExactScalar(1), ExactScalar(1)}});
}

SchedulingInstance thm2_instance_deviated() {
  // Machine 1 deviates to v'_1: 0 on its task, 1+eps on the shared task.
  return make_instance({{ExactScalar(0), ExactScalar(100), ExactScalar(Rational(1) + kEps)},
                        {ExactScalar(100), ExactScalar(1), ExactScalar(1)}});
}

/// Independent oracle: enumerates allocations with the task order reversed.
ExactScalar brute_force_reversed(const SchedulingInstance& inst) {
  std::vector<std::size_t> alloc(inst.tasks, 0);
  ExactScalar best = ExactScalar::infinity();
  std::size_t count = 1;
  for (std::size_t j = 0; j < inst.tasks; ++j) count *= inst.machines;
  for (std::size_t r = 0; r < count; ++r) {
    ExactScalar worst;
    for (std::size_t i = 0; i < inst.machines; ++i) {
      ExactScalar load;
      for (std::size_t j = 0; j < inst.tasks; ++j) {
        if (alloc[j] == i) load += inst.cost[i][j];
      }
      worst = max(worst, load);
    }
    best = min(best, worst);
    for (std::size_t j = 0; j < inst.tasks; ++j) {  // first task fastest
      if (++alloc[j] < inst.machines) break;
      alloc[j] = 0;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("makespan basics") {
  const SchedulingInstance empty = make_instance({{}, {}});
  CHECK(makespan(empty, TaskAllocation{{}}) == ExactScalar(0));

  const auto inst = thm2_instance_truthful();
  CHECK(makespan(inst, TaskAllocation{{0, 1, 1}}) == ExactScalar(2));
  CHECK(makespan(thm2_instance_deviated(), TaskAllocation{{0, 1, 0}}) ==
        ExactScalar(Rational(1) + kEps));
  CHECK_THROWS_AS(makespan(inst, TaskAllocation{{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(makespan(inst, TaskAllocation{{0, 1, 5}}), std::invalid_argument);
}

TEST_CASE("makespan is +infinity when an assigned cost is infinite") {
  const SchedulingInstance inst =
      make_instance({{ExactScalar(1)}, {ExactScalar::infinity()}});
  CHECK(makespan(inst, TaskAllocation{{1}}).infinite());
  CHECK(makespan(inst, TaskAllocation{{0}}) == ExactScalar(1));
}

TEST_CASE("optimal makespan on the two-type instances") {
  CHECK(optimal_makespan(thm2_instance_truthful()).value == ExactScalar(2));
  CHECK(optimal_makespan(thm2_instance_deviated()).value == ExactScalar(Rational(1) + kEps));
}

TEST_CASE("single machine optimum is the total cost") {
  const auto inst = make_instance({{ExactScalar(3), ExactScalar(4), ExactScalar(5)}});
  CHECK(optimal_makespan(inst).value == ExactScalar(12));
  CHECK(optimal_makespan(inst).allocation == TaskAllocation{{0, 0, 0}});
}

TEST_CASE("optimum matches an independent reversed enumeration") {
  SplitMix64 rng(101);
  for (int k = 0; k < 40; ++k) {
    const auto inst = gen::random_scheduling(rng, 3, 4, 1, 10);
    CHECK(optimal_makespan(inst).value == brute_force_reversed(inst));
  }
}

TEST_CASE("optimum ties break to the lexicographically smallest allocation") {
  const auto inst = make_instance({{ExactScalar(1)}, {ExactScalar(1)}});
  CHECK(optimal_makespan(inst).allocation == TaskAllocation{{0}});
}

TEST_CASE("optimal makespan never exceeds any enumerated allocation") {
  SplitMix64 rng(102);
  for (int k = 0; k < 10; ++k) {
    const auto inst = gen::random_scheduling(rng, 2, 4, 1, 9);
    const ExactScalar opt = optimal_makespan(inst).value;
    for (const auto& alloc : enumerate_allocations(inst.machines, inst.tasks)) {
      CHECK(opt <= makespan(inst, alloc));
    }
  }
}

TEST_CASE("makespan is monotone under added tasks") {
  SplitMix64 rng(103);
  for (int k = 0; k < 50; ++k) {
    const auto inst = gen::random_scheduling(rng, 3, 5, 1, 9);
    if (inst.tasks < 2) continue;
    SchedulingInstance shorter = inst;
    shorter.tasks -= 1;
    for (auto& row : shorter.cost) row.pop_back();
    std::vector<std::size_t> assignment;
    for (std::size_t j = 0; j < inst.tasks; ++j) assignment.push_back(rng.below(3));
    TaskAllocation full{assignment};
    assignment.pop_back();
    TaskAllocation partial{assignment};
    CHECK(makespan(shorter, partial) <= makespan(inst, full));
  }
}

TEST_CASE("budget guards the brute-force enumeration") {
  const auto inst = thm2_instance_truthful();
  CHECK_THROWS_AS(optimal_makespan(inst, 4), BudgetExceeded);
}

TEST_CASE("task-wise VCG on one task pays the losing offer") {
  const auto inst = make_instance({{ExactScalar(1)}, {ExactScalar(5)}});
  const auto result = min_work_vcg(inst);
  CHECK(result.allocation == TaskAllocation{{0}});
  CHECK(result.outcome.payments[0] == ExactScalar(5));
  CHECK(result.outcome.payments[1] == ExactScalar(0));
}

TEST_CASE("task-wise VCG on the Yao truthful instance") {
  const ExactScalar off{Rational(4) / kEps};
  const auto inst = make_instance({{ExactScalar(1), off, ExactScalar(1)},
                                   {off, ExactScalar(1), ExactScalar(1)}});
  const auto result = min_work_vcg(inst);
  CHECK(result.allocation == TaskAllocation{{0, 1, 0}});  // shared task by tie-break
  CHECK(makespan(inst, result.allocation) == ExactScalar(2));
  CHECK(result.outcome.payments[0] == off + ExactScalar(1));
  CHECK(result.outcome.payments[1] == off);
}

TEST_CASE("task-wise VCG stays within m times the optimum") {
  SplitMix64 rng(104);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t m = 2 + rng.below(3);
    const auto inst = gen::random_scheduling(rng, m, 5, 1, 10);
    const auto result = min_work_vcg(inst);
    const ExactScalar opt = optimal_makespan(inst).value;
    CHECK(makespan(inst, result.allocation) <=
          ExactScalar(static_cast<long long>(m)) * opt);
  }
}

TEST_CASE("single-machine VCG allocates everything at zero payment") {
  const auto inst = make_instance({{ExactScalar(2), ExactScalar(3)}});
  const auto result = min_work_vcg(inst);
  CHECK(result.allocation == TaskAllocation{{0, 0}});
  CHECK(result.outcome.payments[0] == ExactScalar(0));
}

TEST_CASE("randomized sub-mechanism branches match hand simulation") {
  const auto inst = make_instance({{ExactScalar(1)}, {ExactScalar(2)}});
  // R = 0: side one is cheap enough, machine 0 wins at min{inf, 8/3}.
  const auto heads = nr_sub_mechanism(inst, {0});
  CHECK(heads.allocation == TaskAllocation{{0}});
  CHECK(heads.outcome.payments[0] == ExactScalar(Rational(8, 3)));
  // R = 1: side two is too expensive, machine 0 wins at min{inf, 3/2}.
  const auto tails = nr_sub_mechanism(inst, {1});
  CHECK(tails.allocation == TaskAllocation{{0}});
  CHECK(tails.outcome.payments[0] == ExactScalar(Rational(3, 2)));
  CHECK_THROWS_AS(nr_sub_mechanism(make_instance({{ExactScalar(1)}}), CoinSequence{0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(nr_sub_mechanism(inst, CoinSequence{}), std::invalid_argument);
}

TEST_CASE("odd machine counts put the extra machine on the first side") {
  const auto [s1, s2] = nr_partition(5);
  CHECK(s1 == std::vector<std::size_t>{0, 1, 2});
  CHECK(s2 == std::vector<std::size_t>{3, 4});
}

TEST_CASE("the one-task randomized mechanism is optimal in expectation") {
  const auto inst = make_instance({{ExactScalar(1)}, {ExactScalar(2)}});
  const auto dist = nr_randomized(inst);
  CHECK(dist.size() == 2);
  for (const auto& [result, p] : dist.entries()) {
    CHECK(result.allocation == TaskAllocation{{0}});
    CHECK(p == Rational(1, 2));
  }
  CHECK(nr_expected_makespan(inst) == optimal_makespan(inst).value);
}

TEST_CASE("every coin sequence assigns every task and pays finitely") {
  SplitMix64 rng(105);
  for (int k = 0; k < 20; ++k) {
    const auto inst = gen::random_scheduling(rng, 4, 4, 1, 10);
    const auto dist = nr_randomized(inst);
    for (const auto& [result, p] : dist.entries()) {
      CHECK(result.allocation.machine_of.size() == inst.tasks);
      for (const auto& pay : result.outcome.payments) CHECK(!pay.infinite());
    }
  }
}

TEST_CASE("expected makespan honors the randomized guarantee") {
  SplitMix64 rng(106);
  for (int k = 0; k < 60; ++k) {
    const std::size_t m = k % 2 == 0 ? 2 : 4;
    const auto inst = gen::random_scheduling(rng, m, 5, 1, 10);
    const ExactScalar cap = ExactScalar(Rational(7 * static_cast<long long>(m), 8)) *
                            optimal_makespan(inst).value;
    CHECK(nr_expected_makespan(inst) <= cap);
  }
}

TEST_CASE("collapsing to two machines never shrinks the coin-fixed makespan") {
  SplitMix64 rng(107);
  for (int k = 0; k < 15; ++k) {
    const auto inst = gen::random_scheduling(rng, 4, 4, 1, 10);
    const auto collapsed = nr_collapsed_instance(inst);
    const std::size_t sequences = std::size_t(1) << inst.tasks;
    for (std::size_t c = 0; c < sequences; ++c) {
      CoinSequence coins(inst.tasks);
      for (std::size_t j = 0; j < inst.tasks; ++j) coins[j] = (c >> j) & 1u;
      const auto on_full = nr_sub_mechanism(inst, coins);
      const auto on_collapsed = nr_sub_mechanism(collapsed, coins);
      CHECK(makespan(inst, on_full.allocation) <=
            makespan(collapsed, on_collapsed.allocation));
    }
  }
}

TEST_CASE("coin-fixed sub-mechanisms are per-task truthful on a deviation grid") {
  const std::vector<Rational> grid = {Rational(0), Rational(1, 2), Rational(1), Rational(2),
                                      Rational(4)};
  SplitMix64 rng(108);
  for (int k = 0; k < 50; ++k) {
    const std::size_t m = k % 2 == 0 ? 2 : 4;
    const auto inst = gen::random_scheduling(rng, m, 5, 1, 10);
    CHECK(check_nr_per_task_truthfulness(inst, grid).empty());
  }
}

TEST_CASE("scheduling type domains instantiate and tabulate") {
  SchedulingTypeDomain domain;
  domain.machines = 2;
  domain.tasks = 2;
  domain.types = {
      {{"v1", {ExactScalar(1), ExactScalar(2)}}, {"v'1", {ExactScalar(0), ExactScalar(5)}}},
      {{"v2", {ExactScalar(3), ExactScalar(1)}}},
  };
  domain.validate();
  const auto inst = domain.instantiate({1, 0});
  CHECK(inst.cost[0][1] == ExactScalar(5));
  CHECK(inst.cost[1][0] == ExactScalar(3));

  const auto allocations = enumerate_allocations(2, 2);
  const auto alt = domain.to_alternative_domain(allocations);
  CHECK(alt.alternative_count() == 4);
  // Machine 0 under v1 of allocation (0,0): both tasks, additive cost 3.
  CHECK(alt.value(0, 0, 0) == ExactScalar(3));
  // Machine 1 under v2 of allocation (1,1): both tasks, cost 4.
  CHECK(alt.value(1, 0, 3) == ExactScalar(4));
}
