#include "truthlab/instance_gen.hpp"

#include <algorithm>

namespace truthlab::gen {

scheduling::SchedulingInstance random_scheduling(SplitMix64& rng, std::size_t machines,
                                                 std::size_t max_tasks, long long cost_lo,
                                                 long long cost_hi) {
  const std::size_t tasks = 1 + rng.below(max_tasks);
  std::vector<std::vector<ExactScalar>> cost(machines, std::vector<ExactScalar>(tasks));
  for (auto& row : cost) {
    for (auto& c : row) c = ExactScalar(rng.in_range(cost_lo, cost_hi));
  }
  return scheduling::make_instance(std::move(cost));
}

routing::RoutingInstance random_routing(SplitMix64& rng, std::size_t max_nodes) {
  const std::size_t nodes = 3 + rng.below(max_nodes - 2);  // at least two sources
  routing::RoutingInstance inst;
  inst.dest = nodes - 1;
  inst.out.resize(nodes);
  inst.traffic.assign(nodes, Rational(0));
  for (std::size_t i = 0; i < nodes; ++i) {
    inst.names.push_back(i == inst.dest ? "d" : "s" + std::to_string(i));
  }
  auto random_cost = [&] {
    // Mostly small integers with occasional quarters.
    const long long num = rng.in_range(0, 9);
    return rng.below(4) == 0 ? ExactScalar(Rational(num, 4)) : ExactScalar(num);
  };
  for (std::size_t i = 0; i + 1 < nodes; ++i) {
    inst.traffic[i] = Rational(rng.in_range(1, 3));
    // One guaranteed edge toward the destination side keeps d reachable:
    // node i links to some node j > i (sources are ordered) or to d itself.
    const std::size_t anchor = i + 1 + rng.below(nodes - i - 1);
    inst.out[i].push_back(routing::Edge{anchor, random_cost()});
    // Up to two extra links anywhere.
    const std::size_t extras = rng.below(3);
    for (std::size_t k = 0; k < extras; ++k) {
      const std::size_t to = rng.below(nodes);
      if (to == i) continue;
      bool duplicate = false;
      for (const routing::Edge& e : inst.out[i]) duplicate = duplicate || e.to == to;
      if (!duplicate) inst.out[i].push_back(routing::Edge{to, random_cost()});
    }
  }
  inst.validate();
  return inst;
}

fairness::FairnessInstance random_additive_fairness(SplitMix64& rng, std::size_t players,
                                                    std::size_t items, long long max_value) {
  std::vector<std::vector<ExactScalar>> values(players, std::vector<ExactScalar>(items));
  for (auto& row : values) {
    for (auto& v : row) v = ExactScalar(rng.in_range(0, max_value));
  }
  return fairness::make_additive_instance(std::move(values));
}

fairness::FairnessInstance random_table_fairness(SplitMix64& rng, std::size_t players,
                                                 std::size_t items, long long max_value) {
  fairness::FairnessInstance inst;
  inst.players = players;
  inst.items = items;
  const std::size_t bundles = std::size_t(1) << items;
  for (std::size_t i = 0; i < players; ++i) {
    fairness::FairnessInstance::Valuation v;
    v.table.assign(bundles, ExactScalar(0));
    // Monotone by construction: each bundle adds a nonnegative increment to the
    // max of its one-smaller sub-bundles.
    for (std::uint32_t mask = 1; mask < bundles; ++mask) {
      ExactScalar floor;
      for (std::size_t j = 0; j < items; ++j) {
        if ((mask >> j) & 1u) floor = max(floor, v.table[mask & ~(1u << j)]);
      }
      v.table[mask] = floor + ExactScalar(rng.in_range(0, max_value));
    }
    inst.valuations.push_back(std::move(v));
  }
  inst.validate();
  return inst;
}

}  // namespace truthlab::gen
