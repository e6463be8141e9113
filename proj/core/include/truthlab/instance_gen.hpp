#pragma once

#include "truthlab/fairness.hpp"
#include "truthlab/prng.hpp"
#include "truthlab/routing.hpp"
#include "truthlab/scheduling.hpp"

namespace truthlab::gen {

/// Random instance with integer costs in [cost_lo, cost_hi] and 1..max_tasks tasks.
scheduling::SchedulingInstance random_scheduling(SplitMix64& rng, std::size_t machines,
                                                 std::size_t max_tasks, long long cost_lo,
                                                 long long cost_hi);

/// Random routing instance with at most max_nodes nodes (destination included);
/// every source reaches the destination.
routing::RoutingInstance random_routing(SplitMix64& rng, std::size_t max_nodes);

fairness::FairnessInstance random_additive_fairness(SplitMix64& rng, std::size_t players,
                                                    std::size_t items, long long max_value);

/// Random monotone set-function tables (small integer values).
fairness::FairnessInstance random_table_fairness(SplitMix64& rng, std::size_t players,
                                                 std::size_t items, long long max_value);

}  // namespace truthlab::gen
