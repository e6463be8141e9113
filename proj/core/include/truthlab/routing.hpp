#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "truthlab/common.hpp"
#include "truthlab/domain.hpp"
#include "truthlab/exact_scalar.hpp"

namespace truthlab::routing {

struct Edge {
  std::size_t to = 0;
  ExactScalar cost;  // per-packet cost the tail node incurs on this link
};

/// Directed AS graph with per-node per-edge costs and per-node traffic.
/// A node's workload counts its own originated packets.
struct RoutingInstance {
  std::vector<std::string> names;
  std::size_t dest = 0;
  std::vector<std::vector<Edge>> out;  // per node, fixed order
  std::vector<Rational> traffic;      // packets originating per node; zero at dest

  std::size_t node_count() const { return names.size(); }
  std::size_t index_of(const std::string& name) const;
  /// Every source reaches the destination, costs are finite and nonnegative,
  /// the destination has no outgoing links and originates no traffic.
  void validate() const;
};

/// Confluent next-hop map into the destination.
struct RoutingTree {
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> next_hop;  // kNone exactly at the destination

  bool operator==(const RoutingTree&) const = default;
  std::string id() const;
};

bool tree_valid(const RoutingInstance& inst, const RoutingTree& tree);

/// Packets passing through each node, the node's own traffic included.
std::vector<Rational> packets_through(const RoutingInstance& inst, const RoutingTree& tree);

/// Per-node workload: packets through the node times its chosen link's cost.
std::vector<ExactScalar> node_workloads(const RoutingInstance& inst, const RoutingTree& tree);

ExactScalar workload(const RoutingInstance& inst, const RoutingTree& tree);
ExactScalar total_cost(const RoutingInstance& inst, const RoutingTree& tree);

/// Exactly the confluent, acyclic, destination-reaching next-hop assignments,
/// in lexicographic order of the per-node edge choices.
std::vector<RoutingTree> enumerate_trees(const RoutingInstance& inst,
                                         std::size_t budget = kDefaultEnumerationBudget);

struct TreeOptimum {
  ExactScalar value;
  RoutingTree tree;
};

TreeOptimum optimal_workload_tree(const RoutingInstance& inst,
                                  std::size_t budget = kDefaultEnumerationBudget);

struct RoutingMechanismResult {
  RoutingTree tree;
  MechanismOutcome outcome;  // pivot-rule payments, one per node (zero at dest)
};

/// The total-cost-minimizing tree (lexicographic next-hop tie-break) with
/// standard pivot payments.
RoutingMechanismResult cost_min_tree(const RoutingInstance& inst,
                                     std::size_t budget = kDefaultEnumerationBudget);

/// Instance whose per-node cost is one scalar across all outgoing links.
struct SingleDimRoutingInstance {
  RoutingInstance instance;
  void validate() const;
  /// The node's single per-packet cost.
  ExactScalar node_cost(std::size_t node) const;
  /// Same instance with one node's cost replaced.
  SingleDimRoutingInstance with_node_cost(std::size_t node, const ExactScalar& cost) const;
};

/// Among workload-optimal trees picks the one whose decreasing sorted per-node
/// workload vector is lexicographically minimal; remaining ties go to the
/// smallest next-hop vector.
RoutingTree lex_optimal_mechanism(const SingleDimRoutingInstance& inst,
                                  std::size_t budget = kDefaultEnumerationBudget);

RoutingInstance figure1_instance(const Rational& eps);
/// The k-source star generalization of figure 1 (k >= 2).
RoutingInstance figure1_star_instance(std::size_t sources, const Rational& eps);
/// The single-dimensional variant: the direct links go through relay nodes.
SingleDimRoutingInstance figure1_single_dim_instance(const Rational& eps);
RoutingInstance figure2_instance();
RoutingInstance figure3_instance(const Rational& eps);

struct RoutingWmonBounds {
  ExactScalar worst_case;
  ExactScalar randomized;
};

/// Exhaustive search over monotonicity-consistent tree pairs for the figure 2/3
/// instances: the minimum worst-case ratio and the minimum expected ratio under
/// the uniform mix.
RoutingWmonBounds routing_wmon_bounds(const Rational& eps, bool apply_wmon_filter = true);

}  // namespace truthlab::routing
