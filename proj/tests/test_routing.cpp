#include <doctest.h>

#include "truthlab/instance_gen.hpp"
#include "truthlab/prng.hpp"
#include "truthlab/routing.hpp"

using namespace truthlab;
using namespace truthlab::routing;

namespace {

const Rational kEps(1, 100);

RoutingTree through_x(const RoutingInstance& inst) {
  // y and z forward through x.
  RoutingTree t{std::vector<std::size_t>(inst.node_count(), RoutingTree::kNone)};
  t.next_hop[0] = inst.dest;
  for (std::size_t i = 1; i < inst.node_count(); ++i) {
    if (i != inst.dest) t.next_hop[i] = 0;
  }
  return t;
}

RoutingTree all_direct(const RoutingInstance& inst) {
  RoutingTree t{std::vector<std::size_t>(inst.node_count(), RoutingTree::kNone)};
  for (std::size_t i = 0; i < inst.node_count(); ++i) {
    if (i != inst.dest) t.next_hop[i] = inst.dest;
  }
  return t;
}

}  // namespace

TEST_CASE("figure-one workloads") {
  const auto inst = figure1_instance(kEps);
  CHECK(workload(inst, through_x(inst)) == ExactScalar(3));
  CHECK(workload(inst, all_direct(inst)) == ExactScalar(Rational(1) + kEps));
  CHECK(total_cost(inst, through_x(inst)) == ExactScalar(3));
  CHECK(total_cost(inst, all_direct(inst)) == ExactScalar(Rational(3) + 2 * kEps));
}

TEST_CASE("a single edge carries its cost as workload") {
  RoutingInstance inst;
  inst.names = {"a", "d"};
  inst.dest = 1;
  inst.out.resize(2);
  inst.out[0].push_back(Edge{1, ExactScalar(Rational(7, 4))});
  inst.traffic = {1, 0};
  inst.validate();
  const auto trees = enumerate_trees(inst);
  REQUIRE(trees.size() == 1);
  CHECK(workload(inst, trees[0]) == ExactScalar(Rational(7, 4)));
  CHECK(total_cost(inst, trees[0]) == ExactScalar(Rational(7, 4)));
}

TEST_CASE("tree enumeration is exactly the valid confluent maps") {
  CHECK(enumerate_trees(figure1_instance(kEps)).size() == 4);
  CHECK(enumerate_trees(figure2_instance()).size() == 2);

  RoutingInstance chain;
  chain.names = {"a", "b", "d"};
  chain.dest = 2;
  chain.out.resize(3);
  chain.out[0].push_back(Edge{1, ExactScalar(1)});
  chain.out[1].push_back(Edge{2, ExactScalar(1)});
  chain.traffic = {1, 1, 0};
  chain.validate();
  CHECK(enumerate_trees(chain).size() == 1);

  // A cycle-forming choice is filtered out.
  RoutingInstance loop = chain;
  loop.out[0].push_back(Edge{2, ExactScalar(1)});
  loop.out[1].push_back(Edge{0, ExactScalar(1)});
  loop.validate();
  for (const auto& tree : enumerate_trees(loop)) CHECK(tree_valid(loop, tree));
  CHECK(enumerate_trees(loop).size() == 3);  // (a->b,b->d), (a->d,b->d), (a->d,b->a)
}

TEST_CASE("optimal workload trees") {
  const auto inst = figure1_instance(kEps);
  const auto opt = optimal_workload_tree(inst);
  CHECK(opt.value == ExactScalar(Rational(1) + kEps));
  CHECK(opt.tree == all_direct(inst));

  const auto ins = figure2_instance();
  const auto opt2 = optimal_workload_tree(ins);
  CHECK(opt2.value == ExactScalar(1));
  CHECK(opt2.tree.next_hop[0] == 1);  // I routes via II
}

TEST_CASE("the cost-minimizing mechanism bundles everything through x") {
  const auto inst = figure1_instance(kEps);
  const auto result = cost_min_tree(inst);
  CHECK(result.tree == through_x(inst));
  CHECK(total_cost(inst, result.tree) == ExactScalar(3));
  CHECK(workload(inst, result.tree) == ExactScalar(3));
  // Ratio against the optimum is 3/(1+eps).
  const ExactScalar ratio = workload(inst, result.tree) / optimal_workload_tree(inst).value;
  CHECK(ratio == ExactScalar(3) / ExactScalar(Rational(1) + kEps));
}

TEST_CASE("the star generalization scales the ratio with the source count") {
  for (const std::size_t k : {std::size_t(3), std::size_t(4), std::size_t(5)}) {
    const auto inst = figure1_star_instance(k, kEps);
    const auto tree = cost_min_tree(inst).tree;
    const ExactScalar ratio = workload(inst, tree) / optimal_workload_tree(inst).value;
    CHECK(ratio == ExactScalar(static_cast<long long>(k)) / ExactScalar(Rational(1) + kEps));
  }
}

TEST_CASE("the single-dimensional variant keeps the cost-min ratio") {
  const auto sd = figure1_single_dim_instance(kEps);
  const auto tree = cost_min_tree(sd.instance).tree;
  CHECK(tree.next_hop[1] == 0);  // y through x
  CHECK(tree.next_hop[2] == 0);  // z through x
  const ExactScalar ratio =
      workload(sd.instance, tree) / optimal_workload_tree(sd.instance).value;
  CHECK(ratio == ExactScalar(3) / ExactScalar(Rational(1) + kEps));
}

TEST_CASE("total cost equals the sum of node workloads") {
  SplitMix64 rng(301);
  for (int k = 0; k < 40; ++k) {
    const auto inst = gen::random_routing(rng, 6);
    for (const auto& tree : enumerate_trees(inst)) {
      ExactScalar sum;
      for (const auto& w : node_workloads(inst, tree)) sum += w;
      CHECK(sum == total_cost(inst, tree));
      CHECK(tree_valid(inst, tree));
    }
  }
}

TEST_CASE("cost minimization stays within n times the optimal workload") {
  SplitMix64 rng(302);
  for (int k = 0; k < 60; ++k) {
    const auto inst = gen::random_routing(rng, 6);
    const auto tree = cost_min_tree(inst).tree;
    const ExactScalar opt = optimal_workload_tree(inst).value;
    std::size_t sources = inst.node_count() - 1;
    CHECK(workload(inst, tree) <= ExactScalar(static_cast<long long>(sources)) * opt);
  }
}

TEST_CASE("pivot payments keep the cost-min mechanism truthful on a grid") {
  const auto inst = figure2_instance();
  const auto truthful = cost_min_tree(inst);
  const std::vector<Rational> packets = packets_through(inst, truthful.tree);
  const ExactScalar truthful_utility =
      truthful.outcome.payments[0] -
      node_workloads(inst, truthful.tree)[0];
  for (const Rational& mult : {Rational(0), Rational(1, 2), Rational(2), Rational(4)}) {
    RoutingInstance misreport = inst;
    for (auto& e : misreport.out[0]) e.cost = e.cost * ExactScalar(mult);
    const auto outcome = cost_min_tree(misreport);
    // Utility under the true costs when the tree comes from the misreport.
    const std::vector<Rational> alt_packets = packets_through(inst, outcome.tree);
    const ExactScalar incurred =
        ExactScalar(alt_packets[0]) *
        [&] {
          for (const auto& e : inst.out[0]) {
            if (e.to == outcome.tree.next_hop[0]) return e.cost;
          }
          return ExactScalar(0);
        }();
    // Recompute the payment node 0 would get: pivot terms use others' costs only.
    const auto trees = enumerate_trees(inst);
    ExactScalar others_best = ExactScalar::infinity();
    for (const auto& t : trees) {
      ExactScalar others;
      const auto loads = node_workloads(misreport, t);
      for (std::size_t j = 1; j < inst.node_count(); ++j) others += loads[j];
      others_best = min(others_best, others);
    }
    ExactScalar others_at;
    const auto loads = node_workloads(misreport, outcome.tree);
    for (std::size_t j = 1; j < inst.node_count(); ++j) others_at += loads[j];
    const ExactScalar utility = (others_best - others_at) - incurred;
    CHECK(utility <= truthful_utility);
  }
}

TEST_CASE("the lexicographic mechanism prefers the flatter workload vector") {
  // Two workload-optimal trees: sorted vectors (2,1,0,0) via the direct link
  // versus (2,2,0,0) via the relay.
  RoutingInstance inst;
  inst.names = {"a", "b", "d"};
  inst.dest = 2;
  inst.out.resize(3);
  inst.out[0].push_back(Edge{1, ExactScalar(2)});
  inst.out[0].push_back(Edge{2, ExactScalar(2)});
  inst.out[1].push_back(Edge{2, ExactScalar(1)});
  inst.traffic = {1, 1, 0};
  SingleDimRoutingInstance sd{inst};
  sd.validate();
  const auto tree = lex_optimal_mechanism(sd);
  CHECK(tree.next_hop[0] == 2);  // direct: b carries only its own packet
}

TEST_CASE("single-tree instances are returned unchanged") {
  RoutingInstance chain;
  chain.names = {"a", "d"};
  chain.dest = 1;
  chain.out.resize(2);
  chain.out[0].push_back(Edge{1, ExactScalar(1)});
  chain.traffic = {2, 0};
  SingleDimRoutingInstance sd{chain};
  sd.validate();
  CHECK(lex_optimal_mechanism(sd).next_hop[0] == 1);
  CHECK(cost_min_tree(chain).tree.next_hop[0] == 1);
  CHECK(optimal_workload_tree(chain).tree.next_hop[0] == 1);
}

TEST_CASE("raising a node's cost never routes more packets through it") {
  // A small sweep; the full grid sweep runs in the acceptance suite.
  RoutingInstance base;
  base.names = {"a", "b", "c", "d"};
  base.dest = 3;
  base.out.resize(4);
  base.out[0].push_back(Edge{1, ExactScalar(1)});
  base.out[0].push_back(Edge{3, ExactScalar(1)});
  base.out[1].push_back(Edge{3, ExactScalar(1)});
  base.out[2].push_back(Edge{1, ExactScalar(1)});
  base.out[2].push_back(Edge{3, ExactScalar(1)});
  base.traffic = {1, 1, 1, 0};
  SingleDimRoutingInstance sd{base};
  sd.validate();
  for (std::size_t node = 0; node < 3; ++node) {
    Rational last_packets(-1);
    bool first = true;
    for (int step = 8; step >= 0; --step) {  // decreasing cost
      const auto swept = sd.with_node_cost(node, ExactScalar(Rational(step, 2)));
      const auto tree = lex_optimal_mechanism(swept);
      const Rational through = packets_through(swept.instance, tree)[node];
      if (!first) CHECK(through >= last_packets);
      last_packets = through;
      first = false;
    }
  }
}

TEST_CASE("figure two and three carry the golden-ratio arithmetic") {
  const auto ins = figure2_instance();
  const ExactScalar phi = ExactScalar::golden_ratio();
  RoutingTree via_two{{1, 3, 3, RoutingTree::kNone}};
  RoutingTree via_three{{2, 3, 3, RoutingTree::kNone}};
  CHECK(workload(ins, via_two) == ExactScalar(1));
  CHECK(workload(ins, via_three) == phi);

  const auto ins2 = figure3_instance(kEps);
  CHECK(workload(ins2, via_three) == phi);
  CHECK(workload(ins2, via_two) == phi * phi - ExactScalar(kEps));
  CHECK(optimal_workload_tree(ins2).value == phi);
}

TEST_CASE("the workload bounds match the frozen golden-ratio values") {
  const auto bounds = routing_wmon_bounds(kEps);
  // (phi^2 - eps)/phi at eps = 1/100, rationalized over Q(sqrt5).
  CHECK(bounds.worst_case == ExactScalar(Rational(101, 200), Rational(99, 200)));
  CHECK(bounds.randomized == ExactScalar(Rational(301, 400), Rational(99, 400)));

  const ExactScalar phi = ExactScalar::golden_ratio();
  const ExactScalar delta = ExactScalar(kEps) * (phi - ExactScalar(1));
  CHECK(bounds.worst_case == phi - delta);
  CHECK(bounds.worst_case >= phi - delta);
  CHECK(bounds.randomized ==
        ExactScalar(Rational(1, 2)) * (ExactScalar(1) + phi) - delta / ExactScalar(2));

  const auto unconstrained = routing_wmon_bounds(kEps, false);
  CHECK(unconstrained.worst_case == ExactScalar(1));
}

TEST_CASE("instances reject malformed inputs") {
  RoutingInstance bad;
  bad.names = {"a", "d"};
  bad.dest = 1;
  bad.out.resize(2);
  bad.traffic = {1, 0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);  // a cannot reach d

  RoutingInstance neg = figure2_instance();
  neg.out[0][0].cost = ExactScalar(-1);
  CHECK_THROWS_AS(neg.validate(), std::invalid_argument);

  SingleDimRoutingInstance mixed{figure2_instance()};
  CHECK_THROWS_AS(mixed.validate(), std::invalid_argument);
}
