#include "truthlab/routing.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "truthlab/monotonicity.hpp"

namespace truthlab::routing {

std::size_t RoutingInstance::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  throw std::invalid_argument("unknown node '" + name + "'");
}

void RoutingInstance::validate() const {
  const std::size_t n = node_count();
  if (n == 0 || dest >= n) throw std::invalid_argument("missing destination node");
  if (out.size() != n || traffic.size() != n) {
    throw std::invalid_argument("per-node vectors do not match the node count");
  }
  if (!out[dest].empty()) throw std::invalid_argument("destination must not have outgoing links");
  if (traffic[dest] != 0) throw std::invalid_argument("destination originates no traffic");
  for (std::size_t i = 0; i < n; ++i) {
    if (traffic[i] < 0) throw std::invalid_argument("negative traffic");
    for (const Edge& e : out[i]) {
      if (e.to >= n || e.to == i) throw std::invalid_argument("bad link endpoint");
      if (e.cost.infinite() || e.cost.sign() < 0) {
        throw std::invalid_argument("link costs must be finite and nonnegative");
      }
    }
  }
  // Reachability of the destination from every source.
  std::vector<char> reaches(n, 0);
  reaches[dest] = 1;
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (reaches[i]) continue;
      for (const Edge& e : out[i]) {
        if (reaches[e.to]) {
          reaches[i] = 1;
          grew = true;
          break;
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!reaches[i]) throw std::invalid_argument("node '" + names[i] + "' cannot reach d");
  }
}

std::string RoutingTree::id() const {
  std::string s;
  for (std::size_t i = 0; i < next_hop.size(); ++i) {
    if (i > 0) s += ',';
    s += next_hop[i] == kNone ? "-" : std::to_string(next_hop[i]);
  }
  return s;
}

bool tree_valid(const RoutingInstance& inst, const RoutingTree& tree) {
  const std::size_t n = inst.node_count();
  if (tree.next_hop.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == inst.dest) {
      if (tree.next_hop[i] != RoutingTree::kNone) return false;
      continue;
    }
    const std::size_t hop = tree.next_hop[i];
    bool is_edge = false;
    for (const Edge& e : inst.out[i]) is_edge = is_edge || e.to == hop;
    if (!is_edge) return false;
  }
  // Walking from any node must reach the destination without revisiting.
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t hops = 0;
    for (std::size_t at = i; at != inst.dest; at = tree.next_hop[at]) {
      if (++hops > n) return false;
    }
  }
  return true;
}

namespace {

void require_valid_tree(const RoutingInstance& inst, const RoutingTree& tree) {
  if (!tree_valid(inst, tree)) throw std::invalid_argument("not a valid routing tree");
}

const ExactScalar& edge_cost(const RoutingInstance& inst, std::size_t from, std::size_t to) {
  for (const Edge& e : inst.out[from]) {
    if (e.to == to) return e.cost;
  }
  throw std::invalid_argument("missing link");
}

}  // namespace

std::vector<Rational> packets_through(const RoutingInstance& inst, const RoutingTree& tree) {
  require_valid_tree(inst, tree);
  std::vector<Rational> packets(inst.node_count(), Rational(0));
  for (std::size_t source = 0; source < inst.node_count(); ++source) {
    if (source == inst.dest) continue;
    for (std::size_t at = source; at != inst.dest; at = tree.next_hop[at]) {
      packets[at] += inst.traffic[source];
    }
  }
  return packets;
}

std::vector<ExactScalar> node_workloads(const RoutingInstance& inst, const RoutingTree& tree) {
  const std::vector<Rational> packets = packets_through(inst, tree);
  std::vector<ExactScalar> loads(inst.node_count());
  for (std::size_t i = 0; i < inst.node_count(); ++i) {
    if (i == inst.dest) continue;
    loads[i] = ExactScalar(packets[i]) * edge_cost(inst, i, tree.next_hop[i]);
  }
  return loads;
}

ExactScalar workload(const RoutingInstance& inst, const RoutingTree& tree) {
  ExactScalar worst;
  for (const ExactScalar& w : node_workloads(inst, tree)) worst = max(worst, w);
  return worst;
}

ExactScalar total_cost(const RoutingInstance& inst, const RoutingTree& tree) {
  ExactScalar total;
  for (const ExactScalar& w : node_workloads(inst, tree)) total += w;
  return total;
}

std::vector<RoutingTree> enumerate_trees(const RoutingInstance& inst, std::size_t budget) {
  inst.validate();
  const std::size_t n = inst.node_count();
  std::size_t combinations = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == inst.dest) continue;
    const std::size_t degree = inst.out[i].size();
    if (degree == 0) return {};
    if (combinations > budget / degree) {
      throw BudgetExceeded("next-hop combinations exceed the enumeration budget");
    }
    combinations *= degree;
  }
  std::vector<RoutingTree> trees;
  std::vector<std::size_t> choice(n, 0);
  for (std::size_t r = 0; r < combinations; ++r) {
    RoutingTree tree{std::vector<std::size_t>(n, RoutingTree::kNone)};
    for (std::size_t i = 0; i < n; ++i) {
      if (i != inst.dest) tree.next_hop[i] = inst.out[i][choice[i]].to;
    }
    if (tree_valid(inst, tree)) trees.push_back(std::move(tree));
    for (std::size_t i = n; i-- > 0;) {
      if (i == inst.dest) continue;
      if (++choice[i] < inst.out[i].size()) break;
      choice[i] = 0;
    }
  }
  return trees;
}

TreeOptimum optimal_workload_tree(const RoutingInstance& inst, std::size_t budget) {
  const std::vector<RoutingTree> trees = enumerate_trees(inst, budget);
  if (trees.empty()) throw std::invalid_argument("instance admits no routing tree");
  std::optional<TreeOptimum> best;
  for (const RoutingTree& tree : trees) {
    ExactScalar w = workload(inst, tree);
    if (!best || w < best->value) best = TreeOptimum{std::move(w), tree};
  }
  return *best;
}

RoutingMechanismResult cost_min_tree(const RoutingInstance& inst, std::size_t budget) {
  const std::vector<RoutingTree> trees = enumerate_trees(inst, budget);
  if (trees.empty()) throw std::invalid_argument("instance admits no routing tree");

  std::optional<std::size_t> best;
  std::vector<std::vector<ExactScalar>> loads;
  loads.reserve(trees.size());
  for (std::size_t k = 0; k < trees.size(); ++k) {
    loads.push_back(node_workloads(inst, trees[k]));
    ExactScalar total;
    for (const ExactScalar& w : loads[k]) total += w;
    if (!best) {
      best = k;
      continue;
    }
    ExactScalar best_total;
    for (const ExactScalar& w : loads[*best]) best_total += w;
    if (total < best_total ||
        (total == best_total && trees[k].next_hop < trees[*best].next_hop)) {
      best = k;
    }
  }

  // Pivot payments: what node i's presence costs everyone else.
  const std::size_t chosen = *best;
  std::vector<ExactScalar> payments(inst.node_count());
  for (std::size_t i = 0; i < inst.node_count(); ++i) {
    if (i == inst.dest) continue;
    std::optional<ExactScalar> others_best;
    for (std::size_t k = 0; k < trees.size(); ++k) {
      ExactScalar others;
      for (std::size_t j = 0; j < inst.node_count(); ++j) {
        if (j != i) others += loads[k][j];
      }
      if (!others_best || others < *others_best) others_best = others;
    }
    ExactScalar others_at_chosen;
    for (std::size_t j = 0; j < inst.node_count(); ++j) {
      if (j != i) others_at_chosen += loads[chosen][j];
    }
    payments[i] = *others_best - others_at_chosen;
  }
  MechanismOutcome outcome(trees[chosen].id(), std::move(payments));
  return RoutingMechanismResult{trees[chosen], std::move(outcome)};
}

void SingleDimRoutingInstance::validate() const {
  instance.validate();
  for (std::size_t i = 0; i < instance.node_count(); ++i) {
    for (const Edge& e : instance.out[i]) {
      if (!(e.cost == instance.out[i].front().cost)) {
        throw std::invalid_argument("single-dimensional instance needs one cost per node");
      }
    }
  }
}

ExactScalar SingleDimRoutingInstance::node_cost(std::size_t node) const {
  if (node >= instance.node_count() || instance.out[node].empty()) {
    throw std::invalid_argument("node has no outgoing link");
  }
  return instance.out[node].front().cost;
}

SingleDimRoutingInstance SingleDimRoutingInstance::with_node_cost(std::size_t node,
                                                                  const ExactScalar& cost) const {
  SingleDimRoutingInstance copy = *this;
  for (Edge& e : copy.instance.out[node]) e.cost = cost;
  return copy;
}

RoutingTree lex_optimal_mechanism(const SingleDimRoutingInstance& inst, std::size_t budget) {
  inst.validate();
  const std::vector<RoutingTree> trees = enumerate_trees(inst.instance, budget);
  if (trees.empty()) throw std::invalid_argument("instance admits no routing tree");

  std::optional<std::size_t> best;
  std::vector<ExactScalar> best_sorted;
  for (std::size_t k = 0; k < trees.size(); ++k) {
    std::vector<ExactScalar> sorted = node_workloads(inst.instance, trees[k]);
    std::sort(sorted.begin(), sorted.end(),
              [](const ExactScalar& x, const ExactScalar& y) { return y < x; });
    if (!best) {
      best = k;
      best_sorted = std::move(sorted);
      continue;
    }
    const auto cmp = std::lexicographical_compare_three_way(
        sorted.begin(), sorted.end(), best_sorted.begin(), best_sorted.end(),
        [](const ExactScalar& x, const ExactScalar& y) { return x <=> y; });
    if (cmp == std::strong_ordering::less ||
        (cmp == std::strong_ordering::equal && trees[k].next_hop < trees[*best].next_hop)) {
      best = k;
      best_sorted = std::move(sorted);
    }
  }
  return trees[*best];
}

RoutingInstance figure1_instance(const Rational& eps) {
  return figure1_star_instance(3, eps);
}

RoutingInstance figure1_star_instance(std::size_t sources, const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("epsilon must be positive");
  if (sources < 2) throw std::invalid_argument("need at least two sources");
  RoutingInstance inst;
  inst.names.push_back("x");
  for (std::size_t k = 1; k < sources; ++k) inst.names.push_back("y" + std::to_string(k));
  inst.names.push_back("d");
  inst.dest = sources;
  inst.out.resize(sources + 1);
  inst.traffic.assign(sources + 1, Rational(1));
  inst.traffic[inst.dest] = 0;
  const ExactScalar direct{Rational(1) + eps};
  inst.out[0].push_back(Edge{inst.dest, ExactScalar(1)});
  for (std::size_t k = 1; k < sources; ++k) {
    inst.out[k].push_back(Edge{0, ExactScalar(0)});
    inst.out[k].push_back(Edge{inst.dest, direct});
  }
  inst.validate();
  return inst;
}

SingleDimRoutingInstance figure1_single_dim_instance(const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("epsilon must be positive");
  RoutingInstance inst;
  inst.names = {"x", "y", "z", "y'", "z'", "d"};
  inst.dest = 5;
  inst.out.resize(6);
  inst.traffic = {1, 1, 1, 0, 0, 0};
  const ExactScalar relay_cost{Rational(1) + eps};
  inst.out[0].push_back(Edge{5, ExactScalar(1)});
  inst.out[1].push_back(Edge{0, ExactScalar(0)});
  inst.out[1].push_back(Edge{3, ExactScalar(0)});
  inst.out[2].push_back(Edge{0, ExactScalar(0)});
  inst.out[2].push_back(Edge{4, ExactScalar(0)});
  inst.out[3].push_back(Edge{5, relay_cost});
  inst.out[4].push_back(Edge{5, relay_cost});
  SingleDimRoutingInstance sd{std::move(inst)};
  sd.validate();
  return sd;
}

RoutingInstance figure2_instance() {
  RoutingInstance inst;
  inst.names = {"I", "II", "III", "d"};
  inst.dest = 3;
  inst.out.resize(4);
  inst.traffic = {1, 1, 1, 0};
  inst.out[0].push_back(Edge{1, ExactScalar(1)});
  inst.out[0].push_back(Edge{2, ExactScalar(0)});
  inst.out[1].push_back(Edge{3, ExactScalar(Rational(1, 2))});
  inst.out[2].push_back(Edge{3, ExactScalar(Rational(1, 4), Rational(1, 4))});  // (1+sqrt5)/4
  inst.validate();
  return inst;
}

RoutingInstance figure3_instance(const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("epsilon must be positive");
  RoutingInstance inst = figure2_instance();
  const ExactScalar phi = ExactScalar::golden_ratio();
  inst.out[0][0].cost = phi * phi - ExactScalar(eps);  // I -> II
  inst.out[0][1].cost = phi;                           // I -> III
  inst.validate();
  return inst;
}

RoutingWmonBounds routing_wmon_bounds(const Rational& eps, bool apply_wmon_filter) {
  // The construction needs the altered instance to still route optimally via
  // III, which holds exactly when eps < 1.
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("need 0 < epsilon < 1");
  const RoutingInstance ins = figure2_instance();
  const RoutingInstance ins2 = figure3_instance(eps);

  // Node I is the only node whose costs differ between the two instances.
  const std::size_t player = 0;
  const std::vector<RoutingTree> trees = enumerate_trees(ins);
  const ExactScalar opt1 = optimal_workload_tree(ins).value;
  const ExactScalar opt2 = optimal_workload_tree(ins2).value;

  auto player_cost = [&](const RoutingInstance& inst, const RoutingTree& tree) {
    const std::vector<Rational> packets = packets_through(inst, tree);
    return ExactScalar(packets[player]) * edge_cost(inst, player, tree.next_hop[player]);
  };

  std::optional<ExactScalar> worst, randomized;
  for (const RoutingTree& ta : trees) {
    for (const RoutingTree& tb : trees) {
      if (apply_wmon_filter &&
          !monotonicity::wmon_pair_holds(player_cost(ins, ta), player_cost(ins, tb),
                                         player_cost(ins2, ta), player_cost(ins2, tb),
                                         monotonicity::Direction::cost_minimizing)) {
        continue;
      }
      const ExactScalar ra = workload(ins, ta) / opt1;
      const ExactScalar rb = workload(ins2, tb) / opt2;
      const ExactScalar w = max(ra, rb);
      const ExactScalar r = ExactScalar(Rational(1, 2)) * (ra + rb);
      if (!worst || w < *worst) worst = w;
      if (!randomized || r < *randomized) randomized = r;
    }
  }
  return RoutingWmonBounds{*worst, *randomized};
}

}  // namespace truthlab::routing
