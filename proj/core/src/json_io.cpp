#include "truthlab/json_io.hpp"

#include <limits>
#include <stdexcept>

namespace truthlab::io {

namespace {

bool fits_int64(const BigInt& v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

json rational_to_json(const Rational& value) {
  if (denominator(value) == 1 && fits_int64(numerator(value))) {
    return json(static_cast<std::int64_t>(numerator(value)));
  }
  return json(rational_to_string(value));
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return rational_from_string(j.get<std::string>());
  throw std::invalid_argument("expected a rational (integer or \"p/q\")");
}

json scalar_to_json(const ExactScalar& value) {
  if (value.infinite()) return json("inf");
  if (value.sqrt5_part() == 0) return rational_to_json(value.rational_part());
  json j;
  j["r"] = rational_to_string(value.rational_part());
  j["s"] = rational_to_string(value.sqrt5_part());
  return j;
}

ExactScalar scalar_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return ExactScalar::infinity();
  if (j.is_object()) {
    Rational r = j.contains("r") ? rational_from_json(j.at("r")) : Rational(0);
    Rational s = j.contains("s") ? rational_from_json(j.at("s")) : Rational(0);
    return {std::move(r), std::move(s)};
  }
  return ExactScalar(rational_from_json(j));
}

json instance_to_json(const scheduling::SchedulingInstance& inst) {
  json j;
  j["type"] = "scheduling";
  j["machines"] = inst.machines;
  j["tasks"] = inst.tasks;
  json costs = json::array();
  for (const auto& row : inst.cost) {
    json r = json::array();
    for (const auto& c : row) r.push_back(scalar_to_json(c));
    costs.push_back(std::move(r));
  }
  j["costs"] = std::move(costs);
  return j;
}

scheduling::SchedulingInstance scheduling_instance_from_json(const json& j) {
  scheduling::SchedulingInstance inst;
  inst.machines = j.at("machines").get<std::size_t>();
  inst.tasks = j.at("tasks").get<std::size_t>();
  for (const auto& row : j.at("costs")) {
    std::vector<ExactScalar> r;
    for (const auto& c : row) r.push_back(scalar_from_json(c));
    inst.cost.push_back(std::move(r));
  }
  inst.validate();
  return inst;
}

json allocation_to_json(const scheduling::TaskAllocation& alloc) {
  json j;
  j["assignment"] = alloc.machine_of;
  return j;
}

scheduling::TaskAllocation allocation_from_json(const json& j) {
  scheduling::TaskAllocation alloc;
  alloc.machine_of = j.at("assignment").get<std::vector<std::size_t>>();
  return alloc;
}

json instance_to_json(const routing::RoutingInstance& inst) {
  json j;
  j["type"] = "routing";
  j["nodes"] = inst.names;
  j["dest"] = inst.names[inst.dest];
  json edges = json::array();
  for (std::size_t i = 0; i < inst.node_count(); ++i) {
    for (const auto& e : inst.out[i]) {
      json edge;
      edge["from"] = inst.names[i];
      edge["to"] = inst.names[e.to];
      edge["cost"] = scalar_to_json(e.cost);
      edges.push_back(std::move(edge));
    }
  }
  j["edges"] = std::move(edges);
  json traffic;
  for (std::size_t i = 0; i < inst.node_count(); ++i) {
    if (i != inst.dest) traffic[inst.names[i]] = rational_to_json(inst.traffic[i]);
  }
  j["traffic"] = std::move(traffic);
  return j;
}

routing::RoutingInstance routing_instance_from_json(const json& j) {
  routing::RoutingInstance inst;
  inst.names = j.at("nodes").get<std::vector<std::string>>();
  inst.dest = inst.index_of(j.at("dest").get<std::string>());
  inst.out.resize(inst.names.size());
  inst.traffic.assign(inst.names.size(), Rational(0));
  for (const auto& edge : j.at("edges")) {
    const std::size_t from = inst.index_of(edge.at("from").get<std::string>());
    const std::size_t to = inst.index_of(edge.at("to").get<std::string>());
    inst.out[from].push_back(routing::Edge{to, scalar_from_json(edge.at("cost"))});
  }
  if (j.contains("traffic")) {
    for (const auto& [name, t] : j.at("traffic").items()) {
      inst.traffic[inst.index_of(name)] = rational_from_json(t);
    }
  }
  inst.validate();
  return inst;
}

json tree_to_json(const routing::RoutingInstance& inst, const routing::RoutingTree& tree) {
  json hops;
  for (std::size_t i = 0; i < inst.node_count(); ++i) {
    if (tree.next_hop[i] != routing::RoutingTree::kNone) {
      hops[inst.names[i]] = inst.names[tree.next_hop[i]];
    }
  }
  json j;
  j["nexthop"] = std::move(hops);
  return j;
}

routing::RoutingTree tree_from_json(const routing::RoutingInstance& inst, const json& j) {
  routing::RoutingTree tree{std::vector<std::size_t>(inst.node_count(), routing::RoutingTree::kNone)};
  for (const auto& [from, to] : j.at("nexthop").items()) {
    tree.next_hop[inst.index_of(from)] = inst.index_of(to.get<std::string>());
  }
  return tree;
}

json instance_to_json(const fairness::FairnessInstance& inst) {
  json j;
  j["type"] = "fairness";
  j["players"] = inst.players;
  j["items"] = inst.items;
  json valuations = json::array();
  for (const auto& v : inst.valuations) {
    json entry;
    if (v.is_additive()) {
      json row = json::array();
      for (const auto& x : v.additive) row.push_back(scalar_to_json(x));
      entry["additive"] = std::move(row);
    } else {
      json table;
      for (std::size_t mask = 0; mask < v.table.size(); ++mask) {
        table[std::to_string(mask)] = scalar_to_json(v.table[mask]);
      }
      entry["table"] = std::move(table);
    }
    valuations.push_back(std::move(entry));
  }
  j["valuations"] = std::move(valuations);
  return j;
}

fairness::FairnessInstance fairness_instance_from_json(const json& j) {
  fairness::FairnessInstance inst;
  inst.players = j.at("players").get<std::size_t>();
  inst.items = j.at("items").get<std::size_t>();
  for (const auto& entry : j.at("valuations")) {
    fairness::FairnessInstance::Valuation v;
    if (entry.contains("additive")) {
      for (const auto& x : entry.at("additive")) v.additive.push_back(scalar_from_json(x));
    } else {
      v.table.assign(std::size_t(1) << inst.items, ExactScalar(0));
      for (const auto& [mask, x] : entry.at("table").items()) {
        const std::size_t m = std::stoul(mask);
        if (m >= v.table.size()) throw std::invalid_argument("bundle mask out of range");
        v.table[m] = scalar_from_json(x);
      }
    }
    inst.valuations.push_back(std::move(v));
  }
  inst.validate();
  return inst;
}

json domain_to_json(const scheduling::SchedulingTypeDomain& domain) {
  json j;
  j["type"] = "scheduling-domain";
  j["machines"] = domain.machines;
  j["tasks"] = domain.tasks;
  json players = json::array();
  for (const auto& list : domain.types) {
    json types = json::array();
    for (const auto& t : list) {
      json entry;
      entry["name"] = t.name;
      json costs = json::array();
      for (const auto& c : t.cost) costs.push_back(scalar_to_json(c));
      entry["costs"] = std::move(costs);
      types.push_back(std::move(entry));
    }
    players.push_back(std::move(types));
  }
  j["players"] = std::move(players);
  return j;
}

scheduling::SchedulingTypeDomain scheduling_domain_from_json(const json& j) {
  scheduling::SchedulingTypeDomain domain;
  domain.machines = j.at("machines").get<std::size_t>();
  domain.tasks = j.at("tasks").get<std::size_t>();
  for (const auto& types : j.at("players")) {
    std::vector<scheduling::NamedCosts> list;
    for (const auto& entry : types) {
      scheduling::NamedCosts t;
      t.name = entry.at("name").get<std::string>();
      for (const auto& c : entry.at("costs")) t.cost.push_back(scalar_from_json(c));
      list.push_back(std::move(t));
    }
    domain.types.push_back(std::move(list));
  }
  domain.validate();
  return domain;
}

json violation_report_to_json(const monotonicity::ViolationReport& report,
                              const FiniteTypeDomain& domain) {
  json items = json::array();
  for (const auto& v : report.items) {
    json item;
    item["kind"] = v.kind;
    item["player"] = v.player;
    json profile = json::array();
    for (std::size_t i = 0; i < v.profile.size(); ++i) {
      profile.push_back(domain.type(i, v.profile[i]).name);
    }
    item["profile"] = std::move(profile);
    item["deviation"] = v.deviation;
    item["lhs"] = scalar_to_json(v.lhs);
    item["rhs"] = scalar_to_json(v.rhs);
    items.push_back(std::move(item));
  }
  return items;
}

json outcome_to_json(const MechanismOutcome& outcome) {
  json j;
  j["alternative"] = outcome.alternative;
  json payments = json::array();
  for (const auto& p : outcome.payments) payments.push_back(scalar_to_json(p));
  j["payments"] = std::move(payments);
  return j;
}

InstanceKind instance_kind(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "scheduling") return InstanceKind::scheduling;
  if (type == "routing") return InstanceKind::routing;
  if (type == "fairness") return InstanceKind::fairness;
  throw std::invalid_argument("unknown instance type '" + type + "'");
}

}  // namespace truthlab::io
