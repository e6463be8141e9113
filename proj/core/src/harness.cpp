#include "truthlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <stdexcept>

#include "truthlab/fairness.hpp"
#include "truthlab/instance_gen.hpp"
#include "truthlab/lowerbounds.hpp"
#include "truthlab/monotonicity.hpp"
#include "truthlab/prng.hpp"
#include "truthlab/routing.hpp"

namespace truthlab::harness {

using io::json;

std::string status_name(Status status) {
  switch (status) {
    case Status::confirmed: return "CONFIRMED";
    case Status::violated: return "VIOLATED";
    case Status::error: return "ERROR";
  }
  return "ERROR";
}

namespace {

enum class Compare { at_least, at_most, equal };

void finish(Report& report, const ExactScalar& computed, const ExactScalar& bound, Compare cmp) {
  report.computed_value = computed.to_string();
  report.paper_bound = bound.to_string();
  bool ok = false;
  switch (cmp) {
    case Compare::at_least: ok = computed >= bound; break;
    case Compare::at_most: ok = computed <= bound; break;
    case Compare::equal: ok = computed == bound; break;
  }
  report.status = ok ? Status::confirmed : Status::violated;
}

std::string rat(const Rational& r) { return rational_to_string(r); }

const std::vector<Rational> kDeviationGrid = {Rational(0), Rational(1, 2), Rational(1),
                                              Rational(2), Rational(4)};

Report reproduce_thm2(const RunConfig& config) {
  Report report;
  report.id = "thm2";
  report.params["epsilon"] = rat(config.epsilon);
  const auto family = lowerbounds::thm2_family(config.epsilon);
  const auto result = lowerbounds::min_worst_ratio_over_wmon_rules(
      family, lowerbounds::SearchOptions{true, config.budget});
  // 2 / (1 + eps)
  const ExactScalar bound = ExactScalar(2) / ExactScalar(Rational(1) + config.epsilon);
  finish(report, result.value, bound, Compare::at_least);
  json cert;
  cert["consistent"] = lowerbounds::family_rule_wmon_consistent(family, result.certificate);
  json rule = json::array();
  for (const auto& alloc : result.certificate) rule.push_back(alloc.id());
  cert["certificate_rule"] = std::move(rule);
  report.certificate = std::move(cert);
  return report;
}

Report reproduce_thm3(const RunConfig& config) {
  Report report;
  report.id = "thm3";
  const std::size_t m = config.m.value_or(2);
  report.params["m"] = m;
  const auto result = lowerbounds::smon_adversary(
      [](const scheduling::SchedulingInstance& inst) {
        return scheduling::min_work_vcg(inst).allocation;
      },
      m, config.budget);
  finish(report, result.ratio, ExactScalar(static_cast<long long>(m)), Compare::at_least);
  json cert;
  cert["mechanism"] = "minwork-vcg";
  cert["mechanism_makespan"] = result.mechanism_makespan.to_string();
  cert["optimal_makespan"] = result.optimal_makespan.to_string();
  cert["smon_violations"] = result.violations.size();
  cert["final_instance"] = io::instance_to_json(result.final_instance);
  cert["final_allocation"] = result.final_allocation.id();
  report.certificate = std::move(cert);
  return report;
}

Report reproduce_thm4(const RunConfig& config) {
  Report report;
  report.id = "thm4";
  const std::size_t m = config.m.value_or(2);
  report.params["m"] = m;
  report.params["epsilon"] = rat(config.epsilon);
  const auto family = lowerbounds::yao_family(m, config.epsilon);
  const auto result = lowerbounds::min_expected_ratio_over_wmon_rules(
      family, lowerbounds::SearchOptions{true, config.budget});
  // (m-1)(1-eps)/m * 2/(1+eps) + (1-eps)/m
  const Rational mm(static_cast<long long>(m));
  const Rational bound = (mm - 1) * (1 - config.epsilon) / mm * 2 / (1 + config.epsilon) +
                         (1 - config.epsilon) / mm;
  finish(report, result.value, ExactScalar(bound), Compare::at_least);
  json cert;
  cert["consistent"] = lowerbounds::family_rule_wmon_consistent(family, result.certificate);
  json rule = json::array();
  for (const auto& alloc : result.certificate) rule.push_back(alloc.id());
  cert["certificate_rule"] = std::move(rule);
  report.certificate = std::move(cert);
  return report;
}

Report reproduce_thm5(const RunConfig& config) {
  Report report;
  report.id = "thm5";
  const std::size_t m = config.m.value_or(2);
  report.params["m"] = m;
  report.params["epsilon"] = rat(config.epsilon);
  const ExactScalar computed = lowerbounds::lemma3_max_marginal(m, config.epsilon);
  const Rational bound = Rational(1, static_cast<long long>(m)) + config.epsilon;
  finish(report, computed, ExactScalar(bound), Compare::at_most);
  json cert;
  cert["degenerate_equal_distributions"] =
      lowerbounds::lemma3_max_marginal(m, config.epsilon, true).to_string();
  report.certificate = std::move(cert);
  return report;
}

Report reproduce_thm6(const RunConfig& config) {
  Report report;
  report.id = "thm6";
  report.params["epsilon"] = rat(config.epsilon);
  const auto family = lowerbounds::bayes_family(config.epsilon);
  const auto result = lowerbounds::min_expected_ratio_over_bic_rules(
      family, lowerbounds::SearchOptions{true, config.budget});
  // 5/4 - delta with delta = (1 - 1/(1+eps)) / 2.
  const Rational delta = (Rational(1) - Rational(1) / (Rational(1) + config.epsilon)) / 2;
  const Rational bound = Rational(5, 4) - delta;
  finish(report, result.value, ExactScalar(bound), Compare::at_least);
  json cert;
  cert["delta"] = rat(delta);
  cert["case1_feasible"] = result.case1_feasible;
  cert["case2_feasible"] = result.case2_feasible;
  json rule = json::array();
  for (const auto& alloc : result.certificate) rule.push_back(alloc.id());
  cert["certificate_rule"] = std::move(rule);
  report.certificate = std::move(cert);
  return report;
}

Report reproduce_nr_upper(const RunConfig& config) {
  Report report;
  report.id = "nr-upper";
  const std::size_t count = config.suite == 0 ? 1000 : config.suite;
  report.params["seed"] = config.seed;
  report.params["instances"] = count;
  if (config.m) report.params["m"] = *config.m;

  SplitMix64 rng(config.seed);
  ExactScalar worst_normalized;
  std::size_t ds_violations = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t m = config.m.value_or(k % 2 == 0 ? 2 : 4);
    const auto inst = gen::random_scheduling(rng, m, 6, 1, 10);
    const ExactScalar expected = scheduling::nr_expected_makespan(inst, config.budget);
    const ExactScalar opt = scheduling::optimal_makespan(inst, config.budget).value;
    // Exact expected makespan against (7m/8) OPT.
    const ExactScalar cap =
        ExactScalar(Rational(7 * static_cast<long long>(m), 8)) * opt;
    worst_normalized = max(worst_normalized, expected / cap);
    ds_violations += scheduling::check_nr_per_task_truthfulness(inst, kDeviationGrid).size();
  }
  finish(report, worst_normalized, ExactScalar(1), Compare::at_most);
  json cert;
  cert["max_expected_makespan_over_bound"] = worst_normalized.to_string();
  cert["per_task_ds_violations"] = ds_violations;
  json grid = json::array();
  for (const auto& g : kDeviationGrid) grid.push_back(rat(g));
  cert["deviation_grid"] = std::move(grid);
  report.certificate = std::move(cert);
  return report;
}

Report reproduce_routing_n(const RunConfig& config) {
  Report report;
  report.id = "routing-n";
  const std::size_t sources = config.m.value_or(3);
  report.params["sources"] = sources;
  report.params["epsilon"] = rat(config.epsilon);
  report.params["seed"] = config.seed;
  const std::size_t count = config.suite == 0 ? 200 : config.suite;
  report.params["instances"] = count;

  const auto star = routing::figure1_star_instance(sources, config.epsilon);
  const auto mech = routing::cost_min_tree(star, config.budget);
  const ExactScalar ratio = routing::workload(star, mech.tree) /
                            routing::optimal_workload_tree(star, config.budget).value;
  const ExactScalar bound = ExactScalar(static_cast<long long>(sources)) /
                            ExactScalar(Rational(1) + config.epsilon);
  finish(report, ratio, bound, Compare::equal);

  // Seeded random instances: cost-min workload within n times the optimum.
  SplitMix64 rng(config.seed);
  ExactScalar worst_normalized;
  for (std::size_t k = 0; k < count; ++k) {
    const auto inst = gen::random_routing(rng, 6);
    const auto tree = routing::cost_min_tree(inst, config.budget).tree;
    const ExactScalar opt = routing::optimal_workload_tree(inst, config.budget).value;
    std::size_t n_sources = 0;
    for (std::size_t i = 0; i < inst.node_count(); ++i) n_sources += i != inst.dest ? 1 : 0;
    const ExactScalar cap = ExactScalar(static_cast<long long>(n_sources)) * opt;
    if (opt.is_zero()) continue;  // degenerate all-zero-cost instance
    worst_normalized = max(worst_normalized, routing::workload(inst, tree) / cap);
  }
  json cert;
  cert["star_tree"] = mech.tree.id();
  cert["suite_max_workload_over_n_opt"] = worst_normalized.to_string();
  cert["suite_ok"] = worst_normalized <= ExactScalar(1);
  report.certificate = std::move(cert);
  return report;
}

Report reproduce_routing_phi(const RunConfig& config, bool randomized) {
  Report report;
  report.id = randomized ? "routing-rand" : "routing-phi";
  report.params["epsilon"] = rat(config.epsilon);
  const auto bounds = routing::routing_wmon_bounds(config.epsilon);

  // delta(eps) from the altered instance's own numbers: the via-II ratio there.
  const auto ins2 = routing::figure3_instance(config.epsilon);
  routing::RoutingTree via_two{{1, 3, 3, routing::RoutingTree::kNone}};
  const ExactScalar via_two_ratio = routing::workload(ins2, via_two) /
                                    routing::optimal_workload_tree(ins2, config.budget).value;
  const ExactScalar phi = ExactScalar::golden_ratio();
  const ExactScalar delta = phi - via_two_ratio;

  json cert;
  cert["delta"] = delta.to_string();
  if (randomized) {
    const ExactScalar target = ExactScalar(Rational(1, 2)) * (ExactScalar(1) + phi - delta);
    finish(report, bounds.randomized, target, Compare::at_least);
    cert["worst_case"] = bounds.worst_case.to_string();
  } else {
    finish(report, bounds.worst_case, phi - delta, Compare::at_least);
    cert["randomized"] = bounds.randomized.to_string();
  }
  report.certificate = std::move(cert);
  return report;
}

Report reproduce_maxmin(const RunConfig& config) {
  Report report;
  report.id = "maxmin";
  report.params["c"] = rat(config.c);
  report.params["epsilon"] = rat(config.epsilon);
  const auto cert = fairness::max_min_impossibility_demo(config.c, config.epsilon);
  std::size_t violating = 0;
  for (const auto& pair : cert.qualifying_pairs) violating += pair.violates_wmon ? 1 : 0;
  finish(report, ExactScalar(static_cast<long long>(violating)),
         ExactScalar(static_cast<long long>(cert.qualifying_pairs.size())), Compare::equal);
  if (cert.qualifying_pairs.empty()) report.status = Status::violated;
  json c;
  c["qualifying_pairs"] = cert.qualifying_pairs.size();
  c["original_optimum"] = cert.original_optimum.to_string();
  c["altered_optimum"] = cert.altered_optimum.to_string();
  json pairs = json::array();
  for (const auto& pair : cert.qualifying_pairs) {
    json p;
    p["original"] = pair.original.id();
    p["altered"] = pair.altered.id();
    p["lhs"] = pair.lhs.to_string();
    p["rhs"] = pair.rhs.to_string();
    p["violates_wmon"] = pair.violates_wmon;
    pairs.push_back(std::move(p));
  }
  c["pairs"] = std::move(pairs);
  report.certificate = std::move(c);
  return report;
}

Report reproduce_minmax_vcg(const RunConfig& config) {
  Report report;
  report.id = "minmax-vcg";
  const std::size_t count = config.suite == 0 ? 500 : config.suite;
  report.params["seed"] = config.seed;
  report.params["instances"] = count;
  SplitMix64 rng(config.seed);
  ExactScalar worst_normalized;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t players = 2 + rng.below(2);
    const std::size_t items = 1 + rng.below(6);
    const auto inst = gen::random_additive_fairness(rng, players, items, 9);
    const auto vcg = fairness::min_max_vcg(inst, config.budget);
    ExactScalar worst_cost;
    for (std::size_t i = 0; i < players; ++i) {
      worst_cost = max(worst_cost, inst.value(i, vcg.bundle_mask(i)));
    }
    const ExactScalar opt = fairness::min_max_value(inst, config.budget).value;
    if (opt.is_zero()) continue;  // everything free: the cap is vacuous
    const ExactScalar cap = ExactScalar(static_cast<long long>(players)) * opt;
    worst_normalized = max(worst_normalized, worst_cost / cap);
  }
  finish(report, worst_normalized, ExactScalar(1), Compare::at_most);
  report.certificate["max_cost_over_n_opt"] = worst_normalized.to_string();
  return report;
}

Report reproduce_envy(const RunConfig& config) {
  Report report;
  report.id = "envy";
  report.params["epsilon"] = rat(config.epsilon);
  report.params["seed"] = config.seed;
  const auto demo = fairness::envy_bound_demo(config.epsilon);
  finish(report, demo.split_cases.empty() ? ExactScalar(0) : demo.split_cases[0].final_envy,
         ExactScalar(1), Compare::equal);
  if (!demo.holds) report.status = Status::violated;

  // Existence side: envy-minimizing allocations stay within the maximal
  // marginal utility on a seeded suite of small instances.
  const std::size_t count = config.suite == 0 ? 60 : config.suite;
  SplitMix64 rng(config.seed);
  bool alpha_bound_ok = true;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t players = 2 + rng.below(2);
    const std::size_t items = 1 + rng.below(6);
    const auto inst = k % 2 == 0 ? gen::random_additive_fairness(rng, players, items, 5)
                                 : gen::random_table_fairness(rng, players, items, 3);
    alpha_bound_ok = alpha_bound_ok && fairness::min_envy(inst, config.budget).value <=
                                           fairness::max_marginal_utility(inst, config.budget);
  }

  json cert;
  cert["holds"] = demo.holds;
  cert["original_min_envy"] = demo.original_min_envy.to_string();
  cert["original_alpha"] = demo.original_alpha.to_string();
  json cases = json::array();
  for (const auto& c : demo.split_cases) {
    json entry;
    entry["original"] = c.original_allocation.id();
    entry["altered_player"] = c.altered_player;
    entry["consistent"] = c.consistent_altered.size();
    entry["final_envy"] = c.final_envy.to_string();
    entry["altered_min_envy"] = c.altered_min_envy.to_string();
    entry["altered_alpha"] = c.altered_alpha.to_string();
    cases.push_back(std::move(entry));
  }
  cert["split_cases"] = std::move(cases);
  cert["suite_instances"] = count;
  cert["min_envy_within_alpha"] = alpha_bound_ok;
  report.certificate = std::move(cert);
  return report;
}

Report reproduce_dispatch(const std::string& bound_id, const RunConfig& config) {
  if (bound_id == "thm2") return reproduce_thm2(config);
  if (bound_id == "thm3") return reproduce_thm3(config);
  if (bound_id == "thm4") return reproduce_thm4(config);
  if (bound_id == "thm5") return reproduce_thm5(config);
  if (bound_id == "thm6") return reproduce_thm6(config);
  if (bound_id == "nr-upper") return reproduce_nr_upper(config);
  if (bound_id == "routing-n") return reproduce_routing_n(config);
  if (bound_id == "routing-phi") return reproduce_routing_phi(config, false);
  if (bound_id == "routing-rand") return reproduce_routing_phi(config, true);
  if (bound_id == "maxmin") return reproduce_maxmin(config);
  if (bound_id == "minmax-vcg") return reproduce_minmax_vcg(config);
  if (bound_id == "envy") return reproduce_envy(config);
  throw std::invalid_argument("unknown bound id '" + bound_id + "'");
}

}  // namespace

Report reproduce(const std::string& bound_id, const RunConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  Report report;
  try {
    report = reproduce_dispatch(bound_id, config);
  } catch (const std::exception& ex) {
    report.id = bound_id;
    report.status = Status::error;
    report.error = ex.what();
  }
  if (!report.params.contains("seed")) report.params["seed"] = config.seed;
  report.params["budget"] = config.budget;
  if (config.timings) {
    report.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - started)
                         .count();
  }
  return report;
}

namespace {

Report check_dispatch(const std::string& mechanism_id, const std::string& property_id,
                      const json& domain_json, const RunConfig& config) {
  Report report;
  report.id = mechanism_id + ":" + property_id;
  report.params["mechanism"] = mechanism_id;
  report.params["property"] = property_id;

  const auto domain = io::scheduling_domain_from_json(domain_json);
  const auto alternatives =
      scheduling::enumerate_allocations(domain.machines, domain.tasks, config.budget);
  const FiniteTypeDomain alt_domain = domain.to_alternative_domain(alternatives);
  const ProfileSpace space = domain.profile_space();

  // Allocation vectors are their own mixed-radix rank.
  auto rank_of = [&](const scheduling::TaskAllocation& alloc) {
    std::size_t rank = 0;
    for (const std::size_t machine : alloc.machine_of) rank = rank * domain.machines + machine;
    return rank;
  };

  const bool with_payments = mechanism_id == "minwork-vcg";
  std::vector<std::vector<ExactScalar>> payments(space.count());
  auto allocation_for = [&](const Profile& profile) -> scheduling::TaskAllocation {
    const auto inst = domain.instantiate(profile);
    if (mechanism_id == "minwork-vcg") return scheduling::min_work_vcg(inst).allocation;
    if (mechanism_id == "opt-lex") return scheduling::optimal_makespan(inst, config.budget).allocation;
    throw std::invalid_argument("unknown mechanism id '" + mechanism_id + "'");
  };
  const auto rule = monotonicity::AllocationRule::tabulate(space, [&](const Profile& profile) {
    if (with_payments) {
      const auto result = scheduling::min_work_vcg(domain.instantiate(profile));
      payments[space.rank(profile)] = result.outcome.payments;
      return rank_of(result.allocation);
    }
    return rank_of(allocation_for(profile));
  });

  monotonicity::ViolationReport violations;
  const auto dir = monotonicity::Direction::cost_minimizing;
  if (property_id == "wmon") {
    violations = monotonicity::check_wmon(rule, alt_domain, dir);
  } else if (property_id == "smon") {
    violations = monotonicity::check_smon(rule, alt_domain, dir);
  } else if (property_id == "dst") {
    if (!with_payments) {
      throw std::invalid_argument("mechanism '" + mechanism_id + "' carries no payments");
    }
    violations = monotonicity::check_ds_truthful(monotonicity::MechanismTable{rule, payments},
                                                 alt_domain, dir);
  } else {
    throw std::invalid_argument("unknown property id '" + property_id + "'");
  }

  finish(report, ExactScalar(static_cast<long long>(violations.items.size())), ExactScalar(0),
         Compare::equal);
  report.certificate["violations"] = io::violation_report_to_json(violations, alt_domain);
  return report;
}

Report run_dispatch(const std::string& mechanism_id, const json& instance_json,
                    const std::optional<scheduling::CoinSequence>& coins, bool expected,
                    const RunConfig& config) {
  Report report;
  report.id = mechanism_id;
  report.paper_bound = "";
  report.status = Status::confirmed;

  const io::InstanceKind kind = io::instance_kind(instance_json);
  if (mechanism_id == "minwork-vcg" || mechanism_id == "nr-randomized" ||
      mechanism_id == "opt-makespan") {
    if (kind != io::InstanceKind::scheduling) {
      throw std::invalid_argument("'" + mechanism_id + "' needs a scheduling instance");
    }
    const auto inst = io::scheduling_instance_from_json(instance_json);
    if (mechanism_id == "minwork-vcg") {
      const auto result = scheduling::min_work_vcg(inst);
      report.computed_value = scheduling::makespan(inst, result.allocation).to_string();
      report.certificate["allocation"] = io::allocation_to_json(result.allocation);
      report.certificate["outcome"] = io::outcome_to_json(result.outcome);
    } else if (mechanism_id == "opt-makespan") {
      const auto result = scheduling::optimal_makespan(inst, config.budget);
      report.computed_value = result.value.to_string();
      report.certificate["allocation"] = io::allocation_to_json(result.allocation);
    } else {
      if (coins) {
        const auto result = scheduling::nr_sub_mechanism(inst, *coins);
        report.computed_value = scheduling::makespan(inst, result.allocation).to_string();
        report.certificate["allocation"] = io::allocation_to_json(result.allocation);
        report.certificate["outcome"] = io::outcome_to_json(result.outcome);
      } else if (expected) {
        report.computed_value = scheduling::nr_expected_makespan(inst, config.budget).to_string();
        report.certificate["coin_sequences"] = std::size_t(1) << inst.tasks;
      } else {
        throw std::invalid_argument("nr-randomized needs --coins or --expected");
      }
    }
    report.certificate["makespan"] = report.computed_value;
    return report;
  }

  if (mechanism_id == "costmin-tree" || mechanism_id == "opt-workload" ||
      mechanism_id == "lex-optimal") {
    if (kind != io::InstanceKind::routing) {
      throw std::invalid_argument("'" + mechanism_id + "' needs a routing instance");
    }
    const auto inst = io::routing_instance_from_json(instance_json);
    if (mechanism_id == "costmin-tree") {
      const auto result = routing::cost_min_tree(inst, config.budget);
      report.computed_value = routing::workload(inst, result.tree).to_string();
      report.certificate["tree"] = io::tree_to_json(inst, result.tree);
      report.certificate["outcome"] = io::outcome_to_json(result.outcome);
      report.certificate["total_cost"] = routing::total_cost(inst, result.tree).to_string();
    } else if (mechanism_id == "opt-workload") {
      const auto result = routing::optimal_workload_tree(inst, config.budget);
      report.computed_value = result.value.to_string();
      report.certificate["tree"] = io::tree_to_json(inst, result.tree);
    } else {
      routing::SingleDimRoutingInstance sd{inst};
      const auto tree = routing::lex_optimal_mechanism(sd, config.budget);
      report.computed_value = routing::workload(inst, tree).to_string();
      report.certificate["tree"] = io::tree_to_json(inst, tree);
    }
    report.certificate["workload"] = report.computed_value;
    return report;
  }

  if (mechanism_id == "minmax-vcg") {
    if (kind != io::InstanceKind::fairness) {
      throw std::invalid_argument("'minmax-vcg' needs a fairness instance");
    }
    const auto inst = io::fairness_instance_from_json(instance_json);
    const auto alloc = fairness::min_max_vcg(inst, config.budget);
    ExactScalar worst, total;
    for (std::size_t i = 0; i < inst.players; ++i) {
      const ExactScalar v = inst.value(i, alloc.bundle_mask(i));
      worst = max(worst, v);
      total += v;
    }
    report.computed_value = worst.to_string();
    report.certificate["allocation"] = alloc.id();
    report.certificate["total_cost"] = total.to_string();
    report.certificate["max_cost"] = report.computed_value;
    return report;
  }

  throw std::invalid_argument("unknown mechanism id '" + mechanism_id + "'");
}

}  // namespace

Report check_mechanism(const std::string& mechanism_id, const std::string& property_id,
                       const io::json& domain, const RunConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  Report report;
  try {
    report = check_dispatch(mechanism_id, property_id, domain, config);
  } catch (const std::exception& ex) {
    report.id = mechanism_id + ":" + property_id;
    report.status = Status::error;
    report.error = ex.what();
  }
  if (config.timings) {
    report.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - started)
                         .count();
  }
  return report;
}

Report run_mechanism(const std::string& mechanism_id, const io::json& instance,
                     const std::optional<scheduling::CoinSequence>& coins, bool expected,
                     const RunConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  Report report;
  try {
    report = run_dispatch(mechanism_id, instance, coins, expected, config);
  } catch (const std::exception& ex) {
    report.id = mechanism_id;
    report.status = Status::error;
    report.error = ex.what();
  }
  if (config.timings) {
    report.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - started)
                         .count();
  }
  return report;
}

std::string report_to_json(const Report& report, bool include_timings) {
  json j;
  j["id"] = report.id;
  j["params"] = report.params;
  j["computed_value"] = report.computed_value;
  j["paper_bound"] = report.paper_bound;
  j["status"] = status_name(report.status);
  if (!report.error.empty()) j["error"] = report.error;
  j["certificate"] = report.certificate;
  j["wall_ms"] = include_timings ? report.wall_ms : 0;
  return j.dump(2);
}

std::string csv_header() {
  return "bound_id,m,epsilon,computed_value,paper_bound,status,wall_ms";
}

std::string report_to_csv_row(const Report& report, bool include_timings) {
  auto field = [&](const char* key) -> std::string {
    if (!report.params.contains(key)) return "";
    const auto& v = report.params.at(key);
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  std::string m = field("m");
  if (m.empty()) m = field("sources");
  std::string row = report.id;
  row += ',' + m;
  row += ',' + field("epsilon");
  row += ',' + report.computed_value;
  row += ',' + report.paper_bound;
  row += ',' + status_name(report.status);
  row += ',' + std::to_string(include_timings ? report.wall_ms : 0);
  return row;
}

int exit_code(std::span<const Report> reports) {
  bool violated = false;
  for (const Report& r : reports) {
    if (r.status == Status::error) return 2;
    violated = violated || r.status == Status::violated;
  }
  return violated ? 1 : 0;
}

}  // namespace truthlab::harness
