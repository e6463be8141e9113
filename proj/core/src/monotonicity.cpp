#include "truthlab/monotonicity.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace truthlab::monotonicity {

void MarginalAssignment::validate() const {
  if (p.size() != machines) throw std::invalid_argument("marginal row count mismatch");
  for (const auto& row : p) {
    if (row.size() != tasks) throw std::invalid_argument("marginal column count mismatch");
    for (const auto& q : row) {
      if (q < 0 || q > 1) throw std::invalid_argument("marginal probability outside [0,1]");
    }
  }
  for (std::size_t t = 0; t < tasks; ++t) {
    Rational column = 0;
    for (std::size_t i = 0; i < machines; ++i) column += p[i][t];
    if (column != 1) throw std::invalid_argument("task column probabilities must sum to 1");
  }
}

ExactScalar extended_valuation(const std::vector<ExactScalar>& valuation_by_alternative,
                               const DiscreteDistribution<std::size_t>& outcome) {
  return outcome.expectation([&](std::size_t a) {
    if (a >= valuation_by_alternative.size()) {
      throw std::invalid_argument("alternative outside the valuation table");
    }
    return valuation_by_alternative[a];
  });
}

ExactScalar extended_valuation(const MarginalAssignment& marginals, std::size_t machine,
                               const std::vector<ExactScalar>& task_costs) {
  if (machine >= marginals.machines) throw std::invalid_argument("machine index out of range");
  if (task_costs.size() != marginals.tasks) throw std::invalid_argument("task count mismatch");
  ExactScalar total;
  for (std::size_t t = 0; t < marginals.tasks; ++t) {
    const Rational& q = marginals.p[machine][t];
    if (q == 0) continue;  // 0 * infinity stays out of the sum
    if (task_costs[t].infinite()) return ExactScalar::infinity();
    total += ExactScalar(q) * task_costs[t];
  }
  return total;
}

bool wmon_pair_holds(const ExactScalar& v_at_a, const ExactScalar& v_at_b,
                     const ExactScalar& vdev_at_a, const ExactScalar& vdev_at_b, Direction dir) {
  const ExactScalar lhs = v_at_a + vdev_at_b;
  const ExactScalar rhs = vdev_at_a + v_at_b;
  return dir == Direction::value_maximizing ? lhs >= rhs : lhs <= rhs;
}

bool wmon_pair_holds(const std::vector<ExactScalar>& v, const std::vector<ExactScalar>& v_dev,
                     std::size_t a, std::size_t b, Direction dir) {
  if (a >= v.size() || b >= v.size() || v.size() != v_dev.size()) {
    throw std::invalid_argument("alternative outside the valuation tables");
  }
  return wmon_pair_holds(v[a], v[b], v_dev[a], v_dev[b], dir);
}

AllocationRule::AllocationRule(ProfileSpace profiles, std::vector<std::size_t> alternative_by_rank)
    : profiles_(std::move(profiles)), choice_(std::move(alternative_by_rank)) {
  if (choice_.size() != profiles_.count()) {
    throw std::invalid_argument("rule must be total on the profile space");
  }
}

MarginalRule::MarginalRule(ProfileSpace profiles, std::vector<MarginalAssignment> by_rank)
    : profiles_(std::move(profiles)), by_rank_(std::move(by_rank)) {
  if (by_rank_.size() != profiles_.count()) {
    throw std::invalid_argument("rule must be total on the profile space");
  }
  for (const auto& m : by_rank_) m.validate();
}

namespace {

/// Visits every (profile, player, deviating type) triple in lexicographic
/// profile order and hands the deviated profile to `fn`.
template <typename F>
void for_each_deviation(const ProfileSpace& profiles, const FiniteTypeDomain& domain, F&& fn) {
  for (std::size_t r = 0; r < profiles.count(); ++r) {
    const Profile base = profiles.at(r);
    for (std::size_t i = 0; i < domain.player_count(); ++i) {
      for (std::size_t k = 0; k < domain.type_count(i); ++k) {
        if (k == base[i]) continue;
        Profile deviated = base;
        deviated[i] = k;
        fn(r, base, i, k, deviated);
      }
    }
  }
}

}  // namespace

ViolationReport check_wmon(const AllocationRule& rule, const FiniteTypeDomain& domain,
                           Direction dir) {
  ViolationReport report;
  for_each_deviation(rule.profiles(), domain,
                     [&](std::size_t, const Profile& base, std::size_t i, std::size_t k,
                         const Profile& deviated) {
                       const std::size_t a = rule(base);
                       const std::size_t b = rule(deviated);
                       const auto& v = domain.type(i, base[i]).values;
                       const auto& vd = domain.type(i, k).values;
                       if (!wmon_pair_holds(v, vd, a, b, dir)) {
                         report.items.push_back(Violation{"wmon", i, base,
                                                          domain.type(i, k).name, v[a] + vd[b],
                                                          vd[a] + v[b]});
                       }
                     });
  return report;
}

ViolationReport check_smon(const AllocationRule& rule, const FiniteTypeDomain& domain,
                           Direction dir) {
  ViolationReport report;
  for_each_deviation(
      rule.profiles(), domain,
      [&](std::size_t, const Profile& base, std::size_t i, std::size_t k,
          const Profile& deviated) {
        const std::size_t a = rule(base);
        const std::size_t b = rule(deviated);
        if (a == b) return;
        const auto& v = domain.type(i, base[i]).values;
        const auto& vd = domain.type(i, k).values;
        const ExactScalar lhs = v[a] + vd[b];
        const ExactScalar rhs = vd[a] + v[b];
        const bool strict = dir == Direction::value_maximizing ? lhs > rhs : lhs < rhs;
        if (!strict) {
          report.items.push_back(Violation{"smon", i, base, domain.type(i, k).name, lhs, rhs});
        }
      });
  return report;
}

ViolationReport check_ds_truthful(const MechanismTable& mechanism, const FiniteTypeDomain& domain,
                                  Direction dir) {
  const AllocationRule& rule = mechanism.rule;
  const ProfileSpace& profiles = rule.profiles();
  if (mechanism.payments.size() != profiles.count()) {
    throw std::invalid_argument("one payment vector per profile required");
  }

  auto utility = [&](std::size_t player, std::size_t type, std::size_t alternative,
                     const ExactScalar& payment) {
    const ExactScalar& value = domain.type(player, type).values[alternative];
    return dir == Direction::value_maximizing ? value - payment : payment - value;
  };

  ViolationReport report;
  for_each_deviation(profiles, domain,
                     [&](std::size_t r, const Profile& base, std::size_t i, std::size_t k,
                         const Profile& deviated) {
                       const std::size_t rd = profiles.rank(deviated);
                       const ExactScalar truthful =
                           utility(i, base[i], rule.at_rank(r), mechanism.payments[r][i]);
                       const ExactScalar lying =
                           utility(i, base[i], rule.at_rank(rd), mechanism.payments[rd][i]);
                       if (lying > truthful) {
                         report.items.push_back(Violation{"dst", i, base, domain.type(i, k).name,
                                                          truthful, lying});
                       }
                     });

  // Payment independence: for fixed opponents, reports leading to the same
  // outcome must carry the same payment.
  for (std::size_t i = 0; i < domain.player_count(); ++i) {
    std::map<std::pair<Profile, std::size_t>, std::pair<std::size_t, ExactScalar>> seen;
    for (std::size_t r = 0; r < profiles.count(); ++r) {
      const Profile profile = profiles.at(r);
      Profile opponents = profile;
      opponents[i] = 0;  // canonical slot for the grouping key
      const std::size_t alt = rule.at_rank(r);
      const ExactScalar& pay = mechanism.payments[r][i];
      auto key = std::make_pair(std::move(opponents), alt);
      auto [it, inserted] = seen.emplace(std::move(key), std::make_pair(r, pay));
      if (!inserted && !(it->second.second == pay)) {
        report.items.push_back(Violation{"payment-independence", i, profiles.at(it->second.first),
                                         domain.type(i, profile[i]).name, it->second.second, pay});
      }
    }
  }
  return report;
}

ViolationReport check_extended_wmon(const MarginalRule& rule,
                                    const scheduling::SchedulingTypeDomain& domain,
                                    Direction dir) {
  domain.validate();
  const ProfileSpace& profiles = rule.profiles();
  ViolationReport report;
  for (std::size_t r = 0; r < profiles.count(); ++r) {
    const Profile base = profiles.at(r);
    for (std::size_t i = 0; i < domain.machines; ++i) {
      for (std::size_t k = 0; k < domain.types[i].size(); ++k) {
        if (k == base[i]) continue;
        Profile deviated = base;
        deviated[i] = k;
        const MarginalAssignment& p = rule.at_rank(r);
        const MarginalAssignment& q = rule.at_rank(profiles.rank(deviated));
        const auto& v = domain.types[i][base[i]].cost;
        const auto& vd = domain.types[i][k].cost;
        const ExactScalar lhs = extended_valuation(p, i, v) + extended_valuation(q, i, vd);
        const ExactScalar rhs = extended_valuation(p, i, vd) + extended_valuation(q, i, v);
        const bool ok = dir == Direction::value_maximizing ? lhs >= rhs : lhs <= rhs;
        if (!ok) {
          report.items.push_back(
              Violation{"extended-wmon", i, base, domain.types[i][k].name, lhs, rhs});
        }
      }
    }
  }
  return report;
}

namespace {

/// Edge weight of the constraint p(t) <= p(s) + w(s, t) in the type graph.
ExactScalar payment_edge_weight(const FiniteTypeDomain& domain, const AllocationRule& rule,
                                const Profile& base, std::size_t player, std::size_t s,
                                std::size_t t, Direction dir) {
  Profile ps = base;
  ps[player] = s;
  Profile pt = base;
  pt[player] = t;
  const std::size_t fs = rule(ps);
  const std::size_t ft = rule(pt);
  if (dir == Direction::value_maximizing) {
    const auto& vt = domain.type(player, t).values;
    return vt[ft] - vt[fs];
  }
  const auto& vs = domain.type(player, s).values;
  return vs[ft] - vs[fs];
}

}  // namespace

PaymentsResult payments_exist(const AllocationRule& rule, const FiniteTypeDomain& domain,
                              Direction dir) {
  const ProfileSpace& profiles = rule.profiles();
  std::vector<std::vector<ExactScalar>> payments(profiles.count());
  for (auto& row : payments) row.resize(domain.player_count());

  for (std::size_t i = 0; i < domain.player_count(); ++i) {
    const std::size_t k = domain.type_count(i);
    // One Bellman-Ford per opponent assignment: enumerate profiles whose i-th
    // slot is zero to visit each opponent combination exactly once.
    for (std::size_t r = 0; r < profiles.count(); ++r) {
      const Profile base = profiles.at(r);
      if (base[i] != 0) continue;
      std::vector<ExactScalar> dist(k, ExactScalar(0));
      bool changed = true;
      for (std::size_t round = 0; round < k && changed; ++round) {
        changed = false;
        for (std::size_t s = 0; s < k; ++s) {
          for (std::size_t t = 0; t < k; ++t) {
            if (s == t) continue;
            const ExactScalar w = payment_edge_weight(domain, rule, base, i, s, t, dir);
            if (dist[s] + w < dist[t]) {
              dist[t] = dist[s] + w;
              changed = true;
            }
          }
        }
      }
      if (changed) return PaymentsResult{false, std::nullopt};  // negative cycle
      for (std::size_t s = 0; s < k; ++s) {
        Profile p = base;
        p[i] = s;
        payments[profiles.rank(p)][i] = dist[s];
      }
    }
  }
  return PaymentsResult{true, MechanismTable{rule, std::move(payments)}};
}

bool bayes_two_cycle_feasible(const AllocationRule& rule, const FiniteTypeDomain& domain,
                              const DiscreteDistribution<Profile>& prior, std::size_t player,
                              std::size_t type_a, std::size_t type_b, Direction dir) {
  if (player >= domain.player_count()) throw std::invalid_argument("player out of range");
  if (domain.type_count(player) != 2 || type_a == type_b || type_a > 1 || type_b > 1) {
    throw std::invalid_argument("the tested player must have exactly two types");
  }

  // Conditional opponent distributions given each report; product form means
  // they coincide.
  std::map<Profile, Rational> cond_a, cond_b;
  Rational mass_a = 0, mass_b = 0;
  for (const auto& [profile, p] : prior.entries()) {
    if (p == 0) continue;
    Profile opponents = profile;
    opponents.erase(opponents.begin() + static_cast<std::ptrdiff_t>(player));
    if (profile[player] == type_a) {
      cond_a[opponents] += p;
      mass_a += p;
    } else if (profile[player] == type_b) {
      cond_b[opponents] += p;
      mass_b += p;
    }
  }
  if (mass_a == 0 || mass_b == 0) {
    throw std::invalid_argument("prior gives a tested type zero probability");
  }
  for (auto& [_, p] : cond_a) p /= mass_a;
  for (auto& [_, p] : cond_b) p /= mass_b;
  if (cond_a != cond_b) {
    throw std::invalid_argument("prior is not product-form over the tested player's opponents");
  }

  const auto& va = domain.type(player, type_a).values;
  const auto& vb = domain.type(player, type_b).values;
  ExactScalar lhs, rhs;
  for (const auto& [opponents, p] : cond_a) {
    Profile pa = opponents;
    pa.insert(pa.begin() + static_cast<std::ptrdiff_t>(player), type_a);
    Profile pb = opponents;
    pb.insert(pb.begin() + static_cast<std::ptrdiff_t>(player), type_b);
    const std::size_t fa = rule(pa);
    const std::size_t fb = rule(pb);
    const ExactScalar weight{p};
    lhs += weight * (va[fa] + vb[fb]);
    rhs += weight * (vb[fa] + va[fb]);
  }
  return dir == Direction::value_maximizing ? lhs >= rhs : lhs <= rhs;
}

}  // namespace truthlab::monotonicity
