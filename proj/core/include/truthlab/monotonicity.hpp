#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "truthlab/distribution.hpp"
#include "truthlab/domain.hpp"
#include "truthlab/exact_scalar.hpp"
#include "truthlab/scheduling.hpp"

namespace truthlab::monotonicity {

/// Whether players maximize value or minimize cost. Flips every inequality, so
/// it is an explicit parameter everywhere.
enum class Direction { value_maximizing, cost_minimizing };

/// p[machine][task]: the probability that the machine gets the task.
struct MarginalAssignment {
  std::size_t machines = 0;
  std::size_t tasks = 0;
  std::vector<std::vector<Rational>> p;

  /// Entries in [0,1], every task column sums to exactly 1.
  void validate() const;
};

/// Extended valuation of an outcome distribution: sum of Pr[a] * v(a).
ExactScalar extended_valuation(const std::vector<ExactScalar>& valuation_by_alternative,
                               const DiscreteDistribution<std::size_t>& outcome);

/// Marginal form for additive scheduling valuations: sum over tasks of
/// p[machine][t] * cost(t).
ExactScalar extended_valuation(const MarginalAssignment& marginals, std::size_t machine,
                               const std::vector<ExactScalar>& task_costs);

/// The 2-cycle inequality on evaluated numbers: value direction demands
/// v(a) + v'(b) >= v'(a) + v(b), cost direction the reverse.
bool wmon_pair_holds(const ExactScalar& v_at_a, const ExactScalar& v_at_b,
                     const ExactScalar& vdev_at_a, const ExactScalar& vdev_at_b, Direction dir);

/// Table form over a common alternative set.
bool wmon_pair_holds(const std::vector<ExactScalar>& v, const std::vector<ExactScalar>& v_dev,
                     std::size_t a, std::size_t b, Direction dir);

/// A total allocation rule tabulated over a profile space.
class AllocationRule {
 public:
  AllocationRule(ProfileSpace profiles, std::vector<std::size_t> alternative_by_rank);

  template <typename F>
  static AllocationRule tabulate(const ProfileSpace& profiles, F&& fn) {
    std::vector<std::size_t> choice(profiles.count());
    for (std::size_t r = 0; r < profiles.count(); ++r) choice[r] = fn(profiles.at(r));
    return AllocationRule(profiles, std::move(choice));
  }

  const ProfileSpace& profiles() const { return profiles_; }
  std::size_t at_rank(std::size_t rank) const { return choice_[rank]; }
  std::size_t operator()(const Profile& profile) const { return choice_[profiles_.rank(profile)]; }

 private:
  ProfileSpace profiles_;
  std::vector<std::size_t> choice_;
};

/// An allocation rule together with per-profile, per-player payments.
struct MechanismTable {
  AllocationRule rule;
  std::vector<std::vector<ExactScalar>> payments;  // [profile rank][player]
};

struct Violation {
  std::string kind;       // which check failed
  std::size_t player = 0;
  Profile profile;        // the base profile
  std::string deviation;  // name of the type deviated to
  ExactScalar lhs;
  ExactScalar rhs;
};

struct ViolationReport {
  std::vector<Violation> items;
  bool empty() const { return items.empty(); }
};

/// All weak-monotonicity violations over every unilateral deviation,
/// enumerated in lexicographic profile order.
ViolationReport check_wmon(const AllocationRule& rule, const FiniteTypeDomain& domain,
                           Direction dir);

/// As check_wmon but demanding strict inequality whenever the outcome changes.
ViolationReport check_smon(const AllocationRule& rule, const FiniteTypeDomain& domain,
                           Direction dir);

/// Dominant-strategy truthfulness with payments (quasilinear utilities), plus
/// payment independence: for fixed opponents and identical outcome, a player's
/// payment may not depend on his report.
ViolationReport check_ds_truthful(const MechanismTable& mechanism, const FiniteTypeDomain& domain,
                                  Direction dir);

/// A randomized scheduling mechanism seen through its marginal assignment
/// probabilities, tabulated per profile.
class MarginalRule {
 public:
  MarginalRule(ProfileSpace profiles, std::vector<MarginalAssignment> by_rank);

  template <typename F>
  static MarginalRule tabulate(const ProfileSpace& profiles, F&& fn) {
    std::vector<MarginalAssignment> m;
    m.reserve(profiles.count());
    for (std::size_t r = 0; r < profiles.count(); ++r) m.push_back(fn(profiles.at(r)));
    return MarginalRule(profiles, std::move(m));
  }

  const ProfileSpace& profiles() const { return profiles_; }
  const MarginalAssignment& at_rank(std::size_t rank) const { return by_rank_[rank]; }

 private:
  ProfileSpace profiles_;
  std::vector<MarginalAssignment> by_rank_;
};

/// Weak monotonicity in the extended sense over marginal assignments; valid for
/// additive valuations, which a scheduling type domain guarantees by construction.
ViolationReport check_extended_wmon(const MarginalRule& rule,
                                    const scheduling::SchedulingTypeDomain& domain, Direction dir);

struct PaymentsResult {
  bool feasible = false;
  std::optional<MechanismTable> mechanism;  // payments from shortest-path potentials
};

/// Cycle-monotonicity test: truthful payments exist iff no player's type graph
/// (for any fixed opponent profile) has a negative cycle. With two types per
/// player this degenerates to the weak-monotonicity 2-cycle.
PaymentsResult payments_exist(const AllocationRule& rule, const FiniteTypeDomain& domain,
                              Direction dir);

/// The summed pair of Bayesian incentive constraints for a player with exactly
/// two types; with two types this is equivalent to the existence of BIC payments.
/// The prior must be product-form over the tested player's opponents.
bool bayes_two_cycle_feasible(const AllocationRule& rule, const FiniteTypeDomain& domain,
                              const DiscreteDistribution<Profile>& prior, std::size_t player,
                              std::size_t type_a, std::size_t type_b, Direction dir);

}  // namespace truthlab::monotonicity
