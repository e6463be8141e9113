#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "truthlab/common.hpp"
#include "truthlab/exact_scalar.hpp"
#include "truthlab/monotonicity.hpp"
#include "truthlab/scheduling.hpp"

namespace truthlab::lowerbounds {

/// Marks profile `to` as the unilateral deviation of `player` away from profile `from`.
struct LinkedPair {
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t player = 0;
};

/// An adversarial instance family: a scheduling type domain, the profiles the
/// adversary plays, an optional distribution over them, and the deviation links
/// the monotonicity constraints run along.
struct BoundFamily {
  std::string id;
  std::size_t machines = 0;
  std::size_t tasks = 0;
  Rational epsilon;
  scheduling::SchedulingTypeDomain domain;
  std::vector<Profile> profiles;
  std::vector<Rational> probabilities;  // empty when the family carries no distribution
  std::vector<LinkedPair> linked_pairs;
  /// Machines a rule may use; lets the search keep to the effective machines
  /// when the rest sit at +infinity.
  std::size_t effective_machines = 0;

  bool has_distribution() const { return !probabilities.empty(); }
  scheduling::SchedulingInstance instance_at(std::size_t index) const;
  void validate() const;
};

/// The adversarial families behind the reproducible bounds. Epsilon is always
/// an explicit rational (callers default it to 1/100); precondition violations
/// throw std::invalid_argument.
BoundFamily thm2_family(const Rational& eps);
BoundFamily yao_family(std::size_t m, const Rational& eps);
BoundFamily in_expectation_family(std::size_t m, const Rational& eps);
BoundFamily bayes_family(const Rational& eps, std::size_t m = 2);

/// A rule restricted to the family: one allocation per listed profile.
using FamilyRule = std::vector<scheduling::TaskAllocation>;

struct SearchOptions {
  bool apply_filter = true;  // drop the WMON / BIC feasibility filter when false
  std::size_t budget = kDefaultEnumerationBudget;
};

struct SearchResult {
  ExactScalar value;
  FamilyRule certificate;
};

/// Exact minimum, over all monotonicity-consistent assignments of allocations
/// to the family's profiles, of the worst-case makespan/OPT ratio.
SearchResult min_worst_ratio_over_wmon_rules(const BoundFamily& family,
                                             const SearchOptions& options = {});

/// Exact minimum expected ratio under the family's distribution.
SearchResult min_expected_ratio_over_wmon_rules(const BoundFamily& family,
                                                const SearchOptions& options = {});

struct BicSearchResult {
  ExactScalar value;
  FamilyRule certificate;
  bool case1_feasible = true;
  bool case2_feasible = true;
};

/// Exhaustive search over all deterministic rules on the Bayesian family,
/// filtered by two-cycle BIC feasibility for both effective players. Also
/// reports feasibility of the two rules from the case analysis.
BicSearchResult min_expected_ratio_over_bic_rules(const BoundFamily& family,
                                                  const SearchOptions& options = {});

/// The rules the case analysis pivots on (`which` is 1 or 2).
FamilyRule bayes_case_rule(const BoundFamily& family, int which);
bool bayes_rule_feasible(const BoundFamily& family, const FamilyRule& rule);

ExactScalar family_worst_ratio(const BoundFamily& family, const FamilyRule& rule,
                               std::size_t budget = kDefaultEnumerationBudget);
ExactScalar family_expected_ratio(const BoundFamily& family, const FamilyRule& rule,
                                  std::size_t budget = kDefaultEnumerationBudget);
/// Re-checks the certificate against every linked pair.
bool family_rule_wmon_consistent(const BoundFamily& family, const FamilyRule& rule);

/// Exact maximum of p_{r,m+1}(P^r) subject to the extended-monotonicity
/// inequality, p_{r,r}(P) >= 1 - eps^2, p_{r,m+1}(P) <= 1/m, and box bounds;
/// solved by exact vertex enumeration of the constraint polytope.
/// `force_equal_distributions` pins P^r = P (the degenerate case).
ExactScalar lemma3_max_marginal(std::size_t m, const Rational& eps,
                                bool force_equal_distributions = false);

using AllocationMechanism =
    std::function<scheduling::TaskAllocation(const scheduling::SchedulingInstance&)>;

struct SmonViolationWitness {
  std::size_t player = 0;
  scheduling::TaskAllocation expected;
  scheduling::TaskAllocation actual;
};

struct SmonAdversaryResult {
  scheduling::SchedulingInstance final_instance;
  scheduling::TaskAllocation final_allocation;
  ExactScalar mechanism_makespan;
  ExactScalar optimal_makespan;
  ExactScalar ratio;
  /// Nonempty iff some query along the construction moved the allocation,
  /// which certifies the mechanism is not strongly monotone.
  std::vector<SmonViolationWitness> violations;
};

/// Runs the iterative strong-monotonicity construction against a black-box
/// allocation rule on m machines and m^2 tasks.
SmonAdversaryResult smon_adversary(const AllocationMechanism& mechanism, std::size_t m,
                                   std::size_t opt_budget = kDefaultEnumerationBudget);

}  // namespace truthlab::lowerbounds
