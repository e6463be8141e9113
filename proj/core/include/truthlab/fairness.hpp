#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "truthlab/common.hpp"
#include "truthlab/exact_scalar.hpp"

namespace truthlab::fairness {

/// Indivisible-items instance; valuations are additive vectors or explicit
/// monotone set-function tables (tables capped at 16 items).
struct FairnessInstance {
  struct Valuation {
    std::vector<ExactScalar> additive;  // size items, or empty
    std::vector<ExactScalar> table;     // size 1 << items, or empty

    bool is_additive() const { return !additive.empty(); }
  };

  std::size_t players = 0;
  std::size_t items = 0;
  std::vector<Valuation> valuations;

  void validate() const;
  ExactScalar value(std::size_t player, std::uint32_t bundle_mask) const;
};

FairnessInstance make_additive_instance(std::vector<std::vector<ExactScalar>> values);

/// Every item assigned to exactly one player.
struct ItemAllocation {
  std::vector<std::size_t> owner_of;

  bool operator==(const ItemAllocation&) const = default;
  std::uint32_t bundle_mask(std::size_t player) const;
  std::string id() const;
};

/// Max over ordered player pairs (i = j included, so the result is >= 0) of
/// v_i(S_j) - v_i(S_i).
ExactScalar envy(const FairnessInstance& inst, const ItemAllocation& alloc);

struct FairOptimum {
  ExactScalar value;
  ItemAllocation allocation;  // lexicographically smallest argopt
};

FairOptimum max_min_value(const FairnessInstance& inst,
                          std::size_t budget = kDefaultEnumerationBudget);
FairOptimum min_max_value(const FairnessInstance& inst,
                          std::size_t budget = kDefaultEnumerationBudget);
FairOptimum min_envy(const FairnessInstance& inst, std::size_t budget = kDefaultEnumerationBudget);

/// Largest single-item marginal value over all players, items, and bundles
/// (closed form for additive valuations).
ExactScalar max_marginal_utility(const FairnessInstance& inst,
                                 std::size_t budget = kDefaultEnumerationBudget);

/// The allocation minimizing total cost; its max player cost n-approximates
/// the Min-Max optimum.
ItemAllocation min_max_vcg(const FairnessInstance& inst,
                           std::size_t budget = kDefaultEnumerationBudget);

struct MaxMinDemoPair {
  ItemAllocation original;
  ItemAllocation altered;
  ExactScalar lhs;  // v_2(S(a)) + v'_2(S(b))
  ExactScalar rhs;  // v'_2(S(a)) + v_2(S(b))
  bool violates_wmon = false;
};

struct MaxMinImpossibilityCertificate {
  FairnessInstance original;
  FairnessInstance altered;
  ExactScalar original_optimum;
  ExactScalar altered_optimum;
  std::vector<MaxMinDemoPair> qualifying_pairs;  // both allocations c-approximate
  bool all_violate = false;
};

/// Replays the Max-Min impossibility: every pair of c-approximating allocations
/// for the two profiles breaks weak monotonicity for player 2.
/// Requires c >= 1, 0 < eps < 1, and eps <= 1/c^2 so the altered valuation
/// stays nonnegative.
MaxMinImpossibilityCertificate max_min_impossibility_demo(const Rational& c, const Rational& eps);

struct EnvyDemoCase {
  ItemAllocation original_allocation;
  std::size_t altered_player = 0;
  FairnessInstance altered;
  std::vector<ItemAllocation> consistent_altered;  // allocations WMON allows after the shift
  ExactScalar final_envy;
  ExactScalar altered_min_envy;
  ExactScalar altered_alpha;
};

struct EnvyBoundCertificate {
  FairnessInstance original;
  ExactScalar original_min_envy;
  ExactScalar original_alpha;
  /// The 2/1 splits a mechanism with bounded envy gap must choose among; each
  /// gets a tailored altered instance where monotonicity pins the allocation.
  std::vector<EnvyDemoCase> split_cases;
  /// All-to-one allocations are already 2*alpha away from optimal.
  std::vector<ItemAllocation> excluded_allocations;
  bool holds = false;
};

/// Replays the envy bound: on the all-ones instance every monotone rule that
/// starts from a 2/1 split ends with envy 1 while the altered optimum is 0 and
/// the maximal marginal utility is 1 + eps.
EnvyBoundCertificate envy_bound_demo(const Rational& eps);

}  // namespace truthlab::fairness
