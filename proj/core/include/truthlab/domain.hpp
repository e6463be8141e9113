#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "truthlab/exact_scalar.hpp"

namespace truthlab {

/// One entry per player: the index of the chosen valuation in that player's type list.
using Profile = std::vector<std::size_t>;

/// Mixed-radix enumeration of profiles. Player 0 is the most significant digit,
/// so ranks follow lexicographic profile order.
class ProfileSpace {
 public:
  explicit ProfileSpace(std::vector<std::size_t> radices);

  std::size_t player_count() const { return radices_.size(); }
  std::size_t count() const { return count_; }
  Profile at(std::size_t rank) const;
  std::size_t rank(const Profile& profile) const;

 private:
  std::vector<std::size_t> radices_;
  std::size_t count_ = 1;
};

/// A named valuation given as an explicit table indexed by alternative.
struct NamedValuation {
  std::string name;
  std::vector<ExactScalar> values;
};

/// Per-player finite lists of named valuations over a common finite alternative set.
class FiniteTypeDomain {
 public:
  FiniteTypeDomain(std::size_t alternative_count,
                   std::vector<std::vector<NamedValuation>> players);

  std::size_t alternative_count() const { return alternative_count_; }
  std::size_t player_count() const { return players_.size(); }
  std::size_t type_count(std::size_t player) const { return players_[player].size(); }
  const NamedValuation& type(std::size_t player, std::size_t k) const {
    return players_[player][k];
  }
  const ExactScalar& value(std::size_t player, std::size_t type, std::size_t alternative) const {
    return players_[player][type].values[alternative];
  }

  const ProfileSpace& profiles() const { return profiles_; }

 private:
  std::size_t alternative_count_;
  std::vector<std::vector<NamedValuation>> players_;
  ProfileSpace profiles_;
};

/// A chosen alternative plus one finite payment per player.
struct MechanismOutcome {
  std::string alternative;
  std::vector<ExactScalar> payments;

  MechanismOutcome(std::string alternative_id, std::vector<ExactScalar> player_payments);
};

}  // namespace truthlab
