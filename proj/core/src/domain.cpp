#include "truthlab/domain.hpp"

#include <set>
#include <stdexcept>

namespace truthlab {

ProfileSpace::ProfileSpace(std::vector<std::size_t> radices) : radices_(std::move(radices)) {
  for (const std::size_t r : radices_) {
    if (r == 0) throw std::invalid_argument("empty type list for a player");
    if (count_ > static_cast<std::size_t>(-1) / r) {
      throw std::invalid_argument("profile space too large to index");
    }
    count_ *= r;
  }
}

Profile ProfileSpace::at(std::size_t rank) const {
  if (rank >= count_) throw std::out_of_range("profile rank out of range");
  Profile p(radices_.size());
  for (std::size_t i = radices_.size(); i-- > 0;) {
    p[i] = rank % radices_[i];
    rank /= radices_[i];
  }
  return p;
}

std::size_t ProfileSpace::rank(const Profile& profile) const {
  if (profile.size() != radices_.size()) throw std::invalid_argument("profile length mismatch");
  std::size_t r = 0;
  for (std::size_t i = 0; i < radices_.size(); ++i) {
    if (profile[i] >= radices_[i]) throw std::out_of_range("type index out of range");
    r = r * radices_[i] + profile[i];
  }
  return r;
}

namespace {

std::vector<std::size_t> radices_of(const std::vector<std::vector<NamedValuation>>& players) {
  std::vector<std::size_t> r;
  r.reserve(players.size());
  for (const auto& types : players) r.push_back(types.size());
  return r;
}

}  // namespace

FiniteTypeDomain::FiniteTypeDomain(std::size_t alternative_count,
                                   std::vector<std::vector<NamedValuation>> players)
    : alternative_count_(alternative_count),
      players_(std::move(players)),
      profiles_(radices_of(players_)) {
  for (const auto& types : players_) {
    if (types.empty()) throw std::invalid_argument("every player needs at least one valuation");
    std::set<std::string> names;
    for (const auto& t : types) {
      if (!names.insert(t.name).second) {
        throw std::invalid_argument("duplicate valuation name '" + t.name + "'");
      }
      if (t.values.size() != alternative_count_) {
        throw std::invalid_argument("valuation table size does not match alternative count");
      }
    }
  }
}

MechanismOutcome::MechanismOutcome(std::string alternative_id,
                                   std::vector<ExactScalar> player_payments)
    : alternative(std::move(alternative_id)), payments(std::move(player_payments)) {
  for (const auto& p : payments) {
    if (p.infinite()) throw std::invalid_argument("payments must be finite");
  }
}

}  // namespace truthlab
