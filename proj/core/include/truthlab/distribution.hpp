#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "truthlab/exact_scalar.hpp"

namespace truthlab {

/// Finite distribution with exact rational probabilities that sum to exactly 1.
template <typename T>
class DiscreteDistribution {
 public:
  using Entry = std::pair<T, Rational>;

  explicit DiscreteDistribution(std::vector<Entry> entries) : entries_(std::move(entries)) {
    Rational total = 0;
    for (const auto& [value, p] : entries_) {
      if (p < 0) throw std::invalid_argument("negative probability");
      total += p;
    }
    if (total != 1) throw std::invalid_argument("probabilities must sum to exactly 1");
  }

  static DiscreteDistribution point_mass(T value) {
    std::vector<Entry> entries;
    entries.emplace_back(std::move(value), Rational(1));
    return DiscreteDistribution(std::move(entries));
  }

  static DiscreteDistribution uniform(std::vector<T> values) {
    if (values.empty()) throw std::invalid_argument("uniform distribution over empty support");
    std::vector<Entry> entries;
    entries.reserve(values.size());
    const Rational p(1, static_cast<long long>(values.size()));
    for (auto& v : values) entries.emplace_back(std::move(v), p);
    return DiscreteDistribution(std::move(entries));
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  /// Exact expected value of `value_of` over the distribution. All values must be finite.
  template <typename F>
  ExactScalar expectation(F&& value_of) const {
    ExactScalar total;
    for (const auto& [value, p] : entries_) {
      const ExactScalar v = value_of(value);
      if (v.infinite()) throw std::domain_error("expectation over an infinite value");
      total += ExactScalar(p) * v;
    }
    return total;
  }

 private:
  std::vector<Entry> entries_;
};

}  // namespace truthlab
