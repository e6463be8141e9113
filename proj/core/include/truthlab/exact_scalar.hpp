#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>
#include <string_view>
#include <utility>

namespace truthlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p" or "p/q" (q > 0 after normalization). Throws std::invalid_argument on garbage.
Rational rational_from_string(std::string_view text);

/// Renders "p" or "p/q" in lowest terms with positive denominator.
std::string rational_to_string(const Rational& value);

/// Exact element of Q(sqrt 5): a + b*sqrt(5) with rational a, b, plus a +infinity
/// sentinel. Comparisons are decided exactly by rational sign analysis; there is
/// no floating point anywhere.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long long value) : a_(value) {}  // NOLINT: implicit by design
  explicit ExactScalar(Rational a) : a_(std::move(a)) {}
  ExactScalar(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static ExactScalar infinity();
  static ExactScalar sqrt5() { return {Rational(0), Rational(1)}; }
  /// (1 + sqrt 5) / 2
  static ExactScalar golden_ratio();

  bool infinite() const { return infinite_; }
  bool finite() const { return !infinite_; }
  /// The rational component a. Zero when infinite.
  const Rational& rational_part() const { return a_; }
  /// The coefficient b of sqrt(5). Zero when infinite.
  const Rational& sqrt5_part() const { return b_; }
  bool is_rational() const { return !infinite_ && b_ == 0; }
  bool is_zero() const { return !infinite_ && a_ == 0 && b_ == 0; }

  /// Exact sign: -1, 0, or +1; +infinity has sign +1.
  int sign() const;

  ExactScalar operator-() const;
  ExactScalar& operator+=(const ExactScalar& rhs);
  ExactScalar& operator-=(const ExactScalar& rhs);
  ExactScalar& operator*=(const ExactScalar& rhs);
  ExactScalar& operator/=(const ExactScalar& rhs);

  friend ExactScalar operator+(ExactScalar lhs, const ExactScalar& rhs) { return lhs += rhs; }
  friend ExactScalar operator-(ExactScalar lhs, const ExactScalar& rhs) { return lhs -= rhs; }
  friend ExactScalar operator*(ExactScalar lhs, const ExactScalar& rhs) { return lhs *= rhs; }
  friend ExactScalar operator/(ExactScalar lhs, const ExactScalar& rhs) { return lhs /= rhs; }

  friend bool operator==(const ExactScalar& x, const ExactScalar& y) {
    return x.infinite_ == y.infinite_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const ExactScalar& x, const ExactScalar& y);

  /// "inf", "p/q", or "p/q+r/s*sqrt5" style rendering for humans and reports.
  std::string to_string() const;

 private:
  Rational a_{};
  Rational b_{};
  bool infinite_ = false;
};

/// Exact total order; +infinity is greater than every finite scalar.
std::strong_ordering scalar_compare(const ExactScalar& x, const ExactScalar& y);

const ExactScalar& min(const ExactScalar& x, const ExactScalar& y);
const ExactScalar& max(const ExactScalar& x, const ExactScalar& y);

}  // namespace truthlab
