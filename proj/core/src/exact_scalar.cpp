#include "truthlab/exact_scalar.hpp"

#include <stdexcept>

namespace truthlab {

namespace {

int rational_sign(const Rational& r) {
  if (r > 0) return 1;
  if (r < 0) return -1;
  return 0;
}

[[noreturn]] void bad_parse(std::string_view text) {
  throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
}

BigInt bigint_from_string(std::string_view text) {
  if (text.empty()) bad_parse(text);
  std::size_t i = text[0] == '-' || text[0] == '+' ? 1 : 0;
  if (i == text.size()) bad_parse(text);
  for (std::size_t k = i; k < text.size(); ++k) {
    if (text[k] < '0' || text[k] > '9') bad_parse(text);
  }
  return BigInt(std::string(text));
}

}  // namespace

Rational rational_from_string(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(bigint_from_string(text));
  }
  const BigInt num = bigint_from_string(text.substr(0, slash));
  const BigInt den = bigint_from_string(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in rational literal");
  return Rational(num, den);
}

std::string rational_to_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

ExactScalar ExactScalar::infinity() {
  ExactScalar s;
  s.infinite_ = true;
  return s;
}

ExactScalar ExactScalar::golden_ratio() {
  return {Rational(1, 2), Rational(1, 2)};
}

int ExactScalar::sign() const {
  if (infinite_) return 1;
  const int sa = rational_sign(a_);
  const int sb = rational_sign(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: the sign is decided by comparing a^2 with 5 b^2.
  const Rational d = a_ * a_ - 5 * b_ * b_;
  if (d == 0) throw std::logic_error("a^2 == 5 b^2 with b != 0 is impossible over Q");
  return sa > 0 ? rational_sign(d) : -rational_sign(d);
}

ExactScalar ExactScalar::operator-() const {
  if (infinite_) throw std::domain_error("cannot negate +infinity");
  return {-a_, -b_};
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& rhs) {
  if (infinite_ || rhs.infinite_) {
    *this = infinity();
    return *this;
  }
  a_ += rhs.a_;
  b_ += rhs.b_;
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& rhs) {
  if (rhs.infinite_) throw std::domain_error("cannot subtract +infinity");
  if (infinite_) return *this;
  a_ -= rhs.a_;
  b_ -= rhs.b_;
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& rhs) {
  if (infinite_ || rhs.infinite_) {
    const ExactScalar& other = infinite_ ? rhs : *this;
    if (other.sign() <= 0) throw std::domain_error("+infinity times a non-positive scalar");
    *this = infinity();
    return *this;
  }
  if (b_ == 0 && rhs.b_ == 0) {  // plain rationals
    a_ *= rhs.a_;
    return *this;
  }
  // (a1 + b1 s)(a2 + b2 s) = a1 a2 + 5 b1 b2 + (a1 b2 + a2 b1) s  with s = sqrt 5.
  Rational a = a_ * rhs.a_ + 5 * (b_ * rhs.b_);
  Rational b = a_ * rhs.b_ + rhs.a_ * b_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& rhs) {
  if (rhs.infinite_) throw std::domain_error("cannot divide by +infinity");
  if (rhs.is_zero()) throw std::domain_error("division by zero");
  if (infinite_) {
    if (rhs.sign() < 0) throw std::domain_error("+infinity divided by a negative scalar");
    return *this;
  }
  // Multiply by the conjugate: 1/(a + b s) = (a - b s)/(a^2 - 5 b^2).
  const Rational norm = rhs.a_ * rhs.a_ - 5 * rhs.b_ * rhs.b_;
  ExactScalar conj{rhs.a_ / norm, -rhs.b_ / norm};
  return *this *= conj;
}

std::strong_ordering operator<=>(const ExactScalar& x, const ExactScalar& y) {
  if (x.infinite_ && y.infinite_) return std::strong_ordering::equal;
  if (x.infinite_) return std::strong_ordering::greater;
  if (y.infinite_) return std::strong_ordering::less;
  if (x.b_ == y.b_) {  // equal sqrt5 parts reduce to a rational comparison
    if (x.a_ < y.a_) return std::strong_ordering::less;
    if (y.a_ < x.a_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  const ExactScalar diff{x.a_ - y.a_, x.b_ - y.b_};
  const int s = diff.sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string ExactScalar::to_string() const {
  if (infinite_) return "inf";
  if (b_ == 0) return rational_to_string(a_);
  std::string tail = rational_to_string(b_ < 0 ? Rational(-b_) : b_) + "*sqrt5";
  if (a_ == 0) return (b_ < 0 ? "-" : "") + tail;
  return rational_to_string(a_) + (b_ < 0 ? "-" : "+") + tail;
}

std::strong_ordering scalar_compare(const ExactScalar& x, const ExactScalar& y) {
  return x <=> y;
}

const ExactScalar& min(const ExactScalar& x, const ExactScalar& y) {
  return y < x ? y : x;
}

const ExactScalar& max(const ExactScalar& x, const ExactScalar& y) {
  return x < y ? y : x;
}

}  // namespace truthlab
