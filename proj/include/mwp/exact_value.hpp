#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>

namespace mwp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact rational number, optionally scaled by pi. The rational part is
/// always reduced with a positive denominator, so two equal values have
/// identical representations and identical canonical renderings.
class ExactValue {
 public:
  ExactValue() = default;
  ExactValue(std::int64_t integer) : value_(integer) {}  // NOLINT: implicit by intent
  explicit ExactValue(Rational value, bool pi_factor = false)
      : value_(std::move(value)), pi_(pi_factor) {}

  /// Throws Errc::ZeroDenominator when `den` is zero.
  static ExactValue fraction(const BigInt& num, const BigInt& den, bool pi_factor = false);
  static ExactValue pi() { return ExactValue(Rational(1), true); }

  const Rational& rational() const noexcept { return value_; }
  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }
  bool has_pi() const noexcept { return pi_; }
  bool is_integer() const;
  bool is_zero() const { return value_ == 0; }
  int sign() const { return value_.sign(); }

  double to_double() const;

  /// "p" for integers, "p/q" for reduced fractions, "pi", "p*pi" or
  /// "p/q*pi" when scaled by pi.
  std::string canonical() const;

  friend bool operator==(const ExactValue& a, const ExactValue& b) {
    return a.pi_ == b.pi_ && a.value_ == b.value_;
  }

 private:
  Rational value_{0};
  bool pi_ = false;
};

enum class Ordering { Less, Equal, Greater };

/// Exact when neither side carries pi (or both do); otherwise compares the
/// nearest binary64 values.
Ordering compare_magnitude(const ExactValue& a, const ExactValue& b);

std::string to_string(Ordering o);

/// Number of significant bits of |x| (0 for zero).
std::size_t bit_length(const BigInt& x);

}  // namespace mwp
