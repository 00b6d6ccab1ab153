#include "mwp/exact_value.hpp"

#include "mwp/error.hpp"

#include <cmath>
#include <numbers>

namespace mwp {

ExactValue ExactValue::fraction(const BigInt& num, const BigInt& den, bool pi_factor) {
  if (den == 0) throw Error(Errc::ZeroDenominator, "zero denominator");
  // Rational(num, den) rejects negative denominators.
  if (den < 0) return ExactValue(Rational(-num, -den), pi_factor);
  return ExactValue(Rational(num, den), pi_factor);
}

bool ExactValue::is_integer() const {
  return !pi_ && boost::multiprecision::denominator(value_) == 1;
}

double ExactValue::to_double() const {
  double r = value_.convert_to<double>();
  return pi_ ? r * std::numbers::pi : r;
}

std::string ExactValue::canonical() const {
  const BigInt num = numerator();
  const BigInt den = denominator();
  std::string out;
  if (pi_ && num == 1 && den == 1) return "pi";
  out = num.str();
  if (den != 1) out += "/" + den.str();
  if (pi_) out += "*pi";
  return out;
}

Ordering compare_magnitude(const ExactValue& a, const ExactValue& b) {
  if (a.has_pi() == b.has_pi()) {
    // Both pi-free, or both scaled by the same positive constant.
    if (a.rational() < b.rational()) return Ordering::Less;
    if (a.rational() > b.rational()) return Ordering::Greater;
    return Ordering::Equal;
  }
  const double x = a.to_double();
  const double y = b.to_double();
  if (x < y) return Ordering::Less;
  if (x > y) return Ordering::Greater;
  return Ordering::Equal;
}

std::string to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Equal: return "Equal";
    case Ordering::Greater: return "Greater";
  }
  return "?";
}

std::size_t bit_length(const BigInt& x) {
  if (x == 0) return 0;
  return boost::multiprecision::msb(boost::multiprecision::abs(x)) + 1;
}

}  // namespace mwp
