#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace auctionlab {

using Rational = mpq_class;

// Thrown for malformed user input (bad rationals, bad files, bad parameters).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Accepts "p/q", plain integers and finite decimals such as "-0.125".
// Conversion is exact. Throws InputError on anything else, including q = 0.
Rational parse_rational(std::string_view text);

// Reduced form; gmp leaves Rational(num, den) unreduced and its comparisons assume reduced input.
inline Rational canonical(Rational r) {
  r.canonicalize();
  return r;
}

// Canonical "p/q" form; integers print as "p/1".
std::string to_string(const Rational& r);
std::string to_decimal_string(const Rational& r, int digits = 12);
double to_double(const Rational& r);

Rational factorial(unsigned n);

// A rational or +infinity. Infinity compares above every rational.
class Threshold {
 public:
  Threshold() : infinite_(true) {}
  Threshold(Rational v) : infinite_(false), value_(canonical(std::move(v))) {}  // NOLINT implicit

  static Threshold infinity() { return Threshold(); }

  bool is_infinite() const { return infinite_; }
  const Rational& value() const;

  // v clears the threshold iff the threshold is finite and v >= threshold.
  bool accepts(const Rational& v) const { return !infinite_ && v >= value_; }

  friend bool operator==(const Threshold& a, const Threshold& b);
  friend std::strong_ordering operator<=>(const Threshold& a, const Threshold& b);

 private:
  bool infinite_;
  Rational value_;
};

std::string to_string(const Threshold& t);  // "inf" for infinity

}  // namespace auctionlab
