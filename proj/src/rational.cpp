#include "auctionlab/rational.hpp"

#include <cctype>
#include <cmath>

namespace auctionlab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw InputError("malformed rational: \"" + std::string(whole) + "\"");
  mpz_class z(std::string(s), 10);
  return neg ? mpz_class(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw InputError("empty rational");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(s.substr(0, slash), text);
    std::string_view den_text = s.substr(slash + 1);
    if (!all_digits(den_text)) throw InputError("malformed rational: \"" + std::string(text) + "\"");
    mpz_class den(std::string(den_text), 10);
    if (den == 0) throw InputError("zero denominator in \"" + std::string(text) + "\"");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    bool neg = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+'))
      int_part.remove_prefix(1);
    if (int_part.empty() && frac.empty()) throw InputError("malformed rational: \"" + std::string(text) + "\"");
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac.empty() && !all_digits(frac)))
      throw InputError("malformed rational: \"" + std::string(text) + "\"");
    mpz_class whole = int_part.empty() ? mpz_class(0) : mpz_class(std::string(int_part), 10);
    mpz_class f = frac.empty() ? mpz_class(0) : mpz_class(std::string(frac), 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Rational r(whole * scale + f, scale);
    r.canonicalize();
    return neg ? Rational(-r) : r;
  }

  return Rational(parse_integer(s, text));
}

std::string to_string(const Rational& r) {
  const Rational c = canonical(r);
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string to_decimal_string(const Rational& r, int digits) {
  // Round half away from zero at the requested digit, then trim zeros.
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Rational scaled = abs(canonical(r)) * scale + Rational(1, 2);
  mpz_class q = scaled.get_num() / scaled.get_den();
  std::string s = q.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
  std::string out = s.substr(0, s.size() - digits);
  std::string frac = s.substr(s.size() - digits);
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  if (!frac.empty()) out += "." + frac;
  if (sgn(canonical(r)) < 0 && out != "0") out.insert(0, "-");
  return out;
}

double to_double(const Rational& r) { return canonical(r).get_d(); }

Rational factorial(unsigned n) {
  mpz_class z;
  mpz_fac_ui(z.get_mpz_t(), n);
  return Rational(z);
}

const Rational& Threshold::value() const {
  if (infinite_) throw std::logic_error("value() of an infinite threshold");
  return value_;
}

bool operator==(const Threshold& a, const Threshold& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const Threshold& a, const Threshold& b) {
  if (a.infinite_ || b.infinite_) {
    if (a.infinite_ == b.infinite_) return std::strong_ordering::equal;
    return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  int c = cmp(a.value_, b.value_);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::string to_string(const Threshold& t) { return t.is_infinite() ? "inf" : to_string(t.value()); }

}  // namespace auctionlab
